"""Relation spaces of chord diagrams and exact reduction.

Degree-d relation rows are generated from every one-vertex diagram (one
trivalent vertex whose three edges end on legs, all other components chords)
by equating its STU resolutions taken at two different legs of the vertex;
the rows are echelonized exactly over Q.  An independent generator using the
classical strand 4T quadruples cross-checks the reduced dimensions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..kohno import GuardExceeded, guard_bytes
from ..scalars import FormalScalar, ONE, ZERO
from .model import DiagElt, JDiagram, RawDiagram, canonicalize
from .ops import stu_expand, stu_resolve_at, stack

DEFAULT_DEGREE_GUARD = 5


def _as_int_row(row: dict) -> dict:
    """Clear denominators of a rational row into a primitive integer row."""
    if all(isinstance(v, int) for v in row.values()):
        return dict(row)
    import math
    den = 1
    for v in row.values():
        f = Fraction(v)
        den = den * f.denominator // math.gcd(den, f.denominator)
    return {k: int(Fraction(v) * den) for k, v in row.items()}


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _matchings(items):
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        b = items[i]
        rest = items[1:i] + items[i + 1:]
        for m in _matchings(rest):
            yield [(a, b)] + m


@lru_cache(maxsize=None)
def chord_diagrams(orients: tuple, degree: int) -> tuple:
    """All canonical chord diagrams of the degree, sorted."""
    if degree == 0:
        raw = RawDiagram.on_strands(orients, [[] for _ in orients])
        return (canonicalize(raw)[0],)
    out = set()
    slots = 2 * degree
    for comp in _compositions(slots, len(orients)):
        strands = []
        h = 0
        for k in comp:
            strands.append(list(range(h, h + k)))
            h += k
        for m in _matchings(tuple(range(slots))):
            d, sign = canonicalize(RawDiagram.on_strands(orients, strands, [], m))
            assert sign == 1
            out.add(d)
    return tuple(sorted(out, key=lambda d: d.sort_key()))


@lru_cache(maxsize=None)
def one_vertex_diagrams(orients: tuple, degree: int) -> tuple:
    """Canonical diagrams with exactly one trivalent vertex (plus chords)."""
    if degree < 2:
        return ()
    out = set()
    slots = 2 * degree - 1
    for comp in _compositions(slots, len(orients)):
        positions = list(range(slots))
        strands = []
        h = 0
        for k in comp:
            strands.append(list(range(h, h + k)))
            h += k
        for y_legs in itertools.combinations(positions, 3):
            rest = [p for p in positions if p not in y_legs]
            va, vb, vc = slots, slots + 1, slots + 2
            vertex = (va, vb, vc)
            y_edges = list(zip(vertex, y_legs))
            for m in _matchings(tuple(rest)):
                raw = RawDiagram.on_strands(orients, strands, [vertex],
                                            y_edges + m)
                res = canonicalize(raw)
                if res is None:
                    continue
                out.add(res[0])
    return tuple(sorted(out, key=lambda d: d.sort_key()))


@dataclass
class RelationSpace:
    """Echelonized STU/4T subspace of the degree-d chord-diagram span.

    Pivot rows are primitive integer vectors (gcd 1, positive lead); exact
    integer combinations avoid per-operation rational normalization.
    """

    degree: int
    signature: tuple
    columns: tuple = ()
    col_index: dict = field(default_factory=dict)
    pivots: dict = field(default_factory=dict)  # col idx -> {col idx: int}
    nnz: int = 0

    def insert_row(self, row: dict) -> bool:
        row = self.reduce_int_row(_as_int_row(row))
        if not row:
            return False
        p = min(row)
        if row[p] < 0:
            row = {k: -v for k, v in row.items()}
        self.pivots[p] = row
        self.nnz += len(row)
        return True

    def reduce_int_row(self, row: dict) -> dict:
        import math
        row = dict(row)
        while row:
            p = min(row)
            piv = self.pivots.get(p)
            if piv is None:
                break
            a, b = row[p], piv[p]
            new = {k: v * b for k, v in row.items()}
            for k, v in piv.items():
                s = new.get(k, 0) - a * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            if new:
                g = 0
                for v in new.values():
                    g = math.gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    new = {k: v // g for k, v in new.items()}
            row = new
        return row

    def reduce_fraction_row(self, row: dict) -> dict:
        return {k: Fraction(v)
                for k, v in self.reduce_int_row(_as_int_row(row)).items()}

    def reduce_vector(self, vec: dict) -> dict:
        """Reduce a {column index: FormalScalar} vector to normal coordinates."""
        vec = {k: c for k, c in vec.items() if not c.is_zero()}
        for p in sorted(self.pivots):
            c = vec.get(p)
            if c is None:
                continue
            piv = self.pivots[p]
            factor = c * Fraction(1, piv[p])
            for k, v in piv.items():
                s = vec.get(k, ZERO) - factor * v
                if s.is_zero():
                    vec.pop(k, None)
                else:
                    vec[k] = s
        return vec

    def vector_of(self, x: DiagElt) -> dict:
        vec = {}
        for d, c in x.terms.items():
            if d.degree != self.degree:
                raise ValueError(f"degree {d.degree} term in degree-{self.degree} space")
            if not d.is_chord_diagram():
                raise ValueError("reduce_nf needs chord diagrams (stu_expand first)")
            vec[self.col_index[d]] = c
        return vec

    @property
    def dim_total(self) -> int:
        return len(self.columns)

    @property
    def dim_relations(self) -> int:
        return len(self.pivots)

    @property
    def dim_reduced(self) -> int:
        return len(self.columns) - len(self.pivots)


def _new_space(orients, degree) -> RelationSpace:
    cols = chord_diagrams(orients, degree)
    sp = RelationSpace(degree, ("strand", orients), cols,
                       {d: i for i, d in enumerate(cols)})
    return sp


def _resolution_vector(space: RelationSpace, raws_signs) -> dict:
    vec: dict = {}
    for raw, sign in raws_signs:
        res = canonicalize(raw)
        if res is None:
            continue
        d, s = res
        i = space.col_index[d]
        vec[i] = vec.get(i, 0) + sign * s
    return {k: v for k, v in vec.items() if v}


@lru_cache(maxsize=None)
def relation_space(orients: tuple, degree: int, deep: bool = False) -> RelationSpace:
    """STU-consequence space among degree-d chord diagrams on the strands."""
    guard = DEFAULT_DEGREE_GUARD + (1 if deep else 0)
    if len(orients) == 2 and degree > guard:
        raise GuardExceeded(
            f"degree {degree} relation space on 2 strands needs deep={degree <= 6}")
    if len(orients) > 2 and degree > 4 + (1 if deep else 0):
        raise GuardExceeded(f"degree {degree} relation space on {len(orients)} strands")
    space = _new_space(orients, degree)
    nnz_guard = guard_bytes() // 120
    seen_rows = set()
    for d in one_vertex_diagrams(orients, degree):
        partner = d.partner_map()
        at_vertex = set(d.vertices[0])
        spots = []
        for si, s in enumerate(d.strands):
            for slot, h in enumerate(s):
                if partner[h] in at_vertex:
                    spots.append((si, slot, h, partner[h]))
        resolutions = [
            _resolution_vector(space, stu_resolve_at(d, si, slot, h, p))
            for (si, slot, h, p) in spots]
        for a, b in zip(resolutions, resolutions[1:]):
            row = dict(a)
            for k, v in b.items():
                s = row.get(k, 0) - v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
            if not row:
                continue
            if row[min(row)] < 0:
                row = {k: -v for k, v in row.items()}
            key = tuple(sorted(row.items()))
            if key in seen_rows:
                continue
            seen_rows.add(key)
            space.insert_row(row)
            if space.nnz > nnz_guard:
                raise GuardExceeded("relation space exceeded JACOBI_GUARD_BYTES")
    return space


def reduce_nf(x: DiagElt, space: RelationSpace) -> dict:
    """Coordinates of x in the reduced (normal-form) basis; {} iff relation."""
    return space.reduce_vector(space.vector_of(x))


def reduce_all(x: DiagElt, deep: bool = False) -> dict:
    """Degreewise reduction of a chord-only element; {degree: coords}."""
    orients = x.signature[1]
    out = {}
    for deg in x.degrees():
        part = x.homogeneous_part(deg)
        if deg == 0:
            coords = {0: part.constant_term()}
            coords = {k: v for k, v in coords.items() if not v.is_zero()}
        else:
            coords = reduce_nf(part, relation_space(orients, deg, deep))
        if coords:
            out[deg] = coords
    return out


def is_relation_consequence(x: DiagElt, deep: bool = False) -> bool:
    return not reduce_all(stu_expand(x), deep)


def commute_check(x: DiagElt, y: DiagElt, d_cap: int, deep: bool = False) -> bool:
    """True iff xy - yx reduces to zero in every degree <= d_cap."""
    comm = (stack(x, y) - stack(y, x)).truncate(d_cap)
    return is_relation_consequence(comm, deep)


# ---------------------------------------------------------------------------
# Independent classical 4T oracle
# ---------------------------------------------------------------------------

def four_t_rows(d: JDiagram):
    """Classical strand 4T quadruples anchored at adjacent endpoint pairs.

    For adjacent slots (i, i+1) on a strand carrying endpoints of two
    different chords: D - (swap) - (move after far end) + (move before) = 0.
    """
    partner = d.partner_map()
    rows = []
    position = {}
    for si, s in enumerate(d.strands):
        for slot, h in enumerate(s):
            position[h] = (si, slot)
    for si, s in enumerate(d.strands):
        for slot in range(len(s) - 1):
            u, w = s[slot], s[slot + 1]
            if partner[u] == w:
                continue  # same chord: no relation anchored here
            far = partner[w]
            fsi, fslot = position[far]
            terms = [(d.to_raw(), 1)]
            swap = d.to_raw()
            swap.strands[si][slot], swap.strands[si][slot + 1] = w, u
            terms.append((swap, -1))
            for insert_offset, sign in ((1, -1), (0, 1)):
                moved = d.to_raw()
                moved.strands[si].pop(slot)
                tgt_slot = fslot + insert_offset
                if fsi == si and fslot > slot:
                    tgt_slot -= 1
                moved.strands[fsi].insert(tgt_slot, u)
                terms.append((moved, sign))
            rows.append(terms)
    return rows


def four_t_space(orients: tuple, degree: int) -> RelationSpace:
    space = _new_space(orients, degree)
    for d in chord_diagrams(orients, degree):
        for terms in four_t_rows(d):
            vec: dict = {}
            for raw, sign in terms:
                res = canonicalize(raw)
                if res is None:
                    continue
                dd, s = res
                i = space.col_index[dd]
                vec[i] = vec.get(i, 0) + sign * s
            row = {k: Fraction(v) for k, v in vec.items() if v}
            space.insert_row(row)
    return space

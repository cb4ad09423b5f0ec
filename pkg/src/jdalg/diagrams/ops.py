"""Operations on strand diagrams: stacking, strand maps, STU expansion.

Strand indices in the public functions are 1-based, matching the usual
epsilon_i / Delta_i / S_i notation.  STU resolves a trivalent vertex with
cyclic order (d, x, y), entered from the strand through d, into
(y attached first along the strand, x second) minus (x first, y second).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from ..scalars import FormalScalar, ONE, ZERO
from .model import DiagElt, JDiagram, RawDiagram, canonicalize


def _relabel(diagram: JDiagram, offset: int):
    strands = [[h + offset for h in s] for s in diagram.strands]
    vertices = [tuple(h + offset for h in v) for v in diagram.vertices]
    edges = [tuple(h + offset for h in e) for e in diagram.edges]
    return strands, vertices, edges


def stack(x: DiagElt, y: DiagElt) -> DiagElt:
    """x stacked above y (x's legs come first along each strand)."""
    if x.signature != y.signature or x.signature[0] != "strand":
        raise ValueError("stacking needs equal strand signatures")
    cap = x._join_cap(y)
    orients = x.signature[1]
    pairs = []
    for dx, cx in x.terms.items():
        for dy, cy in y.terms.items():
            if cap is not None and dx.degree + dy.degree > cap:
                continue
            off = dx.n_legs + 3 * len(dx.vertices) + 1
            sy, vy, ey = _relabel(dy, off)
            raw = RawDiagram.on_strands(
                orients,
                [list(sx) + list(syi) for sx, syi in zip(dx.strands, sy)],
                list(dx.vertices) + vy, list(dx.edges) + ey)
            pairs.append((raw, cx * cy))
    return DiagElt.from_raw(x.signature, pairs, cap)


def tensor(x: DiagElt, y: DiagElt) -> DiagElt:
    """Horizontal juxtaposition: x's strands then y's strands."""
    if x.signature[0] != "strand" or y.signature[0] != "strand":
        raise ValueError("tensor needs strand elements")
    cap = x._join_cap(y)
    orients = x.signature[1] + y.signature[1]
    sig = ("strand", orients)
    pairs = []
    for dx, cx in x.terms.items():
        for dy, cy in y.terms.items():
            if cap is not None and dx.degree + dy.degree > cap:
                continue
            off = dx.n_legs + 3 * len(dx.vertices) + 1
            sy, vy, ey = _relabel(dy, off)
            raw = RawDiagram.on_strands(
                orients, [list(s) for s in dx.strands] + sy,
                list(dx.vertices) + vy, list(dx.edges) + ey)
            pairs.append((raw, cx * cy))
    return DiagElt.from_raw(sig, pairs, cap)


def diag_pow(x: DiagElt, k: int) -> DiagElt:
    out = DiagElt.unit(x.signature[1], x.cap)
    for _ in range(k):
        out = stack(out, x)
    return out


def diag_exp(x: DiagElt) -> DiagElt:
    if x.cap is None:
        raise ValueError("exp needs a cap")
    if not x.constant_term().is_zero():
        raise ValueError("exp needs constant term 0")
    out = DiagElt.unit(x.signature[1], x.cap)
    power = out
    fact = Fraction(1)
    for k in range(1, x.cap + 1):
        power = stack(power, x)
        if power.is_zero():
            break
        fact *= k
        out = out + power.scale(Fraction(1) / fact)
    return out


def diag_log(x: DiagElt) -> DiagElt:
    if x.cap is None:
        raise ValueError("log needs a cap")
    if x.constant_term() != ONE:
        raise ValueError("log needs constant term 1")
    y = x - DiagElt.unit(x.signature[1], x.cap)
    out = DiagElt.zero(x.signature, x.cap)
    power = DiagElt.unit(x.signature[1], x.cap)
    for k in range(1, x.cap + 1):
        power = stack(power, y)
        if power.is_zero():
            break
        out = out + power.scale(Fraction((-1) ** (k + 1), k))
    return out


def diag_inverse(x: DiagElt) -> DiagElt:
    if x.cap is None:
        raise ValueError("inverse needs a cap")
    if x.constant_term() != ONE:
        raise ValueError("inverse implemented for constant term 1")
    unit = DiagElt.unit(x.signature[1], x.cap)
    y = unit - x
    out = unit
    power = unit
    for _ in range(1, x.cap + 1):
        power = stack(power, y)
        if power.is_zero():
            break
        out = out + power
    return out


# ---------------------------------------------------------------------------
# Strand maps
# ---------------------------------------------------------------------------

def delete_strand(x: DiagElt, i: int) -> DiagElt:
    """epsilon_i: kill diagrams with legs on strand i, drop the strand."""
    orients = x.signature[1]
    _check_strand(x, i)
    sig = ("strand", orients[: i - 1] + orients[i:])
    pairs = []
    for d, c in x.terms.items():
        if d.strands[i - 1]:
            continue
        strands = [list(s) for j, s in enumerate(d.strands) if j != i - 1]
        pairs.append((RawDiagram.on_strands(sig[1], strands, d.vertices, d.edges), c))
    return DiagElt.from_raw(sig, pairs, x.cap)


def double_strand(x: DiagElt, i: int) -> DiagElt:
    """Delta_i: sum over all reattachments of strand i's legs to i or its copy."""
    orients = x.signature[1]
    _check_strand(x, i)
    new_orients = orients[:i] + (orients[i - 1],) + orients[i:]
    sig = ("strand", new_orients)
    pairs = []
    for d, c in x.terms.items():
        legs = d.strands[i - 1]
        for mask in range(2 ** len(legs)):
            first = [h for k, h in enumerate(legs) if not (mask >> k) & 1]
            second = [h for k, h in enumerate(legs) if (mask >> k) & 1]
            strands = ([list(s) for s in d.strands[: i - 1]] + [first, second]
                       + [list(s) for s in d.strands[i:]])
            pairs.append((RawDiagram.on_strands(new_orients, strands,
                                                d.vertices, d.edges), c))
    return DiagElt.from_raw(sig, pairs, x.cap)


def reverse_strand(x: DiagElt, i: int) -> DiagElt:
    """S_i: reverse orientation of strand i; each diagram picks up (-1)^legs."""
    orients = x.signature[1]
    _check_strand(x, i)
    flip = {"+": "-", "-": "+"}
    new_orients = orients[: i - 1] + (flip[orients[i - 1]],) + orients[i:]
    sig = ("strand", new_orients)
    pairs = []
    for d, c in x.terms.items():
        strands = [list(s) for s in d.strands]
        strands[i - 1] = strands[i - 1][::-1]
        sign = (-1) ** len(strands[i - 1])
        pairs.append((RawDiagram.on_strands(new_orients, strands,
                                            d.vertices, d.edges),
                      c if sign > 0 else -c))
    return DiagElt.from_raw(sig, pairs, x.cap)


def permute_strands(x: DiagElt, dest) -> DiagElt:
    """x^{dest}: old strand k goes to position dest[k] (1-based), as in X^{213}."""
    orients = x.signature[1]
    n = len(orients)
    if sorted(dest) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {dest}")
    new_orients = [None] * n
    for old, new in enumerate(dest):
        new_orients[new - 1] = orients[old]
    sig = ("strand", tuple(new_orients))
    pairs = []
    for d, c in x.terms.items():
        strands = [None] * n
        for old, new in enumerate(dest):
            strands[new - 1] = list(d.strands[old])
        pairs.append((RawDiagram.on_strands(sig[1], strands, d.vertices, d.edges), c))
    return DiagElt.from_raw(sig, pairs, x.cap)


def _check_strand(x, i):
    if x.signature[0] != "strand":
        raise ValueError("strand operation on a colored element")
    if not 1 <= i <= len(x.signature[1]):
        raise ValueError(f"strand index {i} out of range")


# ---------------------------------------------------------------------------
# Elementary builders
# ---------------------------------------------------------------------------

def chord_elt(orients, p1, p2, cap=None) -> DiagElt:
    """Single chord between strands p1, p2 (1-based); t_ij for i != j."""
    n = len(orients)
    strands = [[] for _ in range(n)]
    strands[p1 - 1].append(0)
    strands[p2 - 1].append(1)
    raw = RawDiagram.on_strands(orients, strands, [], [(0, 1)])
    return DiagElt.from_raw(("strand", tuple(orients)), [(raw, ONE)], cap)


def horizontal_from_word(orients, word, cap=None) -> DiagElt:
    """Stacked chords t_{i1 j1} ... t_{ik jk} (word of (i, j) pairs, 1-based)."""
    out = DiagElt.unit(orients, cap)
    for (i, j) in word:
        out = stack(out, chord_elt(orients, i, j, cap))
    return out


# ---------------------------------------------------------------------------
# STU expansion
# ---------------------------------------------------------------------------

def _find_resolvable_leg(d: JDiagram, strategy="first"):
    """A leg whose dashed edge ends at a trivalent vertex, plus that data."""
    partner = d.partner_map()
    at_vertex = {}
    for vi, tri in enumerate(d.vertices):
        for pos, h in enumerate(tri):
            at_vertex[h] = (vi, pos)
    found = []
    for si, s in enumerate(d.strands):
        for slot, h in enumerate(s):
            p = partner[h]
            if p in at_vertex:
                found.append((si, slot, h, p))
                if strategy == "first":
                    return found[0]
    if not found:
        return None
    if strategy == "last":
        return found[-1]
    return found[0]


def stu_resolve_at(d: JDiagram, si, slot, h, p) -> list:
    """Resolve the vertex behind leg h; returns [(RawDiagram, +/-1), ...]."""
    partner = d.partner_map()
    vi = next(i for i, tri in enumerate(d.vertices) if p in tri)
    tri = d.vertices[vi]
    pos = tri.index(p)
    q, r = tri[(pos + 1) % 3], tri[(pos + 2) % 3]  # cyclic (p=d, q=x, r=y)
    wq, wr = partner[q], partner[r]
    base_edges = [e for e in d.edges if h not in e and q not in e and r not in e]
    vertices = [t for i, t in enumerate(d.vertices) if i != vi]
    out = []
    new1, new2 = max(_all_ids(d)) + 1, max(_all_ids(d)) + 2
    for first, second, sign in ((wr, wq, 1), (wq, wr, -1)):
        strands = [list(s) for s in d.strands]
        strands[si] = strands[si][:slot] + [new1, new2] + strands[si][slot + 1:]
        edges = base_edges + [(first, new1), (second, new2)]
        out.append((RawDiagram.on_strands(d.orientations, strands, vertices, edges),
                    sign))
    return out


def _all_ids(d: JDiagram):
    ids = [h for s in d.strands for h in s]
    ids += [h for v in d.vertices for h in v]
    return ids or [0]


def stu_expand(x: DiagElt, strategy="first") -> DiagElt:
    """Resolve trivalent vertices against the skeleton until only chords remain."""
    if x.signature[0] != "strand":
        raise ValueError("stu_expand needs a strand element")
    work = list(x.terms.items())
    done: dict = {}
    while work:
        d, c = work.pop()
        if not d.vertices:
            s = done.get(d)
            s = c if s is None else s + c
            if s.is_zero():
                done.pop(d, None)
            else:
                done[d] = s
            continue
        spot = _find_resolvable_leg(d, strategy)
        if spot is None:
            raise ValueError("component with trivalent vertices but no strand path")
        si, slot, h, p = spot
        for raw, sign in stu_resolve_at(d, si, slot, h, p):
            res = canonicalize(raw)
            if res is None:
                continue
            nd, s2 = res
            work.append((nd, c if sign * s2 > 0 else -c))
    return DiagElt(x.signature, done, x.cap, _copy=False)


# ---------------------------------------------------------------------------
# Connected part of a stacking commutator
# ---------------------------------------------------------------------------

def stack_commutator_connected(dx: JDiagram, dy: JDiagram) -> DiagElt:
    """x.y - y.x as a sum of one-join diagrams (exact by iterated STU).

    Starting from y.x, adjacent (y-leg, x-leg) pairs are swapped one at a
    time; each swap emits the joined diagram with vertex cyclic order
    (down, x-side, y-side) and coefficient -1, so that
    x.y - y.x = sum of emissions.
    """
    if dx.kind != "strand" or dx.orientations != dy.orientations:
        raise ValueError("commutator needs one strand signature")
    off = max(_all_ids(dx)) + 1
    sy, vy, ey = _relabel(dy, off)
    # state: per strand, list of (tag, hid); start with y first (y.x)
    state = [[("y", h) for h in syi] + [("x", h) for h in sxi]
             for syi, sxi in zip(sy, dx.strands)]
    vertices = list(dx.vertices) + vy
    edges = list(dx.edges) + ey
    next_id = off + max(_all_ids(dy)) + 1
    sig = ("strand", dx.orientations)
    emitted = []
    while True:
        spot = None
        for si, s in enumerate(state):
            for k in range(len(s) - 1):
                if s[k][0] == "y" and s[k + 1][0] == "x":
                    spot = (si, k)
                    break
            if spot:
                break
        if spot is None:
            break
        si, k = spot
        y_leg, x_leg = state[si][k][1], state[si][k + 1][1]
        # emitted join: remove both legs, new leg d at the spot, vertex
        # (h_d, h_x, h_y); edges h_x-(partner of x_leg), h_y-(partner of y_leg)
        partner = {}
        for a, b in edges:
            partner[a] = b
            partner[b] = a
        d_leg, h_d, h_x, h_y = next_id, next_id + 1, next_id + 2, next_id + 3
        j_state = [list(s) for s in state]
        j_state[si] = j_state[si][:k] + [("j", d_leg)] + j_state[si][k + 2:]
        j_strands = [[h for _, h in s] for s in j_state]
        j_edges = [e for e in edges if x_leg not in e and y_leg not in e]
        j_edges += [(d_leg, h_d), (h_x, partner[x_leg]), (h_y, partner[y_leg])]
        j_vertices = vertices + [(h_d, h_x, h_y)]
        emitted.append((RawDiagram.on_strands(dx.orientations, j_strands,
                                              j_vertices, j_edges), -ONE))
        # now swap in the main state
        state[si][k], state[si][k + 1] = state[si][k + 1], state[si][k]
    return DiagElt.from_raw(sig, emitted)

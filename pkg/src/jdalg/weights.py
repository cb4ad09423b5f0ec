"""Lie-algebra weight systems on two downward strands.

Standard-representation systems (gl_N, sl_N, so_N, sp_2N with symbolic N)
evaluate chord diagrams by Bar-Natan-style curve tracing: every chord
carries its quadratic Casimir written as index routers, states are router
choices, closed traced curves contribute factors of N, and the value lives
in a small pattern-operator basis of End(V) (x) End(V) (the flip, the
U-turn, the identity, and their block-split variants for sp).

The universal sl_2 system evaluates arbitrary Jacobi diagrams into
U(sl_2) (x) U(sl_2) by a state sum over edges in the basis/dual-basis
formulation (trace form; e* = f, f* = e, h* = h/2), with factor
-B([x,y],z) at a trivalent vertex read in cyclic order.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .diagrams import DiagElt, JDiagram, chord_diagrams, one_vertex_diagrams
from .scalars import FormalScalar, ONE, ZERO, rat, sym

SYSTEMS = ("glN", "slN", "soN", "sp2N")

# ---------------------------------------------------------------------------
# Pattern operators
# ---------------------------------------------------------------------------
# Ports of an operator on V (x) V: (o1, i1, o2, i2) = rows/columns on the two
# tensor slots.  A basis pattern pairs the four ports into two wires (each
# wire one free index) and labels every port with a block: "F" (full, size N
# or the whole space) or "P"/"Q" (sp_2N halves, size N each).

PAIRINGS = {
    "II": ((0, 1), (2, 3)),
    "X": ((0, 3), (1, 2)),
    "U": ((0, 2), (1, 3)),
}


def _pairing_of(pairs) -> str:
    normalized = tuple(sorted(tuple(sorted(p)) for p in pairs))
    for name, ref in PAIRINGS.items():
        if normalized == tuple(sorted(ref)):
            return name
    raise ValueError(f"not a port pairing: {pairs}")


class OperatorElt:
    """Linear combination of pattern operators with Laurent-in-N coefficients."""

    __slots__ = ("system", "terms")

    def __init__(self, system, terms=None, _copy=True):
        self.system = system
        if terms is None:
            self.terms = {}
        elif _copy:
            self.terms = {k: c for k, c in terms.items() if not c.is_zero()}
        else:
            self.terms = terms

    @staticmethod
    def zero(system):
        return OperatorElt(system, {}, _copy=False)

    @staticmethod
    def identity(system):
        if system == "sp2N":
            terms = {("II", (b1, b1, b2, b2)): ONE
                     for b1 in "PQ" for b2 in "PQ"}
        else:
            terms = {("II", ("F", "F", "F", "F")): ONE}
        return OperatorElt(system, terms, _copy=False)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.system != other.system:
            raise ValueError("system mismatch")
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return OperatorElt(self.system, out, _copy=False)

    def __neg__(self):
        return OperatorElt(self.system, {k: -c for k, c in self.terms.items()},
                           _copy=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = FormalScalar.coerce(c)
        out = {}
        for k, s in self.terms.items():
            p = s * c
            if not p.is_zero():
                out[k] = p
        return OperatorElt(self.system, out, _copy=False)

    def __mul__(self, other):
        return operator_compose(self, other)

    def __eq__(self, other):
        return (isinstance(other, OperatorElt) and self.system == other.system
                and self.terms == other.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{k[0]}{''.join(k[1])}"
                          for k, c in sorted(self.terms.items()))

    __repr__ = __str__


@lru_cache(maxsize=None)
def _compose_patterns(k1: tuple, k2: tuple):
    """(pattern, pattern) -> (pattern, loop count) or None if blocks clash."""
    pairing1, blocks1 = k1
    pairing2, blocks2 = k2
    # ports 0..3 of the left factor, 4..7 of the right factor
    blocks = list(blocks1) + list(blocks2)
    wires = [tuple(p) for p in PAIRINGS[pairing1]]
    wires += [tuple(p + 4 for p in pair) for pair in PAIRINGS[pairing2]]
    # composition contracts left inputs with right outputs
    contractions = [(1, 4), (3, 6)]
    for a, b in contractions:
        if blocks[a] != blocks[b]:
            return None
    parent = list(range(8))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in wires + contractions:
        parent[find(a)] = find(b)
    outer = (0, 5, 2, 7)  # new (o1, i1, o2, i2)
    comps: dict = {}
    for port in range(8):
        comps.setdefault(find(port), []).append(port)
    loops = 0
    pairs = []
    for members in comps.values():
        ends = [p for p in members if p in outer]
        if not ends:
            loops += 1
        else:
            assert len(ends) == 2
            pairs.append(tuple(outer.index(p) for p in ends))
    new_pairing = _pairing_of(pairs)
    new_blocks = tuple(blocks[p] for p in outer)
    return (new_pairing, new_blocks), loops


def operator_compose(x: OperatorElt, y: OperatorElt) -> OperatorElt:
    if x.system != y.system:
        raise ValueError(f"system mismatch: {x.system} vs {y.system}")
    n = sym("N")
    out: dict = {}
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            res = _compose_patterns(k1, k2)
            if res is None:
                continue
            key, loops = res
            c = c1 * c2
            if loops:
                c = c * n ** loops
            s = out.get(key)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return OperatorElt(x.system, out, _copy=False)


# ---------------------------------------------------------------------------
# Chord routers (the Casimir of each system, written on the chord's ports)
# ---------------------------------------------------------------------------
# Local chord ports: (p_out, p_in, q_out, q_in).  A router is a pair of wires
# with per-port blocks: ((port, port), (block, block)) x 2.

def _routers(system):
    P = lambda b1, b2, b3, b4: ((("po", "qi"), (b1, b4)), (("pi", "qo"), (b2, b3)))
    E = lambda b1, b2, b3, b4: ((("po", "qo"), (b1, b3)), (("pi", "qi"), (b2, b4)))
    I = lambda: ((("po", "pi"), ("F", "F")), (("qo", "qi"), ("F", "F")))
    if system == "glN":
        return [(ONE, P("F", "F", "F", "F"))]
    if system == "slN":
        return [(ONE, P("F", "F", "F", "F")),
                (-(sym("N") ** -1), I())]
    if system == "soN":
        return [(rat(1, 2), P("F", "F", "F", "F")),
                (rat(-1, 2), E("F", "F", "F", "F"))]
    if system == "sp2N":
        h = rat(1, 2)
        return [
            (h, P("P", "P", "P", "P")),
            (h, P("Q", "Q", "Q", "Q")),
            (h, P("Q", "P", "P", "Q")),   # e_{i+N,j} (x) e_{j,i+N}
            (h, P("P", "Q", "Q", "P")),   # e_{i,j+N} (x) e_{j+N,i}
            (-h, E("P", "P", "Q", "Q")),  # e_{i,j} (x) e_{i+N,j+N}
            (-h, E("Q", "Q", "P", "P")),  # e_{i+N,j+N} (x) e_{i,j}
            (h, E("Q", "P", "P", "Q")),   # e_{i+N,j} (x) e_{i,j+N}
            (h, E("P", "Q", "Q", "P")),   # e_{i,j+N} (x) e_{i+N,j}
        ]
    raise ValueError(f"unknown system {system!r}")


def weight_standard(system, x) -> OperatorElt:
    """State-sum weight system on chord diagrams (symbolic N)."""
    if system not in SYSTEMS:
        raise ValueError(f"unknown system {system!r}; choose from {SYSTEMS}")
    if isinstance(x, JDiagram):
        x = DiagElt(("strand", x.orientations), {x: ONE})
    out = OperatorElt.zero(system)
    for d, c in x.terms.items():
        if not d.is_chord_diagram():
            raise ValueError("weight_standard needs chord diagrams; stu_expand first")
        out = out + _weight_standard_diagram(system, d).scale(c)
    return out


@lru_cache(maxsize=None)
def _weight_standard_diagram(system, d: JDiagram) -> OperatorElt:
    if d.orientations != ("+", "+"):
        raise ValueError("weight systems implemented on two downward strands")
    routers = _routers(system)
    partner = d.partner_map()
    chords = []
    seen = set()
    for s in d.strands:
        for h in s:
            if h in seen:
                continue
            seen.add(h)
            seen.add(partner[h])
            chords.append((h, partner[h]))
    # ports: ("o", leg) row and ("i", leg) column per leg; outer strand ports
    outer = [("O", 1), ("I", 1), ("O", 2), ("I", 2)]
    n = sym("N")
    total = OperatorElt.zero(system)
    for state in itertools.product(routers, repeat=len(chords)):
        coeff = ONE
        wires = []
        blocks: dict = {}
        ok = True
        for (p, q), (rc, router) in zip(chords, state):
            coeff = coeff * rc
            names = {"po": ("o", p), "pi": ("i", p), "qo": ("o", q), "qi": ("i", q)}
            for (a, b), (ba, bb) in router:
                wires.append((names[a], names[b]))
                for port, blk in ((names[a], ba), (names[b], bb)):
                    old = blocks.get(port, "F")
                    if old != "F" and blk != "F" and old != blk:
                        ok = False
                    blocks[port] = blk if blk != "F" else old
        if not ok:
            continue
        # strand chain wires: O_si ~ row(l1), col(l_j) ~ row(l_{j+1}),
        # col(l_k) ~ I_si; empty strand: O_si ~ I_si
        for si, s in enumerate(d.strands, start=1):
            legs = list(s)
            if not legs:
                wires.append((("O", si), ("I", si)))
                continue
            wires.append((("O", si), ("o", legs[0])))
            for a, b in zip(legs, legs[1:]):
                wires.append((("i", a), ("o", b)))
            wires.append((("i", legs[-1]), ("I", si)))
        # propagate block equality along chain wires (chain wires = same value)
        chain_wires = wires[2 * len(chords):]
        changed = True
        while changed:
            changed = False
            for a, b in chain_wires:
                ba, bb = blocks.get(a, "F"), blocks.get(b, "F")
                if ba == bb:
                    continue
                if ba != "F" and bb != "F":
                    ok = False
                    break
                blocks[a] = blocks[b] = ba if ba != "F" else bb
                changed = True
            if not ok:
                break
        if not ok:
            continue
        # union-find over all ports
        parent: dict = {}

        def find(a):
            parent.setdefault(a, a)
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in wires:
            parent.setdefault(a, a)
            parent.setdefault(b, b)
            parent[find(a)] = find(b)
        comps: dict = {}
        for port in parent:
            comps.setdefault(find(port), []).append(port)
        loops = 0
        pairs = []
        free_components = []
        outer_map = {("O", 1): 0, ("I", 1): 1, ("O", 2): 2, ("I", 2): 3}
        port_at = [None] * 4
        for members in comps.values():
            ends = [p for p in members if p in outer_map]
            if not ends:
                loops += 1
            else:
                pairs.append(tuple(sorted(outer_map[p] for p in ends)))
                for p in ends:
                    port_at[outer_map[p]] = p
        pairing = _pairing_of(pairs)
        coeff = coeff * n ** loops if loops else coeff
        out_blocks = [blocks.get(p, "F") for p in
                      (("O", 1), ("I", 1), ("O", 2), ("I", 2))]
        # expand unconstrained open components over the blocks for sp
        if system == "sp2N":
            comp_of = {}
            for members in comps.values():
                ends = [p for p in members if p in outer_map]
                if ends:
                    for p in ends:
                        comp_of[outer_map[p]] = tuple(sorted(outer_map[q]
                                                             for q in ends))
            free_pairs = sorted({comp_of[i] for i in range(4)
                                 if out_blocks[i] == "F"})
            choices = itertools.product("PQ", repeat=len(free_pairs))
        else:
            free_pairs = []
            choices = [()]
        for choice in choices:
            bl = list(out_blocks)
            for pair, blk in zip(free_pairs, choice):
                for i in pair:
                    bl[i] = blk
            key = (pairing, tuple(bl))
            total = total + OperatorElt(system, {key: coeff}, _copy=False)
    return total


# ---------------------------------------------------------------------------
# Universal sl2
# ---------------------------------------------------------------------------

_CASIMIR = (("e", "f", Fraction(1)), ("f", "e", Fraction(1)),
            ("h", "h", Fraction(1, 2)))
# [e,f] = h, [h,e] = 2e, [h,f] = -2f
_BRACKET = {
    ("e", "f"): {"h": 1}, ("f", "e"): {"h": -1},
    ("h", "e"): {"e": 2}, ("e", "h"): {"e": -2},
    ("h", "f"): {"f": -2}, ("f", "h"): {"f": 2},
}
# trace form on sl2: B(e,f)=1, B(h,h)=2
_B = {("e", "f"): Fraction(1), ("f", "e"): Fraction(1), ("h", "h"): Fraction(2)}


def _vertex_factor(x, y, z) -> Fraction:
    """-B([x, y], z) for basis letters."""
    out = Fraction(0)
    for w, c in _BRACKET.get((x, y), {}).items():
        out += c * _B.get((w, z), Fraction(0))
    return -out


class Usl2TensorElt:
    """U(sl2) (x) U(sl2) in PBW coordinates f^p h^q e^r per slot."""

    __slots__ = ("terms",)

    def __init__(self, terms=None, _copy=True):
        if terms is None:
            self.terms = {}
        elif _copy:
            self.terms = {k: c for k, c in terms.items() if not c.is_zero()}
        else:
            self.terms = terms

    @staticmethod
    def unit():
        return Usl2TensorElt({((0, 0, 0), (0, 0, 0)): ONE}, _copy=False)

    @staticmethod
    def zero():
        return Usl2TensorElt({}, _copy=False)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return Usl2TensorElt(out, _copy=False)

    def __neg__(self):
        return Usl2TensorElt({k: -c for k, c in self.terms.items()}, _copy=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = FormalScalar.coerce(c)
        out = {}
        for k, s in self.terms.items():
            p = s * c
            if not p.is_zero():
                out[k] = p
        return Usl2TensorElt(out, _copy=False)

    def __mul__(self, other):
        out: dict = {}
        for (a1, a2), c1 in self.terms.items():
            for (b1, b2), c2 in other.terms.items():
                c = c1 * c2
                for m1, k1 in _mono_mul(a1, b1):
                    for m2, k2 in _mono_mul(a2, b2):
                        key = (m1, m2)
                        cc = c * (k1 * k2)
                        s = out.get(key)
                        s = cc if s is None else s + cc
                        if s.is_zero():
                            out.pop(key, None)
                        else:
                            out[key] = s
        return Usl2TensorElt(out, _copy=False)

    def __eq__(self, other):
        return isinstance(other, Usl2TensorElt) and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"

        def mono(m):
            p, q, r = m
            return "".join(["f" * p, "h" * q, "e" * r]) or "1"

        return " + ".join(f"({c})*{mono(k[0])}(x){mono(k[1])}"
                          for k, c in sorted(self.terms.items()))

    __repr__ = __str__


@lru_cache(maxsize=None)
def _mono_times_gen(m: tuple, g: str) -> tuple:
    p, q, r = m
    if g == "e":
        return (((p, q, r + 1), Fraction(1)),)
    if g == "h":
        out = {(p, q + 1, r): Fraction(1)}
        if r:
            out[(p, q, r)] = Fraction(-2 * r)
        return tuple(sorted(out.items()))
    # g == "f"
    if r > 0:
        # (p,q,r).f = ((p,q,r-1).f).e + (p,q,r-1).h
        acc: dict = {}
        for m2, c in _mono_times_gen((p, q, r - 1), "f"):
            for m3, c2 in _mono_times_gen(m2, "e"):
                acc[m3] = acc.get(m3, 0) + c * c2
        for m2, c in _mono_times_gen((p, q, r - 1), "h"):
            acc[m2] = acc.get(m2, 0) + c
        return tuple(sorted((k, v) for k, v in acc.items() if v))
    # h^q f = f (h-2)^q
    from math import comb
    out = {}
    for k in range(q + 1):
        out[(p + 1, k, 0)] = Fraction(comb(q, k)) * Fraction(-2) ** (q - k)
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def _mono_mul(a: tuple, b: tuple) -> tuple:
    p, q, r = b
    states = {a: Fraction(1)}
    for g, count in (("f", p), ("h", q), ("e", r)):
        for _ in range(count):
            new: dict = {}
            for m, c in states.items():
                for m2, c2 in _mono_times_gen(m, g):
                    new[m2] = new.get(m2, 0) + c * c2
            states = {k: v for k, v in new.items() if v}
    return tuple(sorted(states.items()))


def weight_universal_sl2(x) -> Usl2TensorElt:
    """The universal sl2 weight system on Jacobi diagrams over two strands."""
    if isinstance(x, JDiagram):
        x = DiagElt(("strand", x.orientations), {x: ONE})
    out = Usl2TensorElt.zero()
    for d, c in x.terms.items():
        out = out + _weight_sl2_diagram(d).scale(c)
    return out


@lru_cache(maxsize=None)
def _weight_sl2_diagram(d: JDiagram) -> Usl2TensorElt:
    if d.orientations != ("+", "+"):
        raise ValueError("the universal sl2 system is set up on two downward strands")
    edges = list(d.edges)
    total = Usl2TensorElt.zero()
    for state in itertools.product(_CASIMIR, repeat=len(edges)):
        coeff = Fraction(1)
        elem = {}
        for (a, b), (xa, xb, c) in zip(edges, state):
            elem[a], elem[b] = xa, xb
            coeff *= c
        for tri in d.vertices:
            f = _vertex_factor(elem[tri[0]], elem[tri[1]], elem[tri[2]])
            coeff *= f
            if not coeff:
                break
        if not coeff:
            continue
        monos = []
        for s in d.strands:
            states = {(0, 0, 0): Fraction(1)}
            for h in s:
                new: dict = {}
                for mm, c in states.items():
                    for m2, c2 in _mono_times_gen(mm, elem[h]):
                        new[m2] = new.get(m2, 0) + c * c2
                states = new
            monos.append(states)
        acc: dict = {}
        for m1, c1 in monos[0].items():
            for m2, c2 in monos[1].items():
                key = (m1, m2)
                acc[key] = acc.get(key, 0) + coeff * c1 * c2
        total = total + Usl2TensorElt(
            {k: rat(v) for k, v in acc.items() if v}, _copy=False)
    return total


# ---------------------------------------------------------------------------
# Verification entry points
# ---------------------------------------------------------------------------

def skein_verify() -> bool:
    """W_sl2(H) = 2 W_sl2(||) - 2 W_sl2(X) over every embedding of the
    H-pattern on two strands (4 distinguishable ends, all interleavings)."""
    from .diagrams.model import RawDiagram, canonicalize
    ends = ["e1", "e2", "e3", "e4"]
    for mask in range(16):
        s1 = [e for k, e in enumerate(ends) if not (mask >> k) & 1]
        s2 = [e for k, e in enumerate(ends) if (mask >> k) & 1]
        for p1 in itertools.permutations(s1):
            for p2 in itertools.permutations(s2):
                if not _skein_at(list(p1), list(p2)):
                    return False
    return True


def _skein_at(s1, s2) -> bool:
    from .diagrams.model import RawDiagram, DiagElt as DE

    def placed(edges, vertices):
        raw = RawDiagram.on_strands(("+", "+"), [list(s1), list(s2)],
                                    vertices, edges)
        return DE.from_raw(("strand", ("+", "+")), [(raw, ONE)])

    # H: vertices u, v joined by the bar ud-vd; cyclic orders (ud, u1, u2) and
    # (vd, v1, v2); the parallel smoothing joins next(bar) at u with
    # next^2(bar) at v and vice versa
    h = placed([("u1", "e1"), ("u2", "e2"), ("v1", "e3"), ("v2", "e4"),
                ("ud", "vd")],
               [("u1", "u2", "ud"), ("v1", "v2", "vd")])
    par = placed([("e1", "e4"), ("e2", "e3")], [])
    cross = placed([("e1", "e3"), ("e2", "e4")], [])
    lhs = weight_universal_sl2(h)
    rhs = (weight_universal_sl2(par) - weight_universal_sl2(cross)).scale(2)
    return lhs == rhs


def sl2_test_values(cap=3):
    """Values of all chord diagrams and connected Jacobi diagrams up to cap."""
    vals = []
    for deg in range(cap + 1):
        for d in chord_diagrams(("+", "+"), deg):
            vals.append(weight_universal_sl2(d))
    for deg in range(2, cap + 1):
        for d in one_vertex_diagrams(("+", "+"), deg):
            vals.append(weight_universal_sl2(d))
    if cap >= 3:
        from .diagrams import jn_elt
        vals.append(weight_universal_sl2(jn_elt(3)))
    return vals


def _independent_subset(vals, coords):
    """Maximal linearly independent subset (pairwise checks on it cover the
    whole span since the commutator is bilinear)."""
    pivots = {}
    picked = []
    for v in vals:
        vec = coords(v)
        while vec:
            p = min(vec)
            piv = pivots.get(p)
            if piv is None:
                break
            c = vec[p]
            for k, w in piv.items():
                s = vec.get(k, 0) - c * w
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
        if vec:
            lead = vec[min(vec)]
            pivots[min(vec)] = {k: w / lead for k, w in vec.items()}
            picked.append(v)
    return picked


def commutativity_report(system, degree_cap):
    """Check pairwise commutation of weight values; (ok, witness or None)."""
    if degree_cap > 4:
        raise ValueError("state sums are guarded at degree_cap <= 4")
    if system == "sl2":
        if degree_cap > 3:
            raise ValueError("sl2 universal check guarded at degree_cap <= 3")
        vals = sl2_test_values(degree_cap)

        def coords(v):
            return {k: c.as_fraction() for k, c in v.terms.items()}

        basis = _independent_subset(vals, coords)
        for i, a in enumerate(basis):
            for b in basis[i + 1:]:
                if a * b != b * a:
                    return False, (a, b)
        return True, None
    diagrams = [d for deg in range(degree_cap + 1)
                for d in chord_diagrams(("+", "+"), deg)]
    vals = [weight_standard(system, d) for d in diagrams]
    for i, a in enumerate(vals):
        for j in range(i + 1, len(vals)):
            b = vals[j]
            if operator_compose(a, b) != operator_compose(b, a):
                return False, (diagrams[i], diagrams[j])
    return True, None


def annihilates_relations(system, degree_cap=3) -> bool:
    """Well-definedness: every generated STU relation row maps to zero."""
    from .diagrams.relations import relation_space
    for deg in range(2, degree_cap + 1):
        space = relation_space(("+", "+"), deg)
        cols = space.columns
        for row in space.pivots.values():
            x = DiagElt(("strand", ("+", "+")),
                        {cols[i]: rat(v) for i, v in row.items()})
            if system == "sl2":
                if not weight_universal_sl2(x).is_zero():
                    return False
            else:
                if not weight_standard(system, x).is_zero():
                    return False
    return True

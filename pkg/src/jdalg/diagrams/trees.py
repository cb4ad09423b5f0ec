"""Comb diagrams, the strand-forgetting map tau, the leg-joining bracket,
and the rooted-tree expansion eta into free-Lie monomials.

Cyclic orders follow the counterclockwise convention of planar pictures:
the degree-n comb J_n has a vertical spine, a top rung and a bottom rung
reaching strand 2, and n-3 middle rungs on strand 1.  Signs of the joining
bracket and of eta are pinned by the STU bubble-sort identity
tau(x.y - y.x) = [tau x, tau y]_1 (checked exhaustively in tests).
"""

from __future__ import annotations

from ..lie import LieElt, lie_bracket
from ..scalars import FormalScalar, ONE, ZERO
from .model import DiagElt, JDiagram, RawDiagram, canonicalize
from .ops import stack_commutator_connected


def _jn_raw(n: int) -> RawDiagram:
    """The degree-n comb on two downward strands, as drawn (n+1 legs)."""
    if n < 3:
        raise ValueError("the comb shape needs n >= 3")
    m = n - 3  # middle rungs
    tl, tr, bl, br = "tl", "tr", "bl", "br"
    mids = [f"m{i}" for i in range(m)]
    strand1 = [tl] + mids + [bl]
    strand2 = [tr, br]
    vertices = []
    edges = []
    # top vertex: cyclic (east, west, south) = (to tr, to tl, spine down)
    vertices.append(("vt_e", "vt_w", "vt_s"))
    edges += [("vt_e", tr), ("vt_w", tl)]
    prev_down = "vt_s"
    # middle vertices: cyclic (north, west, south) = (up, to leg, down)
    for i in range(m):
        vertices.append((f"u{i}_n", f"u{i}_w", f"u{i}_s"))
        edges += [(prev_down, f"u{i}_n"), (f"u{i}_w", mids[i])]
        prev_down = f"u{i}_s"
    # bottom vertex: cyclic (east, north, west) = (to br, up, to bl)
    vertices.append(("vb_e", "vb_n", "vb_w"))
    edges += [(prev_down, "vb_n"), ("vb_e", br), ("vb_w", bl)]
    return RawDiagram.on_strands(("+", "+"), [strand1, strand2], vertices, edges)


def jn_elt(n: int, cap=None) -> DiagElt:
    """J_n as an element (canonical diagram with the figure's sign folded in)."""
    return DiagElt.from_raw(("strand", ("+", "+")), [(_jn_raw(n), ONE)], cap)


def make_jn(n: int) -> JDiagram:
    """Canonical representative of the degree-n comb (sign lives in jn_elt)."""
    return canonicalize(_jn_raw(n))[0]


def _jtilde_raw(n: int) -> RawDiagram:
    """The colored comb exactly as displayed: a-legs left, b-legs at the ends."""
    raw = _jn_raw(n)
    colors = {}
    for si, s in enumerate(raw.strands):
        for h in s:
            colors[h] = "ab"[si]
    return RawDiagram.colored(colors, raw.vertices, raw.edges)


def jtilde_elt(n: int, cap=None) -> DiagElt:
    """tilde-J_n as an element; zero for even n (the 180-degree rotation is an
    automorphism reversing n-1 cyclic orders, so AS kills the even combs)."""
    return DiagElt.from_raw(("colored", frozenset("ab")), [(_jtilde_raw(n), ONE)],
                            cap)


def make_jtilde(n: int) -> JDiagram:
    res = canonicalize(_jtilde_raw(n))
    if res is None:
        raise ValueError(f"the colored comb vanishes by AS for even n (n={n})")
    return res[0]


def tau_diagram(d: JDiagram, colors):
    """tau of one diagram: None if b1 > 0 or AS-zero, else (diagram, sign)."""
    if d.betti1() > 0:
        return None
    cmap = {}
    for si, s in enumerate(d.strands):
        for h in s:
            cmap[h] = colors[si]
    return canonicalize(RawDiagram.colored(cmap, d.vertices, d.edges))


def tau(x: DiagElt, colors=("a", "b")) -> DiagElt:
    """Loop-killing, strand-forgetting recoloring map."""
    if x.signature[0] != "strand":
        raise ValueError("tau applies to strand elements")
    if len(colors) != len(x.signature[1]):
        raise ValueError("one color per strand")
    sig = ("colored", frozenset(colors))
    out: dict = {}
    for d, c in x.terms.items():
        res = tau_diagram(d, colors)
        if res is None:
            continue
        td, sign = res
        cc = c if sign > 0 else -c
        s = out.get(td)
        s = cc if s is None else s + cc
        if s.is_zero():
            out.pop(td, None)
        else:
            out[td] = s
    return DiagElt(sig, out, x.cap, _copy=False)


# ---------------------------------------------------------------------------
# Leg-joining bracket on colored tree diagrams
# ---------------------------------------------------------------------------

def _is_tree(d: JDiagram) -> bool:
    return d.betti1() == 0


def connect_bracket(x: DiagElt, y: DiagElt) -> DiagElt:
    """[x, y]_1: join same-colored legs u in x, u' in y at a new vertex
    with cyclic order (new leg, u'-side, u-side)."""
    if x.signature[0] != "colored" or y.signature[0] != "colored":
        raise ValueError("connect_bracket needs colored elements")
    sig = ("colored", x.signature[1] | y.signature[1])
    pairs = []
    for dx, cx in x.terms.items():
        if not _is_tree(dx):
            raise ValueError("connect_bracket needs tree diagrams")
        for dy, cy in y.terms.items():
            if not _is_tree(dy):
                raise ValueError("connect_bracket needs tree diagrams")
            coeff = cx * cy
            pairs += [(raw, coeff) for raw in _joins(dx, dy)]
    return DiagElt.from_raw(sig, pairs)


def _joins(dx: JDiagram, dy: JDiagram):
    off = 10000
    out = []
    ycolors = {l + off: c for l, c in dy.leg_colors}
    yverts = [tuple(h + off for h in v) for v in dy.vertices]
    yedges = [tuple(h + off for h in e) for e in dy.edges]
    merged_colors = dict(ycolors)
    for l, c in dx.leg_colors:
        merged_colors[l] = c
    partner = {}
    for a, b in list(dx.edges) + yedges:
        partner[a] = b
        partner[b] = a
    base = off * 2
    for u, cu in dx.leg_colors:
        for v0, cv in dy.leg_colors:
            v = v0 + off
            if cu != cv:
                continue
            d_leg, h_d, h_u, h_v = base, base + 1, base + 2, base + 3
            colors = {l: c for l, c in merged_colors.items() if l not in (u, v)}
            colors[d_leg] = cu
            # vertex cyclic (down, y-side, x-side)
            vertices = list(dx.vertices) + yverts + [(h_d, h_v, h_u)]
            edges = [e for e in list(dx.edges) + yedges
                     if u not in e and v not in e]
            edges += [(d_leg, h_d), (h_u, partner[u]), (h_v, partner[v])]
            out.append(RawDiagram.colored(colors, vertices, edges))
    return out


# ---------------------------------------------------------------------------
# eta: rooted binary-tree reading into the free Lie algebra on the colors
# ---------------------------------------------------------------------------

def eta(x: DiagElt, alphabet=None) -> dict:
    """Sum over legs u of color(u) (x) (the tree rooted at u as a Lie word).

    Returns {root color: LieElt over the sorted color alphabet}.
    Entering a vertex from p with cyclic order (p, s, t) reads [value(t),
    value(s)].
    """
    if x.signature[0] != "colored":
        raise ValueError("eta applies to colored elements")
    if alphabet is None:
        alphabet = tuple(sorted(x.signature[1]))
    out = {c: LieElt.zero(alphabet) for c in alphabet}
    for d, coeff in x.terms.items():
        if not (_is_tree(d) and d.is_connected()):
            raise ValueError("eta needs connected tree diagrams")
        colors = dict(d.leg_colors)
        partner = d.partner_map()
        at_vertex = {}
        for vi, tri in enumerate(d.vertices):
            for pos, h in enumerate(tri):
                at_vertex[h] = (vi, pos)

        def value_from(h) -> LieElt:
            """Lie monomial of the subtree on the far side of half-edge h."""
            p = partner[h]
            if p in colors:
                return LieElt.letter(alphabet, colors[p])
            vi, pos = at_vertex[p]
            tri = d.vertices[vi]
            s, t = tri[(pos + 1) % 3], tri[(pos + 2) % 3]
            return lie_bracket(value_from(t), value_from(s))

        for u, cu in d.leg_colors:
            out[cu] = out[cu] + value_from(u).scale(coeff)
    return out


# ---------------------------------------------------------------------------
# The commutation certificate
# ---------------------------------------------------------------------------

def prop44_certificate(n: int):
    """Projected eta-image of [tau J3, tau J_{2n+1}]_1.

    Returns (LieElt over (a, b), nonzero flag): the b-rooted component in
    multidegree (a: 2n+2, b: 2); nonzero exactly for n >= 2.
    """
    if n < 1:
        raise ValueError("n >= 1")
    from ..lie import multidegree_project
    j3 = tau(jn_elt(3), ("a", "b"))
    jbig = tau(jn_elt(2 * n + 1), ("a", "b"))
    bracket = connect_bracket(j3, jbig)
    if bracket.is_zero():
        return LieElt.zero(("a", "b")), False
    comp = eta(bracket)["b"]
    cert = multidegree_project(comp, {"a": 2 * n + 2, "b": 2})
    return cert, not cert.is_zero()


def display_comb_certificate(n: int) -> LieElt:
    """Independent expansion of the three-rooted-tree display: the joined comb
    read at its three b-legs gives 4*(-T1 + T2 - T3) in the (a:2n+2, b:2)
    multidegree.  Reading the planar pictures counterclockwise
    (value entering p = [value(next^2 p), value(next p)]):

        T1 = [a, [a, [b, P]]]
        T2 = [[[b, a], a], P]
        T3 = [[...[[[[b, a], a], b], a]..., a], a]   ((2n-1)+1 a-appends)

    with P = [a, [a, ... [a, b] ...]] carrying 2n a's in total.
    """
    from ..lie import lie_normalize
    a, b = ("letter", "a"), ("letter", "b")
    k = 2 * n - 1

    def prepend_a(t, times):
        for _ in range(times):
            t = ("bracket", a, t)
        return t

    def append_a(t, times):
        for _ in range(times):
            t = ("bracket", t, a)
        return t

    p = prepend_a(("bracket", a, b), k)
    t1 = ("bracket", a, ("bracket", a, ("bracket", b, p)))
    t2 = ("bracket", ("bracket", ("bracket", b, a), a), p)
    base = ("bracket", ("bracket", ("bracket", b, a), a), b)
    t3 = append_a(base, k + 1)
    combo = ("sum", [("scale", -1, t1), t2, ("scale", -1, t3)])
    return lie_normalize(combo, ("a", "b")).scale(4)

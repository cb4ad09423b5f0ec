"""Truncated associator values on three strands and the twisting operation.

The two available series are the KZ logarithm through degree 4 (z symbolic)
and the general rational family through degree 5 (lambda1, lambda2 symbolic
or rational); both are pushed into chord diagrams along A -> t12-chord,
B -> t23-chord and exponentiated.  Twisting by a symmetric counital F is
(1 (x) F) . (Delta_2 F) . Phi . (Delta_1 F^-1) . (F^-1 (x) 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .diagrams import (DiagElt, RawDiagram, chord_elt, delete_strand, diag_exp,
                       diag_inverse, diag_log, double_strand, jn_elt,
                       permute_strands, reduce_all, relation_space, stack,
                       stu_expand, tensor)
from .grt_elements import log_general_series, log_kz_series
from .lie import LieElt, lie_substitute
from .scalars import FormalScalar, ONE, rat, sym

DDD = ("+", "+", "+")
SIG3 = ("strand", DDD)


def _diag_bracket(x: DiagElt, y: DiagElt) -> DiagElt:
    return stack(x, y) - stack(y, x)


def horizontal_image(series: LieElt, cap: int) -> DiagElt:
    """Push a Lie series in (A, B) into chord diagrams on three strands."""
    images = {"A": chord_elt(DDD, 1, 2, cap), "B": chord_elt(DDD, 2, 3, cap)}
    return lie_substitute(series.truncate(cap), images, bracket=_diag_bracket)


@dataclass
class AssocSeries:
    kind: str
    params: dict
    cap: int
    log_series: LieElt
    value: DiagElt = field(default=None)

    def __post_init__(self):
        if self.value is None:
            self.value = diag_exp(horizontal_image(self.log_series, self.cap)
                                  .with_cap(self.cap))


def associator_series(kind: str, params=None, cap: int = None) -> AssocSeries:
    params = dict(params or {})
    if kind == "kz4":
        cap = 4 if cap is None else cap
        if cap > 4:
            raise ValueError("the KZ series is available through degree 4 only")
        return AssocSeries("kz4", {"z": "sym"}, cap, log_kz_series())
    if kind == "general5":
        cap = 5 if cap is None else cap
        if cap > 5:
            raise ValueError("the general rational family stops at degree 5")
        series = log_general_series(params.get("lambda1"), params.get("lambda2"))
        return AssocSeries("general5", params, cap, series)
    raise ValueError(f"unknown associator kind {kind!r} (kz4 | general5)")


# ---------------------------------------------------------------------------
# Twisting
# ---------------------------------------------------------------------------

def check_twistor(f: DiagElt) -> None:
    if f.signature != ("strand", ("+", "+")):
        raise ValueError("twistors live on two downward strands")
    if f.constant_term() != ONE:
        raise ValueError("twistor needs constant term 1")
    if permute_strands(f, (2, 1)) != f:
        raise ValueError("twistor fails the symmetry F^{21} = F")
    one = DiagElt.unit(("+",), f.cap)
    if delete_strand(f, 1) != one or delete_strand(f, 2) != one:
        raise ValueError("twistor fails the counit conditions")


def twist(phi: DiagElt, f: DiagElt, cap: int) -> DiagElt:
    """The twisted associator (1(x)F).(Delta_2 F).Phi.(Delta_1 F^-1).(F^-1(x)1)."""
    f = f.with_cap(cap)
    check_twistor(f)
    phi = phi.with_cap(cap)
    f_inv = diag_inverse(f)
    one1 = DiagElt.unit(("+",), cap)
    out = tensor(one1, f)
    out = stack(out, double_strand(f, 2))
    out = stack(out, phi)
    out = stack(out, double_strand(f_inv, 1))
    out = stack(out, tensor(f_inv, one1))
    return out


def twistor_j3(alpha=None, cap: int = 4) -> DiagElt:
    """F = 1 + alpha*J3 (the degree-3 comb), alpha symbolic by default."""
    alpha = sym("alpha") if alpha is None else FormalScalar.coerce(alpha)
    return DiagElt.unit(("+", "+"), cap) + jn_elt(3, cap).scale(alpha)


def twistor_cross_chords(cap: int = 4) -> DiagElt:
    """F = 1 + (crossed double chord), the non-horizontal twist example."""
    raw = RawDiagram.on_strands(("+", "+"), [[0, 1], [2, 3]], [],
                                [(0, 3), (1, 2)])
    x = DiagElt.from_raw(("strand", ("+", "+")), [(raw, ONE)], cap)
    return DiagElt.unit(("+", "+"), cap) + x


# ---------------------------------------------------------------------------
# Axiom residuals
# ---------------------------------------------------------------------------

def r_matrix(i: int, j: int, cap: int, inverse=False) -> DiagElt:
    """R^{ij} = exp(+-(1/2) chord between strands i and j) on three strands."""
    half = rat(-1, 2) if inverse else rat(1, 2)
    return diag_exp(chord_elt(DDD, i, j, cap).scale(half))


def axiom_residuals(phi: DiagElt, cap: int):
    """Reduced LHS-RHS of the four associator axioms; {} means it vanishes.

    Returns a dict with keys "pentagon", "hexagon", "counit", "inversion";
    values are {degree: nonzero reduced coordinates}.
    """
    if cap > 4:
        raise ValueError("axiom checks on diagrams are guarded at cap 4")
    phi = phi.with_cap(cap)
    out = {}
    # (1) on four strands
    one1 = DiagElt.unit(("+",), cap)
    lhs = stack(stack(tensor(one1, phi), double_strand(phi, 2)),
                tensor(phi, one1))
    rhs = stack(double_strand(phi, 3), double_strand(phi, 1))
    out["pentagon"] = reduce_all(stu_expand(lhs - rhs))
    # (2) on three strands
    r2 = diag_exp(chord_elt(("+", "+"), 1, 2, cap).scale(rat(1, 2)))
    lhs = stack(stack(permute_strands(phi, (2, 3, 1)), double_strand(r2, 2)), phi)
    rhs = stack(stack(r_matrix(1, 3, cap), permute_strands(phi, (2, 1, 3))),
                r_matrix(1, 2, cap))
    out["hexagon"] = reduce_all(stu_expand(lhs - rhs))
    # (3) counits
    counit = {}
    unit2 = DiagElt.unit(("+", "+"), cap)
    for i in (1, 2, 3):
        diff = delete_strand(phi, i) - unit2
        for deg, coords in reduce_all(stu_expand(diff)).items():
            counit[(i, deg)] = coords
    out["counit"] = counit
    # (4) inversion
    diff = diag_inverse(phi) - permute_strands(phi, (3, 2, 1))
    out["inversion"] = reduce_all(stu_expand(diff))
    return out


# ---------------------------------------------------------------------------
# The central-twist phenomenon
# ---------------------------------------------------------------------------

def horizontal_span_coords(degree: int):
    """Reduced coordinates of the horizontal subspace of A_degree(3 strands)."""
    import itertools
    from .diagrams import horizontal_from_word
    space = relation_space(DDD, degree)
    rows = []
    pairs = [(1, 2), (1, 3), (2, 3)]
    for word in itertools.product(pairs, repeat=degree):
        x = horizontal_from_word(DDD, list(word))
        coords = reduce_all(x.homogeneous_part(degree))
        rows.append(coords.get(degree, {}))
    return rows


def _in_span(vec: dict, rows: list) -> bool:
    """Membership of a rational vector in the rational span of rows."""
    pivots: dict = {}
    for row in rows:
        row = {k: Fraction(str(v)) if not hasattr(v, "as_fraction") else v.as_fraction()
               for k, v in row.items()}
        while row:
            p = min(row)
            piv = pivots.get(p)
            if piv is None:
                pivots[p] = {k: v / row[p] for k, v in row.items()}
                break
            c = row[p]
            row = {k: v - c * piv.get(k, 0) for k, v in row.items()}
            row = {k: v for k, v in row.items() if v}
    vec = {k: v.as_fraction() for k, v in vec.items()}
    while vec:
        p = min(vec)
        piv = pivots.get(p)
        if piv is None:
            return False
        c = vec[p]
        vec = {k: v - c * piv.get(k, 0) for k, v in vec.items()}
        vec = {k: v for k, v in vec.items() if v}
    return True


def prop15_check(cap: int = 4):
    """The non-horizontal central twist: returns (shift_ok, nonhorizontal,
    conjugation_identity) for F = 1 + crossed-double-chord."""
    if cap < 2:
        raise ValueError("needs cap >= 2")
    phi = associator_series("general5", {}, cap).value
    f = twistor_cross_chords(cap)
    twisted = twist(phi, f, cap)
    # (a) degree-2 shift equals 2([t12,t23] + t12 t13 - t23 t13)
    t12, t23, t13 = (chord_elt(DDD, i, j, cap) for (i, j) in
                     ((1, 2), (2, 3), (1, 3)))
    want = (_diag_bracket(t12, t23) + stack(t12, t13)
            - stack(t23, t13)).scale(rat(2))
    diff = (twisted - phi).homogeneous_part(2) - want.homogeneous_part(2)
    shift_ok = not reduce_all(stu_expand(diff))
    # (a') the twisted degree-2 part is not horizontal
    rows = horizontal_span_coords(2)
    coords = reduce_all(stu_expand(twisted.homogeneous_part(2))).get(2, {})
    phi_coords = reduce_all(stu_expand(phi.homogeneous_part(2))).get(2, {})
    nonhorizontal = (not _in_span(coords, rows)) and _in_span(phi_coords, rows)
    # (b) conjugation by F is the identity modulo relations, inputs deg <= 3
    from .diagrams import chord_diagrams
    conj_ok = True
    f2 = f.with_cap(cap + 2)
    f2_inv = diag_inverse(f2)
    for deg in (1, 2, 3):
        for d in chord_diagrams(("+", "+"), deg):
            x = DiagElt(("strand", ("+", "+")), {d: ONE}, cap + 2)
            diffb = (stack(stack(f2, x), f2_inv) - x).truncate(min(cap + 2, 5))
            if reduce_all(stu_expand(diffb)):
                conj_ok = False
    return shift_ok, nonhorizontal, conj_ok

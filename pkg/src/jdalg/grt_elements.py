"""Low-degree generators of the graded Grothendieck-Teichmueller Lie algebra.

Everything lives in the free Lie algebra on the ordered alphabet (A, B).
C(k, l) = ad_B^(k-1) ad_A^(l-1) [A, B]; the sigma elements are the explicit
degree-3/5/7 combinations, and {.,.} is the Ihara bracket built from the
derivations D_psi with D(A) = 0, D(B) = [psi, B].
"""

from __future__ import annotations

from fractions import Fraction

from .lie import LieElt, lie_bracket, std_factorization
from .scalars import FormalScalar, rat, sym

AB = ("A", "B")


def _A() -> LieElt:
    return LieElt.letter(AB, "A")


def _B() -> LieElt:
    return LieElt.letter(AB, "B")


def c_generator(k: int, l: int) -> LieElt:
    if k < 1 or l < 1:
        raise ValueError(f"c_generator needs k,l >= 1, got ({k},{l})")
    x = lie_bracket(_A(), _B())
    a, b = _A(), _B()
    for _ in range(l - 1):
        x = lie_bracket(a, x)
    for _ in range(k - 1):
        x = lie_bracket(b, x)
    return x


def derivation(psi: LieElt, x: LieElt) -> LieElt:
    """D_psi(x) for the derivation with D(A) = 0, D(B) = [psi, B]."""
    if psi.alphabet != AB or x.alphabet != AB:
        raise ValueError("ihara derivations live on the (A, B) alphabet")
    d_b = lie_bracket(psi, _B())
    images = {}  # Lyndon word -> derivative, memoized per call

    def d_word(w):
        got = images.get(w)
        if got is not None:
            return got
        if len(w) == 1:
            val = d_b if w[0] == 1 else LieElt.zero(AB)
        else:
            u, v = std_factorization(w)
            bu = LieElt(AB, {u: rat(1)})
            bv = LieElt(AB, {v: rat(1)})
            val = lie_bracket(d_word(u), bv) + lie_bracket(bu, d_word(v))
        images[w] = val
        return val

    out = LieElt.zero(AB)
    for w, c in x.terms.items():
        out = out + d_word(w).scale(c)
    return out


def ihara_bracket(psi1: LieElt, psi2: LieElt) -> LieElt:
    """{psi1, psi2} = D_psi1(psi2) - D_psi2(psi1) - [psi1, psi2]."""
    if psi1.alphabet != AB or psi2.alphabet != AB:
        raise ValueError("ihara bracket lives on the (A, B) alphabet")
    return derivation(psi1, psi2) - derivation(psi2, psi1) - lie_bracket(psi1, psi2)


def _c(k, l):
    return c_generator(k, l)


def _br(x, y):
    return lie_bracket(x, y)


def sigma_element(which) -> LieElt:
    """sigma_3, sigma_5, sigma_7, or the printed {sigma_3, sigma_5} combination."""
    if which == 3:
        return _c(1, 2) + _c(2, 1)
    if which == 5:
        return (_c(1, 4) + _c(4, 1)
                + (_c(2, 3) + _c(3, 2)).scale(2)
                + _br(_c(1, 1), _c(1, 2)).scale(Fraction(1, 2))
                + _br(_c(1, 1), _c(2, 1)).scale(Fraction(3, 2)))
    if which == 7:
        h = Fraction
        out = (_c(1, 6) + _c(6, 1)
               + (_c(2, 5) + _c(5, 2)).scale(3)
               + (_c(3, 4) + _c(4, 3)).scale(5)
               + _br(_c(1, 1), _c(1, 4)).scale(4)
               + _br(_c(1, 1), _c(2, 3)).scale(13)
               + _br(_c(1, 1), _c(3, 2)).scale(12)
               + _br(_c(1, 1), _c(4, 1)).scale(5)
               + _br(_c(1, 2), _c(1, 3)).scale(3)
               + _br(_c(1, 2), _c(2, 2)).scale(h(61, 16))
               + _br(_c(1, 2), _c(3, 1)).scale(h(-19, 16))
               + _br(_c(2, 1), _c(1, 3)).scale(h(99, 16))
               + _br(_c(2, 1), _c(2, 2)).scale(h(179, 16))
               + _br(_c(2, 1), _c(3, 1)).scale(3)
               + _br(_c(1, 1), _br(_c(1, 1), _c(1, 2))).scale(h(65, 16))
               + _br(_c(1, 1), _br(_c(1, 1), _c(2, 1))).scale(h(17, 16)))
        return out
    if which == "bracket35":  # the printed degree-8 expansion of {sigma_3, sigma_5}
        h = Fraction
        out = (_br(_c(1, 1), _c(1, 5)).scale(-2)
               + _br(_c(1, 1), _c(2, 4)).scale(-5)
               + _br(_c(1, 1), _c(4, 2)).scale(5)
               + _br(_c(1, 1), _c(5, 1)).scale(2)
               + _br(_c(1, 1), _br(_c(1, 1), _c(1, 3))).scale(-4)
               + _br(_c(1, 1), _br(_c(1, 1), _c(2, 2))).scale(9)
               + _br(_c(1, 1), _br(_c(1, 1), _c(3, 1))).scale(6)
               + _br(_c(1, 2), _c(1, 4)).scale(-5)
               + _br(_c(1, 2), _c(2, 3)).scale(-9)
               + _br(_c(1, 2), _c(3, 2)).scale(h(3, 2))
               + _br(_c(1, 2), _c(4, 1)).scale(h(7, 2))
               + _br(_c(1, 2), _br(_c(1, 1), _c(1, 2))).scale(h(-11, 2))
               + _br(_c(1, 2), _br(_c(1, 1), _c(2, 1))).scale(h(3, 2))
               + _br(_c(2, 1), _c(1, 4)).scale(h(-7, 2))
               + _br(_c(2, 1), _c(2, 3)).scale(h(-3, 2))
               + _br(_c(2, 1), _c(3, 2)).scale(9)
               + _br(_c(2, 1), _c(4, 1)).scale(5)
               + _br(_c(2, 1), _br(_c(1, 1), _c(2, 1))).scale(h(7, 2))
               + _br(_c(1, 3), _c(2, 2)).scale(h(3, 2))
               + _br(_c(1, 3), _c(3, 1)).scale(3)
               + _br(_c(2, 2), _c(3, 1)).scale(h(3, 2)))
        return out
    raise ValueError(f"unsupported sigma element {which!r}")


# ---------------------------------------------------------------------------
# Logarithms of the two truncated associator series
# ---------------------------------------------------------------------------

def log_kz_series() -> LieElt:
    """log of the KZ series through degree 4, with z symbolic.

    (1/24)[A,B] - z[A+B,[A,B]] - (1/1440)([A,[A,[A,B]]] - [B,[B,[B,A]]])
    - (1/11520)([A,[B,[A,B]]] - [B,[A,[B,A]]]),  z = zeta(3)/(2 pi i)^3.
    """
    a, b = _A(), _B()
    ab = lie_bracket(a, b)
    out = ab.scale(Fraction(1, 24))
    out = out - lie_bracket(a + b, ab).scale(sym("z"))
    d4a = lie_bracket(a, lie_bracket(a, ab)) - lie_bracket(b, lie_bracket(b, lie_bracket(b, a)))
    out = out - d4a.scale(Fraction(1, 1440))
    d4b = lie_bracket(a, lie_bracket(b, ab)) - lie_bracket(b, lie_bracket(a, lie_bracket(b, a)))
    return out - d4b.scale(Fraction(1, 11520))


def log_general_series(l1=None, l2=None) -> LieElt:
    """log of the general rational associator family through degree 5.

    (1/24)C11 + l1*sigma3 - (1/1440)(C13+C31) - (1/5760)C22 + l2*sigma5
    + (l1/24)(C23 + C32 + (1/2)[C11,C12] + (1/2)[C11,C21]);
    l1, l2 default to the symbols lambda1, lambda2.
    """
    l1 = sym("lambda1") if l1 is None else FormalScalar.coerce(l1)
    l2 = sym("lambda2") if l2 is None else FormalScalar.coerce(l2)
    out = _c(1, 1).scale(Fraction(1, 24))
    out = out + sigma_element(3).scale(l1)
    out = out - (_c(1, 3) + _c(3, 1)).scale(Fraction(1, 1440))
    out = out - _c(2, 2).scale(Fraction(1, 5760))
    out = out + sigma_element(5).scale(l2)
    tail = (_c(2, 3) + _c(3, 2)
            + _br(_c(1, 1), _c(1, 2)).scale(Fraction(1, 2))
            + _br(_c(1, 1), _c(2, 1)).scale(Fraction(1, 2)))
    return out + tail.scale(l1 * rat(1, 24))

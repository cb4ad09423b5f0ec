"""Degree-truncated noncommutative power series over the exact scalars.

NCElt is the free associative algebra on named generators, truncated at an
explicit cap; mixing caps takes the minimum, and every binary operation
checks caps.  exp and log are exact truncated series; group-likeness of a
series with constant term 1 is decided by the Dynkin idempotent on each
homogeneous part of its logarithm.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .scalars import FormalScalar, ONE, ZERO


class NCElt:
    """terms[d] maps words (letter-index tuples) of length d to scalars."""

    __slots__ = ("generators", "cap", "terms")

    def __init__(self, generators, cap, terms=None, _copy=True):
        self.generators = tuple(generators)
        self.cap = cap
        if terms is None:
            self.terms = {}
        elif _copy:
            self.terms = {}
            for d, comp in terms.items():
                if d > cap:
                    continue
                comp = {w: c for w, c in comp.items() if not c.is_zero()}
                if comp:
                    self.terms[d] = comp
        else:
            self.terms = terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(generators, cap) -> "NCElt":
        return NCElt(generators, cap, {}, _copy=False)

    @staticmethod
    def unit(generators, cap) -> "NCElt":
        return NCElt(generators, cap, {0: {(): ONE}}, _copy=False)

    @staticmethod
    def generator(generators, cap, name) -> "NCElt":
        generators = tuple(generators)
        if name not in generators:
            raise ValueError(f"unknown generator {name!r}")
        return NCElt(generators, cap, {1: {(generators.index(name),): ONE}}, _copy=False)

    @staticmethod
    def from_word_dict(generators, cap, flat: dict) -> "NCElt":
        terms: dict = {}
        for w, c in flat.items():
            c = FormalScalar.coerce(c)
            if c.is_zero() or len(w) > cap:
                continue
            terms.setdefault(len(w), {})[w] = terms.get(len(w), {}).get(w, ZERO) + c
        return NCElt(generators, cap, terms)

    # -- basics --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> FormalScalar:
        return self.terms.get(0, {}).get((), ZERO)

    def coefficient(self, word_names) -> FormalScalar:
        w = tuple(self.generators.index(g) for g in word_names)
        return self.terms.get(len(w), {}).get(w, ZERO)

    def homogeneous_part(self, d: int) -> "NCElt":
        comp = self.terms.get(d)
        return NCElt(self.generators, self.cap, {d: dict(comp)} if comp else {}, _copy=False)

    def truncate(self, cap: int) -> "NCElt":
        return NCElt(self.generators, min(self.cap, cap),
                     {d: dict(c) for d, c in self.terms.items() if d <= cap}, _copy=False)

    def max_degree(self) -> int:
        return max(self.terms, default=0)

    def _check(self, other: "NCElt") -> int:
        if self.generators != other.generators:
            raise ValueError("generator mismatch")
        return min(self.cap, other.cap)

    def __add__(self, other: "NCElt") -> "NCElt":
        cap = self._check(other)
        out = {d: dict(c) for d, c in self.terms.items() if d <= cap}
        for d, comp in other.terms.items():
            if d > cap:
                continue
            tgt = out.setdefault(d, {})
            for w, c in comp.items():
                s = tgt.get(w)
                s = c if s is None else s + c
                if s.is_zero():
                    tgt.pop(w, None)
                else:
                    tgt[w] = s
            if not tgt:
                del out[d]
        return NCElt(self.generators, cap, out, _copy=False)

    def __neg__(self) -> "NCElt":
        return NCElt(self.generators, self.cap,
                     {d: {w: -c for w, c in comp.items()} for d, comp in self.terms.items()},
                     _copy=False)

    def __sub__(self, other: "NCElt") -> "NCElt":
        return self + (-other)

    def scale(self, c) -> "NCElt":
        c = FormalScalar.coerce(c)
        if c.is_zero():
            return NCElt.zero(self.generators, self.cap)
        out = {}
        for d, comp in self.terms.items():
            new = {}
            for w, s in comp.items():
                p = s * c
                if not p.is_zero():
                    new[w] = p
            if new:
                out[d] = new
        return NCElt(self.generators, self.cap, out, _copy=False)

    def __mul__(self, other: "NCElt") -> "NCElt":
        cap = self._check(other)
        out: dict = {}
        for da, compa in self.terms.items():
            if da > cap:
                continue
            for db, compb in other.terms.items():
                d = da + db
                if d > cap:
                    continue
                tgt = out.setdefault(d, {})
                for wa, ca in compa.items():
                    for wb, cb in compb.items():
                        w = wa + wb
                        c = ca * cb
                        s = tgt.get(w)
                        s = c if s is None else s + c
                        if s.is_zero():
                            tgt.pop(w, None)
                        else:
                            tgt[w] = s
        return NCElt(self.generators, cap, {d: c for d, c in out.items() if c}, _copy=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, NCElt) and self.generators == other.generators
                and self.terms == other.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for d in sorted(self.terms):
            for w in sorted(self.terms[d]):
                name = "*".join(self.generators[i] for i in w) or "1"
                parts.append(f"({self.terms[d][w]})*{name}")
        return " + ".join(parts)

    __repr__ = __str__


def nc_product(x: NCElt, y: NCElt) -> NCElt:
    return x * y


def nc_exp(x: NCElt) -> NCElt:
    if not x.constant_term().is_zero():
        raise ValueError("exp needs constant term 0")
    out = NCElt.unit(x.generators, x.cap)
    power = NCElt.unit(x.generators, x.cap)
    fact = Fraction(1)
    for k in range(1, x.cap + 1):
        power = power * x
        if power.is_zero():
            break
        fact *= k
        out = out + power.scale(Fraction(1, 1) / fact)
    return out


def nc_log(x: NCElt) -> NCElt:
    if x.constant_term() != ONE:
        raise ValueError("log needs constant term 1")
    y = x - NCElt.unit(x.generators, x.cap)
    out = NCElt.zero(x.generators, x.cap)
    power = NCElt.unit(x.generators, x.cap)
    for k in range(1, x.cap + 1):
        power = power * y
        if power.is_zero():
            break
        out = out + power.scale(Fraction((-1) ** (k + 1), k))
    return out


def nc_inverse(x: NCElt) -> NCElt:
    """Inverse of a series with invertible (rational nonzero) constant term."""
    c0 = x.constant_term()
    if c0.is_zero():
        raise ValueError("not invertible: constant term 0")
    u = ONE / c0
    y = NCElt.unit(x.generators, x.cap) - x.scale(u)
    out = NCElt.unit(x.generators, x.cap)
    power = NCElt.unit(x.generators, x.cap)
    for _ in range(1, x.cap + 1):
        power = power * y
        if power.is_zero():
            break
        out = out + power
    return out.scale(u)


# ---------------------------------------------------------------------------
# Dynkin idempotent and the group-likeness criterion
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _dynkin_word(w: tuple) -> tuple:
    """Left-to-right bracketing [[...[w1,w2],...],wd] expanded into words."""
    if len(w) == 1:
        return ((w, Fraction(1)),)
    acc: dict = {}
    a = w[-1:]
    for u, c in _dynkin_word(w[:-1]):
        for word, sgn in ((u + a, 1), (a + u, -1)):
            s = acc.get(word, 0) + sgn * c
            if s:
                acc[word] = s
            else:
                acc.pop(word, None)
    return tuple(sorted(acc.items()))


def dynkin_map(x: NCElt) -> NCElt:
    out: dict = {}
    for d, comp in x.terms.items():
        if d == 0:
            continue
        tgt = out.setdefault(d, {})
        for w, c in comp.items():
            for word, k in _dynkin_word(w):
                s = tgt.get(word)
                t = c * k
                s = t if s is None else s + t
                if s.is_zero():
                    tgt.pop(word, None)
                else:
                    tgt[word] = s
        if not tgt:
            del out[d]
    return NCElt(x.generators, x.cap, out, _copy=False)


def is_lie_element(x: NCElt) -> bool:
    """True iff every homogeneous part of x lies in the free Lie subspace."""
    if not x.constant_term().is_zero():
        return False
    d_x = dynkin_map(x)
    for d, comp in x.terms.items():
        if d == 0:
            continue
        got = d_x.terms.get(d, {})
        want = {w: c * d for w, c in comp.items()}
        if got != want:
            return False
    for d in d_x.terms:
        if d not in x.terms:
            return False
    return True


def primitive_check(x: NCElt) -> bool:
    """Group-likeness: constant term 1 and log x a Lie series, degreewise."""
    if x.constant_term() != ONE:
        raise ValueError("primitive_check needs constant term 1")
    return is_lie_element(nc_log(x))

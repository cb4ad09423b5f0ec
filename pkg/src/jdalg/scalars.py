"""Exact scalars: sparse Laurent polynomials over Q in a fixed symbol set.

Every coefficient in the package is a FormalScalar.  The symbol set is fixed
once and for all: N (state-sum rank, may occur with negative exponent), alpha
(twist parameter), lambda1/lambda2 (associator family parameters), z (the
degree-3 transcendental coefficient of the KZ series).  No floating point
anywhere; coefficients are fractions.Fraction.
"""

from __future__ import annotations

from fractions import Fraction

SYMBOLS = ("N", "alpha", "lambda1", "lambda2", "z")
_SYM_INDEX = {name: i for i, name in enumerate(SYMBOLS)}
_NSYM = len(SYMBOLS)
_ZERO_EXP = (0,) * _NSYM

RationalLike = int | Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class FormalScalar:
    """Immutable sparse Laurent polynomial over Q in the fixed symbols.

    terms maps exponent vectors (length-5 int tuples, negatives allowed) to
    nonzero Fractions.  Zero is the empty map.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None, _copy: bool = True):
        if terms is None:
            self.terms = {}
        elif _copy:
            self.terms = {e: c for e, c in terms.items() if c}
        else:
            self.terms = terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rational(p, q=1) -> "FormalScalar":
        c = Fraction(p, q)
        return FormalScalar({_ZERO_EXP: c} if c else {}, _copy=False)

    @staticmethod
    def symbol(name: str, power: int = 1) -> "FormalScalar":
        if name not in _SYM_INDEX:
            raise ValueError(f"unknown symbol {name!r}; known: {SYMBOLS}")
        exp = [0] * _NSYM
        exp[_SYM_INDEX[name]] = power
        return FormalScalar({tuple(exp): Fraction(1)}, _copy=False)

    @staticmethod
    def coerce(x) -> "FormalScalar":
        if isinstance(x, FormalScalar):
            return x
        return FormalScalar.rational(_as_fraction(x))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def as_fraction(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if self.is_rational():
            return self.terms[_ZERO_EXP]
        raise ValueError(f"not a plain rational: {self}")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "FormalScalar":
        other = FormalScalar.coerce(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return FormalScalar(out, _copy=False)

    __radd__ = __add__

    def __neg__(self) -> "FormalScalar":
        return FormalScalar({e: -c for e, c in self.terms.items()}, _copy=False)

    def __sub__(self, other) -> "FormalScalar":
        return self + (-FormalScalar.coerce(other))

    def __rsub__(self, other) -> "FormalScalar":
        return FormalScalar.coerce(other) + (-self)

    def __mul__(self, other) -> "FormalScalar":
        other = FormalScalar.coerce(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return ZERO
        if len(b) == 1:
            ((eb, cb),) = b.items()
            if eb == _ZERO_EXP:
                return FormalScalar({e: c * cb for e, c in a.items()}, _copy=False)
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e)
                if s is None:
                    out[e] = ca * cb
                else:
                    s = s + ca * cb
                    if s:
                        out[e] = s
                    else:
                        del out[e]
        return FormalScalar(out, _copy=False)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "FormalScalar":
        other = FormalScalar.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        if len(other.terms) != 1:
            raise ValueError("can only divide by a rational or a single monomial")
        ((e, c),) = other.terms.items()
        inv = FormalScalar({tuple(-x for x in e): 1 / c}, _copy=False)
        return self * inv

    def __pow__(self, n: int) -> "FormalScalar":
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-monomial")
            return ONE / self ** (-n)
        r = ONE
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    # -- structure ---------------------------------------------------------

    def substitute(self, values: dict) -> "FormalScalar":
        """Evaluate some symbols at rationals; others stay formal."""
        subs = {_SYM_INDEX[k]: _as_fraction(v) for k, v in values.items()}
        out = ZERO
        for e, c in self.terms.items():
            coeff = c
            new_e = list(e)
            for i, v in subs.items():
                if e[i]:
                    coeff = coeff * v ** e[i]
                    new_e[i] = 0
            out = out + FormalScalar({tuple(new_e): coeff}, _copy=False)
        return out

    def coefficient_of(self, name: str, power: int) -> "FormalScalar":
        """Extract the coefficient of name**power (the symbol removed)."""
        i = _SYM_INDEX[name]
        out = {}
        for e, c in self.terms.items():
            if e[i] == power:
                new_e = list(e)
                new_e[i] = 0
                out[tuple(new_e)] = c
        return FormalScalar(out, _copy=False)

    def max_degree_in(self, name: str) -> int:
        i = _SYM_INDEX[name]
        return max((e[i] for e in self.terms), default=0)

    # -- comparisons / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = FormalScalar.coerce(other)
        if not isinstance(other, FormalScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- formatting ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            factors = []
            if c == -1 and e != _ZERO_EXP:
                head = "-"
            elif c == 1 and e != _ZERO_EXP:
                head = ""
            else:
                head = str(c)
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(SYMBOLS[i])
                elif k:
                    factors.append(f"{SYMBOLS[i]}^{k}")
            body = "*".join(factors)
            if head and body:
                part = head + ("*" if head != "-" else "") + body
            else:
                part = head or body
            parts.append(part)
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"FormalScalar({self})"


ZERO = FormalScalar()
ONE = FormalScalar.rational(1)


def rat(p, q=1) -> FormalScalar:
    return FormalScalar.rational(p, q)


def sym(name: str, power: int = 1) -> FormalScalar:
    return FormalScalar.symbol(name, power)

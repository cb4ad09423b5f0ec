"""Truncated universal envelopes of the Drinfeld-Kohno Lie algebras t3, t4.

Structural normal forms:

* t3 = f(t12, t23) + Q.c with c = t12+t13+t23 central in t3, so
  U(t3) = Q<t12,t23> (x) Q[c]; monomials are (word, c-power).
* t4 = f(t14, t24, t34) (ideal) x| t3, so U(t4) has PBW monomials
  (word in t14,t24,t34) x (word in t12,t23) x c^k.  Straightening moves
  t3-letters rightward past the free part via the derivation action
  t_ij |> t_i4 = [t_i4, t_j4], t_ij |> t_j4 = [t_j4, t_i4], t_ij |> t_k4 = 0,
  which is forced by the defining relations; c acts as u -> [u, t14+t24+t34].

An independent membership oracle (degreewise elimination over the spanning
set m1*r*m2 of the degree-2 defining relations) cross-validates the normal
form at low degree.
"""

from __future__ import annotations

import itertools
import os
from fractions import Fraction
from functools import lru_cache

from .lie import (LieElt, expand_to_words, lie_bracket, lie_substitute,
                  lyndon_bracket, std_factorization)
from .scalars import FormalScalar, ONE, ZERO, rat
from .series import NCElt

T3_FREE = ("t12", "t23")
T4_FREE = ("t14", "t24", "t34")
_XY = {"t12": 0, "t23": 1}
_A = {"t14": 0, "t24": 1, "t34": 2}

X, Y, C = 0, 1, 2  # letters of the acting t3 string in U(t4)


def t_generator_names(n: int) -> tuple:
    return tuple(f"t{i}{j}" for i, j in itertools.combinations(range(1, n + 1), 2))


def canonical_t_name(name: str) -> str:
    """t21 -> t12 etc.; symmetric generators are aliases."""
    if len(name) == 3 and name[0] == "t" and name[1:].isdigit():
        i, j = int(name[1]), int(name[2])
        if i != j:
            return f"t{min(i, j)}{max(i, j)}"
    raise ValueError(f"not a t-generator: {name!r}")


def guard_bytes() -> int:
    return int(os.environ.get("JACOBI_GUARD_BYTES", 2 * 1024 ** 3))


class GuardExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# U(t3)
# ---------------------------------------------------------------------------

class T3Elt:
    """U(t3) element: terms map (word over {t12,t23}, c-power) -> scalar."""

    __slots__ = ("cap", "terms")
    n = 3

    def __init__(self, cap, terms=None, _copy=True):
        self.cap = cap
        if terms is None:
            self.terms = {}
        elif _copy:
            self.terms = {k: c for k, c in terms.items()
                          if not c.is_zero() and len(k[0]) + k[1] <= cap}
        else:
            self.terms = terms

    @staticmethod
    def zero(cap) -> "T3Elt":
        return T3Elt(cap, {}, _copy=False)

    @staticmethod
    def unit(cap) -> "T3Elt":
        return T3Elt(cap, {((), 0): ONE}, _copy=False)

    def unit_like(self) -> "T3Elt":
        return T3Elt.unit(self.cap)

    @staticmethod
    def generator(cap, name) -> "T3Elt":
        name = canonical_t_name(name)
        if name in _XY:
            return T3Elt(cap, {((_XY[name],), 0): ONE}, _copy=False)
        if name == "t13":  # t13 = c - t12 - t23
            return T3Elt(cap, {((), 1): ONE, ((X,), 0): -ONE, ((Y,), 0): -ONE},
                         _copy=False)
        raise ValueError(f"unknown U(t3) generator {name!r}")

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> FormalScalar:
        return self.terms.get(((), 0), ZERO)

    def degree_of(self, key) -> int:
        return len(key[0]) + key[1]

    def homogeneous_part(self, d) -> "T3Elt":
        return T3Elt(self.cap, {k: c for k, c in self.terms.items()
                                if len(k[0]) + k[1] == d}, _copy=False)

    def max_degree(self) -> int:
        return max((len(k[0]) + k[1] for k in self.terms), default=0)

    def truncate(self, cap) -> "T3Elt":
        return T3Elt(min(cap, self.cap),
                     {k: c for k, c in self.terms.items() if len(k[0]) + k[1] <= cap},
                     _copy=False)

    def __add__(self, other: "T3Elt") -> "T3Elt":
        cap = min(self.cap, other.cap)
        out = {k: c for k, c in self.terms.items() if len(k[0]) + k[1] <= cap}
        for k, c in other.terms.items():
            if len(k[0]) + k[1] > cap:
                continue
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return T3Elt(cap, out, _copy=False)

    def __neg__(self) -> "T3Elt":
        return T3Elt(self.cap, {k: -c for k, c in self.terms.items()}, _copy=False)

    def __sub__(self, other) -> "T3Elt":
        return self + (-other)

    def scale(self, c) -> "T3Elt":
        c = FormalScalar.coerce(c)
        if c.is_zero():
            return T3Elt.zero(self.cap)
        out = {}
        for k, s in self.terms.items():
            p = s * c
            if not p.is_zero():
                out[k] = p
        return T3Elt(self.cap, out, _copy=False)

    def __mul__(self, other: "T3Elt") -> "T3Elt":
        cap = min(self.cap, other.cap)
        out: dict = {}
        for (w1, k1), c1 in self.terms.items():
            d1 = len(w1) + k1
            if d1 > cap:
                continue
            for (w2, k2), c2 in other.terms.items():
                if d1 + len(w2) + k2 > cap:
                    continue
                key = (w1 + w2, k1 + k2)
                c = c1 * c2
                s = out.get(key)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return T3Elt(cap, out, _copy=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, T3Elt) and self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = ("t12", "t23")
        parts = []
        for (w, k) in sorted(self.terms, key=lambda t: (len(t[0]) + t[1], t)):
            c = self.terms[(w, k)]
            body = "*".join([names[i] for i in w] + ["c"] * k) or "1"
            parts.append(f"({c})*{body}")
        return " + ".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# U(t4)
# ---------------------------------------------------------------------------

# derivation action of the t3-letters on single free generators, as word dicts
_DELTA_LETTER = {
    (X, 0): (((0, 1), 1), ((1, 0), -1)),
    (X, 1): (((1, 0), 1), ((0, 1), -1)),
    (X, 2): (),
    (Y, 0): (),
    (Y, 1): (((1, 2), 1), ((2, 1), -1)),
    (Y, 2): (((2, 1), 1), ((1, 2), -1)),
    (C, 0): (((0, 1), 1), ((1, 0), -1), ((0, 2), 1), ((2, 0), -1)),
    (C, 1): (((1, 0), 1), ((0, 1), -1), ((1, 2), 1), ((2, 1), -1)),
    (C, 2): (((2, 0), 1), ((0, 2), -1), ((2, 1), 1), ((1, 2), -1)),
}


@lru_cache(maxsize=None)
def _delta_word(letter: int, aw: tuple) -> tuple:
    """Derivation of a t3-letter on a free word; ((aword, int_coeff), ...)."""
    acc: dict = {}
    for i, a in enumerate(aw):
        for frag, c in _DELTA_LETTER[(letter, a)]:
            w = aw[:i] + frag + aw[i + 1:]
            s = acc.get(w, 0) + c
            if s:
                acc[w] = s
            else:
                acc.pop(w, None)
    return tuple(sorted(acc.items()))


def _move_string(string: tuple, aw: tuple, budget: int) -> dict:
    """(string letters)*aw = sum coeff * aw' * (trail); returns {(aw', trail): int}.

    `budget` bounds len(aw') + len(trail); states beyond it are dropped.
    """
    states = {(aw, ()): 1}
    for letter in reversed(string):
        new: dict = {}
        for (a, trail), coeff in states.items():
            if len(a) + len(trail) + 1 <= budget:
                k = (a, (letter,) + trail)
                s = new.get(k, 0) + coeff
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            for a2, c2 in _delta_word(letter, a):
                if len(a2) + len(trail) > budget:
                    continue
                k = (a2, trail)
                s = new.get(k, 0) + coeff * c2
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
        states = new
    return states


def _split_trail(trail: tuple) -> tuple:
    """Trail letters keep input order (xy-part then c's); split them."""
    xw = tuple(l for l in trail if l != C)
    return xw, len(trail) - len(xw)


class T4Elt:
    """U(t4) element: terms map (free word, t3 word, c-power) -> scalar."""

    __slots__ = ("cap", "terms")
    n = 4

    def __init__(self, cap, terms=None, _copy=True):
        self.cap = cap
        if terms is None:
            self.terms = {}
        elif _copy:
            self.terms = {k: c for k, c in terms.items()
                          if not c.is_zero() and len(k[0]) + len(k[1]) + k[2] <= cap}
        else:
            self.terms = terms

    @staticmethod
    def zero(cap) -> "T4Elt":
        return T4Elt(cap, {}, _copy=False)

    @staticmethod
    def unit(cap) -> "T4Elt":
        return T4Elt(cap, {((), (), 0): ONE}, _copy=False)

    def unit_like(self) -> "T4Elt":
        return T4Elt.unit(self.cap)

    @staticmethod
    def generator(cap, name) -> "T4Elt":
        name = canonical_t_name(name)
        if name in _A:
            return T4Elt(cap, {((_A[name],), (), 0): ONE}, _copy=False)
        if name in _XY:
            return T4Elt(cap, {((), (_XY[name],), 0): ONE}, _copy=False)
        if name == "t13":
            return T4Elt(cap, {((), (), 1): ONE, ((), (X,), 0): -ONE,
                               ((), (Y,), 0): -ONE}, _copy=False)
        raise ValueError(f"unknown U(t4) generator {name!r}")

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> FormalScalar:
        return self.terms.get(((), (), 0), ZERO)

    def homogeneous_part(self, d) -> "T4Elt":
        return T4Elt(self.cap, {k: c for k, c in self.terms.items()
                                if len(k[0]) + len(k[1]) + k[2] == d}, _copy=False)

    def max_degree(self) -> int:
        return max((len(k[0]) + len(k[1]) + k[2] for k in self.terms), default=0)

    def truncate(self, cap) -> "T4Elt":
        return T4Elt(min(cap, self.cap),
                     {k: c for k, c in self.terms.items()
                      if len(k[0]) + len(k[1]) + k[2] <= cap}, _copy=False)

    def __add__(self, other: "T4Elt") -> "T4Elt":
        cap = min(self.cap, other.cap)
        out = {k: c for k, c in self.terms.items()
               if len(k[0]) + len(k[1]) + k[2] <= cap}
        for k, c in other.terms.items():
            if len(k[0]) + len(k[1]) + k[2] > cap:
                continue
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return T4Elt(cap, out, _copy=False)

    def __neg__(self) -> "T4Elt":
        return T4Elt(self.cap, {k: -c for k, c in self.terms.items()}, _copy=False)

    def __sub__(self, other) -> "T4Elt":
        return self + (-other)

    def scale(self, c) -> "T4Elt":
        c = FormalScalar.coerce(c)
        if c.is_zero():
            return T4Elt.zero(self.cap)
        out = {}
        for k, s in self.terms.items():
            p = s * c
            if not p.is_zero():
                out[k] = p
        return T4Elt(self.cap, out, _copy=False)

    def __mul__(self, other: "T4Elt") -> "T4Elt":
        cap = min(self.cap, other.cap)
        out: dict = {}
        for (aw1, xw1, k1), c1 in self.terms.items():
            d1 = len(aw1) + len(xw1) + k1
            if d1 > cap:
                continue
            string = xw1 + (C,) * k1
            for (aw2, xw2, k2), c2 in other.terms.items():
                d2 = len(aw2) + len(xw2) + k2
                if d1 + d2 > cap:
                    continue
                c = c1 * c2
                if not string or not aw2:
                    key = (aw1 + aw2, xw1 + xw2, k1 + k2)
                    s = out.get(key)
                    s = c if s is None else s + c
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
                    continue
                budget = cap - len(aw1) - len(xw2) - k2
                for (a2, trail), icoef in _move_string(string, aw2, budget).items():
                    txw, tk = _split_trail(trail)
                    key = (aw1 + a2, txw + xw2, tk + k2)
                    cc = c * icoef
                    s = out.get(key)
                    s = cc if s is None else s + cc
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
        return T4Elt(cap, out, _copy=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, T4Elt) and self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        fnames, xnames = ("t14", "t24", "t34"), ("t12", "t23")
        parts = []
        for (aw, xw, k) in sorted(self.terms,
                                  key=lambda t: (len(t[0]) + len(t[1]) + t[2], t)):
            c = self.terms[(aw, xw, k)]
            body = "*".join([fnames[i] for i in aw] + [xnames[i] for i in xw]
                            + ["c"] * k) or "1"
            parts.append(f"({c})*{body}")
        return " + ".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Generic truncated series on the envelope types
# ---------------------------------------------------------------------------

def alg_exp(x):
    if not x.constant_term().is_zero():
        raise ValueError("exp needs constant term 0")
    out = x.unit_like()
    power = x.unit_like()
    fact = Fraction(1)
    for k in range(1, x.cap + 1):
        power = power * x
        if power.is_zero():
            break
        fact *= k
        out = out + power.scale(Fraction(1) / fact)
    return out


def alg_log(x):
    if x.constant_term() != ONE:
        raise ValueError("log needs constant term 1")
    y = x - x.unit_like()
    out = y.scale(ZERO)
    power = x.unit_like()
    for k in range(1, x.cap + 1):
        power = power * y
        if power.is_zero():
            break
        out = out + power.scale(Fraction((-1) ** (k + 1), k))
    return out


def alg_inverse(x):
    if x.constant_term() != ONE:
        raise ValueError("inverse implemented for constant term 1")
    y = x.unit_like() - x
    out = x.unit_like()
    power = x.unit_like()
    for _ in range(1, x.cap + 1):
        power = power * y
        if power.is_zero():
            break
        out = out + power
    return out


# ---------------------------------------------------------------------------
# Lie elements of t3 / t4 in structural coordinates
# ---------------------------------------------------------------------------

class LieT3:
    """Element of t3 = f(t12,t23) + Q.c."""

    __slots__ = ("free", "c")

    def __init__(self, free: LieElt | None = None, c=None):
        self.free = free if free is not None else LieElt.zero(T3_FREE)
        self.c = FormalScalar.coerce(c) if c is not None else ZERO

    @staticmethod
    def generator(name) -> "LieT3":
        name = canonical_t_name(name)
        if name in _XY:
            return LieT3(LieElt.letter(T3_FREE, name))
        if name == "t13":
            return LieT3(LieElt.letter(T3_FREE, "t12").scale(-1)
                         + LieElt.letter(T3_FREE, "t23").scale(-1), ONE)
        raise ValueError(f"unknown t3 generator {name!r}")

    def __add__(self, other):
        return LieT3(self.free + other.free, self.c + other.c)

    def __sub__(self, other):
        return LieT3(self.free - other.free, self.c - other.c)

    def scale(self, k):
        return LieT3(self.free.scale(k), self.c * FormalScalar.coerce(k))

    def bracket(self, other):
        return LieT3(lie_bracket(self.free, other.free), ZERO)

    def is_zero(self):
        return self.free.is_zero() and self.c.is_zero()

    def embed(self, cap) -> T3Elt:
        out: dict = {}
        for w, coeff in expand_to_words(self.free).items():
            if len(w) <= cap:
                out[(w, 0)] = coeff
        if not self.c.is_zero() and cap >= 1:
            out[((), 1)] = self.c
        return T3Elt(cap, out, _copy=False)


_ACT_BASE = {
    X: {0: ((0, 1), 1), 1: ((0, 1), -1), 2: None},
    Y: {1: ((1, 2), 1), 2: ((1, 2), -1), 0: None},
}


@lru_cache(maxsize=None)
def _act_letter_on_word(letter: int, aw_word: tuple) -> tuple:
    """Action of t12/t23 on a Lyndon basis word of f(t14,t24,t34)."""
    if len(aw_word) == 1:
        base = _ACT_BASE[letter][aw_word[0]]
        if base is None:
            return ()
        w, s = base
        return ((w, Fraction(s)),)
    u, v = std_factorization(aw_word)
    acc: dict = {}
    for x, cx in _act_letter_on_word(letter, u):
        for w, k in lyndon_bracket(x, v):
            s = acc.get(w, 0) + cx * k
            if s:
                acc[w] = s
            else:
                acc.pop(w, None)
    for x, cx in _act_letter_on_word(letter, v):
        for w, k in lyndon_bracket(u, x):
            s = acc.get(w, 0) + cx * k
            if s:
                acc[w] = s
            else:
                acc.pop(w, None)
    return tuple(sorted(acc.items()))


def _act_letter(letter: int, u: LieElt) -> LieElt:
    acc: dict = {}
    for w, c in u.terms.items():
        for w2, k in _act_letter_on_word(letter, w):
            s = acc.get(w2)
            t = c * k
            s = t if s is None else s + t
            if s.is_zero():
                acc.pop(w2, None)
            else:
                acc[w2] = s
    return LieElt(T4_FREE, acc, _copy=False)


_T_SUM = LieElt(T4_FREE, {(0,): ONE, (1,): ONE, (2,): ONE})


def _act_free(v: LieElt, u: LieElt) -> LieElt:
    """Action of v in f(t12,t23) on u in f(t14,t24,t34)."""
    out = LieElt.zero(T4_FREE)

    def act_word(w, target):
        if len(w) == 1:
            return _act_letter(w[0], target)
        u1, v1 = std_factorization(w)
        return (act_word(u1, act_word(v1, target))
                - act_word(v1, act_word(u1, target)))

    for w, c in v.terms.items():
        out = out + act_word(w, u).scale(c)
    return out


def _act_c(u: LieElt) -> LieElt:
    return lie_bracket(u, _T_SUM)


class LieT4:
    """Element of t4 = f(t14,t24,t34) x| (f(t12,t23) + Q.c)."""

    __slots__ = ("free", "t3free", "c")

    def __init__(self, free=None, t3free=None, c=None):
        self.free = free if free is not None else LieElt.zero(T4_FREE)
        self.t3free = t3free if t3free is not None else LieElt.zero(T3_FREE)
        self.c = FormalScalar.coerce(c) if c is not None else ZERO

    @staticmethod
    def generator(name) -> "LieT4":
        name = canonical_t_name(name)
        if name in _A:
            return LieT4(free=LieElt.letter(T4_FREE, name))
        if name in _XY:
            return LieT4(t3free=LieElt.letter(T3_FREE, name))
        if name == "t13":
            return LieT4(t3free=LieElt.letter(T3_FREE, "t12").scale(-1)
                         + LieElt.letter(T3_FREE, "t23").scale(-1), c=ONE)
        raise ValueError(f"unknown t4 generator {name!r}")

    def __add__(self, other):
        return LieT4(self.free + other.free, self.t3free + other.t3free,
                     self.c + other.c)

    def __sub__(self, other):
        return LieT4(self.free - other.free, self.t3free - other.t3free,
                     self.c - other.c)

    def scale(self, k):
        k = FormalScalar.coerce(k)
        return LieT4(self.free.scale(k), self.t3free.scale(k), self.c * k)

    def bracket(self, other):
        free = (lie_bracket(self.free, other.free)
                + _act_free(self.t3free, other.free)
                - _act_free(other.t3free, self.free))
        if not self.c.is_zero():
            free = free + _act_c(other.free).scale(self.c)
        if not other.c.is_zero():
            free = free - _act_c(self.free).scale(other.c)
        return LieT4(free, lie_bracket(self.t3free, other.t3free), ZERO)

    def is_zero(self):
        return self.free.is_zero() and self.t3free.is_zero() and self.c.is_zero()

    def embed(self, cap) -> T4Elt:
        out: dict = {}
        for w, coeff in expand_to_words(self.free).items():
            if len(w) <= cap:
                out[(w, (), 0)] = coeff
        for w, coeff in expand_to_words(self.t3free).items():
            if len(w) <= cap:
                out[((), w, 0)] = coeff
        if not self.c.is_zero() and cap >= 1:
            out[((), (), 1)] = self.c
        return T4Elt(cap, out, _copy=False)


# ---------------------------------------------------------------------------
# Normal form of free words in the t-generators
# ---------------------------------------------------------------------------

def tn_normal_form(x: NCElt, n: int, cap: int):
    """Straighten a free-algebra element over the t_ij into PBW coordinates."""
    if n == 3:
        cls, names = T3Elt, {"t12", "t13", "t23"}
    elif n == 4:
        cls, names = T4Elt, set(t_generator_names(4))
    else:
        raise ValueError("only n in {3, 4} supported")
    gens = [canonical_t_name(g) for g in x.generators]
    bad = [g for g in gens if g not in names]
    if bad:
        raise ValueError(f"unknown generators for t{n}: {bad}")
    if x.max_degree() > cap:
        raise ValueError(f"element degree {x.max_degree()} exceeds cap {cap}")
    gen_elts = [cls.generator(cap, g) for g in gens]
    out = cls.zero(cap)
    for d, comp in x.terms.items():
        for w, c in comp.items():
            acc = cls.unit(cap)
            for i in w:
                acc = acc * gen_elts[i]
            out = out + acc.scale(c)
    return out


# ---------------------------------------------------------------------------
# Independent ideal-membership oracle
# ---------------------------------------------------------------------------

def t_relations(n: int) -> list[dict]:
    """Degree-2 defining relations as word dicts over t_generator_names(n)."""
    gens = t_generator_names(n)
    idx = {g: i for i, g in enumerate(gens)}

    def comm(a, b):
        return {(idx[a], idx[b]): Fraction(1), (idx[b], idx[a]): Fraction(-1)}

    def add(d1, d2):
        out = dict(d1)
        for k, v in d2.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    rels = []
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for (i, j), (k, l) in itertools.combinations(pairs, 2):
        if len({i, j, k, l}) == 4:
            rels.append(comm(f"t{i}{j}", f"t{k}{l}"))
    for tri in itertools.combinations(range(1, n + 1), 3):
        i, j, k = tri
        rels.append(add(comm(f"t{i}{j}", f"t{i}{k}"), comm(f"t{i}{j}", f"t{j}{k}")))
        rels.append(add(comm(f"t{i}{k}", f"t{i}{j}"), comm(f"t{i}{k}", f"t{j}{k}")))
        rels.append(add(comm(f"t{j}{k}", f"t{i}{j}"), comm(f"t{j}{k}", f"t{i}{k}")))
    return rels


class _Echelon:
    """Incremental exact echelon form over Q with dict rows."""

    def __init__(self):
        self.pivots: dict = {}  # pivot key -> row dict (pivot coeff 1)
        self.nnz = 0

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        while row:
            p = min(row)
            piv = self.pivots.get(p)
            if piv is None:
                return row
            c = row[p]
            for k, v in piv.items():
                s = row.get(k, 0) - c * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
        return row

    def insert(self, row: dict) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        p = min(row)
        c = row[p]
        row = {k: v / c for k, v in row.items()}
        self.pivots[p] = row
        self.nnz += len(row)
        if self.nnz * 120 > guard_bytes():
            raise GuardExceeded("elimination exceeded JACOBI_GUARD_BYTES")
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


@lru_cache(maxsize=None)
def _ideal_echelon(n: int, d: int) -> _Echelon:
    gens = t_generator_names(n)
    g = len(gens)
    if g ** d > 10 ** 6:
        raise GuardExceeded(f"dense degree guard: {g}^{d} > 1e6")
    rels = t_relations(n)
    ech = _Echelon()
    for left_len in range(d - 1):
        right_len = d - 2 - left_len
        for m1 in itertools.product(range(g), repeat=left_len):
            for m2 in itertools.product(range(g), repeat=right_len):
                for r in rels:
                    row = {m1 + w + m2: c for w, c in r.items()}
                    ech.insert(row)
    return ech


def ideal_oracle(x: NCElt, n: int, cap: int = 5) -> bool:
    """Is x in the two-sided ideal of the defining relations?  (Degrees <= cap.)"""
    gens = t_generator_names(n)
    name_map = [gens.index(canonical_t_name(g)) for g in x.generators]
    if x.max_degree() > cap:
        raise ValueError("element degree exceeds oracle cap")
    for d, comp in x.terms.items():
        row = {}
        for w, c in comp.items():
            if not c.is_rational():
                raise ValueError("oracle handles rational coefficients only")
            key = tuple(name_map[i] for i in w)
            row[key] = row.get(key, 0) + c.as_fraction()
        row = {k: v for k, v in row.items() if v}
        if not row:
            continue
        if d < 2:
            return False
        if _ideal_echelon(n, d).reduce(row):
            return False
    return True


# ---------------------------------------------------------------------------
# grt1 residuals, pentagon, hexagons
# ---------------------------------------------------------------------------

_AB = ("A", "B")


def _subst_lie(psi: LieElt, a_img: LieElt, b_img: LieElt) -> LieElt:
    return lie_substitute(psi, {"A": a_img, "B": b_img})


def grt1_residuals(psi: LieElt, cap: int):
    """(antisymmetry, 3-cycle, linearized pentagon) residuals of psi.

    psi lives in the free Lie algebra on (A, B); the first two residuals come
    back there, the third as a T4Elt.  psi is in grt1 up to cap iff all three
    vanish.
    """
    if psi.alphabet != _AB:
        raise ValueError("grt1 elements live on the (A, B) alphabet")
    if psi.max_degree() > cap:
        raise ValueError("psi degree exceeds cap")
    a = LieElt.letter(_AB, "A")
    b = LieElt.letter(_AB, "B")
    c = a.scale(-1) + b.scale(-1)  # A + B + C = 0
    r1 = _subst_lie(psi, b, a) + psi
    r2 = _subst_lie(psi, c, a) + _subst_lie(psi, b, c) + psi

    t = {g: LieT4.generator(g) for g in t_generator_names(4)}
    br = LieT4.bracket

    def ev(u, v):
        return lie_substitute(psi, {"A": u, "B": v}, bracket=br)

    pent = (ev(t["t12"], t["t23"] + t["t24"])
            + ev(t["t13"] + t["t23"], t["t34"])
            - ev(t["t23"], t["t34"])
            - ev(t["t12"] + t["t13"], t["t24"] + t["t34"])
            - ev(t["t12"], t["t23"]))
    return r1, r2, pent.embed(cap)


def _phi_of(phi_log: LieElt, u, v, cap):
    """exp of phi_log(u, v) in the target envelope (u, v LieT3 or LieT4)."""
    br = type(u).bracket
    val = lie_substitute(phi_log, {"A": u, "B": v}, bracket=br)
    return alg_exp(val.embed(cap))


def pentagon_residual(phi_log: LieElt, cap: int) -> T4Elt:
    """LHS - RHS of the pentagon for Phi = exp(phi_log), in U(t4) normal form."""
    if cap > 8:
        raise ValueError("pentagon guard: cap <= 8")
    t = {g: LieT4.generator(g) for g in t_generator_names(4)}
    lhs = (_phi_of(phi_log, t["t12"], t["t23"] + t["t24"], cap)
           * _phi_of(phi_log, t["t13"] + t["t23"], t["t34"], cap))
    rhs = (_phi_of(phi_log, t["t23"], t["t34"], cap)
           * _phi_of(phi_log, t["t12"] + t["t13"], t["t24"] + t["t34"], cap)
           * _phi_of(phi_log, t["t12"], t["t23"], cap))
    return lhs - rhs


def hexagon_residuals(mu, phi_log: LieElt, cap: int):
    """LHS - RHS of both hexagons for Phi = exp(phi_log), in U(t3) normal form."""
    if cap > 8:
        raise ValueError("hexagon guard: cap <= 8")
    mu = FormalScalar.coerce(mu)
    t12 = LieT3.generator("t12")
    t23 = LieT3.generator("t23")
    t13 = LieT3.generator("t13")
    half = mu * rat(1, 2)

    def E(x: LieT3):
        return alg_exp(x.scale(half).embed(cap))

    phi = lambda u, v: _phi_of(phi_log, u, v, cap)
    lhs1 = alg_exp((t13 + t23).scale(half).embed(cap))
    rhs1 = (phi(t13, t12) * E(t13) * alg_inverse(phi(t13, t23)) * E(t23)
            * phi(t12, t23))
    lhs2 = alg_exp((t12 + t13).scale(half).embed(cap))
    rhs2 = (alg_inverse(phi(t23, t13)) * E(t13) * phi(t12, t13) * E(t12)
            * alg_inverse(phi(t12, t23)))
    return lhs1 - rhs1, lhs2 - rhs2

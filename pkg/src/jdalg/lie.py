"""Free Lie algebras over the exact scalars, in Lyndon normal form.

Elements are stored as linear combinations of Lyndon words (letter-index
tuples) over a declared, ordered alphabet; each Lyndon word stands for its
standard (right) bracketing.  Rewriting an arbitrary bracket into this basis
uses the classical recursion on standard factorizations.  An independent
oracle (expansion into the free associative algebra) is provided for tests.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .scalars import FormalScalar, ONE, ZERO, rat

Word = tuple  # tuple of small ints (letter indices)


# ---------------------------------------------------------------------------
# Lyndon word combinatorics
# ---------------------------------------------------------------------------

def is_lyndon(w: Word) -> bool:
    if not w:
        return False
    return all(w < w[i:] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def std_factorization(w: Word) -> tuple[Word, Word]:
    """Standard factorization of a Lyndon word of length >= 2.

    The right factor is the lexicographically least proper suffix.
    """
    assert len(w) >= 2
    v = min(w[i:] for i in range(1, len(w)))
    return w[: len(w) - len(v)], v


def lyndon_words(n_letters: int, length: int) -> list[Word]:
    """All Lyndon words of exactly the given length (Duval's algorithm)."""
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == length:
            out.append(tuple(w))
        while len(w) < length:
            w.append(w[len(w) - m])
        while w and w[-1] == n_letters - 1:
            w.pop()
    return [u for u in out if len(u) == length]


def necklace_count(n_letters: int, d: int) -> int:
    """Dimension of the degree-d part of the free Lie algebra (Witt formula)."""
    def mobius(n):
        fac, p, m = 1, 2, n
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                fac = -fac
            p += 1
        if m > 1:
            fac = -fac
        return fac

    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += mobius(e) * n_letters ** (d // e)
    return total // d


# ---------------------------------------------------------------------------
# Bracket rewriting into the Lyndon basis
# ---------------------------------------------------------------------------

def _dict_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for w, c in b.items():
        s = out.get(w)
        if s is None:
            out[w] = -c
        else:
            s = s - c
            if s:
                out[w] = s
            else:
                del out[w]
    return out


@lru_cache(maxsize=None)
def lyndon_bracket(u: Word, v: Word) -> tuple:
    """[B(u), B(v)] expanded in the Lyndon basis; returns (word, Fraction) pairs."""
    if u == v:
        return ()
    if v < u:
        return tuple((w, -c) for w, c in lyndon_bracket(v, u))
    w = u + v
    if std_factorization(w) == (u, v):
        return ((w, Fraction(1)),)
    u1, u2 = std_factorization(u)
    # [ [u1,u2], v ] = [u1, [u2,v]] - [u2, [u1,v]]
    acc: dict = {}
    for x, c in lyndon_bracket(u2, v):
        for y, d in lyndon_bracket(u1, x):
            s = acc.get(y, 0) + c * d
            if s:
                acc[y] = s
            else:
                acc.pop(y, None)
    for x, c in lyndon_bracket(u1, v):
        for y, d in lyndon_bracket(u2, x):
            s = acc.get(y, 0) - c * d
            if s:
                acc[y] = s
            else:
                acc.pop(y, None)
    return tuple(sorted(acc.items()))


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

class LieElt:
    """Graded free-Lie-algebra element in Lyndon normal form."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet, terms=None, _copy=True):
        self.alphabet = tuple(alphabet)
        if terms is None:
            self.terms = {}
        elif _copy:
            self.terms = {w: c for w, c in terms.items() if not c.is_zero()}
        else:
            self.terms = terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def letter(alphabet, name) -> "LieElt":
        alphabet = tuple(alphabet)
        if name not in alphabet:
            raise ValueError(f"unknown letter {name!r} for alphabet {alphabet}")
        return LieElt(alphabet, {(alphabet.index(name),): ONE}, _copy=False)

    @staticmethod
    def zero(alphabet) -> "LieElt":
        return LieElt(alphabet, {}, _copy=False)

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self):
        return sorted({len(w) for w in self.terms})

    def homogeneous_part(self, d: int) -> "LieElt":
        return LieElt(self.alphabet,
                      {w: c for w, c in self.terms.items() if len(w) == d},
                      _copy=False)

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def truncate(self, cap: int) -> "LieElt":
        return LieElt(self.alphabet,
                      {w: c for w, c in self.terms.items() if len(w) <= cap},
                      _copy=False)

    def coefficient(self, word_names) -> FormalScalar:
        w = tuple(self.alphabet.index(x) for x in word_names)
        return self.terms.get(w, ZERO)

    def _check_compatible(self, other: "LieElt"):
        if self.alphabet != other.alphabet:
            raise ValueError(f"alphabet mismatch: {self.alphabet} vs {other.alphabet}")

    def __add__(self, other: "LieElt") -> "LieElt":
        self._check_compatible(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return LieElt(self.alphabet, out, _copy=False)

    def __neg__(self) -> "LieElt":
        return LieElt(self.alphabet, {w: -c for w, c in self.terms.items()}, _copy=False)

    def __sub__(self, other: "LieElt") -> "LieElt":
        return self + (-other)

    def scale(self, c) -> "LieElt":
        c = FormalScalar.coerce(c)
        if c.is_zero():
            return LieElt.zero(self.alphabet)
        out = {}
        for w, s in self.terms.items():
            p = s * c
            if not p.is_zero():
                out[w] = p
        return LieElt(self.alphabet, out, _copy=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LieElt) and self.alphabet == other.alphabet
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet, frozenset((w, hash(c)) for w, c in self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            mono = bracket_string(w, self.alphabet)
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def bracket_string(w: Word, alphabet) -> str:
    if len(w) == 1:
        return alphabet[w[0]]
    u, v = std_factorization(w)
    return f"[{bracket_string(u, alphabet)},{bracket_string(v, alphabet)}]"


def lie_bracket(x: LieElt, y: LieElt) -> LieElt:
    x._check_compatible(y)
    acc: dict = {}
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            c = cu * cv
            if c.is_zero():
                continue
            for w, k in lyndon_bracket(u, v):
                s = acc.get(w)
                s = c * k if s is None else s + c * k
                if s.is_zero():
                    acc.pop(w, None)
                else:
                    acc[w] = s
    return LieElt(x.alphabet, acc, _copy=False)


# ---------------------------------------------------------------------------
# Expression trees -> normal form
# ---------------------------------------------------------------------------
# Trees: ("letter", name) | ("bracket", t, t) | ("sum", [t, ...])
#        | ("scale", scalar, t)

def lie_normalize(expr, alphabet) -> LieElt:
    alphabet = tuple(alphabet)
    kind = expr[0]
    if kind == "letter":
        return LieElt.letter(alphabet, expr[1])
    if kind == "bracket":
        return lie_bracket(lie_normalize(expr[1], alphabet),
                           lie_normalize(expr[2], alphabet))
    if kind == "sum":
        out = LieElt.zero(alphabet)
        for t in expr[1]:
            out = out + lie_normalize(t, alphabet)
        return out
    if kind == "scale":
        return lie_normalize(expr[2], alphabet).scale(expr[1])
    raise ValueError(f"bad expression node {kind!r}")


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------

def _commutator_bracket(x, y):
    return x * y - y * x


def lie_substitute(x: LieElt, images: dict, bracket=None, add=None):
    """Apply the unique morphism sending each letter to its image.

    Images must all live in one common target supporting + and scale(); the
    bracket defaults to lie_bracket for LieElt targets and to the commutator
    for associative targets.
    """
    missing = [a for a in x.alphabet if a not in images]
    if missing:
        raise ValueError(f"missing image for letters {missing}")
    sample = next(iter(images.values()))
    kinds = {type(v) for v in images.values()}
    if len(kinds) != 1:
        raise ValueError(f"images live in mixed targets: {kinds}")
    if bracket is None:
        if isinstance(sample, LieElt):
            bracket = lie_bracket
        elif hasattr(sample, "bracket"):
            bracket = type(sample).bracket
        else:
            bracket = _commutator_bracket
    img = [images[a] for a in x.alphabet]

    cache: dict = {}

    def image_of(w: Word):
        got = cache.get(w)
        if got is not None:
            return got
        if len(w) == 1:
            val = img[w[0]]
        else:
            u, v = std_factorization(w)
            val = bracket(image_of(u), image_of(v))
        cache[w] = val
        return val

    total = None
    for w, c in x.terms.items():
        t = image_of(w).scale(c)
        total = t if total is None else total + t
    if total is None:
        # zero element: scale any image by 0 to get a typed zero
        total = sample.scale(ZERO)
    return total


def multidegree_project(x: LieElt, degrees: dict) -> LieElt:
    """Keep Lyndon terms whose letter counts match `degrees` exactly."""
    want = tuple(degrees.get(a, 0) for a in x.alphabet)
    out = {}
    for w, c in x.terms.items():
        counts = [0] * len(x.alphabet)
        for i in w:
            counts[i] += 1
        if tuple(counts) == want:
            out[w] = c
    return LieElt(x.alphabet, out, _copy=False)


# ---------------------------------------------------------------------------
# Independent oracle: expansion into the free associative algebra
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _expand_bracketing(w: Word) -> tuple:
    """Associative expansion of the standard bracketing of a Lyndon word."""
    if len(w) == 1:
        return ((w, Fraction(1)),)
    u, v = std_factorization(w)
    a, b = _expand_bracketing(u), _expand_bracketing(v)
    acc: dict = {}
    for wu, cu in a:
        for wv, cv in b:
            for word, sgn in ((wu + wv, 1), (wv + wu, -1)):
                s = acc.get(word, 0) + sgn * cu * cv
                if s:
                    acc[word] = s
                else:
                    acc.pop(word, None)
    return tuple(sorted(acc.items()))


def expand_to_words(x: LieElt) -> dict:
    """x as an element of the free associative algebra (word -> FormalScalar)."""
    acc: dict = {}
    for w, c in x.terms.items():
        for word, k in _expand_bracketing(w):
            s = acc.get(word)
            s = c * k if s is None else s + c * k
            if s.is_zero():
                acc.pop(word, None)
            else:
                acc[word] = s
    return acc


def expand_tree_to_words(expr, alphabet) -> dict:
    """Expand a bracket expression tree associatively, bypassing Lyndon rewriting."""
    alphabet = tuple(alphabet)
    kind = expr[0]
    if kind == "letter":
        return {(alphabet.index(expr[1]),): ONE}
    if kind == "bracket":
        a = expand_tree_to_words(expr[1], alphabet)
        b = expand_tree_to_words(expr[2], alphabet)
        acc: dict = {}
        for wu, cu in a.items():
            for wv, cv in b.items():
                c = cu * cv
                for word, sgn in ((wu + wv, 1), (wv + wu, -1)):
                    s = acc.get(word)
                    t = c * rat(sgn)
                    s = t if s is None else s + t
                    if s.is_zero():
                        acc.pop(word, None)
                    else:
                        acc[word] = s
        return acc
    if kind == "sum":
        acc = {}
        for t in expr[1]:
            for word, c in expand_tree_to_words(t, alphabet).items():
                s = acc.get(word)
                s = c if s is None else s + c
                if s.is_zero():
                    acc.pop(word, None)
                else:
                    acc[word] = s
        return acc
    if kind == "scale":
        c0 = FormalScalar.coerce(expr[1])
        return {w: c * c0 for w, c in expand_tree_to_words(expr[2], alphabet).items()
                if not (c * c0).is_zero()}
    raise ValueError(f"bad expression node {kind!r}")


# ---------------------------------------------------------------------------
# 2-letter Hall-style output mode
# ---------------------------------------------------------------------------

def format_hall2(x: LieElt) -> str:
    """Print a 2-letter element in the basis built on the reversed letter order.

    With letters (p, q), the reversed-order Lyndon basis starts
    {q, p, [q,p], [q,[q,p]], ...}; this is an output mode only.
    """
    if len(x.alphabet) != 2:
        raise ValueError("hall2 formatting needs a 2-letter alphabet")
    rev = (x.alphabet[1], x.alphabet[0])
    flipped = lie_substitute(
        x, {x.alphabet[0]: LieElt.letter(rev, x.alphabet[0]),
            x.alphabet[1]: LieElt.letter(rev, x.alphabet[1])})
    return str(flipped)

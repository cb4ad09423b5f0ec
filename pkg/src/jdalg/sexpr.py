"""Prefix s-expression grammar for algebra elements.

    expr   := atom | bracket | (+ expr ...) | (* scalar ... expr)
    bracket:= [ expr expr ]
    scalar := rational (p or p/q) | reserved symbol (z alpha lambda1 lambda2 N)
    atom   := letter or generator name; t21 etc. are aliases of t12.

Examples: `(+ (* 1/24 [A B]) (* -1/1440 [A [A [A B]]]))`.
The same grammar serializes witnesses in CLI reports.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .scalars import FormalScalar, SYMBOLS, rat, sym

_TOKEN = re.compile(r"\(|\)|\[|\]|[^\s()\[\]]+")
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class SexprError(ValueError):
    pass


def tokenize(text: str) -> list:
    return _TOKEN.findall(text)


def _parse_tokens(tokens, pos):
    if pos >= len(tokens):
        raise SexprError("unexpected end of input")
    tok = tokens[pos]
    if tok == "(":
        if pos + 1 >= len(tokens):
            raise SexprError("unexpected end after '('")
        head = tokens[pos + 1]
        if head not in ("+", "*"):
            raise SexprError(f"expected + or * after '(', got {head!r}")
        pos += 2
        items = []
        while pos < len(tokens) and tokens[pos] != ")":
            item, pos = _parse_tokens(tokens, pos)
            items.append(item)
        if pos >= len(tokens):
            raise SexprError("missing ')'")
        pos += 1
        if head == "+":
            return ("sum", items), pos
        if not items:
            raise SexprError("(*) needs arguments")
        scalar = rat(1)
        body = None
        for item in items:
            if item[0] == "scalar":
                scalar = scalar * item[1]
            elif body is None:
                body = item
            else:
                raise SexprError("(* ...) takes scalars and one element")
        if body is None:
            return ("scalar", scalar), pos
        return ("scale", scalar, body), pos
    if tok == "[":
        a, pos = _parse_tokens(tokens, pos + 1)
        b, pos = _parse_tokens(tokens, pos)
        if pos >= len(tokens) or tokens[pos] != "]":
            raise SexprError("brackets take exactly two entries")
        return ("bracket", a, b), pos + 1
    if tok in (")", "]"):
        raise SexprError(f"unexpected {tok!r}")
    if _RATIONAL.match(tok):
        return ("scalar", rat(Fraction(tok))), pos + 1
    if tok in SYMBOLS:
        return ("scalar", sym(tok)), pos + 1
    return ("letter", tok), pos + 1


def parse(text: str):
    """Parse into the expression-tree form used by lie_normalize."""
    tokens = tokenize(text)
    tree, pos = _parse_tokens(tokens, 0)
    if pos != len(tokens):
        raise SexprError(f"trailing tokens: {tokens[pos:]}")
    return _strip_scalars(tree)


def _strip_scalars(tree):
    kind = tree[0]
    if kind == "scalar":
        raise SexprError("a bare scalar is not an element")
    if kind == "sum":
        return ("sum", [_strip_scalars(t) for t in tree[1]])
    if kind == "scale":
        return ("scale", tree[1], _strip_scalars(tree[2]))
    if kind == "bracket":
        return ("bracket", _strip_scalars(tree[1]), _strip_scalars(tree[2]))
    return tree


def normalize_letter_aliases(tree):
    """Map t21-style names onto t12-style ones throughout a tree."""
    from .kohno import canonical_t_name
    kind = tree[0]
    if kind == "letter":
        name = tree[1]
        if re.match(r"^t\d\d$", name):
            return ("letter", canonical_t_name(name))
        return tree
    if kind == "sum":
        return ("sum", [normalize_letter_aliases(t) for t in tree[1]])
    if kind == "scale":
        return ("scale", tree[1], normalize_letter_aliases(tree[2]))
    if kind == "bracket":
        return ("bracket", normalize_letter_aliases(tree[1]),
                normalize_letter_aliases(tree[2]))
    return tree


def parse_lie(text: str, alphabet):
    """Parse and normalize into a LieElt over the alphabet."""
    from .lie import lie_normalize
    return lie_normalize(normalize_letter_aliases(parse(text)), alphabet)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _scalar_sexpr(c: FormalScalar) -> list:
    parts = []
    for e, coeff in sorted(c.terms.items()):
        factors = [str(coeff)]
        for i, k in enumerate(e):
            factors += [SYMBOLS[i]] * k if k > 0 else []
            if k < 0:
                raise SexprError("negative symbol powers have no sexpr form")
        parts.append(factors)
    return parts


def format_lie(x) -> str:
    """Serialize a LieElt as a prefix s-expression."""
    from .lie import bracket_string, std_factorization

    def mono(w):
        if len(w) == 1:
            return x.alphabet[w[0]]
        u, v = std_factorization(w)
        return f"[{mono(u)} {mono(v)}]"

    if not x.terms:
        return "(+ )"
    parts = []
    for w in sorted(x.terms, key=lambda w: (len(w), w)):
        for factors in _scalar_sexpr(x.terms[w]):
            parts.append("(* " + " ".join(factors) + " " + mono(w) + ")")
    return "(+ " + " ".join(parts) + ")" if len(parts) != 1 else parts[0]


def format_nc(x) -> str:
    """Serialize an NCElt; words print as products via nested (*)."""
    parts = []
    for d in sorted(x.terms):
        for w in sorted(x.terms[d]):
            body = " ".join(x.generators[i] for i in w)
            for factors in _scalar_sexpr(x.terms[d][w]):
                if body:
                    parts.append("(* " + " ".join(factors) + " (word " + body + "))")
                else:
                    parts.append("(* " + " ".join(factors) + " 1)")
    return "(+ " + " ".join(parts) + ")"

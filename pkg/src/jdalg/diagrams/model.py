"""Jacobi diagrams on ordered oriented strands (or with colored legs).

A diagram is a uni-trivalent dashed graph: univalent vertices (legs) sit in
ordered slots on strands, or carry colors; trivalent vertices carry cyclic
orders; a perfect matching on half-edges gives the dashed edges.  Every
dashed component must contain at least one leg (closed dashed components are
outside the data model).

Canonical form: half-edges are relabeled by a deterministic traversal seeded
at the legs (anchored by strand slots, or by root choice for colored
diagrams); at each trivalent vertex first entered through p the two
remaining half-edges are emitted in one of the two orders, contributing the
AS sign when the choice disagrees with the stored cyclic order.  The minimal
token encoding over all choices is the representative; if it is reached with
both signs the diagram is zero (AS-symmetric) and canonicalize returns None.
"""

from __future__ import annotations

import itertools

from ..scalars import FormalScalar, ONE, ZERO


class RawDiagram:
    """Mutable construction form; half-edge ids are arbitrary hashables."""

    __slots__ = ("kind", "orientations", "strands", "colors", "vertices", "edges")

    def __init__(self, kind, orientations=None, strands=None, colors=None,
                 vertices=(), edges=()):
        self.kind = kind  # "strand" | "colored"
        self.orientations = tuple(orientations) if orientations else ()
        self.strands = [list(s) for s in strands] if strands is not None else []
        self.colors = dict(colors) if colors else {}
        self.vertices = [tuple(v) for v in vertices]
        self.edges = [tuple(e) for e in edges]

    @staticmethod
    def on_strands(orientations, strands, vertices=(), edges=()):
        return RawDiagram("strand", orientations=orientations, strands=strands,
                          vertices=vertices, edges=edges)

    @staticmethod
    def colored(colors, vertices=(), edges=()):
        return RawDiagram("colored", colors=colors, vertices=vertices, edges=edges)

    def legs(self):
        if self.kind == "strand":
            return [h for s in self.strands for h in s]
        return list(self.colors)

    def validate(self):
        legs = self.legs()
        slots = list(legs) + [h for v in self.vertices for h in v]
        if len(set(slots)) != len(slots):
            raise ValueError("a half-edge occupies two slots")
        ends = [h for e in self.edges for h in e]
        if sorted(map(_key, ends)) != sorted(map(_key, slots)):
            raise ValueError("edges are not a perfect matching on the half-edges")
        if len(set(ends)) != len(ends):
            raise ValueError("a half-edge occurs twice in the matching")
        # every dashed component must contain a leg
        parent = {h: h for h in slots}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            parent[find(a)] = find(b)

        for a, b in self.edges:
            union(a, b)
        for v in self.vertices:
            union(v[0], v[1])
            union(v[0], v[2])
        leg_roots = {find(h) for h in legs}
        for v in self.vertices:
            if find(v[0]) not in leg_roots:
                raise ValueError("dashed component without a leg")


def _key(h):
    return (str(type(h)), str(h))


class JDiagram:
    """Canonical immutable Jacobi diagram; build via canonicalize()."""

    __slots__ = ("kind", "orientations", "strands", "leg_colors", "vertices",
                 "edges", "_hash")

    def __init__(self, kind, orientations, strands, leg_colors, vertices, edges):
        self.kind = kind
        self.orientations = orientations
        self.strands = strands
        self.leg_colors = leg_colors  # tuple of (leg id, color), colored kind
        self.vertices = vertices
        self.edges = edges
        self._hash = hash((kind, orientations, strands, leg_colors, vertices, edges))

    # -- structure ----------------------------------------------------------

    @property
    def n_legs(self) -> int:
        if self.kind == "strand":
            return sum(len(s) for s in self.strands)
        return len(self.leg_colors)

    @property
    def degree(self) -> int:
        return (self.n_legs + len(self.vertices)) // 2

    def is_chord_diagram(self) -> bool:
        return not self.vertices

    def sort_key(self):
        return (self.degree, self.kind, self.orientations, self.strands,
                self.leg_colors, self.vertices, self.edges)

    def partner_map(self) -> dict:
        out = {}
        for a, b in self.edges:
            out[a] = b
            out[b] = a
        return out

    def to_raw(self) -> RawDiagram:
        if self.kind == "strand":
            return RawDiagram.on_strands(self.orientations,
                                         [list(s) for s in self.strands],
                                         self.vertices, self.edges)
        return RawDiagram.colored(dict(self.leg_colors), self.vertices, self.edges)

    def betti1(self) -> int:
        n_vert = self.n_legs + len(self.vertices)
        n_edges = len(self.edges)
        # component count of the dashed graph
        ids = {}
        for a, b in self.edges:
            ids[a] = a
            ids[b] = b

        def find(a):
            while ids[a] != a:
                ids[a] = ids[ids[a]]
                a = ids[a]
            return a

        for a, b in self.edges:
            ids[find(a)] = find(b)
        for v in self.vertices:
            ids[find(v[0])] = find(v[1])
            ids[find(v[1])] = find(v[2])
        comps = {find(h) for h in ids}
        return n_edges - n_vert + len(comps)

    def is_connected(self) -> bool:
        n_vert = self.n_legs + len(self.vertices)
        if n_vert == 0:
            return True
        return self.betti1() == len(self.edges) - n_vert + 1

    def __eq__(self, other):
        return (isinstance(other, JDiagram) and self._hash == other._hash
                and self.kind == other.kind and self.orientations == other.orientations
                and self.strands == other.strands and self.leg_colors == other.leg_colors
                and self.vertices == other.vertices and self.edges == other.edges)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if self.kind == "strand":
            sk = "strands:" + str([list(s) for s in self.strands])
        else:
            sk = "colors:" + str(dict(self.leg_colors))
        return (f"{sk}; vertices:{[list(v) for v in self.vertices]}; "
                f"edges:{[list(e) for e in self.edges]}")

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Canonicalization
# ---------------------------------------------------------------------------

_VTOKEN = -1


class _Canonicalizer:
    def __init__(self, raw: RawDiagram):
        self.raw = raw
        self.partner = {}
        for a, b in raw.edges:
            self.partner[a] = b
            self.partner[b] = a
        self.at_vertex = {}
        for vi, tri in enumerate(raw.vertices):
            for pos, h in enumerate(tri):
                self.at_vertex[h] = (vi, pos)
        self.best_tokens = None
        self.best_signs = set()
        self.best_state = None

    # -- traversal with branching on vertex orientations --------------------

    def _explore(self, ids, queue, qi, tokens, sign, tris, tied):
        partner = self.partner
        at_vertex = self.at_vertex
        vertices = self.raw.vertices
        best = self.best_tokens
        while qi < len(queue):
            h = queue[qi]
            qi += 1
            p = partner[h]
            pid = ids.get(p)
            if pid is not None:
                tokens.append(pid + 1)
            elif p not in at_vertex:
                # undiscovered colored leg
                ids[p] = len(ids)
                tokens.append(self._color_token(p))
            else:
                vi, pos = at_vertex[p]
                tri = vertices[vi]
                q, r = tri[(pos + 1) % 3], tri[(pos + 2) % 3]
                tied2 = tied
                if tied and best is not None:
                    b = best[len(tokens)]
                    if _VTOKEN > b:
                        return
                    if _VTOKEN < b:
                        tied2 = False
                for succ, flip in (((q, r), 1), ((r, q), -1)):
                    ids2 = dict(ids)
                    ids2[p] = len(ids2)
                    ids2[succ[0]] = len(ids2)
                    ids2[succ[1]] = len(ids2)
                    self._explore(ids2, queue + list(succ), qi,
                                  tokens + [_VTOKEN], sign * flip,
                                  tris + [(p, succ[0], succ[1])], tied2)
                return
            if tied and best is not None:
                k = len(tokens) - 1
                t, b = tokens[k], best[k]
                if t > b:
                    return  # strictly worse than the current best
                if t < b:
                    tied = False
        self._record(tuple(tokens), sign, ids, tris)

    def _color_token(self, leg):
        c = self.raw.colors[leg]
        return -3 - self._color_order[c]

    def _record(self, tokens, sign, ids, tris):
        if self.best_tokens is None or tokens < self.best_tokens:
            self.best_tokens = tokens
            self.best_signs = {sign}
            self.best_state = (ids, tris)
        elif tokens == self.best_tokens:
            self.best_signs.add(sign)

    # -- drivers -------------------------------------------------------------

    def run_strand(self):
        legs = [h for s in self.raw.strands for h in s]
        ids = {h: i for i, h in enumerate(legs)}
        self._explore(ids, list(legs), 0, [], 1, [], True)
        return self._finish()

    def run_colored_component(self, comp_legs, color_order):
        self._color_order = color_order
        for root in sorted(comp_legs, key=lambda l: (self._color_token(l), _key(l))):
            ids = {root: 0}
            self._explore(ids, [root], 0, [self._color_token(root)], 1, [], True)
        return self._finish()

    def _finish(self):
        if len(self.best_signs) == 2:
            return None  # AS-symmetric: the diagram is zero
        ids, tris = self.best_state
        sign = next(iter(self.best_signs))
        return ids, tris, sign


def _rebuild(raw: RawDiagram, ids, tris):
    """Relabel by ids; vertices use the traversal-chosen cyclic orders."""
    edges = tuple(sorted(tuple(sorted((ids[a], ids[b]))) for a, b in raw.edges))
    verts = []
    for (p, q, r) in tris:
        tri = (ids[p], ids[q], ids[r])
        m = tri.index(min(tri))
        verts.append(tri[m:] + tri[:m])
    vertices = tuple(sorted(verts))
    return edges, vertices


def canonicalize(raw: RawDiagram):
    """Return (JDiagram, sign) or None when the diagram is zero by AS."""
    raw.validate()
    if raw.kind == "strand":
        c = _Canonicalizer(raw)
        res = c.run_strand()
        if res is None:
            return None
        ids, tris, sign = res
        edges, vertices = _rebuild(raw, ids, tris)
        strands = tuple(tuple(ids[h] for h in s) for s in raw.strands)
        return (JDiagram("strand", raw.orientations, strands, (), vertices, edges),
                sign)

    # colored: canonicalize components independently, then merge sorted
    comps = _components(raw)
    color_order = {c: i for i, c in enumerate(sorted(set(raw.colors.values())))}
    pieces = []
    total_sign = 1
    for comp in comps:
        sub = _subdiagram(raw, comp)
        c = _Canonicalizer(sub)
        comp_legs = [l for l in sub.colors]
        res = c.run_colored_component(comp_legs, color_order)
        if res is None:
            return None
        ids, tris, sign = res
        total_sign *= sign
        edges, vertices = _rebuild(sub, ids, tris)
        colors = tuple(sorted((ids[l], col) for l, col in sub.colors.items()))
        pieces.append((c.best_tokens, colors, vertices, edges, len(ids)))
    pieces.sort()
    offset = 0
    all_colors, all_verts, all_edges = [], [], []
    for _, colors, vertices, edges, size in pieces:
        all_colors += [(i + offset, col) for i, col in colors]
        all_verts += [tuple(i + offset for i in v) for v in vertices]
        all_edges += [tuple(i + offset for i in e) for e in edges]
        offset += size
    return (JDiagram("colored", (), (), tuple(all_colors),
                     tuple(sorted(all_verts)), tuple(sorted(all_edges))),
            total_sign)


def _components(raw: RawDiagram):
    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    slots = raw.legs() + [h for v in raw.vertices for h in v]
    for h in slots:
        parent[h] = h
    for a, b in raw.edges:
        parent[find(a)] = find(b)
    for v in raw.vertices:
        parent[find(v[0])] = find(v[1])
        parent[find(v[1])] = find(v[2])
    comps: dict = {}
    for h in slots:
        comps.setdefault(find(h), set()).add(h)
    return list(comps.values())


def _subdiagram(raw: RawDiagram, comp: set) -> RawDiagram:
    return RawDiagram.colored(
        {l: c for l, c in raw.colors.items() if l in comp},
        [v for v in raw.vertices if v[0] in comp],
        [e for e in raw.edges if e[0] in comp])


# ---------------------------------------------------------------------------
# Linear combinations
# ---------------------------------------------------------------------------

class DiagElt:
    """FormalScalar-linear combination of canonical diagrams, optional cap.

    signature: ("strand", orientations) or ("colored", frozenset of colors).
    """

    __slots__ = ("signature", "terms", "cap")

    def __init__(self, signature, terms=None, cap=None, _copy=True):
        self.signature = signature
        self.cap = cap
        if terms is None:
            self.terms = {}
        elif _copy:
            self.terms = {}
            for d, c in terms.items():
                if c.is_zero() or (cap is not None and d.degree > cap):
                    continue
                self.terms[d] = c
        else:
            self.terms = terms

    @staticmethod
    def strand_signature(orientations):
        return ("strand", tuple(orientations))

    @staticmethod
    def zero(signature, cap=None) -> "DiagElt":
        return DiagElt(signature, {}, cap, _copy=False)

    @staticmethod
    def unit(orientations, cap=None) -> "DiagElt":
        sig = DiagElt.strand_signature(orientations)
        raw = RawDiagram.on_strands(orientations, [[] for _ in orientations])
        d, s = canonicalize(raw)
        return DiagElt(sig, {d: ONE if s > 0 else -ONE}, cap, _copy=False)

    @staticmethod
    def from_raw(signature, pairs, cap=None) -> "DiagElt":
        """pairs: iterable of (RawDiagram, scalar)."""
        out: dict = {}
        for raw, coeff in pairs:
            coeff = FormalScalar.coerce(coeff)
            if coeff.is_zero():
                continue
            res = canonicalize(raw)
            if res is None:
                continue
            d, sign = res
            if cap is not None and d.degree > cap:
                continue
            c = coeff if sign > 0 else -coeff
            s = out.get(d)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(d, None)
            else:
                out[d] = s
        return DiagElt(signature, out, cap, _copy=False)

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> FormalScalar:
        for d, c in self.terms.items():
            if d.degree == 0:
                return c
        return ZERO

    def degrees(self):
        return sorted({d.degree for d in self.terms})

    def homogeneous_part(self, deg: int) -> "DiagElt":
        return DiagElt(self.signature,
                       {d: c for d, c in self.terms.items() if d.degree == deg},
                       self.cap, _copy=False)

    def max_degree(self) -> int:
        return max((d.degree for d in self.terms), default=0)

    def truncate(self, cap: int) -> "DiagElt":
        return DiagElt(self.signature,
                       {d: c for d, c in self.terms.items() if d.degree <= cap},
                       cap, _copy=False)

    def with_cap(self, cap) -> "DiagElt":
        return self.truncate(cap) if cap is not None else \
            DiagElt(self.signature, self.terms, None, _copy=False)

    def _join_cap(self, other):
        if self.cap is None:
            return other.cap
        if other.cap is None:
            return self.cap
        return min(self.cap, other.cap)

    def __add__(self, other: "DiagElt") -> "DiagElt":
        if self.signature != other.signature:
            raise ValueError("signature mismatch")
        cap = self._join_cap(other)
        out = {d: c for d, c in self.terms.items()
               if cap is None or d.degree <= cap}
        for d, c in other.terms.items():
            if cap is not None and d.degree > cap:
                continue
            s = out.get(d)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(d, None)
            else:
                out[d] = s
        return DiagElt(self.signature, out, cap, _copy=False)

    def __neg__(self) -> "DiagElt":
        return DiagElt(self.signature, {d: -c for d, c in self.terms.items()},
                       self.cap, _copy=False)

    def __sub__(self, other) -> "DiagElt":
        return self + (-other)

    def scale(self, c) -> "DiagElt":
        c = FormalScalar.coerce(c)
        if c.is_zero():
            return DiagElt.zero(self.signature, self.cap)
        out = {}
        for d, s in self.terms.items():
            p = s * c
            if not p.is_zero():
                out[d] = p
        return DiagElt(self.signature, out, self.cap, _copy=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, DiagElt) and self.signature == other.signature
                and self.terms == other.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*<{d}>" for d, c in self.sorted_terms())

    __repr__ = __str__

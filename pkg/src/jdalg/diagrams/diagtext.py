"""Plain-text diagram format.

    strands:[[h1,h2],[h3]]; vertices:[[h4,h5,h6],...]; edges:[[h1,h4],...]

Colored diagrams replace `strands:` with `colors:{h1:a,...}`.  Half-edge
names occur exactly once among strands/colors plus vertices, and exactly
once in edges.  Orientations default to all-downward; an optional
`orients:++-` field overrides per strand.
"""

from __future__ import annotations

import re

from .model import JDiagram, RawDiagram

_NAME = r"[A-Za-z0-9_]+"


def _parse_list_of_lists(body: str) -> list:
    body = body.strip()
    if not body.startswith("[") or not body.endswith("]"):
        raise ValueError(f"expected [...]: {body!r}")
    inner = body[1:-1].strip()
    out = []
    depth = 0
    item = ""
    for ch in inner:
        if ch == "[":
            depth += 1
            if depth == 1:
                item = ""
                continue
        if ch == "]":
            depth -= 1
            if depth == 0:
                out.append([w for w in re.split(r"[,\s]+", item.strip()) if w])
                continue
        if depth >= 1:
            item += ch
    if depth != 0:
        raise ValueError(f"unbalanced brackets in {body!r}")
    return out


def parse_diagram(text: str) -> RawDiagram:
    fields = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        key, _, body = part.partition(":")
        fields[key.strip()] = body.strip()
    vertices = [tuple(v) for v in _parse_list_of_lists(fields.get("vertices", "[]"))]
    for v in vertices:
        if len(v) != 3:
            raise ValueError(f"vertices are triples: {v}")
    edges = [tuple(e) for e in _parse_list_of_lists(fields.get("edges", "[]"))]
    for e in edges:
        if len(e) != 2:
            raise ValueError(f"edges are pairs: {e}")
    if "colors" in fields:
        body = fields["colors"].strip()
        if not body.startswith("{") or not body.endswith("}"):
            raise ValueError("colors:{h:c,...} expected")
        colors = {}
        for item in body[1:-1].split(","):
            item = item.strip()
            if not item:
                continue
            h, _, c = item.partition(":")
            colors[h.strip()] = c.strip()
        raw = RawDiagram.colored(colors, vertices, edges)
    elif "strands" in fields:
        strands = _parse_list_of_lists(fields["strands"])
        orients = fields.get("orients", "+" * len(strands))
        raw = RawDiagram.on_strands(tuple(orients), strands, vertices, edges)
    else:
        raise ValueError("need a strands: or colors: field")
    raw.validate()
    return raw


def format_diagram(d: JDiagram) -> str:
    verts = "[" + ",".join("[" + ",".join(map(str, v)) + "]"
                           for v in d.vertices) + "]"
    edges = "[" + ",".join("[" + ",".join(map(str, e)) + "]"
                           for e in d.edges) + "]"
    if d.kind == "strand":
        strands = "[" + ",".join("[" + ",".join(map(str, s)) + "]"
                                 for s in d.strands) + "]"
        head = f"strands:{strands}"
        if set(d.orientations) != {"+"} and d.orientations:
            head += f"; orients:{''.join(d.orientations)}"
    else:
        head = "colors:{" + ",".join(f"{h}:{c}" for h, c in d.leg_colors) + "}"
    return f"{head}; vertices:{verts}; edges:{edges}"

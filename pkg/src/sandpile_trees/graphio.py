"""Plain-text sinked-graph format and DOT export.

The text format::

    # comment
    sink
    0 1 1        # ordinary edge 0-1 with multiplicity 1
    1 sink 2     # two edges from vertex 1 to the sink

The first meaningful line names the sink token.  Ordinary vertex ids must be
the nonnegative integers ``0..N-1``.
"""
from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

from .tree import SinkedGraph, TreeCoordinates


class GraphFormatError(ValueError):
    pass


def parse_graph(text: str) -> SinkedGraph:
    sink_token = None
    edges, sink_edges = [], []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if sink_token is None:
            if len(fields) != 1:
                raise GraphFormatError(f"line {lineno}: expected the sink token")
            sink_token = fields[0]
            continue
        if len(fields) != 3:
            raise GraphFormatError(f"line {lineno}: expected 'u v m', got {line!r}")
        u, v, m = fields
        try:
            mult = int(m)
        except ValueError:
            raise GraphFormatError(f"line {lineno}: bad multiplicity {m!r}") from None
        if mult < 0:
            raise GraphFormatError(f"line {lineno}: negative multiplicity")
        if u == sink_token and v == sink_token:
            raise GraphFormatError(f"line {lineno}: sink loop")
        if v == sink_token or u == sink_token:
            vid = _vertex_id(v if u == sink_token else u, lineno)
            sink_edges.append((vid, mult))
            seen.add(vid)
        else:
            a, b = _vertex_id(u, lineno), _vertex_id(v, lineno)
            if a == b:
                raise GraphFormatError(f"line {lineno}: loop at vertex {a}")
            edges.append((a, b, mult))
            seen.update((a, b))
    if sink_token is None:
        raise GraphFormatError("missing sink line")
    if not seen:
        raise GraphFormatError("graph has no vertices")
    n = max(seen) + 1
    if len(seen) != n:
        missing = sorted(set(range(n)) - seen)
        raise GraphFormatError(f"vertex ids are not contiguous; missing {missing[:5]}")
    try:
        return SinkedGraph.from_edges(n, edges, sink_edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def _vertex_id(tok: str, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: bad vertex id {tok!r}") from None
    if v < 0:
        raise GraphFormatError(f"line {lineno}: negative vertex id {v}")
    return v


def read_graph(path: Union[str, Path]) -> SinkedGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from None
    return parse_graph(text)


def format_graph(g: SinkedGraph) -> str:
    lines = ["sink"]
    lines += [f"{u} {v} {m}" for u, v, m in g.edges()]
    lines += [f"{u} sink {m}" for u, m in enumerate(g.sink_multiplicity) if m]
    return "\n".join(lines) + "\n"


def to_dot(g: SinkedGraph, coords: Optional[TreeCoordinates] = None) -> str:
    out = ["graph sandpile {", '  sink [shape=box];']
    for i in range(g.num_vertices):
        label = f"{i}" if coords is None else f"{i} (depth {coords.depth[i]})"
        out.append(f'  {i} [label="{label}"];')
    for u, v, m in g.edges():
        attr = f' [label="{m}"]' if m > 1 else ""
        out.append(f"  {u} -- {v}{attr};")
    for u, m in enumerate(g.sink_multiplicity):
        if m:
            out.append(f'  {u} -- sink [label="{m}"];')
    out.append("}")
    return "\n".join(out) + "\n"

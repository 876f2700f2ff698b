"""Regular trees, sink-augmented graphs and their reduced Laplacians.

Vertices of a tree are indexed in breadth-first order: the root is 0, its
children are 1..d, and the children of every vertex occupy a contiguous
block of increasing indices.
"""
from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Optional, Sequence


@dataclass(frozen=True)
class SinkedGraph:
    """A finite multigraph with a designated sink.

    ``adjacency[i]`` holds ``(j, m)`` pairs: ``m`` parallel edges between the
    ordinary vertices ``i`` and ``j``.  ``sink_multiplicity[i]`` counts the
    edges from ``i`` to the sink.  The sink itself carries no index.
    """

    adjacency: tuple[tuple[tuple[int, int], ...], ...]
    sink_multiplicity: tuple[int, ...]
    labels: Optional[tuple[dict, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.adjacency)
        if len(self.sink_multiplicity) != n:
            raise ValueError("sink_multiplicity length does not match vertex count")
        if any(s < 0 for s in self.sink_multiplicity):
            raise ValueError("negative sink multiplicity")
        seen = {}
        for i, row in enumerate(self.adjacency):
            for j, m in row:
                if not 0 <= j < n:
                    raise ValueError(f"vertex {i} has neighbour {j} out of range")
                if j == i:
                    raise ValueError(f"loop at vertex {i}")
                if m <= 0:
                    raise ValueError(f"edge ({i}, {j}) has non-positive multiplicity")
                if (i, j) in seen:
                    raise ValueError(f"edge ({i}, {j}) listed twice")
                seen[(i, j)] = m
        for (i, j), m in seen.items():
            if seen.get((j, i)) != m:
                raise ValueError(f"adjacency not symmetric at ({i}, {j})")
        if not self._reaches_sink():
            raise ValueError("some ordinary vertex cannot reach the sink")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, int]],
                   sink_edges: Iterable[tuple[int, int]], labels=None) -> "SinkedGraph":
        """Build from ``(u, v, m)`` ordinary edges and ``(u, m)`` sink edges.

        Repeated edges accumulate their multiplicities.
        """
        adj = [dict() for _ in range(n)]
        for u, v, m in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if m < 0:
                raise ValueError(f"edge ({u}, {v}) has negative multiplicity")
            if m == 0:
                continue
            adj[u][v] = adj[u].get(v, 0) + m
            adj[v][u] = adj[v].get(u, 0) + m
        sink = [0] * n
        for u, m in sink_edges:
            if not 0 <= u < n:
                raise ValueError(f"sink edge at {u} out of range")
            sink[u] += m
        adjacency = tuple(tuple(sorted(a.items())) for a in adj)
        return cls(adjacency, tuple(sink), labels)

    def _reaches_sink(self) -> bool:
        n = len(self.adjacency)
        reached = [s > 0 for s in self.sink_multiplicity]
        queue = deque(i for i in range(n) if reached[i])
        while queue:
            i = queue.popleft()
            for j, _ in self.adjacency[i]:
                if not reached[j]:
                    reached[j] = True
                    queue.append(j)
        return all(reached)

    @property
    def num_vertices(self) -> int:
        return len(self.adjacency)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        """Total degree of each ordinary vertex in the augmented graph."""
        return tuple(sum(m for _, m in row) + s
                     for row, s in zip(self.adjacency, self.sink_multiplicity))

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def neighbors(self, i: int) -> tuple[tuple[int, int], ...]:
        return self.adjacency[i]

    def multiplicity(self, i: int, j: int) -> int:
        for k, m in self.adjacency[i]:
            if k == j:
                return m
        return 0

    @cached_property
    def csr(self) -> tuple[list[int], list[int], list[int]]:
        """Compressed adjacency ``(indptr, indices, weights)`` for the kernels."""
        indptr, indices, weights = [0], [], []
        for row in self.adjacency:
            for j, m in row:
                indices.append(j)
                weights.append(m)
            indptr.append(len(indices))
        return indptr, indices, weights

    @cached_property
    def packed(self) -> tuple[array, ...]:
        """int64 buffers ``(indptr, indices, weights, degrees, sink)`` for compiled kernels."""
        indptr, indices, weights = self.csr
        return tuple(array("q", x) for x in
                     (indptr, indices, weights, self.degrees, self.sink_multiplicity))

    def edges(self) -> list[tuple[int, int, int]]:
        return [(i, j, m) for i, row in enumerate(self.adjacency) for j, m in row if i < j]


@dataclass(frozen=True)
class TreeCoordinates:
    """Parent/depth/children bookkeeping for the tree of depth ``h``."""

    d: int
    h: int
    parent: tuple[Optional[int], ...]
    depth: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]

    @property
    def num_vertices(self) -> int:
        return len(self.parent)

    @property
    def bfs_order(self) -> range:
        return range(self.num_vertices)

    @cached_property
    def _spheres(self) -> tuple[tuple[int, ...], ...]:
        spheres = [[] for _ in range(self.h + 1)]
        for v, n in enumerate(self.depth):
            spheres[n].append(v)
        return tuple(tuple(s) for s in spheres)

    def sphere(self, n: int) -> tuple[int, ...]:
        """Vertices at distance exactly ``n`` from the root."""
        if not 0 <= n <= self.h:
            return ()
        return self._spheres[n]

    def ball(self, n: int) -> list[int]:
        return [v for k in range(min(n, self.h) + 1) for v in self._spheres[k]]

    def leaves(self) -> tuple[int, ...]:
        return self._spheres[self.h]

    def descendants(self, i: int) -> list[int]:
        """All ``k`` with ``i`` on the path from ``k`` to the root, ``i`` included."""
        out, frontier = [i], [i]
        while frontier:
            frontier = [c for v in frontier for c in self.children[v]]
            out.extend(frontier)
        return out

    def descendants_at_depth(self, i: int, q: int) -> list[int]:
        level = [i]
        for _ in range(q - self.depth[i]):
            level = [c for v in level for c in self.children[v]]
        return level if q >= self.depth[i] else []


@dataclass(frozen=True)
class FSet:
    members: frozenset[int]
    d: int
    h: int

    def __len__(self):
        return len(self.members)

    def __contains__(self, v):
        return v in self.members

    def __iter__(self):
        return iter(sorted(self.members))


def _check_params(d: int, h: int) -> None:
    if not isinstance(d, int) or not isinstance(h, int):
        raise TypeError("d and h must be integers")
    if d < 3:
        raise ValueError(f"degree d must be at least 3, got {d}")
    if h < 1:
        raise ValueError(f"depth h must be at least 1, got {h}")


def tree_coordinates(d: int, h: int) -> TreeCoordinates:
    _check_params(d, h)
    parent: list[Optional[int]] = [None]
    depth = [0]
    children: list[list[int]] = [[]]
    head = 0
    while head < len(parent):
        v = head
        head += 1
        if depth[v] == h:
            continue
        for _ in range(d if v == 0 else d - 1):
            c = len(parent)
            parent.append(v)
            depth.append(depth[v] + 1)
            children.append([])
            children[v].append(c)
    return TreeCoordinates(d, h, tuple(parent), tuple(depth),
                           tuple(tuple(c) for c in children))


def build_tree(d: int, h: int) -> tuple[SinkedGraph, TreeCoordinates]:
    """The tree of depth ``h`` with every leaf joined to the sink by ``d - 1`` edges."""
    coords = tree_coordinates(d, h)
    edges = [(p, v, 1) for v, p in enumerate(coords.parent) if p is not None]
    sink_edges = [(v, d - 1) for v in coords.leaves()]
    labels = tuple({"depth": coords.depth[v], "parent": coords.parent[v],
                    "children": coords.children[v]} for v in coords.bfs_order)
    g = SinkedGraph.from_edges(coords.num_vertices, edges, sink_edges, labels)
    return g, coords


def augment_subset(d: int, vertices: Sequence[Hashable],
                   edges: Iterable[tuple[Hashable, Hashable]]) -> SinkedGraph:
    """Sink-augment a finite connected subgraph of the infinite ``d``-regular tree.

    Vertex ``vertices[k]`` becomes ordinary vertex ``k``; each one is joined
    to the sink by ``d`` minus its induced degree.
    """
    if d < 3:
        raise ValueError(f"degree d must be at least 3, got {d}")
    index = {v: k for k, v in enumerate(vertices)}
    if len(index) != len(vertices):
        raise ValueError("duplicate vertex")
    if not index:
        raise ValueError("empty vertex set")
    pairs = set()
    for u, v in edges:
        if u not in index or v not in index:
            raise ValueError(f"edge ({u}, {v}) uses an unknown vertex")
        if u == v:
            raise ValueError(f"loop at {u}")
        pairs.add(frozenset((index[u], index[v])))
    n = len(index)
    deg = [0] * n
    for e in pairs:
        for k in e:
            deg[k] += 1
    if any(x > d for x in deg):
        raise ValueError("a vertex has induced degree exceeding d")
    if len(pairs) != n - 1 or not _connected(n, pairs):
        # a connected subgraph of a tree is itself a tree
        raise ValueError("input is not a connected subtree")
    ordinary = [tuple(e) + (1,) for e in pairs]
    return SinkedGraph.from_edges(n, ordinary, [(k, d - deg[k]) for k in range(n)],
                                  labels=tuple(vertices))


def _connected(n: int, pairs) -> bool:
    adj = [[] for _ in range(n)]
    for e in pairs:
        a, b = tuple(e)
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def reduced_laplacian(g: SinkedGraph) -> list[list[int]]:
    """Graph Laplacian of the augmented graph with the sink row and column removed."""
    n = g.num_vertices
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] = g.degrees[i]
        for j, m in g.adjacency[i]:
            row[j] -= m
        rows.append(row)
    return rows


def f_set(coords: TreeCoordinates) -> FSet:
    """The generating set built from the non-distinguished children ``J_i``.

    The distinguished child ``m_i`` of each vertex is its smallest-index child.
    For even ``h`` the set contains the root and ``J_i`` for every ``i`` at odd
    depth below ``h``; for odd ``h`` it contains ``J_i`` for every ``i`` at even
    depth below ``h``.
    """
    h = coords.h
    start = 1 if h % 2 == 0 else 0
    members = {0} if h % 2 == 0 else set()
    for n in range(start, h, 2):
        for i in coords.sphere(n):
            members.update(coords.children[i][1:])
    return FSet(frozenset(members), coords.d, h)


def distinguished_child(coords: TreeCoordinates, i: int) -> int:
    return coords.children[i][0]

"""Immutable simple graphs with bit-row adjacency.

Vertices are dense integers 0..n-1.  Adjacency is stored twice: as a
packed bit-row per vertex (a Python int, bit v of ``rows[u]`` set iff
u ~ v) and, lazily, as sorted neighbor tuples.  Bit rows make
common-neighborhood and edge-count queries one word-op per machine word,
which is what the enumeration and subgraph-search hot loops need.

Graphs are values: all edit operations return new graphs, so instances
can be shared freely across threads or worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ParameterError

__all__ = [
    "Graph",
    "NeighborhoodLayers",
    "VertexSetPair",
    "bfs_layers",
    "complete_bipartite",
    "complete_graph",
    "construct_named",
    "cycle_graph",
    "disjoint_union",
    "edge_counts",
    "empty_graph",
    "join",
    "path_graph",
    "s_nk",
    "s_nk_plus",
    "turan_graph",
]


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Simple undirected graph on vertices 0..n-1, immutable after construction."""

    __slots__ = ("n", "rows", "m", "_neighbors")

    def __init__(self, n: int, rows: tuple[int, ...]):
        # Trusted constructor; use from_edges for validated building.
        self.n = n
        self.rows = rows
        self.m = sum(r.bit_count() for r in rows) // 2
        self._neighbors: tuple[tuple[int, ...], ...] | None = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ParameterError(f"vertex count must be >= 0, got {n}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ParameterError(f"self-loop ({u},{u}) not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    # -- basic queries ------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def neighbors(self, u: int) -> tuple[int, ...]:
        if self._neighbors is None:
            self._neighbors = tuple(tuple(bits(r)) for r in self.rows)
        return self._neighbors[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in bits(self.rows[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    # -- edits (return new graphs) -------------------------------------

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise ParameterError("self-loop not allowed")
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def without_edge(self, u: int, v: int) -> "Graph":
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    # -- subsets and components ----------------------------------------

    def count_edges_within(self, mask: int) -> int:
        total = 0
        for u in bits(mask):
            total += (self.rows[u] & mask).bit_count()
        return total // 2

    def count_edges_between(self, mask_x: int, mask_y: int) -> int:
        total = 0
        for u in bits(mask_x):
            total += (self.rows[u] & mask_y).bit_count()
        return total

    def component_mask(self, start: int) -> int:
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= self.rows[u]
            frontier = nxt & ~seen
            seen |= frontier
        return seen

    def components(self) -> list[int]:
        """Connected components as bit masks, ordered by smallest vertex."""
        out = []
        todo = self.full_mask
        while todo:
            start = (todo & -todo).bit_length() - 1
            comp = self.component_mask(start)
            out.append(comp)
            todo &= ~comp
        return out

    def bfs_masks(self, root: int) -> list[int]:
        """Distance layers from ``root`` as bit masks; index i = distance i."""
        if not 0 <= root < self.n:
            raise ParameterError(f"root {root} out of range for n={self.n}")
        layers = [1 << root]
        seen = 1 << root
        while True:
            nxt = 0
            for u in bits(layers[-1]):
                nxt |= self.rows[u]
            nxt &= ~seen
            if not nxt:
                return layers
            layers.append(nxt)
            seen |= nxt

    # -- value semantics ------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class NeighborhoodLayers:
    """BFS layers around a root: layers[i] holds the vertices at distance i."""

    root: int
    layers: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self.layers)

    def layer(self, i: int) -> tuple[int, ...]:
        return self.layers[i] if i < len(self.layers) else ()


@dataclass(frozen=True)
class VertexSetPair:
    """Two disjoint vertex subsets of a host graph."""

    x: frozenset[int]
    y: frozenset[int]

    def __post_init__(self):
        if self.x & self.y:
            raise ParameterError(f"subsets overlap on {sorted(self.x & self.y)}")


def bfs_layers(g: Graph, root: int) -> NeighborhoodLayers:
    masks = g.bfs_masks(root)
    return NeighborhoodLayers(root=root, layers=tuple(tuple(bits(m)) for m in masks))


def edge_counts(g: Graph, pair: VertexSetPair) -> tuple[int, int, int]:
    """(edges inside X, edges inside Y, edges between X and Y)."""
    for v in pair.x | pair.y:
        if not 0 <= v < g.n:
            raise ParameterError(f"vertex {v} out of range for n={g.n}")
    mask_x = sum(1 << v for v in pair.x)
    mask_y = sum(1 << v for v in pair.y)
    return (
        g.count_edges_within(mask_x),
        g.count_edges_within(mask_y),
        g.count_edges_between(mask_x, mask_y),
    )


# -- named constructors -------------------------------------------------


def empty_graph(n: int) -> Graph:
    if n < 0:
        raise ParameterError(f"empty graph needs n >= 0, got {n}")
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    if n < 0:
        raise ParameterError(f"complete graph needs n >= 0, got {n}")
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << u) for u in range(n)))


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ParameterError(f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ParameterError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 0 or b < 0:
        raise ParameterError(f"complete bipartite needs a, b >= 0, got ({a},{b})")
    return join(empty_graph(a), empty_graph(b))


def turan_graph(n: int, r: int) -> Graph:
    """Balanced complete r-partite graph; larger parts come first."""
    if r < 1 or n < 0:
        raise ParameterError(f"turan graph needs n >= 0 and r >= 1, got ({n},{r})")
    base, extra = divmod(n, r)
    sizes = [base + 1] * extra + [base] * (r - extra)
    edges = []
    start = 0
    blocks = []
    for s in sizes:
        blocks.append(range(start, start + s))
        start += s
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            edges.extend((u, v) for u in blocks[i] for v in blocks[j])
    return Graph.from_edges(n, edges)


def s_nk(n: int, k: int) -> Graph:
    """Join of a k-clique with an independent set; clique = vertices 0..k-1."""
    if not n > k >= 1:
        raise ParameterError(f"s_nk needs n > k >= 1, got (n={n}, k={k})")
    return join(complete_graph(k), empty_graph(n - k))


def s_nk_plus(n: int, k: int) -> Graph:
    """s_nk plus one extra edge inside the independent part, between k and k+1."""
    if k < 1 or n < k + 2:
        raise ParameterError(f"s_nk_plus needs n >= k + 2 and k >= 1, got (n={n}, k={k})")
    return s_nk(n, k).with_edge(k, k + 1)


_FAMILIES = {
    "empty": (1, empty_graph),
    "complete": (1, complete_graph),
    "path": (1, path_graph),
    "cycle": (1, cycle_graph),
    "complete_bipartite": (2, complete_bipartite),
    "turan": (2, turan_graph),
    "s_nk": (2, s_nk),
    "s_nk_plus": (2, s_nk_plus),
}


def construct_named(family: str, params: tuple[int, ...]) -> Graph:
    """Build a named family graph; ``params`` arity must match the family."""
    if family not in _FAMILIES:
        raise ParameterError(f"unknown family {family!r}; choose from {sorted(_FAMILIES)}")
    arity, fn = _FAMILIES[family]
    if len(params) != arity:
        raise ParameterError(f"family {family!r} takes {arity} parameter(s), got {len(params)}")
    return fn(*params)


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint copies of g and h plus all edges between them."""
    n = g.n + h.n
    g_mask = (1 << g.n) - 1
    h_mask = ((1 << h.n) - 1) << g.n
    rows = [g.rows[u] | h_mask for u in range(g.n)]
    rows += [(h.rows[v] << g.n) | g_mask for v in range(h.n)]
    return Graph(n, tuple(rows))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    n = g.n + h.n
    rows = list(g.rows) + [h.rows[v] << g.n for v in range(h.n)]
    return Graph(n, tuple(rows))

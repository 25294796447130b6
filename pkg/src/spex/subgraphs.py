"""Exact detection of fixed-length paths and cycles, with witnesses.

The search is depth-first backtracking over simple paths using bit-set
candidate intersection.  Three prunings keep it exact but fast on the
join-type graphs this package cares about:

* candidate equivalence: two unused candidates whose adjacency agrees on
  every vertex still available (and on end-vertex eligibility) lead to
  interchangeable subtrees, so only one is explored.  This collapses the
  huge independent parts of K_k-join graphs to a single branch.
* remaining-depth reachability: a partial path is abandoned when the
  vertices still reachable from its head cannot supply the missing
  vertices.
* anchored cycle search: cycles are rooted at their smallest vertex, all
  other cycle vertices must be larger, and every candidate must be within
  closing distance of the anchor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError
from .graphs import Graph, bits

__all__ = [
    "ForbiddenFamily",
    "SubgraphWitness",
    "contains_cycle",
    "contains_cycle_through",
    "contains_path",
    "contains_path_between",
    "contains_path_with_endpoints_in",
    "is_family_free",
]


@dataclass(frozen=True)
class ForbiddenFamily:
    """A set of forbidden cycle lengths, deduplicated and sorted."""

    cycle_lengths: tuple[int, ...]

    def __post_init__(self):
        lengths = tuple(sorted(set(self.cycle_lengths)))
        if not lengths:
            raise ParameterError("forbidden family must list at least one cycle length")
        if lengths[0] < 3:
            raise ParameterError(f"cycle lengths must be >= 3, got {lengths[0]}")
        object.__setattr__(self, "cycle_lengths", lengths)

    @classmethod
    def from_tokens(cls, text: str) -> "ForbiddenFamily":
        """Parse 'C5,C6'-style comma-separated cycle tokens."""
        lengths = []
        for token in text.split(","):
            token = token.strip()
            if not token:
                continue
            if not token.upper().startswith("C") or not token[1:].isdigit():
                raise ParameterError(f"bad forbidden-cycle token {token!r}; expected e.g. C6")
            lengths.append(int(token[1:]))
        return cls(tuple(lengths))

    def tokens(self) -> str:
        return ",".join(f"C{ell}" for ell in self.cycle_lengths)


@dataclass(frozen=True)
class SubgraphWitness:
    """An explicit path or cycle found in a host graph."""

    kind: str  # "path" | "cycle"
    vertices: tuple[int, ...]

    def validate(self, g: Graph) -> bool:
        vs = self.vertices
        if len(set(vs)) != len(vs):
            return False
        if any(not 0 <= v < g.n for v in vs):
            return False
        for a, b in zip(vs, vs[1:]):
            if not g.has_edge(a, b):
                return False
        if self.kind == "cycle":
            return len(vs) >= 3 and g.has_edge(vs[-1], vs[0])
        return self.kind == "path"


def _find_path(
    rows: tuple[int, ...],
    ell: int,
    starts_mask: int,
    end_mask: int,
    allowed_mask: int,
    anchor_dist: list[int] | None = None,
) -> tuple[int, ...] | None:
    """Simple path on exactly ``ell`` vertices inside ``allowed_mask``.

    The first vertex must lie in ``starts_mask`` and the last in
    ``end_mask``.  ``anchor_dist`` (distance-to-anchor table) enables the
    cycle-closing prune.  Returns the vertex sequence or None.
    """
    if ell == 1:
        m = starts_mask & end_mask & allowed_mask
        if m:
            return ((m & -m).bit_length() - 1,)
        return None

    path: list[int] = []

    def extend(v: int, visited: int) -> bool:
        path.append(v)
        if len(path) == ell:
            if end_mask >> v & 1:
                return True
            path.pop()
            return False
        visited |= 1 << v
        future = allowed_mask & ~visited
        cands = rows[v] & future
        if anchor_dist is not None and cands:
            limit = ell - len(path)
            m = cands
            pruned = 0
            while m:
                low = m & -m
                m ^= low
                if anchor_dist[low.bit_length() - 1] <= limit:
                    pruned |= low
            cands = pruned
        if not cands:
            path.pop()
            return False
        remaining = ell - len(path)
        if remaining > 2:
            reach = cands
            frontier = cands
            while frontier and reach.bit_count() < remaining:
                nxt = 0
                m = frontier
                while m:
                    low = m & -m
                    m ^= low
                    nxt |= rows[low.bit_length() - 1]
                frontier = nxt & future & ~reach
                reach |= frontier
            if reach.bit_count() < remaining:
                path.pop()
                return False
        # Lazy candidate dedup: a candidate is skipped when an already
        # explored sibling has the same adjacency on the still-available
        # vertices and the same end-eligibility (interchangeable subtrees).
        tried: list[tuple[int, int, int]] = []
        m = cands
        while m:
            low = m & -m
            m ^= low
            u = low.bit_length() - 1
            r_u = rows[u] & future
            e_u = end_mask >> u & 1
            dup = False
            for w, r_w, e_w in tried:
                if e_u == e_w and (r_u ^ r_w) & ~(low | (1 << w)) == 0:
                    dup = True
                    break
            if dup:
                continue
            tried.append((u, r_u, e_u))
            if extend(u, visited):
                return True
        path.pop()
        return False

    starts = starts_mask & allowed_mask
    tried0: list[tuple[int, int, int]] = []
    m = starts
    while m:
        low = m & -m
        m ^= low
        s = low.bit_length() - 1
        r_s = rows[s] & allowed_mask
        e_s = end_mask >> s & 1
        dup = False
        for w, r_w, e_w in tried0:
            if e_s == e_w and (r_s ^ r_w) & ~(low | (1 << w)) == 0:
                dup = True
                break
        if dup:
            continue
        tried0.append((s, r_s, e_s))
        if extend(s, 0):
            return tuple(path)
    return None


def contains_path(g: Graph, ell: int) -> SubgraphWitness | None:
    """Witness path on exactly ``ell`` vertices, or None."""
    if ell < 1:
        raise ParameterError(f"path order must be >= 1, got {ell}")
    if ell > g.n:
        return None
    full = g.full_mask
    found = _find_path(g.rows, ell, full, full, full)
    return SubgraphWitness("path", found) if found else None


def contains_path_with_endpoints_in(g: Graph, u_set, ell: int) -> SubgraphWitness | None:
    """Witness path on ``ell`` vertices with both endpoints in ``u_set``."""
    if ell < 2:
        raise ParameterError(f"endpoint-constrained path order must be >= 2, got {ell}")
    u_mask = 0
    for v in u_set:
        if not 0 <= v < g.n:
            raise ParameterError(f"vertex {v} out of range for n={g.n}")
        u_mask |= 1 << v
    if ell > g.n:
        return None
    found = _find_path(g.rows, ell, u_mask, u_mask, g.full_mask)
    return SubgraphWitness("path", found) if found else None


def contains_path_between(g: Graph, a: int, b: int, ell: int) -> SubgraphWitness | None:
    """Witness path on ``ell`` vertices from ``a`` to ``b``, or None."""
    if ell < 2:
        raise ParameterError(f"path order must be >= 2, got {ell}")
    if ell > g.n:
        return None
    found = _find_path(g.rows, ell, 1 << a, 1 << b, g.full_mask)
    return SubgraphWitness("path", found) if found else None


def _anchor_distances(g: Graph, anchor: int, allowed: int) -> list[int]:
    dist = [g.n + 1] * g.n
    dist[anchor] = 0
    seen = 1 << anchor
    frontier = seen
    d = 0
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.rows[u]
        nxt &= allowed & ~seen
        d += 1
        for u in bits(nxt):
            dist[u] = d
        seen |= nxt
        frontier = nxt
    return dist


def contains_cycle(g: Graph, ell: int) -> SubgraphWitness | None:
    """Witness cycle on exactly ``ell`` vertices, or None."""
    if ell < 3:
        raise ParameterError(f"cycle length must be >= 3, got {ell}")
    if ell > g.n:
        return None
    full = g.full_mask
    for anchor in range(g.n - ell + 1):
        allowed = full >> anchor << anchor  # anchor and larger vertices only
        end = g.rows[anchor] & allowed
        if end.bit_count() < 2:
            continue
        dist = _anchor_distances(g, anchor, allowed)
        found = _find_path(g.rows, ell, 1 << anchor, end, allowed, anchor_dist=dist)
        if found:
            return SubgraphWitness("cycle", found)
    return None


def contains_cycle_through(g: Graph, ell: int, v: int) -> SubgraphWitness | None:
    """Witness cycle on ``ell`` vertices that passes through vertex ``v``."""
    if ell < 3:
        raise ParameterError(f"cycle length must be >= 3, got {ell}")
    if ell > g.n:
        return None
    end = g.rows[v]
    if end.bit_count() < 2:
        return None
    dist = _anchor_distances(g, v, g.full_mask)
    found = _find_path(g.rows, ell, 1 << v, end, g.full_mask, anchor_dist=dist)
    return SubgraphWitness("cycle", found) if found else None


def is_family_free(g: Graph, family: ForbiddenFamily) -> tuple[bool, SubgraphWitness | None]:
    """(True, None) if no forbidden cycle embeds, else (False, witness)."""
    for ell in family.cycle_lengths:
        w = contains_cycle(g, ell)
        if w is not None:
            return False, w
    return True, None

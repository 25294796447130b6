"""Canonical labeled forms for small graphs.

The canonical form of a graph is the vertex labeling whose adjacency
code -- the upper triangle read in column-major order, packed MSB-first
into one integer -- is lexicographically minimal over all vertex
permutations.  Column-major order makes the code of a graph extend the
code of the graph minus its last vertex, which is exactly the prefix
property orderly generation needs: deleting the last vertex of a
canonical graph leaves a canonical graph.

The permutation search is branch-and-bound over label positions, one
column at a time, with two prunings:

* at each position only candidates achieving the minimal column value
  can still lead to a minimal code (columns earlier in the layout
  dominate lexicographically);
* among those, candidates that are twins (same adjacency outside the
  pair) generate identical subtrees and only one is explored.  Twin
  transpositions are automorphisms, which makes the pruning exact; it
  also collapses the factorial blowup on graphs with many repeated
  vertices (independent sets, cliques).
"""

from __future__ import annotations

from .graphs import Graph

__all__ = [
    "canonical_code",
    "canonical_form",
    "code_of",
    "column_values",
    "is_canonical",
    "twin_classes",
]


def column_values(n: int, rows: tuple[int, ...]) -> list[int]:
    """Column integers of the labeled code: entry j-1 packs bits
    x(0,j)..x(j-1,j) MSB-first."""
    cols = []
    for j in range(1, n):
        c = 0
        rj = rows[j]
        for i in range(j):
            c = c << 1 | (rj >> i & 1)
        cols.append(c)
    return cols


def code_of(n: int, rows: tuple[int, ...]) -> int:
    """The full labeled code as one integer (fixed width n(n-1)/2 bits)."""
    code = 0
    for j, c in enumerate(column_values(n, rows), start=1):
        code = code << j | c
    return code


def twin_classes(n: int, rows: tuple[int, ...]) -> list[int]:
    """Class index per vertex; u, w share a class iff their rows agree
    outside {u, w} (swapping them is then an automorphism)."""
    cls = [-1] * n
    nxt = 0
    for u in range(n):
        if cls[u] >= 0:
            continue
        cls[u] = nxt
        for w in range(u + 1, n):
            if cls[w] < 0:
                mask = ~((1 << u) | (1 << w))
                if (rows[u] ^ rows[w]) & mask == 0:
                    cls[w] = nxt
        nxt += 1
    return cls


def is_canonical(n: int, rows: tuple[int, ...]) -> bool:
    """True iff this labeling is already the lexicographic minimum."""
    if n <= 1:
        return True
    cols = column_values(n, rows)
    cls = twin_classes(n, rows)
    all_mask = (1 << n) - 1

    def rec(pos: int, used: int, profiles: list[int]) -> bool:
        # profiles[v] = column value vertex v would contribute at this position
        if pos == n:
            return True
        if pos == 0:
            group = range(n)
            bound = None
        else:
            bound = cols[pos - 1]
            best = None
            free = all_mask & ~used
            m = free
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                p = profiles[v]
                if best is None or p < best:
                    best = p
            if best < bound:
                return False
            if best > bound:
                return True
            group = [v for v in range(n) if not used >> v & 1 and profiles[v] == best]
        seen: set[int] = set()
        for v in group:
            if pos == 0 and used >> v & 1:
                continue
            if cls[v] in seen:
                continue
            seen.add(cls[v])
            used2 = used | 1 << v
            profiles2 = [
                profiles[w] << 1 | (rows[w] >> v & 1) if not used2 >> w & 1 else 0
                for w in range(n)
            ]
            if not rec(pos + 1, used2, profiles2):
                return False
        return True

    return rec(0, 0, [0] * n)


def canonical_form(g: Graph) -> Graph:
    """The canonically labeled copy of ``g``."""
    n, rows = g.n, g.rows
    if n <= 1:
        return g
    cls = twin_classes(n, rows)

    best_cols: list[int] | None = None
    best_perm: list[int] | None = None
    version = 0
    assign: list[int] = []
    acc: list[int] = []

    def rec(used: int, profiles: list[int], tight: bool) -> None:
        nonlocal best_cols, best_perm, version
        pos = len(assign)
        if pos == n:
            if not tight or best_cols is None:
                best_cols = acc.copy()
                best_perm = assign.copy()
                version += 1
            return
        free = [v for v in range(n) if not used >> v & 1]
        if pos == 0:
            group = free
            col = None
        else:
            m = min(profiles[v] for v in free)
            if tight and best_cols is not None:
                bound = best_cols[pos - 1]
                if m > bound:
                    return
                tight = m == bound
            group = [v for v in free if profiles[v] == m]
            col = m
        seen: set[int] = set()
        my_version = version
        for v in group:
            if cls[v] in seen:
                continue
            seen.add(cls[v])
            if version != my_version:
                # A strictly smaller completion was recorded inside an
                # earlier sibling; our shared prefix now equals the best
                # prefix, so remaining siblings compare tightly.
                tight = True
                my_version = version
                if col is not None and best_cols is not None and col > best_cols[pos - 1]:
                    return
            used2 = used | 1 << v
            profiles2 = [
                profiles[w] << 1 | (rows[w] >> v & 1) if not used2 >> w & 1 else 0
                for w in range(n)
            ]
            assign.append(v)
            if col is not None:
                acc.append(col)
            rec(used2, profiles2, tight)
            assign.pop()
            if col is not None:
                acc.pop()

    # Seed with the identity labeling as the initial upper bound.
    best_cols = column_values(n, rows)
    best_perm = list(range(n))
    rec(0, [0] * n, True)

    assert best_perm is not None
    # best_perm maps position -> original vertex; relabel accordingly.
    pos_of = [0] * n
    for pos, v in enumerate(best_perm):
        pos_of[v] = pos
    new_rows = [0] * n
    for v in range(n):
        r = 0
        rv = rows[v]
        while rv:
            w = (rv & -rv).bit_length() - 1
            rv &= rv - 1
            r |= 1 << pos_of[w]
        new_rows[pos_of[v]] = r
    return Graph(n, tuple(new_rows))


def canonical_code(g: Graph) -> int:
    """Code integer of the canonical form (isomorphism invariant)."""
    cf = canonical_form(g)
    return code_of(cf.n, cf.rows)

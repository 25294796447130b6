"""Exhaustive isomorph-free enumeration, exact EX/SPEX at small n, and a
rewiring hill-climb for counterexample hunting at moderate n.

Enumeration is orderly augmentation: extend canonical graphs one vertex
at a time (the new vertex is always the highest label) and keep exactly
the extensions that are canonically labeled.  Column-major codes give
the required prefix property, so every isomorphism class is produced
once.  When a forbidden family is supplied up front, any partial graph
already containing a forbidden cycle is discarded; freeness is monotone
under edge addition, so this prunes whole subtrees.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

import numpy as np

from .canonical import canonical_form, code_of, is_canonical
from .errors import CapacityError, DataError, ParameterError
from .graph6 import graph6_encode
from .graphs import Graph
from .spectral import spectral_radius
from .subgraphs import (
    ForbiddenFamily,
    _find_path,
    contains_cycle_through,
    is_family_free,
)

__all__ = [
    "CSV_HEADER",
    "DEFAULT_ENUM_CAP",
    "ExtremalRecord",
    "SearchTrace",
    "SplitMix64",
    "compute_extremal",
    "enumerate_graphs",
    "local_search",
    "random_graph",
    "record_to_csv_row",
    "record_to_json",
]

DEFAULT_ENUM_CAP = 9
LAMBDA_TIE_TOL = 1e-9

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit PRNG used everywhere randomness is needed.

    The i-th draw (i = 1, 2, ...) is a pure function of the seed:
        state = seed + i * 0x9E3779B97F4A7C15
        z = state
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB
        draw = z ^ (z >> 31)
    with all arithmetic mod 2^64.  Being counter-based, the same stream
    can be produced scalar (this class) or in vectorized batches.

    ``below(b)`` reduces by plain modulo; the bias is irrelevant at the
    bounds used here and keeps replay trivial in any language.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next_u64() % bound


def splitmix64_batch(seed: int, start_index: int, count: int) -> np.ndarray:
    """Draws start_index+1 .. start_index+count of the SplitMix64 stream."""
    idx = np.arange(start_index + 1, start_index + count + 1, dtype=np.uint64)
    z = np.uint64(seed) + idx * np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Seeded Erdos-Renyi-style graph; edge (i,j) kept iff the next PRNG
    draw falls below p."""
    rng = SplitMix64(seed)
    threshold = int(p * 2**64)
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.next_u64() < threshold:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, tuple(rows))


# -- isomorph-free enumeration -------------------------------------------


def _free_through_last(rows: tuple[int, ...], n: int, lengths: tuple[int, ...]) -> bool:
    g = Graph(n, rows)
    for ell in lengths:
        if contains_cycle_through(g, ell, n - 1) is not None:
            return False
    return True


def _children(rows: tuple[int, ...], lengths: tuple[int, ...] | None, descending: bool) -> Iterator[tuple[int, ...]]:
    j = len(rows)
    subsets = range((1 << j) - 1, -1, -1) if descending else range(1 << j)
    for subset in subsets:
        child = [r | (1 << j) if subset >> v & 1 else r for v, r in enumerate(rows)]
        child.append(subset)
        child_rows = tuple(child)
        if not is_canonical(j + 1, child_rows):
            continue
        if lengths and not _free_through_last(child_rows, j + 1, lengths):
            continue
        yield child_rows


def _extend_to(rows: tuple[int, ...], n: int, lengths: tuple[int, ...] | None, descending: bool) -> Iterator[tuple[int, ...]]:
    if len(rows) == n:
        yield rows
        return
    for child in _children(rows, lengths, descending):
        yield from _extend_to(child, n, lengths, descending)


def enumerate_graphs(
    n: int,
    family: ForbiddenFamily | None = None,
    cap: int = DEFAULT_ENUM_CAP,
    subset_order: str = "ascending",
) -> Iterator[Graph]:
    """Exactly one representative per isomorphism class on ``n`` vertices.

    With ``family`` given, only family-free classes are produced and the
    augmentation tree is pruned at the first forbidden cycle.
    ``subset_order`` ('ascending' or 'descending') permutes the internal
    generation order without changing the produced set; the second order
    exists so independent runs can cross-check each other.
    """
    if n < 1:
        raise ParameterError(f"enumeration needs n >= 1, got {n}")
    if n > cap:
        raise CapacityError(
            f"enumeration capped at n = {cap}; decode a graph6 stream from an external generator instead"
        )
    if subset_order not in ("ascending", "descending"):
        raise ParameterError(f"unknown subset order {subset_order!r}")
    lengths = family.cycle_lengths if family is not None else None
    descending = subset_order == "descending"
    for rows in _extend_to((0,), n, lengths, descending):
        yield Graph(n, rows)


def _shard_worker(args: tuple[tuple[int, ...], int, tuple[int, ...] | None]) -> list[tuple[int, ...]]:
    rows, n, lengths = args
    return list(_extend_to(rows, n, lengths, False))


def enumerate_graphs_sharded(
    n: int,
    family: ForbiddenFamily | None = None,
    threads: int = 1,
    cap: int = DEFAULT_ENUM_CAP,
) -> Iterator[Graph]:
    """Same stream as enumerate_graphs, fanned out over worker processes.

    Canonical prefixes at a fixed level are distributed to workers; each
    worker extends independently and results are concatenated in prefix
    order, so the output equals the single-process stream.
    """
    if threads <= 1:
        yield from enumerate_graphs(n, family, cap)
        return
    if n < 1:
        raise ParameterError(f"enumeration needs n >= 1, got {n}")
    if n > cap:
        raise CapacityError(
            f"enumeration capped at n = {cap}; decode a graph6 stream from an external generator instead"
        )
    lengths = family.cycle_lengths if family is not None else None
    level = 1
    frontier: list[tuple[int, ...]] = [(0,)]
    while level < n and len(frontier) < 4 * threads:
        frontier = [c for rows in frontier for c in _children(rows, lengths, False)]
        level += 1
    if level == n:
        for rows in frontier:
            yield Graph(n, rows)
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for out in pool.map(_shard_worker, [(rows, n, lengths) for rows in frontier]):
            for rows in out:
                yield Graph(n, rows)


# -- exact extremal records ----------------------------------------------


@dataclass
class ExtremalRecord:
    """Best objective value over family-free graphs, with all maximizers."""

    n: int
    family: ForbiddenFamily
    objective: str  # "edges" | "lambda"
    best_value: float | int
    argmax: list[Graph]  # canonical forms, sorted by code
    graphs_scanned: int
    seconds: float


def compute_extremal(
    n: int,
    family: ForbiddenFamily,
    objective: str,
    source: Iterable[Graph] | None = None,
    tie_tol: float = LAMBDA_TIE_TOL,
    threads: int = 1,
    cap: int = DEFAULT_ENUM_CAP,
    progress: Callable[[int], None] | None = None,
    progress_every: int = 100_000,
) -> ExtremalRecord:
    """Scan a graph source for the family-free maximizers of the objective.

    With ``source=None`` the built-in pruned enumeration supplies every
    family-free isomorphism class on n vertices.  External sources are
    checked for vertex-count consistency and freeness per graph.
    """
    if objective not in ("edges", "lambda"):
        raise ParameterError(f"objective must be 'edges' or 'lambda', got {objective!r}")
    t0 = time.perf_counter()
    builtin = source is None
    if builtin:
        stream: Iterable[Graph] = enumerate_graphs_sharded(n, family, threads=threads, cap=cap)
    else:
        stream = source

    scanned = 0
    if objective == "edges":
        best_m = -1
        arg: dict[int, Graph] = {}
        for idx, g in enumerate(stream):
            scanned += 1
            if progress and scanned % progress_every == 0:
                progress(scanned)
            if g.n != n:
                raise DataError(f"source record {idx} has {g.n} vertices, expected {n}")
            if not builtin and not is_family_free(g, family)[0]:
                continue
            if g.m > best_m:
                best_m = g.m
                arg = {}
            if g.m == best_m:
                cf = canonical_form(g)
                arg[code_of(cf.n, cf.rows)] = cf
        if best_m < 0:
            raise DataError("source yielded no family-free graphs")
        argmax = [arg[c] for c in sorted(arg)]
        return ExtremalRecord(n, family, objective, best_m, argmax,
                              scanned, time.perf_counter() - t0)

    # lambda objective: batched symmetric eigensolves locate the top of
    # the stream cheaply; the survivors near the running maximum are then
    # confirmed with the package eigensolver at full tolerance.
    screen_margin = max(10 * tie_tol, 1e-7)
    best_screen = -1.0
    pool: list[tuple[float, Graph]] = []
    chunk: list[Graph] = []

    def flush():
        nonlocal best_screen, pool
        if not chunk:
            return
        mats = np.zeros((len(chunk), n, n))
        for t, g in enumerate(chunk):
            for u in range(n):
                row = g.rows[u]
                while row:
                    v = (row & -row).bit_length() - 1
                    row &= row - 1
                    mats[t, u, v] = 1.0
        tops = np.linalg.eigvalsh(mats)[:, -1]
        for lam_hat, g in zip(tops, chunk):
            if lam_hat > best_screen:
                best_screen = float(lam_hat)
            if lam_hat >= best_screen - screen_margin:
                pool.append((float(lam_hat), g))
        pool = [(lh, g) for lh, g in pool if lh >= best_screen - screen_margin]
        chunk.clear()

    for idx, g in enumerate(stream):
        scanned += 1
        if progress and scanned % progress_every == 0:
            progress(scanned)
        if g.n != n:
            raise DataError(f"source record {idx} has {g.n} vertices, expected {n}")
        if not builtin and not is_family_free(g, family)[0]:
            continue
        chunk.append(g)
        if len(chunk) >= 2048:
            flush()
    flush()
    if not pool:
        raise DataError("source yielded no family-free graphs")

    exact = [(spectral_radius(g).lam, g) for _, g in pool]
    best = max(lam for lam, _ in exact)
    arg = {}
    for lam, g in exact:
        if lam >= best - tie_tol:
            cf = canonical_form(g)
            arg[code_of(cf.n, cf.rows)] = cf
    argmax = [arg[c] for c in sorted(arg)]
    return ExtremalRecord(n, family, objective, best, argmax,
                          scanned, time.perf_counter() - t0)


CSV_HEADER = "n,family,objective,best_value,num_argmax,graphs_scanned,seconds"


def record_to_csv_row(rec: ExtremalRecord) -> str:
    family = '"' + rec.family.tokens() + '"'
    return (
        f"{rec.n},{family},{rec.objective},{rec.best_value!r},"
        f"{len(rec.argmax)},{rec.graphs_scanned},{rec.seconds:.3f}"
    )


def record_to_json(rec: ExtremalRecord) -> str:
    return json.dumps(
        {
            "n": rec.n,
            "family": rec.family.tokens(),
            "objective": rec.objective,
            "best_value": rec.best_value,
            "num_argmax": len(rec.argmax),
            "graphs_scanned": rec.graphs_scanned,
            "seconds": round(rec.seconds, 3),
            "argmax": [graph6_encode(g) for g in rec.argmax],
        },
        sort_keys=True,
    )


# -- rewiring hill-climb ---------------------------------------------------


@dataclass
class SearchTrace:
    """History of one seeded hill-climb run."""

    iterations: int
    accepted_moves: int
    best_lambda_per_step: list[float]
    final_graph: Graph
    seed: int


def _creates_forbidden(rows: list[int], n: int, u: int, w: int, lengths: tuple[int, ...]) -> bool:
    # Adding edge (u,w) creates a forbidden cycle iff the current graph
    # already carries a path of the right order between u and w.
    full = (1 << n) - 1
    for ell in lengths:
        if ell <= n and _find_path(tuple(rows), ell, 1 << u, 1 << w, full) is not None:
            return True
    return False


def local_search(
    n: int,
    family: ForbiddenFamily,
    seed: int,
    max_iters: int,
    samples_per_iter: int = 200,
    eval_budget: int = 3,
    stagnation_limit: int = 30,
) -> SearchTrace:
    """Steepest-ascent hill-climb over family-freeness-preserving moves.

    Moves are add-edge, delete-edge, and 2-rotation (delete one edge, add
    another).  Each iteration scores a PRNG-drawn sample of moves with a
    first-order Perron estimate, evaluates the top few exactly, and
    accepts the first strict improvement.  Stagnation triggers a restart
    from a fresh random family-free seed graph; the best graph ever seen
    is returned.  Fully deterministic for a fixed seed.
    """
    if n < 4:
        raise ParameterError(f"local search needs n >= 4, got {n}")
    if max_iters < 1:
        raise ParameterError(f"max_iters must be >= 1, got {max_iters}")
    lengths = family.cycle_lengths
    draw_index = 0
    n2 = n * n

    rows = [0] * n
    mat = np.zeros((n, n))
    lam = 0.0
    v = np.full(n, 0.5)

    best_lam = 0.0
    best_rows = tuple(rows)
    curve: list[float] = []
    accepted = 0
    stagnation = 0
    # lam_rejected is stale after any accepted move; unsafe_adds stays
    # valid as long as no edge is removed (freeness violations are
    # monotone under edge addition).
    lam_rejected: set[tuple] = set()
    unsafe_adds: set[tuple[int, int]] = set()

    def set_edge(a: int, b: int, on: bool) -> None:
        if on:
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        else:
            rows[a] &= ~(1 << b)
            rows[b] &= ~(1 << a)
        mat[a, b] = mat[b, a] = 1.0 if on else 0.0

    def refresh_vector() -> None:
        nonlocal v
        vals, vecs = np.linalg.eigh(mat)
        # Dominant eigenvector of a nonnegative matrix, sign-normalized;
        # the small floor keeps isolated vertices visible to the scorer.
        v = np.abs(vecs[:, -1]) + 0.01

    def random_restart() -> None:
        # A fresh family-free starting point: walk a shuffled list of
        # vertex pairs and keep a random-length freeness-preserving
        # prefix.  Diverse restarts can cross fitness valleys that
        # strict ascent cannot (e.g. leaving a star for a cycle).
        nonlocal lam, draw_index
        for u in range(n):
            rows[u] = 0
        mat[:] = 0.0
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        need = len(pairs) + 1
        draws = splitmix64_batch(seed, draw_index, need)
        draw_index += need
        for i in range(len(pairs) - 1, 0, -1):
            j = int(draws[i] % np.uint64(i + 1))
            pairs[i], pairs[j] = pairs[j], pairs[i]
        # Sparse seeds diversify structure without paying for a dense
        # random climb; n attempted edges is plenty to land in a new basin.
        keep = int(draws[-1] % np.uint64(n + 1))
        for u, w in pairs[:keep]:
            if not _creates_forbidden(rows, n, u, w, lengths):
                rows[u] |= 1 << w
                rows[w] |= 1 << u
                mat[u, w] = mat[w, u] = 1.0
        lam = float(np.linalg.eigvalsh(mat)[-1])
        refresh_vector()

    for _ in range(max_iters):
        # Three PRNG draws per sample: move kind, first pair, second pair.
        draws = splitmix64_batch(seed, draw_index, 3 * samples_per_iter)
        draw_index += 3 * samples_per_iter
        kind = (draws[0::3] % 3).astype(np.int64)
        q1 = (draws[1::3] % n2).astype(np.int64)
        q2 = (draws[2::3] % n2).astype(np.int64)
        a, b = q1 // n, q1 % n
        c, d = q2 // n, q2 % n
        adj_ab = mat[a, b] > 0.5
        adj_cd = mat[c, d] > 0.5
        valid_ab = a != b
        ok_add = (kind == 0) & valid_ab & ~adj_ab
        ok_del = (kind == 1) & valid_ab & adj_ab
        ok_rot = (kind == 2) & valid_ab & adj_ab & (c != d) & ~adj_cd & (q1 != q2)
        score = np.where(ok_add, v[a] * v[b], 0.0)
        score = np.where(ok_del, -v[a] * v[b], score)
        score = np.where(ok_rot, v[c] * v[d] - v[a] * v[b], score)
        usable = ok_add | ok_del | ok_rot
        order = np.argsort(-score, kind="stable")

        moved = False
        evals = 0
        searches = 0
        for s in order:
            if evals >= eval_budget or searches >= 2 * eval_budget or not usable[s]:
                break
            sa, sb = int(a[s]), int(b[s])
            key = (sa, sb) if sa < sb else (sb, sa)
            if ok_rot[s]:
                move = ("rot", sa, sb, int(c[s]), int(d[s]))
            elif ok_add[s]:
                move = ("add", sa, sb)
            else:
                move = ("del", sa, sb)
            if move in lam_rejected:
                continue
            if move[0] == "add":
                if key in unsafe_adds:
                    continue
                searches += 1
                if _creates_forbidden(rows, n, sa, sb, lengths):
                    unsafe_adds.add(key)
                    continue
                set_edge(sa, sb, True)
            elif move[0] == "del":
                set_edge(sa, sb, False)
            else:
                _, _, _, sc, sd = move
                set_edge(sa, sb, False)
                searches += 1
                if _creates_forbidden(rows, n, sc, sd, lengths):
                    set_edge(sa, sb, True)
                    lam_rejected.add(move)
                    continue
                set_edge(sc, sd, True)
            evals += 1
            cand_lam = float(np.linalg.eigvalsh(mat)[-1])
            if cand_lam > lam + 1e-12:
                lam = cand_lam
                refresh_vector()
                accepted += 1
                moved = True
                lam_rejected.clear()
                if move[0] != "add":
                    unsafe_adds.clear()
                break
            lam_rejected.add(move)
            if move[0] == "add":
                set_edge(sa, sb, False)
            elif move[0] == "del":
                set_edge(sa, sb, True)
            else:
                set_edge(sc, sd, False)
                set_edge(sa, sb, True)

        if moved:
            stagnation = 0
            if lam > best_lam:
                best_lam = lam
                best_rows = tuple(rows)
        else:
            stagnation += 1
            if stagnation >= stagnation_limit:
                random_restart()
                stagnation = 0
                lam_rejected.clear()
                unsafe_adds.clear()
                if lam > best_lam:
                    best_lam = lam
                    best_rows = tuple(rows)
        curve.append(best_lam)

    return SearchTrace(
        iterations=max_iters,
        accepted_moves=accepted,
        best_lambda_per_step=curve,
        final_graph=Graph(n, best_rows),
        seed=seed,
    )

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spex.canonical import canonical_code
from spex.errors import ParameterError
from spex.extremal import random_graph
from spex.graphs import (
    Graph,
    VertexSetPair,
    bfs_layers,
    complete_bipartite,
    complete_graph,
    construct_named,
    cycle_graph,
    disjoint_union,
    edge_counts,
    empty_graph,
    join,
    path_graph,
    s_nk,
    s_nk_plus,
    turan_graph,
)

small_graphs = st.builds(
    random_graph,
    n=st.integers(min_value=1, max_value=12),
    p=st.floats(min_value=0.0, max_value=1.0),
    seed=st.integers(min_value=0, max_value=2**32),
)


def test_construct_named_examples():
    assert construct_named("s_nk", (10, 3)).m == 24
    assert construct_named("s_nk_plus", (6, 2)).m == 10
    star = construct_named("s_nk", (7, 1))
    assert sorted(star.degrees(), reverse=True) == [6, 1, 1, 1, 1, 1, 1]


def test_family_edge_counts_match_closed_forms():
    for k in range(1, 6):
        for n in range(k + 2, 30):
            assert s_nk(n, k).m == k * (k - 1) // 2 + k * (n - k)
            assert s_nk_plus(n, k).m == s_nk(n, k).m + 1
    for n in range(0, 20):
        for r in range(1, 6):
            sizes = [n // r + (1 if i < n % r else 0) for i in range(r)]
            expected = (n * n - sum(s * s for s in sizes)) // 2
            assert turan_graph(n, r).m == expected


def test_snk_labeling_contract():
    g = s_nk(10, 3)
    for u in range(3):
        assert g.degree(u) == 9
    gp = s_nk_plus(10, 3)
    assert gp.has_edge(3, 4)
    assert not gp.has_edge(4, 5)


def test_join_examples():
    assert join(complete_graph(2), empty_graph(3)) == s_nk(5, 2)
    assert join(empty_graph(1), empty_graph(1)) == complete_graph(2)
    pair = Graph.from_edges(4, [(0, 1)])
    assert join(complete_graph(2), pair) == s_nk_plus(6, 2)


def test_union_examples():
    u = disjoint_union(complete_graph(2), empty_graph(2))
    assert (u.n, u.m) == (4, 1)
    c44 = disjoint_union(cycle_graph(4), cycle_graph(4))
    assert (c44.n, c44.m) == (8, 8)
    g = s_nk(6, 2)
    assert disjoint_union(empty_graph(0), g) == g


@given(small_graphs, small_graphs)
@settings(max_examples=40, deadline=None)
def test_join_union_arithmetic(g, h):
    j = join(g, h)
    assert j.n == g.n + h.n
    assert j.m == g.m + h.m + g.n * h.n
    u = disjoint_union(g, h)
    assert u.n == g.n + h.n
    assert u.m == g.m + h.m


def test_join_union_associative_up_to_isomorphism():
    a, b, c = path_graph(3), cycle_graph(4), complete_graph(2)
    assert canonical_code(join(join(a, b), c)) == canonical_code(join(a, join(b, c)))
    assert canonical_code(disjoint_union(disjoint_union(a, b), c)) == canonical_code(
        disjoint_union(a, disjoint_union(b, c))
    )


def test_bfs_layers_examples():
    p3 = path_graph(3)
    nl = bfs_layers(p3, 1)
    assert nl.layers == ((1,), (0, 2))
    assert bfs_layers(cycle_graph(6), 0).sizes == (1, 2, 2, 1)
    assert bfs_layers(s_nk(10, 3), 0).sizes[1] == 9


@given(small_graphs, st.integers(min_value=0, max_value=11))
@settings(max_examples=60, deadline=None)
def test_bfs_layers_invariants(g, root):
    root %= g.n
    nl = bfs_layers(g, root)
    seen = [v for layer in nl.layers for v in layer]
    assert len(seen) == len(set(seen))
    comp = g.component_mask(root)
    assert sum(nl.sizes) == comp.bit_count()
    assert nl.layers[0] == (root,)
    for i in range(1, len(nl.layers)):
        prev = sum(1 << v for v in nl.layers[i - 1])
        before = sum(1 << v for layer in nl.layers[: max(0, i - 1)] for v in layer)
        for v in nl.layers[i]:
            assert g.rows[v] & prev
            assert not g.rows[v] & before


def test_edge_counts_examples():
    assert edge_counts(complete_graph(4), VertexSetPair(frozenset({0, 1}), frozenset({2, 3}))) == (1, 1, 4)
    assert edge_counts(cycle_graph(6), VertexSetPair(frozenset({0, 2, 4}), frozenset({1, 3, 5}))) == (0, 0, 6)
    assert edge_counts(s_nk(8, 2), VertexSetPair(frozenset({0, 1}), frozenset(range(2, 8)))) == (1, 0, 12)


@given(small_graphs, st.integers(min_value=0, max_value=2**30))
@settings(max_examples=60, deadline=None)
def test_edge_counts_partition_identity(g, split):
    xs = frozenset(v for v in range(g.n) if split >> v & 1)
    ys = frozenset(range(g.n)) - xs
    ex, ey, exy = edge_counts(g, VertexSetPair(xs, ys))
    assert ex + ey + exy == g.m


def test_edge_counts_overlap_error():
    with pytest.raises(ParameterError):
        VertexSetPair(frozenset({0, 1}), frozenset({1, 2}))
    with pytest.raises(ParameterError):
        edge_counts(complete_graph(3), VertexSetPair(frozenset({0}), frozenset({5})))


@given(small_graphs)
@settings(max_examples=60, deadline=None)
def test_graph_invariants(g):
    for u in range(g.n):
        assert not g.has_edge(u, u)
        for v in g.neighbors(u):
            assert g.has_edge(v, u)
    assert sum(g.degrees()) == 2 * g.m


def test_constructor_validation():
    with pytest.raises(ParameterError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ParameterError):
        Graph.from_edges(3, [(0, 5)])
    with pytest.raises(ParameterError):
        construct_named("nonsense", (3,))
    with pytest.raises(ParameterError):
        construct_named("s_nk", (5,))
    with pytest.raises(ParameterError):
        construct_named("s_nk", (3, 3))
    with pytest.raises(ParameterError):
        construct_named("s_nk_plus", (3, 2))
    with pytest.raises(ParameterError):
        cycle_graph(2)
    with pytest.raises(ParameterError):
        construct_named("turan", (5, 0))


def test_complete_bipartite():
    g = complete_bipartite(3, 3)
    assert (g.n, g.m) == (6, 9)
    assert all(d == 3 for d in g.degrees())


def test_immutability_of_edits():
    g = path_graph(3)
    h = g.with_edge(0, 2)
    assert not g.has_edge(0, 2) and h.has_edge(0, 2)
    h2 = h.without_edge(0, 2)
    assert h2 == g


def test_components():
    g = disjoint_union(cycle_graph(3), path_graph(2))
    comps = g.components()
    assert [c.bit_count() for c in comps] == [3, 2]

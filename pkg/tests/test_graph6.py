from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spex.errors import Graph6ParseError
from spex.extremal import random_graph
from spex.graph6 import graph6_decode, graph6_encode
from spex.graphs import Graph, empty_graph, path_graph


def nx_encode(g: Graph) -> str:
    ng = nx.Graph()
    ng.add_nodes_from(range(g.n))
    ng.add_edges_from(g.edges())
    return nx.to_graph6_bytes(ng, header=False).decode().strip()


def test_known_encodings():
    assert graph6_encode(empty_graph(1)) == "@"
    # Column-major bits of the 0-1-2 path are 101000 -> byte 40+63 = 'g'.
    assert graph6_encode(path_graph(3)) == "Bg"
    assert graph6_decode("Bg") == path_graph(3)
    # "Bo" (bits 110000) is the path labeled through vertex 0 instead.
    assert graph6_decode("Bo") == Graph.from_edges(3, [(0, 1), (0, 2)])


def test_header_is_stripped():
    assert graph6_decode(">>graph6<<Bg") == path_graph(3)


@given(
    st.integers(min_value=0, max_value=14),
    st.floats(min_value=0.0, max_value=1.0),
    st.integers(min_value=0, max_value=2**32),
)
@settings(max_examples=80, deadline=None)
def test_round_trip_random(n, p, seed):
    g = random_graph(n, p, seed)
    line = graph6_encode(g)
    assert graph6_decode(line) == g
    assert line == nx_encode(g)


def test_round_trip_long_size_form():
    for n, seed in ((63, 1), (64, 2), (100, 3), (200, 4)):
        g = random_graph(n, 0.05, seed)
        line = graph6_encode(g)
        assert line[0] == chr(126)
        assert graph6_decode(line) == g
        assert line == nx_encode(g)


def test_decode_matches_networkx_decoder():
    for seed in range(20):
        g = random_graph(3 + seed % 9, 0.5, seed)
        line = graph6_encode(g)
        ng = nx.from_graph6_bytes(line.encode())
        assert set(ng.edges()) == {tuple(e) for e in g.edges()} or set(
            (min(e), max(e)) for e in ng.edges()
        ) == set(g.edges())


MALFORMED = [
    ("", 0),                      # empty line
    (" \t ", 0),                  # whitespace only
    (chr(20), 0),                 # size byte below range
    (chr(127), 0),                # size byte above range
    (chr(200), 0),                # size byte far above range
    ("B" + chr(13), 1),           # payload byte below range
    ("B" + chr(127), 1),          # payload byte above range
    ("B", 1),                     # truncated payload (needs 1 byte)
    ("D?", 2),                    # truncated payload (needs 2 bytes)
    ("Bg?", 2),                   # trailing data
    ("@?", 1),                    # payload where none belongs
    ("A" + chr(63 + 16), 1),      # nonzero padding bits (n=2, 1 real bit)
    (chr(126), 1),                # truncated multi-byte size
    (chr(126) + "??", 3),         # multi-byte size cut short
    (chr(126) + chr(126) + "????", 1),  # 8-byte size form unsupported
    (chr(126) + "??E", 0),        # non-minimal size encoding (n=6)
    (chr(126) + "?" + chr(10) + "?", 2),  # control byte inside the size field
    (chr(126) + "?~?", 4),        # size 4032, payload missing entirely
    ("Bg\x00", 2),                # NUL byte in payload
    ("E?", 2),                    # truncated: n=6 needs 3 payload bytes
]


def test_malformed_inputs_have_positioned_errors():
    assert len(MALFORMED) == 20
    for text, offset in MALFORMED:
        with pytest.raises(Graph6ParseError) as err:
            graph6_decode(text)
        assert err.value.offset == offset, (text, err.value.offset, offset)


def test_zero_vertices_is_valid():
    assert graph6_decode("?") == empty_graph(0)
    assert graph6_encode(empty_graph(0)) == "?"


def test_encode_size_cap():
    from spex.errors import ParameterError

    with pytest.raises(ParameterError):
        graph6_encode(Graph(258048, (0,) * 258048))

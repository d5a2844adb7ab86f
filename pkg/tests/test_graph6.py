from __future__ import annotations

import networkx as nx
import numpy as np
import pytest

from isoscreen.errors import ArgumentError, FormatError
from isoscreen.graph import Graph
from isoscreen.graph6 import (
    encode_edge_list,
    encode_graph6,
    parse_edge_list,
    parse_graph6,
    parse_graphs,
    read_graphs,
)

from .graphs import corpus_graphs, cycle_plus_isolated, random_graph, rng, star


def test_parse_star():
    """Five vertices, every leaf joined to vertex 4."""
    g = parse_graph6("D?{")
    assert g == star()
    assert list(g.degrees()) == [1, 1, 1, 1, 4]


def test_encode_known_strings():
    assert encode_graph6(star()) == "D?{"
    assert encode_graph6(cycle_plus_isolated()) == "Dl?"
    assert encode_graph6(Graph.empty(1)) == "@"


def test_single_vertex_has_empty_payload():
    assert parse_graph6("@") == Graph.empty(1)


def test_header_and_newline_are_accepted():
    assert parse_graph6(">>graph6<<D?{\n") == star()
    assert parse_graph6("D?{\r\n") == star()


@pytest.mark.parametrize(
    "text, offset, message",
    [
        ("", 0, "empty"),
        (">>graph6<<", 10, "empty"),
        ("D?", 2, "truncated"),
        (">>graph6<<D?", 12, "truncated"),
        ("D?{?", 3, "trailing"),
        ("D?|", 2, "padding"),
        ("D?" + chr(127), 2, "out of range"),
        ("!", 0, "header"),
        ("?", 0, "no vertices"),
        ("~?", 0, "long-form"),
    ],
)
def test_malformed_graph6_reports_offset(text, offset, message):
    with pytest.raises(FormatError, match=message) as exc_info:
        parse_graph6(text)
    assert exc_info.value.offset == offset
    assert f"at byte offset {offset}" in str(exc_info.value)


def test_encode_rejects_large_graphs():
    with pytest.raises(ArgumentError, match="n <= 62"):
        encode_graph6(Graph.empty(63))


@pytest.mark.parametrize("label, g", corpus_graphs())
def test_encode_matches_networkx(label, g):
    """Our encoder and networkx's agree byte for byte on the bundled graphs."""
    expected = nx.to_graph6_bytes(nx.from_numpy_array(g.adjacency), header=False)
    assert encode_graph6(g) == expected.decode("ascii").strip(), label


def test_parse_matches_networkx():
    gen = rng(10)
    for _ in range(100):
        n = int(gen.integers(1, 41))
        g = random_graph(n, float(gen.random()), gen)
        text = nx.to_graph6_bytes(nx.from_numpy_array(g.adjacency), header=False)
        decoded = nx.from_graph6_bytes(text.strip())
        expected = nx.to_numpy_array(decoded, nodelist=range(n), dtype=np.int64)
        assert np.array_equal(parse_graph6(text.decode("ascii")).adjacency, expected)


def test_random_graphs_survive_encoding():
    """Decoding an encoded graph gives back the same adjacency matrix."""
    gen = rng(11)
    for _ in range(1000):
        n = int(gen.integers(1, 41))
        g = random_graph(n, float(gen.random()), gen)
        assert parse_graph6(encode_graph6(g)) == g


def test_edge_list_basic():
    g = parse_edge_list("# a path\nn 3\n\n1 2\n2 3  # second edge\n")
    assert g.edges() == [(0, 1), (1, 2)]
    assert encode_edge_list(g) == "n 3\n1 2\n2 3\n"


def test_edge_list_without_edges():
    assert parse_edge_list("n 4\n") == Graph.empty(4)


@pytest.mark.parametrize(
    "text, message",
    [
        ("n 3\n1 1\n", "self-loop at line 2"),
        ("n 3\n1 2\n1 4\n", "vertex index 4 out of range 1..3 at line 3"),
        ("1 2\n", "expected header 'n <count>' at line 1"),
        ("n three\n", "expected header"),
        ("n 0\n", "at least 1"),
        ("n 3\n1 2 3\n", "expected an edge 'a b' at line 2"),
        ("n 3\n1 x\n", "integers at line 2"),
        ("# nothing\n\n", "missing header"),
    ],
)
def test_edge_list_errors(text, message):
    with pytest.raises(FormatError, match=message):
        parse_edge_list(text)


def test_parse_graphs_reads_one_graph6_per_line():
    graphs = parse_graphs("D?{\n\nDl?\n")
    assert graphs == [star(), cycle_plus_isolated()]


def test_parse_graphs_detects_edge_list():
    assert parse_graphs("n 2\n1 2\n") == [Graph.from_edges(2, [(0, 1)])]


def test_parse_graphs_error_names_source_and_line():
    with pytest.raises(FormatError) as exc_info:
        parse_graphs("D?{\nD?\n", "pair.g6")
    message = str(exc_info.value)
    assert message.startswith("pair.g6: truncated payload")
    assert exc_info.value.line == 2


def test_parse_graphs_rejects_empty_input():
    with pytest.raises(FormatError, match="no graphs found"):
        parse_graphs("\n\n", "empty.g6")


def test_read_graphs_from_files(tmp_path):
    g6 = tmp_path / "fig.g6"
    g6.write_text(">>graph6<<D?{\nDl?\n")
    edges = tmp_path / "star.edges"
    edges.write_text(encode_edge_list(star()))

    assert read_graphs(g6) == [star(), cycle_plus_isolated()]
    assert read_graphs(str(edges)) == [star()]


def test_read_graphs_missing_file(tmp_path):
    with pytest.raises(OSError):
        read_graphs(tmp_path / "missing.g6")

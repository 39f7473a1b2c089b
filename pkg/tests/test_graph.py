import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starwalk.graph import (
    Graph,
    GraphFormatError,
    SizeCapError,
    adjacency_matrix,
    cycle_graph,
    degree_profile,
    export_edge_list,
    parse_edge_list,
)


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return Graph(n, frozenset(edges))


def test_parse_basic():
    g = parse_edge_list("3 2\n0 1\n1 2")
    assert g == Graph(3, frozenset({(0, 1), (1, 2)}))


def test_parse_empty_edge_set():
    assert parse_edge_list("2 0") == Graph(2, frozenset())


def test_parse_order_and_orientation_irrelevant():
    assert parse_edge_list("# c\n3 2\n2 1\n\n1 0\n") == parse_edge_list("3 2\n0 1\n1 2\n")


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("2 1\n0 0", 2, "self-loop"),
        ("3 2\n0 1\n1 0", 3, "duplicate"),
        ("3 1\n0 3", 2, "out of range"),
        ("3 1\n0 1 2", 2, "two integers"),
        ("3 1\n0 a", 2, "non-integer"),
        ("3 1\n0 1\n1 2", 3, "more edge lines"),
    ],
)
def test_parse_errors_carry_line(text, line, fragment):
    with pytest.raises(GraphFormatError) as info:
        parse_edge_list(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_parse_short_file():
    with pytest.raises(GraphFormatError, match="declared M=3"):
        parse_edge_list("3 3\n0 1\n")


def test_degree_profiles(path3):
    assert degree_profile(path3).degrees == (1, 2, 1)
    assert degree_profile(path3).max_degree == 2
    assert degree_profile(Graph(4, frozenset())) == degree_profile(Graph(4, frozenset()))
    assert degree_profile(Graph(4, frozenset())).degrees == (0, 0, 0, 0)
    star = Graph.from_edges(4, [(3, 0), (3, 1), (3, 2)])
    assert degree_profile(star).degrees == (1, 1, 1, 3)
    assert degree_profile(star).max_degree == 3


def test_adjacency_small(triangle):
    assert adjacency_matrix(Graph.from_edges(2, [(0, 1)])).tolist() == [[0, 1], [1, 0]]
    assert np.array_equal(adjacency_matrix(triangle), np.ones((3, 3)) - np.eye(3))


def test_adjacency_cap_and_padding():
    g = cycle_graph(5)
    with pytest.raises(SizeCapError):
        adjacency_matrix(g, cap=4)
    padded = adjacency_matrix(g, dim=8)
    assert padded.shape == (8, 8)
    assert not padded[5:].any() and not padded[:, 5:].any()


def test_num_qubits():
    assert [Graph(n, frozenset()).num_qubits for n in (1, 2, 3, 4, 5, 8, 9)] == [1, 1, 2, 2, 3, 3, 4]


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_adjacency_invariants(g):
    a = adjacency_matrix(g)
    prof = degree_profile(g)
    assert np.array_equal(a, a.T)
    assert not np.diag(a).any()
    assert tuple(a.sum(axis=1).astype(int)) == prof.degrees
    assert (np.count_nonzero(a, axis=1) <= prof.max_degree).all()


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_round_trip(g):
    assert parse_edge_list(export_edge_list(g)) == g

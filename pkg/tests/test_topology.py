import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fanout_forge.errors import ParseError
from fanout_forge.topology import (
    CouplingGraph,
    builtin,
    emit_edge_list,
    full,
    grid,
    heavy_hex_156,
    line,
    load_edge_list,
)

from conftest import random_connected_graph


def test_heavy_hex_counts():
    g = heavy_hex_156()
    assert g.n == 156
    assert len(g.edges) == 176
    assert g.max_degree == 3
    assert {g.degree(v) for v in range(g.n)} <= {1, 2, 3}
    assert g.is_connected()


def test_heavy_hex_landmarks():
    g = heavy_hex_156()
    # 89 has three neighbours, one of them the bridge 78 that also touches 69
    assert g.neighbors(89) == (78, 88, 90)
    assert g.neighbors(78) == (69, 89)
    assert g.neighbors(98) == (91, 111)
    assert (91, 92) in g.edges and (92, 93) in g.edges


def test_heavy_hex_bridges_have_degree_two():
    g = heavy_hex_156()
    long_rows = {r * 20 + c for r in range(8) for c in range(16)}
    bridges = set(range(156)) - long_rows
    assert len(bridges) == 28
    assert all(g.degree(b) == 2 for b in bridges)


def test_simple_generators():
    assert line(3).edges == {(0, 1), (1, 2)}
    assert len(full(4).edges) == 6
    assert len(grid([4, 4]).edges) == 24
    assert len(grid([2, 3, 4]).edges) == 3 * 4 + 2 * 2 * 4 + 2 * 3 * 3
    assert grid([1]).n == 1


def test_grid_is_row_major():
    g = grid([2, 3])
    assert g.neighbors(0) == (1, 3)
    assert g.neighbors(4) == (1, 3, 5)


@pytest.mark.parametrize("g", [line(1), line(7), full(5), grid([3, 3]), grid([2, 2, 2]), heavy_hex_156()])
def test_generators_connected(g):
    assert g.is_connected()


def test_distances_and_eccentricity():
    g = line(5)
    assert g.distances(0) == [0, 1, 2, 3, 4]
    assert g.eccentricity(2) == 2
    split = CouplingGraph(4, frozenset({(0, 1), (2, 3)}))
    assert split.distances(0) == [0, 1, -1, -1]
    assert not split.is_connected()


def test_graph_validation():
    with pytest.raises(ValueError):
        CouplingGraph(2, frozenset({(1, 1)}))
    with pytest.raises(ValueError):
        CouplingGraph(2, frozenset({(0, 2)}))


def test_load_edge_list_examples():
    assert load_edge_list("0 1\n1 2") == line(3)
    assert load_edge_list("0 1\n1 0").edges == {(0, 1)}
    assert load_edge_list("# comment\nn=5\n0 1  # trailing\n").n == 5


@pytest.mark.parametrize(
    "text,line_no",
    [("0 1\n0 0", 2), ("0 1\n1 x", 2), ("0 1 2", 1), ("n=3\n0 1\n2 3", 3)],
)
def test_load_edge_list_errors(text, line_no):
    with pytest.raises(ParseError, match=f"line {line_no}"):
        load_edge_list(text)


@given(st.integers(2, 40), st.integers(0, 2**32 - 1))
def test_edge_list_round_trip(n, seed):
    g = random_connected_graph(n, np.random.default_rng(seed))
    assert load_edge_list(emit_edge_list(g)) == g


def test_heavy_hex_round_trip():
    g = heavy_hex_156()
    assert load_edge_list(emit_edge_list(g)) == g


def test_builtin_dispatch():
    assert builtin("heavy-hex-156").n == 156
    assert builtin("line", n=4) == line(4)
    assert builtin("grid", dims=(2, 2)) == grid([2, 2])
    with pytest.raises(ValueError):
        builtin("full")

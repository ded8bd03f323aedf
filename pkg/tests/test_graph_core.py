import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs, path_graph
from robustnet.graph_core import (Graph, GraphFormatError, adjacency_matrix, as_mask, degree,
                                  edge_boundary_size, format_edge_list, graph_from_matrix,
                                  induced_subgraph, layered_from_files, mask_to_nodes,
                                  min_max_degree, parse_edge_list, read_edge_list,
                                  write_edge_list, write_layer_file)


def test_degree_examples(fig1, k3):
    assert degree(k3, 0) == 2
    assert degree(Graph.empty(1), 0) == 0
    assert all(degree(fig1.graph, v) == 4 for v in range(4))


def test_degree_out_of_range(k3):
    with pytest.raises(IndexError):
        degree(k3, 3)


def test_min_max_degree(fig1):
    assert min_max_degree(path_graph(3)) == (1, 2)
    assert min_max_degree(fig1.graph) == (4, 5)
    assert min_max_degree(Graph.complete(6)) == (5, 5)
    with pytest.raises(ValueError):
        min_max_degree(Graph.empty(0))


def test_edge_boundary(fig1, k3):
    assert edge_boundary_size(k3, {0}) == 2
    assert edge_boundary_size(fig1.graph, range(8)) == 4
    assert edge_boundary_size(k3, {0, 1, 2}) == 0
    assert edge_boundary_size(k3, set()) == 0


def test_induced_subgraph(fig1):
    sub, old = induced_subgraph(Graph.complete(4), {0, 2, 3})
    assert sub == Graph.complete(3)
    assert old == [0, 2, 3]
    sub, _ = induced_subgraph(fig1.graph, range(8))
    assert sub.edge_count == 16
    assert all(sub.has_edge(a, b) for a in range(4) for b in range(4, 8))
    assert not any(sub.has_edge(a, b) for a in range(4) for b in range(4) if a != b)
    one, _ = induced_subgraph(fig1.graph, {5})
    assert one == Graph.empty(1)
    with pytest.raises(ValueError):
        induced_subgraph(fig1.graph, set())


def test_construction_rejects_bad_input():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))  # asymmetric


def test_mask_roundtrip():
    assert mask_to_nodes(as_mask([5, 0, 3])) == [0, 3, 5]
    assert as_mask(0b101) == 5


@given(graphs())
def test_handshake_and_singleton_boundary(g):
    assert sum(g.degrees()) == 2 * g.edge_count
    for v in range(g.node_count):
        assert degree(g, v) == edge_boundary_size(g, {v})


@given(graphs(min_nodes=2), st.data())
def test_boundary_complement_symmetry(g, data):
    mask = data.draw(st.integers(1, g.full_mask - 1))
    assert edge_boundary_size(g, mask) == edge_boundary_size(g, g.full_mask ^ mask)


@given(graphs())
@settings(max_examples=50)
def test_matrix_roundtrip(g):
    assert graph_from_matrix(adjacency_matrix(g)) == g


@given(graphs())
@settings(max_examples=50)
def test_edge_list_text_roundtrip(g):
    text = format_edge_list(g)
    assert parse_edge_list(text) == g
    assert format_edge_list(parse_edge_list(text)) == text


def test_edge_list_file_roundtrip(tmp_path, fig1):
    path = tmp_path / "g.txt"
    write_edge_list(fig1.graph, path)
    assert path.read_text().splitlines()[0] == "16 36"
    assert read_edge_list(path) == fig1.graph
    layers = tmp_path / "layers.txt"
    write_layer_file(fig1, layers)
    assert layers.read_text().splitlines()[5] == "5 1"
    assert layered_from_files(path, layers) == fig1


def test_edge_list_accepts_either_orientation():
    assert parse_edge_list("3 2\n1 0\n2 1\n") == Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.mark.parametrize("text, line", [
    ("", 1),
    ("3\n", 1),
    ("3 1\n0 x\n", 2),
    ("3 2\n0 1\n", 2),
    ("3 1\n0 5\n", 2),
    ("3 2\n0 1\n1 0\n", 3),
    ("3 1\n2 2\n", 2),
])
def test_edge_list_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphFormatError) as err:
        parse_edge_list(text)
    assert err.value.line == line

"""Graph construction, counting primitives, grammar, and formats."""

import random

import pytest

from conftest import brute_boundary, brute_induced, random_graph
from edgeiso.errors import CapacityError, InputError
from edgeiso.graphs import (Graph, VertexSet, as_mask, bit_indices,
                            boundary_edges, cartesian_power,
                            cartesian_product, complete, cross_edges, cycle,
                            degrees, empty_graph, format_edge_list,
                            from_edge_list, graph_union, graph_x, graph_y,
                            graph_z, induced_edges, is_regular, join,
                            load_graph, named, parse_edge_list, path,
                            petersen, relabel, star)


def test_bit_indices():
    assert list(bit_indices(0)) == []
    assert list(bit_indices(0b10110)) == [1, 2, 4]


def test_graph_basics():
    g = Graph(4, [(0, 1), (1, 2), (1, 2)])  # duplicate merges
    assert g.n == 4
    assert g.edge_count() == 2
    assert g.edges() == [(0, 1), (1, 2)]
    assert g.has_edge(1, 0) and not g.has_edge(0, 2)
    assert g.degree(1) == 2 and g.degree(3) == 0
    assert g == Graph(4, [(1, 2), (0, 1)])
    assert hash(g) == hash(Graph(4, [(1, 2), (0, 1)]))


def test_graph_validation():
    with pytest.raises(InputError):
        Graph(0)
    with pytest.raises(InputError):
        Graph(3, [(0, 3)])
    with pytest.raises(InputError):
        Graph(3, [(1, 1)])
    with pytest.raises(CapacityError):
        Graph(4097)
    with pytest.raises(InputError):
        Graph(3).has_edge(0, 5)


def test_vertex_set():
    vs = VertexSet(5, [0, 3])
    assert len(vs) == 2
    assert list(vs) == [0, 3]
    assert 3 in vs and 1 not in vs and 9 not in vs
    assert vs == VertexSet.from_mask(5, 0b01001)
    assert vs.to_hex() == "0x9"
    with pytest.raises(InputError):
        VertexSet(5, [5])
    with pytest.raises(InputError):
        VertexSet.from_mask(5, 1 << 5)


def test_as_mask_forms():
    g = path(4)
    assert as_mask(g, VertexSet(4, [1, 2])) == 0b0110
    assert as_mask(g, 0b0110) == 0b0110
    assert as_mask(g, [2, 1]) == 0b0110
    with pytest.raises(InputError):
        as_mask(g, 1 << 4)


def test_counting_against_direct_count():
    rng = random.Random(11)
    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 9))
        edges = g.edges()
        members = [v for v in range(g.n) if rng.random() < 0.5]
        assert induced_edges(g, members) == brute_induced(edges, members)
        assert boundary_edges(g, members) == brute_boundary(edges, members)


def test_boundary_is_cross_with_complement():
    rng = random.Random(12)
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 9))
        mask = rng.getrandbits(g.n)
        rest = g.full_mask & ~mask
        assert boundary_edges(g, mask) == cross_edges(g, mask, rest)


def test_cross_edges_overlap_counted_once():
    g = complete(4)
    # overlapping sets: the edge inside the overlap appears once
    assert cross_edges(g, [0, 1], [1, 2]) == induced_edges(g, [0, 1, 2])
    assert cross_edges(g, [0, 1], [0, 1]) == induced_edges(g, [0, 1])


def test_degree_sum_is_twice_edges():
    rng = random.Random(13)
    for _ in range(20):
        g = random_graph(rng, rng.randint(2, 10))
        assert sum(degrees(g)) == 2 * g.edge_count()


def test_is_regular():
    assert is_regular(cycle(5)) == (True, 2)
    assert is_regular(petersen()) == (True, 3)
    assert is_regular(empty_graph(3)) == (True, 0)
    assert is_regular(star(4)) == (False, None)


def test_named_families():
    assert complete(5).edge_count() == 10
    assert path(6).edge_count() == 5
    assert cycle(6).edge_count() == 6
    assert star(6).edge_count() == 5
    assert star(6).degree(0) == 5
    assert empty_graph(4).edge_count() == 0
    with pytest.raises(InputError):
        cycle(2)
    with pytest.raises(InputError):
        path(0)


def test_petersen_shape():
    g = petersen()
    assert g.n == 10 and g.edge_count() == 15
    assert is_regular(g) == (True, 3)
    # girth 5: adjacent vertices never share a neighbor
    for u, v in g.edges():
        assert g.adj[u] & g.adj[v] == 0


def test_union_and_join():
    u = graph_union(path(2), path(3))
    assert (u.n, u.edge_count()) == (5, 3)
    assert u.edges() == [(0, 1), (2, 3), (3, 4)]
    j = join(path(2), path(3))
    assert (j.n, j.edge_count()) == (5, 3 + 6)
    assert j.has_edge(0, 4) and j.has_edge(1, 2)


def test_cartesian_product_grid():
    grid = cartesian_product(path(2), path(3))
    # 2x3 grid: 3 + 4 vertical/horizontal edges
    assert (grid.n, grid.edge_count()) == (6, 7)
    # (x, y) -> x * 3 + y; (0,1) neighbors (0,0), (0,2), (1,1)
    assert sorted(bit_indices(grid.adj[1])) == [0, 2, 4]


def test_cartesian_power_labeling():
    q3 = cartesian_power(complete(2), 3)
    assert (q3.n, q3.edge_count()) == (8, 12)
    # labels are base-2 tuples; neighbors differ in exactly one bit
    for u, v in q3.edges():
        assert (u ^ v).bit_count() == 1
    with pytest.raises(InputError):
        cartesian_power(complete(2), 0)


def test_product_capacity():
    with pytest.raises(CapacityError):
        cartesian_product(empty_graph(65), empty_graph(64))
    with pytest.raises(CapacityError):
        cartesian_power(empty_graph(17), 3)


def test_relabel():
    g = relabel(path(3), (2, 0, 1))
    # new k is old (2,0,1)[k]: old edges 0-1, 1-2 become 1-2, 2-0
    assert g.edges() == [(0, 2), (1, 2)]
    with pytest.raises(InputError):
        relabel(path(3), (0, 1, 1))


def test_relabel_preserves_counting():
    rng = random.Random(14)
    for _ in range(20):
        g = random_graph(rng, rng.randint(2, 8))
        order = list(range(g.n))
        rng.shuffle(order)
        h = relabel(g, order)
        assert sorted(degrees(h)) == sorted(degrees(g))
        members = [v for v in range(g.n) if rng.random() < 0.5]
        mapped = [order.index(v) for v in members]
        assert induced_edges(h, mapped) == induced_edges(g, members)


def test_join_construction_blocks():
    x = graph_x()
    assert (x.n, x.edge_count()) == (5, 3)
    y = graph_y()
    assert (y.n, y.edge_count()) == (6, 6)
    # two disjoint triangles
    assert induced_edges(y, [0, 1, 2]) == 3 and induced_edges(y, [3, 4, 5]) == 3
    z1 = graph_z(1)
    assert (z1.n, z1.edge_count()) == (11, 3 + 6 + 30)
    z2 = graph_z(2)
    assert (z2.n, z2.edge_count()) == (17, 111)
    assert z2.name == "Z(2)"


def test_expression_grammar():
    assert named("complete(5)") == complete(5)
    assert named("  Petersen ") == petersen()
    assert named("POWER(complete(2),3)") == cartesian_power(complete(2), 3)
    assert named("union(path(2), path(3))") == graph_union(path(2), path(3))
    assert named("join(x,y)") == join(graph_x(), graph_y())
    assert named("z(2)") == graph_z(2)
    assert named("product(complete(3),complete(3))") == \
        cartesian_product(complete(3), complete(3))


@pytest.mark.parametrize("bad", [
    "", "frob(3)", "complete", "complete(", "complete(2,3)",
    "complete(petersen)", "petersen(1)", "5", "complete(3) junk",
    "union(path(2))", "power(2,complete(2))", "complete(3)!",
])
def test_expression_errors(bad):
    with pytest.raises(InputError):
        named(bad)


def test_edge_list_round_trip():
    rng = random.Random(15)
    for _ in range(20):
        g = random_graph(rng, rng.randint(2, 9))
        again = parse_edge_list(format_edge_list(g))
        assert again.n == g.n and again.adj == g.adj


def test_edge_list_comments_and_blanks():
    text = "# header comment\n\nn 3\n0 1  # inline\n\n1 2\n"
    g = parse_edge_list(text)
    assert g.n == 3 and g.edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize("text,fragment", [
    ("0 1\n", "line 1"),
    ("n three\n", "line 1"),
    ("n 3\n0 1 2\n", "line 2"),
    ("n 3\n0 x\n", "line 2"),
    ("", "missing"),
])
def test_edge_list_errors(text, fragment):
    with pytest.raises(InputError) as err:
        parse_edge_list(text)
    assert fragment in str(err.value)


def test_load_graph_file_wins_over_expression(tmp_path, monkeypatch):
    target = tmp_path / "complete(3)"
    target.write_text("n 2\n0 1\n")
    monkeypatch.chdir(tmp_path)
    g = load_graph("complete(3)")
    assert g.n == 2  # the file, not the expression
    assert load_graph(str(tmp_path / "complete(3)")).n == 2
    assert load_graph("complete(4)") == complete(4)


def test_from_edge_list_name():
    g = from_edge_list(3, [(0, 1)], name="probe")
    assert g.display_name() == "probe"
    assert "probe" in repr(g)

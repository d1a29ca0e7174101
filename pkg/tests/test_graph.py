import networkx as nx
import pytest

from bookcross import graph as G
from bookcross.corpus import all_graphs, random_graphs
from bookcross.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


# -- parsing -----------------------------------------------------------------


def test_graph6_k4():
    g = G.parse_graph6("C~")
    assert g.n == 4 and g.m == 6


def test_graph6_single_vertex():
    g = G.parse_graph6("@")
    assert g.n == 1 and g.m == 0


def test_graph6_truncated():
    with pytest.raises(G.Graph6TruncatedError):
        G.parse_graph6("D?")


def test_graph6_bad_character():
    with pytest.raises(G.Graph6Error):
        G.parse_graph6("C\x7f")


def test_graph6_header_accepted():
    assert G.parse_graph6(">>graph6<<C~").same_graph(G.complete_graph(4))


def test_graph6_round_trip_against_networkx():
    for g in random_graphs(40, 9, seed=3):
        text = G.emit_graph6(g)
        assert G.parse_graph6(text).same_graph(g)
        ref = nx.from_graph6_bytes(text.encode())
        assert {tuple(sorted(e)) for e in ref.edges} == set(g.edges)


def test_edge_list_path():
    g = G.parse_edge_list("0 1\n1 2")
    assert g.n == 3 and set(g.edges) == {(0, 1), (1, 2)}


def test_edge_list_self_loop():
    with pytest.raises(G.GraphError):
        G.parse_edge_list("0 0")


def test_edge_list_duplicate():
    with pytest.raises(G.GraphError):
        G.parse_edge_list("0 1\n1 0")


def test_edge_list_garbage():
    with pytest.raises(G.EdgeListError):
        G.parse_edge_list("0 x")


def test_edge_list_round_trip():
    g = G.cube_graph()
    assert G.parse_edge_list(G.emit_edge_list(g)).same_graph(g)


def test_parse_graph_unknown_format():
    with pytest.raises(ValueError):
        G.parse_graph("C~", "dot")


# -- isthmuses and flaps -------------------------------------------------------


def test_isthmuses_path():
    g = G.path_graph(3)
    assert G.isthmuses(g) == frozenset(range(2))


def test_isthmuses_cycle():
    assert G.isthmuses(G.cycle_graph(4)) == frozenset()


def test_isthmuses_triangle_with_pendant():
    g = Graph.from_edges([(0, 1), (1, 2), (0, 2), (2, 3)])
    assert G.isthmuses(g) == frozenset({g.edge_id(2, 3)})


def test_isthmuses_match_networkx_bridges():
    for g in all_graphs(6):
        ref = {g.edge_id(*e) for e in nx.bridges(to_nx(g))}
        assert G.isthmuses(g) == ref


def test_flaps_k4_triangle():
    g = G.complete_graph(4)
    c = [g.edge_id(0, 1), g.edge_id(1, 2), g.edge_id(0, 2)]
    fl = G.flaps(g, c)
    assert len(fl) == 1
    assert fl[0].edges == frozenset({g.edge_id(0, 3), g.edge_id(1, 3), g.edge_id(2, 3)})
    assert fl[0].attachments == frozenset({0, 1, 2})


def test_flaps_bare_cycle():
    g = G.cycle_graph(4)
    assert G.flaps(g, range(g.m)) == []


def test_flaps_chord_is_one_flap():
    g = G.cycle_graph(4).add_edges([(0, 2)])
    c = [g.edge_id(0, 1), g.edge_id(1, 2), g.edge_id(2, 3), g.edge_id(0, 3)]
    fl = G.flaps(g, c)
    assert len(fl) == 1 and fl[0].edges == frozenset({g.edge_id(0, 2)})


def test_flaps_rejects_non_cycle():
    g = G.path_graph(4)
    with pytest.raises(G.GraphError):
        G.flaps(g, range(g.m))


# -- minors and planarity ----------------------------------------------------


def test_minor_examples():
    k3 = G.complete_graph(3)
    assert G.is_minor(G.complete_graph(4), k3)
    assert not G.is_minor(G.star_graph(3), k3)
    assert G.is_minor(G.cycle_graph(4), k3)


def test_minor_model_is_valid():
    g, h = G.cube_graph(), G.complete_graph(4)
    labels = G.minor_model(g, h)
    assert labels is not None
    for i in range(h.n):
        branch = [v for v in range(g.n) if labels[v] == i]
        sub, _ = g.induced_subgraph(branch)
        assert branch and sub.is_connected()
    for a, b in h.edges:
        assert any(labels[u] == a and labels[v] == b or labels[u] == b and labels[v] == a for u, v in g.edges)


def test_planarity_matches_networkx():
    for g in all_graphs(6) + random_graphs(60, 9, seed=5):
        assert G.is_planar(g) == nx.check_planarity(to_nx(g))[0]


def test_planarity_by_minors_agrees():
    for g in all_graphs(6):
        assert G.is_planar_by_minors(g) == G.is_planar(g)


def test_outerplanarity_matches_apex_planarity():
    for g in all_graphs(6):
        h = to_nx(g)
        h.add_edges_from((v, "apex") for v in range(g.n))
        assert G.is_outerplanar(g) == nx.check_planarity(h)[0]
        assert G.is_outerplanar_by_minors(g) == G.is_outerplanar(g)


def test_outerplanar_examples():
    assert G.is_outerplanar(G.cycle_graph(5))
    assert not G.is_outerplanar(G.complete_graph(4))
    assert not G.is_outerplanar(G.complete_bipartite(2, 3))


# -- transforms -------------------------------------------------------------


def test_identify_path_ends():
    g = G.identify_vertices(G.path_graph(3), 0, 2)
    assert g.n == 2 and g.m == 1


def test_identify_opposite_cycle_vertices():
    g = G.identify_vertices(G.cycle_graph(4), 0, 2)
    assert g.n == 3 and g.m == 2


def test_identify_self_rejected():
    with pytest.raises(G.GraphError):
        G.identify_vertices(G.path_graph(3), 1, 1)


def test_identify_matches_networkx_contraction():
    for g in random_graphs(30, 7, seed=11, min_n=2):
        ref = nx.contracted_nodes(to_nx(g), 0, 1, self_loops=False)
        got = G.identify_vertices(g, 0, 1)
        assert got.n == ref.number_of_nodes() and got.m == ref.number_of_edges()


def test_clique_sum_triangles_give_diamond():
    t = G.complete_graph(3)
    g = G.clique_sum(t, t, {0: 0, 1: 1})
    assert g.n == 4 and g.m == 5


def test_clique_sum_drop_gives_c4():
    t = G.complete_graph(3)
    g = G.clique_sum(t, t, {0: 0, 1: 1}, drop=[(0, 1)])
    assert nx.is_isomorphic(to_nx(g), nx.cycle_graph(4))


def test_clique_sum_requires_cliques():
    with pytest.raises(G.GraphError):
        G.clique_sum(G.path_graph(3), G.complete_graph(3), {0: 0, 2: 1})


# -- subhamiltonicity -------------------------------------------------------


@pytest.mark.parametrize("name,expected", [("K4", True), ("K5", False), ("K2,3", True), ("K3,3", False)])
def test_subhamiltonian_named(name, expected):
    assert G.is_subhamiltonian(G.NAMED_GRAPHS[name]()) == expected


def test_subhamiltonian_witness_is_planar_cycle():
    g = G.cube_graph()
    order = G.subhamiltonian_witness(g)
    assert order is not None and sorted(order) == list(range(g.n))
    ring = [(order[i], order[(i + 1) % g.n]) for i in range(g.n)]
    h = to_nx(g)
    h.add_edges_from(ring)
    assert nx.check_planarity(h)[0]


def test_graph_rejects_out_of_range():
    with pytest.raises(G.GraphError):
        Graph(2, ((0, 2),))


def test_package_exports():
    import bookcross

    assert bookcross.__version__
    assert bookcross.cr1_exact(bookcross.parse_graph("C~", "graph6"))[0] == 1

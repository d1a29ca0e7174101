import itertools
import random

import networkx as nx
import pytest

from bookcross import graph as G
from bookcross.bookdraw import EMPTY_DIAGRAM, CrossingDiagram, cr1_exact, cr2_exact, enumerate_crossing_diagrams
from bookcross.corpus import all_graphs
from bookcross.pagechar import (
    OnePageWitness,
    Partition6,
    WitnessError,
    check_lemma5,
    check_lemma8,
    check_lemma9,
    cr2_via_characterization,
    diagram_placements,
    find_lemma5_witness,
    find_lemma8_witness,
    find_lemma9_witness,
    parse_partition,
    planarize,
    separate,
)

K4 = G.complete_graph(4)
K5 = G.complete_graph(5)


def to_nx(g):
    h = nx.Graph(list(g.edges))
    h.add_nodes_from(range(g.n))
    return h


# -- separate -----------------------------------------------------------------


def test_separate_single_edge():
    g = G.path_graph(2)
    s = separate(g, [0], [])
    assert s.n == 4 and s.m == 3
    assert set(s.edges) == {(0, 2), (1, 3), (0, 1)}


def test_separate_alternating_c4_is_one_cycle():
    c4 = G.cycle_graph(4)
    a = [c4.edge_id(0, 1), c4.edge_id(2, 3)]
    b = [c4.edge_id(1, 2), c4.edge_id(0, 3)]
    s = separate(c4, a, b)
    assert s.n == 8 and s.m == 8
    assert nx.is_isomorphic(to_nx(s), nx.cycle_graph(8))


def test_separate_has_matching_and_2n_vertices():
    rng = random.Random(3)
    for g in all_graphs(5):
        a = [i for i in range(g.m) if rng.random() < 0.5]
        b = [i for i in range(g.m) if i not in a]
        s = separate(g, a, b)
        assert s.n == 2 * g.n
        assert all(s.has_edge(v, g.n + v) for v in range(g.n))


def test_separate_requires_partition():
    with pytest.raises(WitnessError):
        separate(K4, [0, 1], [1, 2, 3, 4, 5])


# -- planarize --------------------------------------------------------------


def test_planarize_single_crossing():
    d = CrossingDiagram(4, ((0, 2), (1, 3)))
    em = [K4.edge_id(0, 2), K4.edge_id(1, 3)]
    pg = planarize(K4, d, em)
    assert pg.base.n == 5 and pg.base.m == 8
    (x,) = pg.crossing_vertices
    assert pg.base.degree(x) == 4
    assert set(pg.base.adj[x]) == {0, 1, 2, 3}
    assert not pg.base.has_edge(0, 2)
    assert nx.check_planarity(to_nx(pg.base))[0]


def test_planarize_empty_diagram():
    pg = planarize(K4, EMPTY_DIAGRAM, [])
    assert pg.base.same_graph(K4) and pg.crossing_vertices == ()


def test_planarize_doubly_crossed_segment():
    for d in enumerate_crossing_diagrams(2, 1):
        counts = [sum(s in p for p in d.crossing_pairs()) for s in range(len(d.segments))]
        if 2 not in counts:
            continue
        g = G.Graph.from_edges(d.segments, d.npoints)
        em = [g.edge_id(*s) for s in d.segments]
        pg = planarize(g, d, em, point_map=list(range(d.npoints)))
        s = counts.index(2)
        assert len(pg.paths[em[s]]) == 3
        for x in pg.crossing_vertices:
            assert pg.base.degree(x) == 4
        assert nx.check_planarity(to_nx(pg.base))[0]
        break
    else:
        pytest.fail("no diagram with a doubly crossed segment")


def test_planarize_always_planar_for_one_page_diagrams():
    for k in (1, 2):
        for d in enumerate_crossing_diagrams(k, 1):
            g = G.Graph.from_edges(d.segments, d.npoints)
            em = [g.edge_id(*s) for s in d.segments]
            pg = planarize(g, d, em, point_map=list(range(d.npoints)))
            assert len(pg.crossing_vertices) == k
            assert all(pg.base.degree(x) == 4 for x in pg.crossing_vertices)
            assert nx.check_planarity(to_nx(pg.base))[0]


def test_planarize_rejects_bad_map():
    d = CrossingDiagram(4, ((0, 2), (1, 3)))
    with pytest.raises(WitnessError):
        planarize(K4, d, [0])
    with pytest.raises(WitnessError):
        planarize(K4, d, [0, 0])


# -- one page -----------------------------------------------------------------


def _k4_witness(F):
    return OnePageWitness(tuple(F), (0, 1, 2, 3), (frozenset(),) * 4)


def test_check_onepage_k4_full_chords():
    w = _k4_witness(range(K4.m))
    assert check_lemma5(K4, w, 1)
    assert not check_lemma5(K4, w, 0)


def test_check_onepage_needs_all_edges_inside_w():
    w = _k4_witness([K4.edge_id(0, 2), K4.edge_id(1, 3)])
    assert not check_lemma5(K4, w, 1)


def test_check_onepage_edge_between_pockets():
    # square 0-1-2-3 with pendants 4 (after 0) and 5 (after 1), plus edge 4-5
    g = G.Graph.from_edges([(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (4, 5)])
    ws = (0, 1, 2, 3)
    fs = tuple(i for i, (u, v) in enumerate(g.edges) if u in ws and v in ws)
    w = OnePageWitness(fs, ws, (frozenset({4}), frozenset({5}), frozenset(), frozenset()))
    assert not check_lemma5(g, w, 2)


def test_check_onepage_malformed():
    with pytest.raises(WitnessError):
        check_lemma5(K4, OnePageWitness((0,), (0, 1), (frozenset({2}),)), 0)


def test_find_onepage_examples():
    w = find_lemma5_witness(K4, 1)
    assert w is not None and check_lemma5(K4, w, 1)
    assert find_lemma5_witness(K4, 0) is None
    c6 = G.cycle_graph(6)
    w = find_lemma5_witness(c6, 0)
    assert w is not None and w.F == () and check_lemma5(c6, w, 0)


def test_find_onepage_matches_cr1_small():
    for g in all_graphs(5):
        cr = cr1_exact(g)[0]
        for k in (0, 1, 2):
            w = find_lemma5_witness(g, k)
            assert (w is not None) == (cr <= k)
            if w is not None:
                assert check_lemma5(g, w, k)


def test_find_onepage_limits():
    with pytest.raises(G.SizeLimitError):
        find_lemma5_witness(G.empty_graph(9), 1)


# -- two pages, no crossings ----------------------------------------------


def test_check_twopage_c4_cycle():
    c4 = G.cycle_graph(4)
    assert check_lemma8(c4, Partition6(Ac=frozenset(range(4))))


def test_check_twopage_single_edge():
    assert check_lemma8(G.path_graph(2), Partition6(Ab=frozenset({0})))


def test_check_twopage_k5_never():
    rng = random.Random(9)
    for _ in range(300):
        labels = [rng.randrange(6) for _ in range(K5.m)]
        parts = [frozenset(i for i in range(K5.m) if labels[i] == c) for c in range(6)]
        assert not check_lemma8(K5, Partition6(*parts))


def test_check_twopage_rejects_overlap():
    with pytest.raises(WitnessError):
        check_lemma8(G.path_graph(2), Partition6(Ab=frozenset({0}), Bb=frozenset({0})))


@pytest.mark.parametrize("name,present", [("K4", True), ("K5", False), ("K2,3", True)])
def test_find_twopage_examples(name, present):
    g = G.NAMED_GRAPHS[name]()
    p = find_lemma8_witness(g)
    assert (p is not None) == present
    if p is not None:
        assert check_lemma8(g, p)


def test_partition_text_round_trip():
    g = G.NAMED_GRAPHS["K2,3"]()
    p = find_lemma8_witness(g)
    assert parse_partition(p.to_text(g), g) == p


# -- two pages with crossings ------------------------------------------------


def test_crossing_witness_k5():
    found = None
    for d in enumerate_crossing_diagrams(1, 2):
        for em in diagram_placements(K5, d):
            p = find_lemma9_witness(K5, d, em)
            if p is not None:
                found = (d, em, p)
                break
        if found:
            break
    assert found is not None
    d, em, p = found
    assert check_lemma9(K5, d, em, p)


def test_crossing_page_consistency():
    d = next(iter(enumerate_crossing_diagrams(1, 2)))
    for em in diagram_placements(K5, d):
        p = find_lemma9_witness(K5, d, em)
        if p is None:
            continue
        pg = planarize(K5, d, em)
        eid, page = next(iter(pg.introduced_edges().items()))
        moved = {name: set(s) for name, s in zip(("Ab", "Ac", "Ai", "Bb", "Bc", "Bi"), p.parts())}
        for s in moved.values():
            s.discard(eid)
        moved["Bb" if page == 0 else "Ab"].add(eid)
        bad = Partition6(**{k: frozenset(v) for k, v in moved.items()})
        assert not check_lemma9(K5, d, em, bad)
        return
    pytest.fail("no witness found for K5")


def test_empty_diagram_reduces_to_no_crossing_case():
    rng = random.Random(13)
    for g in all_graphs(4):
        for _ in range(20):
            labels = [rng.randrange(6) for _ in range(g.m)]
            p = Partition6(*(frozenset(i for i in range(g.m) if labels[i] == c) for c in range(6)))
            assert check_lemma9(g, EMPTY_DIAGRAM, [], p) == check_lemma8(g, p)
        w = find_lemma8_witness(g)
        if w is not None:
            assert check_lemma9(g, EMPTY_DIAGRAM, [], w)


@pytest.mark.parametrize("name,expected", [("K4", 0), ("K5", 1), ("K6", None)])
def test_cr2_via_characterization(name, expected):
    assert cr2_via_characterization(G.NAMED_GRAPHS[name]()) == expected


def test_characterization_matches_solver_small():
    for g in all_graphs(5, connected=True):
        got = cr2_via_characterization(g)
        cr = cr2_exact(g)[0]
        assert got == (cr if cr <= 1 else None)

import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bookcross import graph as G
from bookcross.bookdraw import (
    BookDrawing,
    CrossingDiagram,
    DiagramError,
    DrawingError,
    cr1_exact,
    cr2_exact,
    crossings,
    enumerate_crossing_diagrams,
    is_2page_planar,
    parse_drawing,
    render_svg,
)
from bookcross.corpus import all_graphs, random_graphs
from bookcross.oracles import cr1_bruteforce, cr2_bruteforce, diagrams_bruteforce

K4 = G.complete_graph(4)


def one_page(g, order):
    return BookDrawing(tuple(order), (0,) * g.m, 1)


def test_k4_one_page_one_crossing():
    assert crossings(K4, one_page(K4, range(4))) == 1


def test_c4_in_order_no_crossing():
    c4 = G.cycle_graph(4)
    assert crossings(c4, one_page(c4, range(4))) == 0


def test_k4_two_pages_no_crossing():
    pages = tuple(1 if e == (1, 3) else 0 for e in K4.edges)
    assert crossings(K4, BookDrawing((0, 1, 2, 3), pages, 2)) == 0


def test_shared_endpoint_never_counts():
    star = G.star_graph(5)
    assert crossings(star, one_page(star, (1, 0, 3, 2, 5, 4))) == 0


def test_invalid_drawing_rejected():
    with pytest.raises(DrawingError):
        crossings(K4, BookDrawing((0, 1, 2), (0,) * 6, 1))
    with pytest.raises(DrawingError):
        crossings(K4, BookDrawing((0, 1, 2, 3), (2,) * 6, 2))


@st.composite
def drawn_graphs(draw):
    n = draw(st.integers(2, 8))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True))
    g = G.Graph.from_edges(edges, n)
    order = draw(st.permutations(list(range(n))))
    pages = draw(st.lists(st.integers(0, 1), min_size=g.m, max_size=g.m))
    return g, BookDrawing(tuple(order), tuple(pages), 2)


@settings(max_examples=200, deadline=None)
@given(drawn_graphs(), st.integers(0, 7))
def test_crossings_rotation_and_reflection_invariant(case, r):
    g, d = case
    base = crossings(g, d)
    r %= g.n
    rotated = BookDrawing(d.order[r:] + d.order[:r], d.pages, 2)
    reflected = BookDrawing(d.order[::-1], d.pages, 2)
    assert crossings(g, rotated) == base == crossings(g, reflected)


@pytest.mark.parametrize("name,k", [("K4", 1), ("K5", 5), ("K2,3", 1), ("K3,3", 3)])
def test_cr1_named(name, k):
    assert cr1_exact(G.NAMED_GRAPHS[name]())[0] == k


def test_cr1_cycle_zero():
    assert cr1_exact(G.cycle_graph(7))[0] == 0


@pytest.mark.parametrize("name,k", [("K4", 0), ("K5", 1), ("K2,3", 0), ("K6", 3), ("K3,3", 1)])
def test_cr2_named(name, k):
    assert cr2_exact(G.NAMED_GRAPHS[name]())[0] == k


def test_solvers_match_bruteforce_and_witnesses():
    for g in random_graphs(60, 6, seed=21):
        k1, d1 = cr1_exact(g)
        k2, d2 = cr2_exact(g)
        assert k1 == cr1_bruteforce(g)
        assert crossings(g, d1) == k1 and crossings(g, d2) == k2
        if g.m <= 14:
            assert k2 == cr2_bruteforce(g)
        assert k2 <= k1


def test_cr1_zero_iff_outerplanar():
    for g in all_graphs(7):
        assert (cr1_exact(g)[0] == 0) == G.is_outerplanar(g)


def test_cr2_zero_iff_subhamiltonian_small():
    for g in all_graphs(5, connected=True):
        assert (cr2_exact(g)[0] == 0) == G.is_subhamiltonian(g)


def test_disconnected_components_add():
    g = G.disjoint_union(G.complete_graph(5), G.complete_graph(4))
    assert cr1_exact(g)[0] == 6
    assert cr2_exact(g)[0] == 1


def test_two_page_planarity_examples():
    assert is_2page_planar(K4)
    assert not is_2page_planar(G.complete_graph(5))
    assert is_2page_planar(G.cube_graph())


def test_size_limits():
    with pytest.raises(G.SizeLimitError):
        cr1_exact(G.empty_graph(30))
    with pytest.raises(G.SizeLimitError):
        cr2_exact(G.empty_graph(30))


def test_drawing_text_round_trip():
    g = G.NAMED_GRAPHS["K3,3"]()
    _, d = cr2_exact(g)
    back = parse_drawing(d.to_text(g), g)
    assert back.order == d.order and back.pages == d.pages


def test_drawing_text_rejects_missing_edge():
    with pytest.raises(DrawingError):
        parse_drawing("order: 0 1 2 3\npage0: 0-1\n", K4)


# -- crossing diagrams -------------------------------------------------------


def test_diagrams_k0():
    ds = enumerate_crossing_diagrams(0, 1)
    assert len(ds) == 1 and ds[0].npoints == 0 and ds[0].segments == ()


def test_diagrams_k1():
    (d,) = enumerate_crossing_diagrams(1, 1)
    assert d.npoints == 4 and d.k == 1
    assert len(enumerate_crossing_diagrams(1, 2)) == 2


@pytest.mark.parametrize("k,pages", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_diagrams_match_bruteforce(k, pages):
    got = {(pages, d.npoints, d._word()) for d in enumerate_crossing_diagrams(k, pages)}
    assert got == diagrams_bruteforce(k, pages)


def test_diagrams_valid_and_unique():
    for pages in (1, 2):
        ds = enumerate_crossing_diagrams(2, pages, exact=False)
        keys = [d.canonical_key for d in ds]
        assert len(keys) == len(set(keys))
        for d in ds:
            assert d.is_valid() and d.k <= 2
            assert all(d.rotated(r).canonical_key == d.canonical_key for r in range(d.npoints))


def test_diagram_code_round_trip():
    for d in enumerate_crossing_diagrams(2, 2, exact=False):
        assert CrossingDiagram.from_code(d.code).canonical_key == d.canonical_key


def test_diagram_reflection_not_identified():
    ds = enumerate_crossing_diagrams(2, 1)
    keys = {d.canonical_key for d in ds}
    mirrored = set()
    for d in ds:
        n = d.npoints
        m = CrossingDiagram(n, tuple(((n - a) % n, (n - b) % n) for a, b in d.segments), d.colors)
        mirrored.add(m.canonical_key)
    assert mirrored == keys


def test_diagram_k_over_limit():
    with pytest.raises(DiagramError):
        enumerate_crossing_diagrams(3, 1)


def test_diagram_uncrossed_segment_invalid():
    d = CrossingDiagram(6, ((0, 2), (1, 3), (4, 5)))
    assert not d.is_valid()
    assert "uncrossed segment" in d.problems()


def test_crossings_along_lists_each_pair_on_both_segments():
    for d in enumerate_crossing_diagrams(2, 1):
        pairs = d.crossing_pairs()
        along = d.crossings_along()
        for idx, (i, j) in enumerate(pairs):
            assert idx in along[i] and idx in along[j]
        assert sum(len(x) for x in along) == 2 * len(pairs)


# -- SVG -----------------------------------------------------------------------


def test_svg_well_formed():
    g = G.NAMED_GRAPHS["K3,3"]()
    root = ET.fromstring(render_svg(g, cr2_exact(g)[1]))
    assert root.tag.endswith("svg")


def test_svg_empty_graph_has_spine_only():
    root = ET.fromstring(render_svg(G.empty_graph(0), BookDrawing((), (), 1)))
    tags = [el.tag.split("}")[-1] for el in root.iter()]
    assert "line" in tags and "path" not in tags


def test_svg_k4_pages_split():
    _, d = cr2_exact(K4)
    assert crossings(K4, d) == 0
    svg = render_svg(K4, d)
    root = ET.fromstring(svg)
    arcs = [el for el in root.iter() if el.tag.split("}")[-1] == "path"]
    assert len(arcs) == K4.m

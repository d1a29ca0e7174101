import itertools
import random

import networkx as nx
import pytest

from bookcross import graph as G
from bookcross.corpus import all_graphs, random_graphs, random_partial_ktree
from bookcross.treewidth import (
    DecompositionError,
    decomposition_of,
    format_decomposition,
    make_nice,
    parse_decomposition,
    treewidth_exact,
    treewidth_upperbound,
    validate_decomposition,
    validate_nice,
)


def elimination_width(g, order) -> int:
    nb = [set(s) for s in g.adj]
    width = 0
    for v in order:
        width = max(width, len(nb[v]))
        for a, b in itertools.combinations(nb[v], 2):
            nb[a].add(b)
            nb[b].add(a)
        for u in nb[v]:
            nb[u].discard(v)
        nb[v] = set()
    return width


def treewidth_bruteforce(g) -> int:
    if g.n == 0:
        return -1
    return min(elimination_width(g, o) for o in itertools.permutations(range(g.n)))


def test_tree_has_width_one():
    rng = random.Random(1)
    for n in range(2, 10):
        edges = [(v, rng.randrange(v)) for v in range(1, n)]
        assert treewidth_exact(G.Graph.from_edges(edges, n))[0] == 1


@pytest.mark.parametrize("n", range(1, 8))
def test_clique_width(n):
    assert treewidth_exact(G.complete_graph(n))[0] == n - 1


def test_cycle_width_two():
    assert treewidth_exact(G.cycle_graph(5))[0] == 2


def test_exact_matches_elimination_bruteforce():
    for g in all_graphs(6) + random_graphs(20, 7, seed=2):
        w, td = treewidth_exact(g)
        assert w == treewidth_bruteforce(g)
        assert validate_decomposition(g, td) and td.width == w


def test_upperbound_valid_and_not_below_exact():
    for g in random_graphs(60, 10, seed=4):
        ub, td = treewidth_upperbound(g)
        assert validate_decomposition(g, td) and td.width == ub
        assert ub >= treewidth_exact(g)[0]


def test_upperbound_examples():
    assert treewidth_upperbound(G.complete_graph(4))[0] == 3
    assert treewidth_upperbound(G.path_graph(5))[0] == 1
    assert treewidth_upperbound(G.cycle_graph(5))[0] >= 2


def test_exact_not_above_networkx_heuristic():
    for g in random_graphs(30, 10, seed=8):
        h = nx.Graph(list(g.edges))
        h.add_nodes_from(range(g.n))
        approx, _ = nx.algorithms.approximation.treewidth_min_fill_in(h)
        assert treewidth_exact(g)[0] <= max(approx, 0)


def test_partial_ktree_width_bounded():
    rng = random.Random(6)
    for _ in range(20):
        k = rng.randint(1, 3)
        g = random_partial_ktree(rng.randint(k + 1, 12), k, rng)
        assert treewidth_exact(g)[0] <= k


def test_size_limit():
    with pytest.raises(ValueError):
        treewidth_exact(G.empty_graph(21))


def test_validate_examples():
    k3 = G.complete_graph(3)
    assert validate_decomposition(k3, decomposition_of([{0, 1, 2}], []))
    assert not validate_decomposition(k3, decomposition_of([{0, 1}, {1, 2}], [(0, 1)]))
    assert validate_decomposition(G.path_graph(3), decomposition_of([{0, 1}, {1, 2}], [(0, 1)]))


def test_validate_detects_broken_occurrence():
    g = G.path_graph(3)
    td = decomposition_of([{0, 1}, {2}, {1, 2}], [(0, 1), (1, 2)])
    assert not validate_decomposition(g, td)


def test_make_nice_single_bag():
    k3 = G.complete_graph(3)
    ntd = make_nice(decomposition_of([{0, 1, 2}], []))
    kinds = [nd.kind for nd in ntd.nodes]
    assert kinds.count("leaf") == 1 and kinds.count("introduce") == 3
    assert ntd.width == 2
    assert validate_nice(k3, ntd)
    assert ntd.nodes[ntd.root].bag == frozenset()


def test_make_nice_preserves_width_and_validity():
    for g in random_graphs(40, 9, seed=12):
        w, td = treewidth_exact(g)
        ntd = make_nice(td)
        assert ntd.width == w
        assert validate_nice(g, ntd)
        assert validate_decomposition(g, ntd.as_tree_decomposition())
        assert len(ntd.nodes) <= 4 * (w + 2) * max(g.n, 1) + 4


def test_make_nice_rejects_disconnected_occurrences():
    td = decomposition_of([{0}, {1}, {0}], [(0, 1), (1, 2)])
    with pytest.raises(DecompositionError):
        make_nice(td)


def test_text_round_trip():
    _, td = treewidth_exact(G.cube_graph())
    assert parse_decomposition(format_decomposition(td)) == td


def test_text_rejects_garbage():
    with pytest.raises(DecompositionError):
        parse_decomposition("bags 0: 1 2\n")

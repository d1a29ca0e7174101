import itertools
import random

import pytest

from bookcross import graph as G
from bookcross.checker.naive import EvalBudget, eval_naive
from bookcross.corpus import all_graphs, random_graphs
from bookcross.mso2 import constructions, library
from bookcross.mso2.generate import random_formula
from bookcross.mso2.syntax import (
    And,
    Eq,
    FormulaError,
    Inc,
    ParseError,
    Quant,
    SortError,
    UnboundVariableError,
    UnknownOperatorError,
    exists,
    free_variables,
    parse_formula,
    pretty,
    sort_check,
    to_text,
)

RAW = EvalBudget(kernels=False)


def holds(g, f, a=None, sorts=None, raw=True):
    return eval_naive(g, f, a, budget=RAW if raw else None, sorts=sorts)


def builder_library():
    out = [(name, library.build_basic(name)) for name in library.BASIC_NAMES if name != "exactly_two"]
    out.append(("exactly_two", library.build_basic("exactly_two", "v", "S")))
    out.append(("color-2", library.color_k(2)))
    out.append(("minor-K23", library.minor_h(G.complete_bipartite(2, 3))))
    out.append(("twopage", constructions.build_twopage()))
    out.append(("onepage1", constructions.build_onepage(1)))
    out.append(("zeta1", constructions.build_zeta(1)))
    thetas = {1: ("W", "F"), 2: ("F", "W"), 3: ("Ui", "Uj"), 4: ("U", "a", "b"), 5: ("U", "W", "a", "b")}
    for i, args in thetas.items():
        out.append((f"theta{i}", constructions.build_theta_1page(i, *args)))
    out.append(("theta1-tuple", constructions.build_theta_1page(1, ["v0", "v1", "v2", "v3"], ["e0", "e1"])))
    return out


# -- parser ----------------------------------------------------------------


def test_parse_free_edge_variable():
    f = parse_formula("(exists-v u (inc !e u))", {"!e": "e"})
    assert isinstance(f, Quant) and free_variables(f) == {"!e"}


def test_parse_sort_mismatch():
    with pytest.raises(SortError):
        parse_formula("(exists-v u (exists-E F (in u F)))")


def test_parse_unknown_operator():
    with pytest.raises(UnknownOperatorError):
        parse_formula("(xor (= !a !a))")


def test_parse_unbound():
    with pytest.raises(UnboundVariableError):
        parse_formula("(exists-v u (= u w))")


@pytest.mark.parametrize("text", ["(exists-v u", "(exists-v u (= u u)) extra", ")"])
def test_parse_malformed(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_edge_quantifier_and_incidence_sorts():
    with pytest.raises(SortError):
        parse_formula("(exists-v u (exists-v w (inc u w)))")


def test_round_trip_builders():
    for name, f in builder_library():
        free = sort_check(f, infer=True)
        text = to_text(f)
        assert parse_formula(text, free) == f, name
        assert parse_formula(pretty(f), free) == f, name


def test_round_trip_random():
    rng = random.Random(5)
    for _ in range(200):
        f = random_formula(rng, depth=rng.randint(1, 6), set_rank=rng.randint(0, 3))
        assert free_variables(f) == frozenset()
        assert parse_formula(to_text(f)) == f


def test_builders_are_well_sorted():
    for name, f in builder_library():
        sort_check(f, infer=True)


def test_closed_builders():
    for name in ("hamiltonian", "planar_f", "outerplanar_f", "connected", "disconnected"):
        assert free_variables(library.build_basic(name)) == frozenset()
    assert free_variables(constructions.build_twopage()) == frozenset()
    assert free_variables(constructions.build_onepage(1)) == frozenset()


def test_unknown_builder():
    with pytest.raises(FormulaError):
        library.build_basic("bogus")


# -- library semantics (formula kernels off) -------------------------------


def test_hamiltonian_examples():
    assert holds(G.cycle_graph(4), library.hamiltonian())
    assert not holds(G.path_graph(3), library.hamiltonian())


def test_two_colouring_examples():
    assert not holds(G.cycle_graph(5), library.color_k(2))
    assert holds(G.cycle_graph(4), library.color_k(2))


def test_disconnected_is_negation_of_connected():
    conn, disc = library.connected(), library.disconnected()
    for g in all_graphs(5):
        assert holds(g, conn) == g.is_connected()
        assert holds(g, disc) == (not g.is_connected())


def _edge_subsets(g, limit=64):
    subs = list(range(1 << g.m))
    random.Random(g.m * 131 + g.n).shuffle(subs)
    return subs[:limit]


def test_cycle_matches_simple_cycle():
    f = library.cycle("F")
    for g in all_graphs(5):
        for mask in _edge_subsets(g):
            ids = [i for i in range(g.m) if mask >> i & 1]
            assert holds(g, f, {"F": ids}, {"F": "E"}) == G.is_simple_cycle(g, ids)


def test_cycle_set_is_degree_two_on_support():
    f = library.cycle_set("F")
    for g in all_graphs(5):
        for mask in _edge_subsets(g):
            ids = [i for i in range(g.m) if mask >> i & 1]
            deg = [0] * g.n
            for i in ids:
                for v in g.edges[i]:
                    deg[v] += 1
            assert holds(g, f, {"F": ids}, {"F": "E"}) == all(d in (0, 2) for d in deg)


def test_span_covers_every_vertex():
    f = library.span("F")
    for g in all_graphs(4):
        for mask in _edge_subsets(g):
            ids = [i for i in range(g.m) if mask >> i & 1]
            covered = {v for i in ids for v in g.edges[i]}
            assert holds(g, f, {"F": ids}, {"F": "E"}) == (covered == set(range(g.n)))


def test_connected_vertices():
    f = library.connected_vertices("U")
    for g in all_graphs(5):
        for r in range(g.n + 1):
            for s in itertools.combinations(range(g.n), r):
                sub, _ = g.induced_subgraph(s)
                assert holds(g, f, {"U": s}, {"U": "V"}) == sub.is_connected()


def test_exactly_two():
    f = library.build_basic("exactly_two", "v", "S")
    g = G.empty_graph(4)
    for r in range(5):
        for s in itertools.combinations(range(4), r):
            assert holds(g, f, {"S": s}, {"S": "V"}) == (r == 2)


def test_vertex_partition():
    f = library.vertex_partition(["A", "B"])
    g = G.empty_graph(3)
    assert holds(g, f, {"A": [0], "B": [1, 2]}, {"A": "V", "B": "V"})
    assert not holds(g, f, {"A": [0, 1], "B": [1, 2]}, {"A": "V", "B": "V"})
    assert not holds(g, f, {"A": [0], "B": [1]}, {"A": "V", "B": "V"})


def test_minor_formula_small():
    k3 = G.complete_graph(3)
    f = library.minor_h(k3)
    for g in all_graphs(5):
        assert holds(g, f) == G.is_minor(g, k3)


def test_kernel_agrees_with_formula():
    for f in (library.planar_f(), library.outerplanar_f(), library.minor_h(G.complete_graph(4))):
        for g in all_graphs(5):
            assert holds(g, f, raw=True) == holds(g, f, raw=False)


# -- relativization -------------------------------------------------------


def test_relativize_triangle_in_k5():
    f = library.relativize(library.hamiltonian(), "U")
    assert holds(G.complete_graph(5), f, {"U": [0, 1, 2]}, {"U": "V"})


def test_relativize_empty_domain():
    f = library.relativize(parse_formula("(exists-v u (= u u))"), "U")
    assert not holds(G.complete_graph(3), f, {"U": []}, {"U": "V"})


def test_relativize_full_universe_is_identity():
    rng = random.Random(17)
    for g in random_graphs(50, 5, seed=19):
        phi = random_formula(rng, depth=4, set_rank=1)
        f = library.relativize(phi, "U")
        assert holds(g, f, {"U": range(g.n)}, {"U": "V"}) == holds(g, phi)


def test_relativize_matches_induced_subgraph():
    rng = random.Random(23)
    formulas = [library.hamiltonian(), library.connected(), library.color_k(2), library.outerplanar_f()]
    for g in all_graphs(5):
        for _ in range(2):
            s = sorted(rng.sample(range(g.n), rng.randint(0, g.n)))
            sub, _ = g.induced_subgraph(s)
            for phi in formulas:
                f = library.relativize(phi, "U")
                assert holds(g, f, {"U": s}, {"U": "V"}) == holds(sub, phi)


def test_relativize_with_extra_vertices():
    phi = library.hamiltonian()
    f = library.relativize(phi, "U", ["a", "b"])
    g = G.cycle_graph(5)
    env = {"U": [1, 2, 3], "a": 0, "b": 4}
    assert holds(g, f, env, {"U": "V", "a": "v", "b": "v"})
    env = {"U": [1, 2], "a": 0, "b": 4}
    assert not holds(g, f, env, {"U": "V", "a": "v", "b": "v"})


def test_relativize_capture():
    phi = exists("V", "U", And())
    with pytest.raises(FormulaError):
        library.relativize(phi, "U")


def test_relativize_edges():
    f = library.relativize_edges(library.connected(), "F")
    g = G.cycle_graph(4)
    assert holds(g, f, {"F": [0, 1, 2]}, {"F": "E"})
    assert not holds(g, f, {"F": [0, 2]}, {"F": "E"})


def test_quantifier_builders():
    f = exists("v", "x", exists("e", "y", Inc("y", "x")))
    assert holds(G.path_graph(2), f)
    assert not holds(G.empty_graph(2), f)
    assert holds(G.empty_graph(1), exists("v", "x", Eq("x", "x")))

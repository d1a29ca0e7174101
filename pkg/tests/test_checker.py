import random

import pytest

from bookcross import graph as G
from bookcross.checker.courcelle import (
    UNSUPPORTED,
    RankLimitError,
    eval_courcelle,
    model_check,
    nice_decomposition,
    set_rank,
)
from bookcross.checker.naive import BudgetExceeded, EvalBudget, eval_naive
from bookcross.checker.transforms import TransformError
from bookcross.corpus import all_graphs, random_graphs, random_partial_ktree
from bookcross.mso2 import constructions, library
from bookcross.mso2.generate import random_formula
from bookcross.mso2.syntax import FormulaError, Interpreted, Not, parse_formula
from bookcross.treewidth import DecompositionError, decomposition_of, treewidth_exact

RAW = EvalBudget(kernels=False)


# -- naive evaluator ------------------------------------------------------


def test_naive_examples():
    assert eval_naive(G.cycle_graph(4), library.hamiltonian())
    f = parse_formula("(exists-E F (and (cycle-set F) (span F)))")
    assert eval_naive(G.complete_graph(4), f)
    p3 = G.path_graph(3)
    assert eval_naive(p3, library.connected())
    assert not eval_naive(G.disjoint_union(p3, G.empty_graph(1)), library.connected())


def test_naive_assignment_must_cover_free_variables():
    f = parse_formula("(exists-v u (inc !e u))", {"!e": "e"})
    with pytest.raises(FormulaError):
        eval_naive(G.path_graph(2), f)
    assert eval_naive(G.path_graph(2), f, {"!e": 0}, sorts={"!e": "e"})


def test_de_morgan_duals():
    rng = random.Random(51)
    graphs = random_graphs(40, 6, seed=52)
    for g in graphs:
        phi = random_formula(rng, depth=5, set_rank=rng.randint(0, 2))
        assert eval_naive(g, Not(phi)) == (not eval_naive(g, phi))


def test_budget_exceeded_is_not_false():
    f = library.hamiltonian()
    with pytest.raises(BudgetExceeded):
        eval_naive(G.complete_graph(6), f, budget=EvalBudget(kernels=False, max_expansions=10))


def test_budget_monotone():
    rng = random.Random(53)
    for g in random_graphs(30, 6, seed=54):
        phi = random_formula(rng, depth=5, set_rank=2)
        answers = []
        for cap in (50, 500, 5_000, 50_000, 5_000_000):
            try:
                answers.append(eval_naive(g, phi, budget=EvalBudget(max_expansions=cap)))
            except BudgetExceeded:
                continue
        assert len(set(answers)) <= 1 and answers


def test_budget_validation():
    with pytest.raises(ValueError):
        EvalBudget(max_expansions=0)
    with pytest.raises(ValueError):
        EvalBudget(engine="fast")


def test_isomorphism_invariance():
    rng = random.Random(55)
    formulas = [library.hamiltonian(), library.color_k(3), library.outerplanar_f(), constructions.build_twopage()]
    for g in random_graphs(25, 6, seed=56):
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        for f in formulas:
            assert eval_naive(g, f) == eval_naive(h, f)


# -- transforms ---------------------------------------------------------------


def test_identify_transform():
    f = Interpreted("identify", ("a", "b"), parse_formula("(not (exists-v u (exists-v w (and (not (= u w)) (exists-e e (and (inc e u) (inc e w)))))))"))
    sorts = {"a": "v", "b": "v"}
    assert eval_naive(G.path_graph(2), f, {"a": 0, "b": 1}, sorts=sorts)
    assert not eval_naive(G.path_graph(3), f, {"a": 0, "b": 2}, sorts=sorts)


def test_identify_transform_same_vertex():
    f = Interpreted("identify", ("a", "b"), library.connected())
    with pytest.raises(TransformError):
        eval_naive(G.path_graph(2), f, {"a": 0, "b": 0}, sorts={"a": "v", "b": "v"})


def test_separate_transform_planarity():
    f = Interpreted("separate", ("A", "B"), library.planar_f())
    k5 = G.complete_graph(5)
    sorts = {"A": "E", "B": "E"}
    assert not eval_naive(k5, f, {"A": range(k5.m), "B": []}, sorts=sorts)
    k4 = G.complete_graph(4)
    assert eval_naive(k4, f, {"A": range(k4.m), "B": []}, sorts=sorts)


def test_unknown_transform():
    with pytest.raises(FormulaError):
        parse_formula("(interpreted shrink (!a) (= !a !a))", {"!a": "v"})


# -- Courcelle engine --------------------------------------------------------


def test_courcelle_tree_not_hamiltonian():
    rng = random.Random(61)
    f = library.hamiltonian()
    for n in range(1, 9):
        edges = [(v, rng.randrange(v)) for v in range(1, n)]
        assert eval_courcelle(G.Graph.from_edges(edges, n), f) is False


def test_courcelle_c6_hamiltonian_width_two():
    c6 = G.cycle_graph(6)
    _, td = treewidth_exact(c6)
    assert td.width == 2
    assert eval_courcelle(c6, library.hamiltonian(), td) is True


def test_courcelle_library_on_small_graphs():
    formulas = [library.connected(), library.disconnected(), library.color_k(2), library.color_k(3),
                library.hamiltonian()]
    for g in all_graphs(5):
        for f in formulas:
            assert eval_courcelle(g, f) == eval_naive(g, f, budget=RAW)


def test_courcelle_random_formulas():
    rng = random.Random(63)
    for _ in range(60):
        k = rng.randint(1, 3)
        g = random_partial_ktree(rng.randint(1, 8), k, rng)
        f = random_formula(rng, depth=5, set_rank=rng.randint(0, 2))
        try:
            want = eval_naive(g, f, budget=EvalBudget(max_expansions=500_000))
        except BudgetExceeded:
            continue
        assert eval_courcelle(g, f) == want


def test_courcelle_accepts_any_valid_decomposition():
    g = G.cycle_graph(5)
    td = decomposition_of([{0, 1, 2, 3, 4}], [])
    assert eval_courcelle(g, library.hamiltonian(), td) is True


def test_courcelle_rejects_invalid_decomposition():
    g = G.cycle_graph(5)
    td = decomposition_of([{0, 1, 2}, {2, 3, 4}], [(0, 1)])
    with pytest.raises(DecompositionError):
        eval_courcelle(g, library.hamiltonian(), td)


def test_courcelle_interpreted_unsupported():
    assert eval_courcelle(G.complete_graph(4), constructions.build_twopage()) == UNSUPPORTED


def test_courcelle_width_limit_unsupported():
    assert eval_courcelle(G.complete_graph(6), library.connected()) == UNSUPPORTED


def test_courcelle_rank_limit():
    f = library.minor_h(G.complete_graph(3))
    assert set_rank(f) == 4
    with pytest.raises(RankLimitError):
        eval_courcelle(G.cycle_graph(4), f)
    assert eval_courcelle(G.cycle_graph(4), f, budget=EvalBudget(q_limit=4)) is True


def test_courcelle_needs_closed_formula():
    f = parse_formula("(exists-v u (inc !e u))", {"!e": "e"})
    with pytest.raises(FormulaError):
        eval_courcelle(G.path_graph(2), f)


def test_nice_decomposition_has_edge_nodes():
    g = G.cube_graph()
    nice = nice_decomposition(g)
    assert sum(nd.kind == "introduce_edge" for nd in nice.nodes) == g.m


# -- dispatch ---------------------------------------------------------------


def test_model_check_examples():
    assert model_check(G.cycle_graph(5), library.outerplanar_f())
    assert not model_check(G.complete_graph(5), library.planar_f())
    assert model_check(G.complete_graph(4), constructions.build_twopage())


def test_model_check_reports_engine():
    assert model_check(G.cycle_graph(6), library.hamiltonian(), with_engine=True) == (True, "courcelle")
    assert model_check(G.complete_graph(4), constructions.build_twopage(), with_engine=True) == (True, "naive")


def test_model_check_forced_engine():
    b = EvalBudget(engine="naive")
    assert model_check(G.cycle_graph(6), library.hamiltonian(), b, with_engine=True) == (True, "naive")

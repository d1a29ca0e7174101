import random

import pytest

from bookcross import graph as G
from bookcross.bookdraw import EMPTY_DIAGRAM, cr1_exact, cr2_exact, enumerate_crossing_diagrams
from bookcross.checker.naive import EvalBudget, eval_naive
from bookcross.corpus import all_graphs
from bookcross.mso2 import constructions as C
from bookcross.mso2.library import Namer
from bookcross.mso2.syntax import TRUE, FormulaError, exists, free_variables, sort_check

RAW = EvalBudget(kernels=False)
V2 = {"Ui": "V", "Uj": "V"}


def closed(f):
    """Existentially close ``f`` over its free variables."""
    sorts = sort_check(f, infer=True)
    for x in sorted(free_variables(f)):
        f = exists(sorts[x], x, f)
    return f


# -- theta pieces -------------------------------------------------------------


def test_theta3_examples():
    f = C.build_theta_1page(3, "Ui", "Uj")
    c4 = G.cycle_graph(4)
    assert eval_naive(c4, f, {"Ui": [0], "Uj": [2]}, sorts=V2)
    assert not eval_naive(c4, f, {"Ui": [0], "Uj": [1]}, sorts=V2)


def test_theta1_theta2_tuple_form():
    k4 = G.complete_graph(4)
    ws, fs = ["w0", "w1", "w2"], ["f0", "f1", "f2"]
    t1 = C.build_theta_1page(1, ws, fs)
    t2 = C.build_theta_1page(2, fs, ws)
    env = {"w0": 0, "w1": 1, "w2": 2, "f0": k4.edge_id(0, 1), "f1": k4.edge_id(1, 2), "f2": k4.edge_id(0, 2)}
    sorts = {**{w: "v" for w in ws}, **{f: "e" for f in fs}}
    assert eval_naive(k4, t1, env, sorts=sorts)
    assert eval_naive(k4, t2, env, sorts=sorts)
    env["f2"] = k4.edge_id(0, 3)
    assert not eval_naive(k4, t2, env, sorts=sorts)


def test_theta_bad_index():
    with pytest.raises(FormulaError):
        C.build_theta_1page(7, "A", "B")


POCKET = {"U": "V", "a": "v", "b": "v"}


def test_theta4_path_pocket():
    f = C.build_theta_1page(4, "U", "a", "b")
    env = {"U": [1], "a": 0, "b": 2}
    p3 = G.path_graph(3)
    assert eval_naive(p3, f, env, budget=RAW, sorts=POCKET)
    assert eval_naive(p3, C.theta4_identify("U", "a", "b"), env, sorts=POCKET)


def test_identify_is_weaker_than_pocket():
    # a sees u1 and u3, b sees u2, and u1-u2-u3 is a path
    g = G.Graph.from_edges([(0, 2), (0, 4), (1, 3), (2, 3), (3, 4)])
    env = {"U": [2, 3, 4], "a": 0, "b": 1}
    assert eval_naive(g, C.theta4_identify("U", "a", "b"), env, sorts=POCKET)
    assert not eval_naive(g, C.build_theta_1page(4, "U", "a", "b"), env, budget=RAW, sorts=POCKET)


def test_theta4_formula_matches_kernel():
    f = C.build_theta_1page(4, "U", "a", "b")
    rng = random.Random(41)
    for g in all_graphs(5, min_n=2):
        for _ in range(2):
            a, b = rng.sample(range(g.n), 2)
            rest = [v for v in range(g.n) if v not in (a, b)]
            us = [v for v in rest if rng.random() < 0.6]
            env = {"U": us, "a": a, "b": b}
            assert eval_naive(g, f, env, budget=RAW, sorts=POCKET) == eval_naive(g, f, env, sorts=POCKET)


def test_anchor_condition():
    f = C.build_theta_1page(5, "U", ["w0", "w1", "w2"], "w0", "w1")
    k4 = G.complete_graph(4)
    sorts = {"U": "V", "w0": "v", "w1": "v", "w2": "v"}
    assert not eval_naive(k4, f, {"U": [3], "w0": 0, "w1": 1, "w2": 2}, sorts=sorts)
    g = G.Graph.from_edges([(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)])
    assert eval_naive(g, f, {"U": [3], "w0": 0, "w1": 1, "w2": 2}, sorts=sorts)


# -- alpha_D --------------------------------------------------------------


def _single_crossing():
    (d,) = enumerate_crossing_diagrams(1, 1)
    return d


def test_alpha_single_crossing_on_k4():
    d = _single_crossing()
    vs, es = [f"p{i}" for i in range(4)], ["s0", "s1"]
    f = C.build_alpha(d, vs, es)
    assert eval_naive(G.complete_graph(4), closed(f))


def test_alpha_single_crossing_on_star():
    d = _single_crossing()
    f = C.build_alpha(d, [f"p{i}" for i in range(4)], ["s0", "s1"])
    assert not eval_naive(G.star_graph(3), closed(f))


def test_alpha_empty_diagram():
    assert C.build_alpha(EMPTY_DIAGRAM, [], []) == TRUE


def test_alpha_arity():
    with pytest.raises(FormulaError):
        C.build_alpha(_single_crossing(), ["p0"], ["s0", "s1"])


# -- onepage_k -------------------------------------------------------------


def test_onepage0_examples():
    f = C.build_onepage(0)
    assert eval_naive(G.cycle_graph(5), f)
    assert not eval_naive(G.complete_graph(4), f)


def test_onepage1_examples():
    f = C.build_onepage(1)
    assert eval_naive(G.complete_graph(4), f)
    k23 = G.complete_bipartite(2, 3)
    assert eval_naive(k23, f) == (cr1_exact(k23)[0] <= 1)
    assert not eval_naive(G.complete_graph(5), f)


def test_onepage_beta_uses_exact_diagram_counts():
    assert [d.k for d in C.onepage_diagrams(2)].count(1) == 1
    assert len(C.onepage_diagrams(2)) == 1 + len(enumerate_crossing_diagrams(2, 1))


def test_onepage_limit():
    with pytest.raises(FormulaError):
        C.build_onepage(3)
    with pytest.raises(FormulaError):
        C.build_onepage(-1)


@pytest.mark.slow
def test_onepage2_small_graphs():
    f = C.build_onepage(2)
    for g in all_graphs(5):
        assert eval_naive(g, f) == (cr1_exact(g)[0] <= 2)


# -- twopage and zeta ---------------------------------------------------------


def test_twopage_examples():
    f = C.build_twopage()
    assert eval_naive(G.complete_graph(4), f)
    assert not eval_naive(G.complete_graph(5), f)
    assert eval_naive(G.path_graph(2), f)


def test_twopage_small_graphs():
    f = C.build_twopage()
    for g in all_graphs(4):
        assert eval_naive(g, f) == (cr2_exact(g)[0] == 0)


def test_zeta_examples():
    assert eval_naive(G.complete_graph(5), C.build_zeta(1))
    assert eval_naive(G.complete_graph(4), C.build_zeta(0))
    assert eval_naive(G.cycle_graph(6), C.build_zeta(1))


def test_zeta0_is_twopage():
    assert C.build_zeta(0) == C.build_twopage()


def test_zeta_limit():
    with pytest.raises(FormulaError):
        C.build_zeta(2)


def test_gamma_arguments_match_diagram():
    ns = Namer()
    for d in enumerate_crossing_diagrams(1, 2):
        f = C.build_gamma(d, ns)
        assert free_variables(f) == frozenset()

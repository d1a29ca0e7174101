"""Formula building blocks: partitions, colourings, connectivity, minors,
planarity, cycles and Hamiltonicity, plus relativization.

Builders emit guard-shaped formulas: set quantifiers open with a subset
guard ``(forall-v x (-> (in x X) ...))`` where the ``...`` does not mention
``X``, so the naive evaluator can restrict its enumeration.  The semantics
is unchanged by this shape.
"""
from __future__ import annotations

import itertools
from typing import Callable, Sequence

from ..graph import (
    K4,
    K5,
    K23,
    K33,
    Graph,
    complete_graph,
    is_minor,
    is_outerplanar,
    is_planar,
)
from .syntax import (
    FALSE,
    TRUE,
    And,
    Eq,
    Formula,
    FormulaError,
    Implies,
    In,
    Inc,
    Interpreted,
    Not,
    Or,
    Quant,
    bound_variables,
    conj,
    disj,
    exists,
    forall,
    free_variables,
    neq,
)

MINOR_MAX_H = 6


class Namer:
    """Fresh variable names, deterministic per instance."""

    def __init__(self, avoid: Sequence[str] = ()):
        self.avoid = set(avoid)
        self.count = 0

    def __call__(self, stem: str) -> str:
        while True:
            self.count += 1
            name = f"{stem}{self.count}"
            if name not in self.avoid:
                self.avoid.add(name)
                return name


def _ns(ns: Namer | None) -> Namer:
    return ns if ns is not None else Namer()


# Kernel registry: formula -> (graph, env) -> bool.  Only consulted by the
# naive evaluator when its budget allows kernels.
KERNELS: dict[Formula, Callable] = {}


def register_kernel(f: Formula, fn: Callable) -> Formula:
    KERNELS[f] = fn
    return f


# ---------------------------------------------------------------------------
# membership helpers


def mem(x: str, s) -> Formula:
    """``x`` in a set variable, or in an explicit list of element variables."""
    if isinstance(s, str):
        return In(x, s)
    return disj(*(Eq(x, y) for y in s)) if s else FALSE


def subset_guard(x_sort: str, big: str, pred: Callable[[str], Formula], ns: Namer) -> Formula:
    """``big`` contains only elements satisfying ``pred``."""
    x = ns("x" if x_sort == "v" else "f")
    return forall(x_sort, x, Implies(In(x, big), pred(x)))


def superset_guard(x_sort: str, big: str, pred: Callable[[str], Formula], ns: Namer) -> Formula:
    """``big`` contains every element satisfying ``pred``."""
    x = ns("x" if x_sort == "v" else "f")
    return forall(x_sort, x, Implies(pred(x), In(x, big)))


def exists_block(variables: Sequence[tuple[str, str]], conjuncts: Sequence[Formula]) -> Formula:
    """``exists vars. AND conjuncts`` with each conjunct placed under its last needed binder.

    Conjunct order is preserved within a level, so callers list guards first.
    """
    names = [v for _, v in variables]
    levels: list[list[Formula]] = [[] for _ in range(len(names) + 1)]
    for c in conjuncts:
        fv = free_variables(c)
        lvl = max((names.index(v) + 1 for v in fv if v in names), default=0)
        levels[lvl].append(c)
    body: Formula | None = None
    for i in range(len(names), 0, -1):
        parts = list(levels[i])
        if body is not None:
            parts.append(body)
        sort, var = variables[i - 1]
        body = exists(sort, var, conj(*parts) if parts else TRUE)
    parts = list(levels[0])
    if body is not None:
        parts.append(body)
    return conj(*parts) if parts else TRUE


def exactly_two(sort: str, pred: Callable[[str], Formula], ns: Namer | None = None) -> Formula:
    """Expansion of the counting quantifier: exactly two elements satisfy ``pred``."""
    ns = _ns(ns)
    stem = "v" if sort == "v" else "e"
    a, b, c = ns(stem), ns(stem), ns(stem)
    return exists(sort, a, conj(pred(a), exists(sort, b, conj(
        neq(b, a), pred(b),
        Not(exists(sort, c, conj(neq(c, a), neq(c, b), pred(c))))))))


def adjacent_sets(ui: str, uj: str, ns: Namer) -> Formula:
    x, e, y = ns("x"), ns("e"), ns("y")
    return exists("v", x, conj(In(x, ui), exists("e", e, conj(Inc(e, x), exists("v", y, conj(Inc(e, y), In(y, uj)))))))


def _nonempty(u: str, sort: str, ns: Namer) -> Formula:
    x = ns("x" if sort == "v" else "f")
    return exists(sort, x, In(x, u))


# ---------------------------------------------------------------------------
# partitions and colourings


def vertex_partition(sets: Sequence[str], ns: Namer | None = None) -> Formula:
    ns = _ns(ns)
    v = ns("v")
    parts = [disj(*(In(v, s) for s in sets)) if sets else FALSE]
    for a, b in itertools.combinations(sets, 2):
        parts.append(Not(And(In(v, a), In(v, b))))
    return forall("v", v, conj(*parts))


def edge_partition(sets: Sequence[str], ns: Namer | None = None) -> Formula:
    ns = _ns(ns)
    e = ns("e")
    parts = [disj(*(In(e, s) for s in sets)) if sets else FALSE]
    for a, b in itertools.combinations(sets, 2):
        parts.append(Not(And(In(e, a), In(e, b))))
    return forall("e", e, conj(*parts))


def partition_chain(sort: str, sets: Sequence[str], ns: Namer, within: str | None = None) -> list[Formula]:
    """Guards making ``sets`` a partition of the universe (or of set ``within``)."""
    out = []
    for i, s in enumerate(sets):
        earlier = sets[:i]

        def outside(x, earlier=earlier):
            parts = [Not(In(x, t)) for t in earlier]
            if within is not None:
                parts.insert(0, In(x, within))
            return conj(*parts) if parts else TRUE

        if earlier or within is not None:
            out.append(subset_guard(sort, s, outside, ns))
        if i == len(sets) - 1:
            out.append(superset_guard(sort, s, outside, ns))
    return out


def color_k(k: int, ns: Namer | None = None) -> Formula:
    """Every edge has an endpoint outside each colour class."""
    if k < 1:
        raise FormulaError("color_k needs k >= 1")
    ns = _ns(ns)
    sets = [ns("U") for _ in range(k)]
    conjuncts: list[Formula] = []
    guards = partition_chain("v", sets, ns)
    gi = 0
    for i, s in enumerate(sets):
        # guards for class i come first on its level
        while gi < len(guards) and s in free_variables(guards[gi]) and all(
            t in sets[: i + 1] for t in free_variables(guards[gi]) if t in sets
        ):
            conjuncts.append(guards[gi])
            gi += 1
        e, v = ns("e"), ns("v")
        conjuncts.append(forall("e", e, exists("v", v, conj(Inc(e, v), Not(In(v, s))))))
    conjuncts.extend(guards[gi:])
    return exists_block([("V", s) for s in sets], conjuncts)


# ---------------------------------------------------------------------------
# connectivity


def disconnected(ns: Namer | None = None) -> Formula:
    """A nontrivial cut of the vertices with an empty cut-set."""
    ns = _ns(ns)
    U, u, v, e, x, y = ns("U"), ns("u"), ns("v"), ns("e"), ns("x"), ns("y")
    return exists("V", U, conj(
        exists("v", u, In(u, U)),
        exists("v", v, Not(In(v, U))),
        Not(exists("v", x, conj(In(x, U), exists("e", e, conj(Inc(e, x), exists("v", y, conj(Inc(e, y), Not(In(y, U)))))))))))


def connected(ns: Namer | None = None) -> Formula:
    return Not(disconnected(ns))


def connected_vertices(u_set: str, ns: Namer | None = None) -> Formula:
    """The subgraph induced by ``u_set`` is connected (vacuous when empty)."""
    ns = _ns(ns)
    Z, x, y, a, e, b = ns("Z"), ns("x"), ns("y"), ns("a"), ns("e"), ns("b")
    return Not(exists("V", Z, conj(
        subset_guard("v", Z, lambda t: In(t, u_set), ns),
        exists("v", x, In(x, Z)),
        exists("v", y, conj(In(y, u_set), Not(In(y, Z)))),
        Not(exists("v", a, conj(In(a, Z), exists("e", e, conj(Inc(e, a), exists("v", b, conj(
            Inc(e, b), In(b, u_set), Not(In(b, Z))))))))))))


def on_edges(x: str, f_set: str, ns: Namer) -> Formula:
    """Vertex ``x`` is incident to an edge of ``f_set``."""
    e = ns("e")
    return exists("e", e, conj(In(e, f_set), Inc(e, x)))


def connected_edges(f_set: str, ns: Namer | None = None) -> Formula:
    """The subgraph formed by the edges of ``f_set`` is connected."""
    ns = _ns(ns)
    Z, x, y, a, e, b = ns("Z"), ns("x"), ns("y"), ns("a"), ns("e"), ns("b")
    return Not(exists("V", Z, conj(
        subset_guard("v", Z, lambda t: on_edges(t, f_set, ns), ns),
        exists("v", x, In(x, Z)),
        exists("v", y, conj(Not(In(y, Z)), on_edges(y, f_set, ns))),
        Not(exists("v", a, conj(In(a, Z), exists("e", e, conj(In(e, f_set), Inc(e, a), exists("v", b, conj(
            Inc(e, b), Not(In(b, Z))))))))))))


# ---------------------------------------------------------------------------
# minors and planarity


def minor_h(h: Graph, ns: Namer | None = None) -> Formula:
    """Disjoint connected branch sets, one per vertex of ``h``, adjacent along h's edges."""
    if h.n > MINOR_MAX_H:
        raise FormulaError(f"minor_h supports H with at most {MINOR_MAX_H} vertices")
    ns = _ns(ns)
    sets = [ns("U") for _ in range(h.n)]
    conjuncts: list[Formula] = []
    for i, s in enumerate(sets):
        earlier = sets[:i]
        if earlier:
            conjuncts.append(subset_guard("v", s, lambda x, earlier=earlier: conj(*(Not(In(x, t)) for t in earlier)), ns))
        conjuncts.append(_nonempty(s, "v", ns))
        for j in range(i):
            if h.has_edge(i, j):
                conjuncts.append(adjacent_sets(sets[j], s, ns))
        conjuncts.append(connected_vertices(s, ns))
    f = exists_block([("V", s) for s in sets], conjuncts)
    return register_kernel(f, lambda g, env, h=h: is_minor(g, h))


def planar_f(ns: Namer | None = None) -> Formula:
    """Neither K5 nor K3,3 as a minor."""
    ns = _ns(ns)
    f = And(Not(minor_h(K5, ns)), Not(minor_h(K33, ns)))
    return register_kernel(f, lambda g, env: is_planar(g))


def outerplanar_f(ns: Namer | None = None) -> Formula:
    """Neither K4 nor K2,3 as a minor."""
    ns = _ns(ns)
    f = And(Not(minor_h(K4, ns)), Not(minor_h(K23, ns)))
    return register_kernel(f, lambda g, env: is_outerplanar(g))


# ---------------------------------------------------------------------------
# cycles


def cycle_set(f_set: str, ns: Namer | None = None) -> Formula:
    """Every vertex touched by ``f_set`` meets exactly two of its edges."""
    ns = _ns(ns)
    v = ns("v")
    return forall("v", v, Implies(on_edges(v, f_set, ns),
                                  exactly_two("e", lambda e: conj(In(e, f_set), Inc(e, v)), ns)))


def cycle(f_set: str, ns: Namer | None = None) -> Formula:
    """``f_set`` is the edge set of one simple cycle."""
    ns = _ns(ns)
    return conj(_nonempty(f_set, "e", ns), cycle_set(f_set, ns), connected_edges(f_set, ns))


def span(f_set: str, ns: Namer | None = None) -> Formula:
    ns = _ns(ns)
    v = ns("v")
    return forall("v", v, on_edges(v, f_set, ns))


def hamiltonian(ns: Namer | None = None) -> Formula:
    ns = _ns(ns)
    F = ns("F")
    return exists("E", F, conj(span(F, ns), _nonempty(F, "e", ns), cycle_set(F, ns), connected_edges(F, ns)))


# ---------------------------------------------------------------------------
# relativization


def _check_fresh(f: Formula, names: Sequence[str]) -> None:
    if free_variables(f):
        raise FormulaError("relativize needs a closed formula")
    clash = bound_variables(f) & set(names)
    if clash:
        raise FormulaError(f"variable capture: {sorted(clash)} bound inside the formula")


def relativize(f: Formula, vs: str, extra: Sequence[str] = (), ns: Namer | None = None) -> Formula:
    """Restrict every quantifier of closed ``f`` to ``vs`` plus ``extra`` and the edges among them."""
    _check_fresh(f, [vs, *extra])
    if any(isinstance(g, Interpreted) for g in _walk(f)):
        raise FormulaError("relativize does not pass through interpreted nodes")
    ns = ns or Namer(avoid=[vs, *extra, *bound_variables(f)])

    def dom(x: str) -> Formula:
        return disj(In(x, vs), *(Eq(x, y) for y in extra))

    def edom(e: str) -> Formula:
        w = ns("w")
        return forall("v", w, Implies(Inc(e, w), dom(w)))

    guard = {"v": dom, "e": edom,
             "V": lambda X: subset_guard("v", X, dom, ns),
             "E": lambda X: subset_guard("e", X, edom, ns)}
    out = _relativize_rec(f, guard)
    if f in KERNELS:
        inner = KERNELS[f]

        def kernel(g, env, inner=inner):
            keep = {x for x in range(g.n) if env[vs] >> x & 1} | {env[y] for y in extra}
            sub, _ = g.induced_subgraph(keep)
            return inner(sub, {})

        register_kernel(out, kernel)
    return out


def relativize_edges(f: Formula, es: str, ns: Namer | None = None) -> Formula:
    """Evaluate closed ``f`` on the spanning subgraph with edge set ``es``."""
    _check_fresh(f, [es])
    ns = ns or Namer(avoid=[es, *bound_variables(f)])
    guard = {"e": lambda e: In(e, es),
             "E": lambda X: subset_guard("e", X, lambda e: In(e, es), ns)}
    out = _relativize_rec(f, guard)
    if f in KERNELS:
        inner = KERNELS[f]

        def kernel(g, env, inner=inner):
            mask = env[es]
            return inner(g.edge_subgraph(i for i in range(g.m) if mask >> i & 1), {})

        register_kernel(out, kernel)
    return out


def _walk(f: Formula):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(g.children())


def _relativize_rec(f: Formula, guard: dict) -> Formula:
    if isinstance(f, Quant):
        body = _relativize_rec(f.body, guard)
        if f.sort not in guard:
            return Quant(f.kind, f.sort, f.var, body)
        gd = guard[f.sort](f.var)
        if f.kind == "exists":
            return Quant("exists", f.sort, f.var, conj(gd, body))
        return Quant("forall", f.sort, f.var, Implies(gd, body))
    if isinstance(f, Not):
        return Not(_relativize_rec(f.body, guard))
    if isinstance(f, And):
        return And(*(_relativize_rec(a, guard) for a in f.args))
    if isinstance(f, Or):
        return Or(*(_relativize_rec(a, guard) for a in f.args))
    if isinstance(f, Implies):
        return Implies(_relativize_rec(f.left, guard), _relativize_rec(f.right, guard))
    if isinstance(f, Interpreted):
        raise FormulaError("relativize does not pass through interpreted nodes")
    return f


# ---------------------------------------------------------------------------
# registry

BASIC_NAMES = (
    "vertex_partition", "edge_partition", "color_k", "disconnected", "connected",
    "connected_vertices", "connected_edges", "minor_h", "planar_f", "outerplanar_f",
    "cycle_set", "cycle", "span", "hamiltonian", "exactly_two",
)


def build_basic(name: str, *params, ns: Namer | None = None) -> Formula:
    """Builder lookup by name.

    Parameterised builders take set-variable names (``vertex_partition("U1", "U2")``),
    ``color_k(k)``, ``minor_h(H)``; ``exactly_two`` takes a sort and a set
    variable and states that exactly two elements lie in it.
    """
    name = name.replace("-", "_")
    if name == "vertex_partition":
        return vertex_partition(list(params) or ["U1", "U2"], ns)
    if name == "edge_partition":
        return edge_partition(list(params) or ["F1", "F2"], ns)
    if name == "color_k":
        return color_k(int(params[0]) if params else 3, ns)
    if name == "disconnected":
        return disconnected(ns)
    if name == "connected":
        return connected(ns)
    if name == "connected_vertices":
        return connected_vertices(params[0] if params else "U", ns)
    if name == "connected_edges":
        return connected_edges(params[0] if params else "F", ns)
    if name == "minor_h":
        h = params[0] if params else K4
        if isinstance(h, int):
            h = complete_graph(h)
        return minor_h(h, ns)
    if name == "planar_f":
        return planar_f(ns)
    if name == "outerplanar_f":
        return outerplanar_f(ns)
    if name in ("cycle_set", "cycle", "span"):
        return {"cycle_set": cycle_set, "cycle": cycle, "span": span}[name](params[0] if params else "F", ns)
    if name == "hamiltonian":
        return hamiltonian(ns)
    if name == "exactly_two":
        sort = params[0] if params else "e"
        s = params[1] if len(params) > 1 else ("F" if sort == "e" else "U")
        return exactly_two(sort, lambda x: In(x, s), ns)
    if name.startswith("color_") and name[6:].isdigit():
        return color_k(int(name[6:]), ns)
    raise FormulaError(f"unknown builder {name!r}")


# Shorthand accepted by the parser; each expands to its builder's output.
MACROS: dict[str, tuple[int, Callable]] = {
    "cycle-set": (1, cycle_set),
    "cycle": (1, cycle),
    "span": (1, span),
    "connected-vertices": (1, connected_vertices),
    "connected-edges": (1, connected_edges),
    "hamiltonian": (0, hamiltonian),
    "connected": (0, connected),
    "disconnected": (0, disconnected),
    "planar": (0, planar_f),
    "outerplanar": (0, outerplanar_f),
    "color-2": (0, lambda ns=None: color_k(2, ns)),
    "color-3": (0, lambda ns=None: color_k(3, ns)),
}

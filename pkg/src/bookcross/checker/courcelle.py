"""Courcelle-style model checking by dynamic programming over a nice tree decomposition.

Every subformula is turned into a deterministic bottom-up machine.  Its state
at a decomposition node summarizes the processed subgraph together with the
part of the assignment that lives there: which bag vertex an element
variable sits on, whether it was already forgotten, and the trace of each set
variable on the bag.  A quantifier's state is the set of (trace, body state)
pairs over all placements of its variable inside the processed part, which
is the subset construction; negation just flips the final verdict because
every state is deterministic.

States are interned to small integers per machine and every transition is
cached, so the work per decomposition node depends on the width and the
formula but not on the size of the graph.
"""
from __future__ import annotations

from typing import Mapping

from ..graph import Graph
from ..mso2.syntax import (
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
    free_variables,
    quantifier_rank,
    sort_check,
)
from ..treewidth import (
    DecompositionError,
    NiceTreeDecomposition,
    TreeDecomposition,
    make_nice,
    treewidth_exact,
    validate_decomposition,
    validate_nice,
    with_edge_introductions,
)
from .naive import BudgetExceeded, EvalBudget, _Counter, eval_naive

UNSUPPORTED = "unsupported"
SET_SORTS = ("V", "E")

# element traces: None = not placed yet, int >= 0 = bag vertex, -1 = placed and forgotten
_GONE = -1


class RankLimitError(FormulaError):
    """The formula's set-quantifier rank is above the configured limit."""


class _Machine:
    """Base class: interning, fixity and cached transitions.

    A state is *fixed* when its verdict can no longer change whatever the
    rest of the graph and assignment look like; all such states collapse to
    one canonical state per verdict, and transitions leave them alone.
    """

    def __init__(self, free: frozenset[str], counter: _Counter):
        self.free = free
        self.counter = counter
        self.ids: dict = {}
        self.keys: list = []
        self.fix: list = []
        self.cache: dict = {}

    def _fixity(self, key):
        return None

    def intern(self, key) -> int:
        sid = self.ids.get(key)
        if sid is not None:
            return sid
        verdict = self._fixity(key)
        if verdict is not None:
            fkey = ("#", verdict)
            sid = self.ids.get(fkey)
            if sid is None:
                sid = self._new(fkey, verdict)
            self.ids[key] = sid
            return sid
        return self._new(key, None)

    def _new(self, key, verdict) -> int:
        self.counter.spend()
        sid = len(self.keys)
        self.ids[key] = sid
        self.keys.append(key)
        self.fix.append(verdict)
        return sid

    def fixity(self, s: int):
        return self.fix[s]

    # public transitions, cached; ``ev`` holds the names that take the new element
    def intro_v(self, s: int, v: int, ev: frozenset[str]) -> int:
        if self.fix[s] is not None:
            return s
        ev = ev & self.free
        k = ("v", s, v, ev)
        out = self.cache.get(k)
        if out is None:
            out = self.cache[k] = self._intro_v(s, v, ev)
        return out

    def intro_e(self, s: int, e: int, ends: tuple[int, int], ev: frozenset[str]) -> int:
        if self.fix[s] is not None:
            return s
        ev = ev & self.free
        k = ("e", s, e, ev)
        out = self.cache.get(k)
        if out is None:
            out = self.cache[k] = self._intro_e(s, e, ends, ev)
        return out

    def forget(self, s: int, v: int) -> int:
        if self.fix[s] is not None:
            return s
        k = ("f", s, v)
        out = self.cache.get(k)
        if out is None:
            out = self.cache[k] = self._forget(s, v)
        return out

    def join(self, a: int, b: int) -> int:
        if self.fix[a] is not None:
            return a
        if self.fix[b] is not None:
            return b
        k = ("j", a, b)
        out = self.cache.get(k)
        if out is None:
            out = self.cache[k] = self._join(a, b)
        return out

    def final(self, s: int) -> bool:
        verdict = self.fix[s]
        if verdict is not None:
            return verdict
        k = ("final", s)
        out = self.cache.get(k)
        if out is None:
            out = self.cache[k] = self._final(s)
        return out


class _Eq(_Machine):
    """x = y: decided the first time either variable is placed."""

    def __init__(self, a: str, b: str, counter):
        super().__init__(frozenset((a, b)), counter)
        self.a, self.b = a, b

    def leaf(self) -> int:
        return self.intern(None)

    def _place(self, s, ev):
        if not ev:
            return s
        return self.intern(self.a in ev and self.b in ev)

    def _intro_v(self, s, v, ev):
        return self._place(s, ev)

    def _intro_e(self, s, e, ends, ev):
        return self._place(s, ev)

    def _forget(self, s, v):
        return s

    def _join(self, a, b):
        return a

    def _fixity(self, key):
        return key

    def _final(self, s):
        return False


class _In(_Machine):
    """x in X: decided when x is placed."""

    def __init__(self, x: str, xs: str, counter):
        super().__init__(frozenset((x, xs)), counter)
        self.x, self.xs = x, xs

    def leaf(self) -> int:
        return self.intern(None)

    def _place(self, s, ev):
        if self.x not in ev:
            return s
        return self.intern(self.xs in ev)

    def _intro_v(self, s, v, ev):
        return self._place(s, ev)

    def _intro_e(self, s, e, ends, ev):
        return self._place(s, ev)

    def _forget(self, s, v):
        return s

    def _join(self, a, b):
        return a

    def _fixity(self, key):
        return key

    def _final(self, s):
        return False


class _Inc(_Machine):
    """Edge e is incident to vertex x.

    Undecided states carry the trace of x; placing e decides the atom since
    both endpoints of a newly introduced edge are in the bag.
    """

    def __init__(self, e: str, x: str, counter):
        super().__init__(frozenset((e, x)), counter)
        self.e, self.x = e, x

    def leaf(self) -> int:
        return self.intern(("t", None))

    def _intro_v(self, s, v, ev):
        if self.x in ev:
            return self.intern(("t", v))
        return s

    def _intro_e(self, s, e, ends, ev):
        key = self.keys[s]
        if self.e in ev:
            return self.intern(("d", key[1] in ends))
        return s

    def _forget(self, s, v):
        key = self.keys[s]
        if key == ("t", v):
            return self.intern(("t", _GONE))
        return s

    def _join(self, a, b):
        return a if self.keys[a][1] is not None else b

    def _fixity(self, key):
        return key[1] if key[0] == "d" else None

    def _final(self, s):
        return False


class _Not(_Machine):
    def __init__(self, body: _Machine, counter):
        super().__init__(body.free, counter)
        self.body = body

    def leaf(self):
        return self.body.leaf()

    def intro_v(self, s, v, ev):
        return self.body.intro_v(s, v, ev)

    def intro_e(self, s, e, ends, ev):
        return self.body.intro_e(s, e, ends, ev)

    def forget(self, s, v):
        return self.body.forget(s, v)

    def join(self, a, b):
        return self.body.join(a, b)

    def fixity(self, s):
        verdict = self.body.fixity(s)
        return None if verdict is None else not verdict

    def final(self, s):
        return not self.body.final(s)


class _Bool(_Machine):
    def __init__(self, parts: list[_Machine], is_and: bool, counter):
        free = frozenset().union(*(p.free for p in parts)) if parts else frozenset()
        super().__init__(free, counter)
        self.parts = parts
        self.is_and = is_and

    def leaf(self):
        return self.intern(tuple(p.leaf() for p in self.parts))

    def _intro_v(self, s, v, ev):
        return self.intern(tuple(p.intro_v(x, v, ev) for p, x in zip(self.parts, self.keys[s])))

    def _intro_e(self, s, e, ends, ev):
        return self.intern(tuple(p.intro_e(x, e, ends, ev) for p, x in zip(self.parts, self.keys[s])))

    def _forget(self, s, v):
        return self.intern(tuple(p.forget(x, v) for p, x in zip(self.parts, self.keys[s])))

    def _join(self, a, b):
        return self.intern(tuple(p.join(x, y) for p, x, y in zip(self.parts, self.keys[a], self.keys[b])))

    def _fixity(self, key):
        absorbing = not self.is_and
        settled = True
        for p, x in zip(self.parts, key):
            verdict = p.fixity(x)
            if verdict is None:
                settled = False
            elif verdict == absorbing:
                return absorbing
        return (not absorbing) if settled else None

    def _final(self, s):
        it = (p.final(x) for p, x in zip(self.parts, self.keys[s]))
        return all(it) if self.is_and else any(it)


class _Exists(_Machine):
    """Existential quantifier; states are frozensets of (trace, body state)."""

    def __init__(self, sort: str, var: str, body: _Machine, counter):
        super().__init__(body.free - {var}, counter)
        self.sort, self.var, self.body = sort, var, body

    def _pack(self, entries) -> int:
        fix = self.body.fixity
        return self.intern(frozenset(x for x in entries if fix(x[1]) is not False))

    def _placed(self, t) -> bool:
        if self.sort == "v":
            return t is not None
        if self.sort == "e":
            return t
        return True

    def _fixity(self, key):
        if not key:
            return False
        fix = self.body.fixity
        for t, b in key:
            if fix(b) and self._placed(t):
                return True
        return None

    def _start(self):
        return {"v": None, "e": False, "V": frozenset(), "E": None}[self.sort]

    def leaf(self):
        return self._pack({(self._start(), self.body.leaf())})

    def _intro_v(self, s, v, ev):
        body, var, sort = self.body, self.var, self.sort
        ev = ev - {var}
        evx = ev | {var}
        out = set()
        for t, b in self.keys[s]:
            out.add((t, body.intro_v(b, v, ev)))
            if sort == "v" and t is None:
                out.add((v, body.intro_v(b, v, evx)))
            elif sort == "V":
                out.add((t | {v}, body.intro_v(b, v, evx)))
        return self._pack(out)

    def _intro_e(self, s, e, ends, ev):
        body, var, sort = self.body, self.var, self.sort
        ev = ev - {var}
        evx = ev | {var}
        out = set()
        for t, b in self.keys[s]:
            out.add((t, body.intro_e(b, e, ends, ev)))
            if sort == "e" and not t:
                out.add((True, body.intro_e(b, e, ends, evx)))
            elif sort == "E":
                out.add((t, body.intro_e(b, e, ends, evx)))
        return self._pack(out)

    def _forget(self, s, v):
        body, sort = self.body, self.sort
        out = set()
        for t, b in self.keys[s]:
            if sort == "v" and t == v:
                t = _GONE
            elif sort == "V" and v in t:
                t = t - {v}
            out.add((t, body.forget(b, v)))
        return self._pack(out)

    def _join(self, a, b):
        body, sort = self.body, self.sort
        right: dict = {}
        for t, y in self.keys[b]:
            right.setdefault(t, []).append(y)
        out = set()
        for t, x in self.keys[a]:
            if sort == "v":
                if t is None:
                    pairs = [(u, u) for u in right if u is None or u == _GONE]
                elif t == _GONE:
                    pairs = [(None, _GONE)]
                else:
                    pairs = [(t, t)]
            elif sort == "e":
                pairs = [(False, t)] if t else [(False, False), (True, True)]
            else:
                pairs = [(t, t)]
            for key, merged in pairs:
                for y in right.get(key, ()):
                    out.add((merged, body.join(x, y)))
        return self._pack(out)

    def _final(self, s):
        body, sort = self.body, self.sort
        for t, b in self.keys[s]:
            if sort == "v" and t != _GONE:
                continue
            if sort == "e" and not t:
                continue
            if body.final(b):
                return True
        return False


def _build(f: Formula, counter: _Counter) -> _Machine:
    if isinstance(f, Quant):
        body = _build(f.body, counter)
        if f.kind == "exists":
            return _Exists(f.sort, f.var, body, counter)
        return _Not(_Exists(f.sort, f.var, _Not(body, counter), counter), counter)
    if isinstance(f, Not):
        return _Not(_build(f.body, counter), counter)
    if isinstance(f, And):
        return _Bool([_build(c, counter) for c in f.args], True, counter)
    if isinstance(f, Or):
        return _Bool([_build(c, counter) for c in f.args], False, counter)
    if isinstance(f, Implies):
        return _Bool([_Not(_build(f.left, counter), counter), _build(f.right, counter)], False, counter)
    if isinstance(f, Eq):
        return _Eq(f.a, f.b, counter)
    if isinstance(f, In):
        return _In(f.x, f.s, counter)
    if isinstance(f, Inc):
        return _Inc(f.e, f.v, counter)
    raise FormulaError(f"unsupported node {type(f).__name__}")


def set_rank(f: Formula) -> int:
    """Nesting depth of set quantifiers, the rank the engine is limited by."""
    return quantifier_rank(f, SET_SORTS)


def nice_decomposition(g: Graph, td: TreeDecomposition | NiceTreeDecomposition | None = None
                       ) -> NiceTreeDecomposition:
    """Nice decomposition with one introduce_edge node per edge; exact width when ``td`` is None."""
    if td is None:
        _, td = treewidth_exact(g)
    plain = td.as_tree_decomposition() if isinstance(td, NiceTreeDecomposition) else td
    if not validate_decomposition(g, plain):
        raise DecompositionError("invalid tree decomposition for this graph")
    nice = td if isinstance(td, NiceTreeDecomposition) else make_nice(td)
    if not any(nd.kind == "introduce_edge" for nd in nice.nodes) or g.m == 0:
        nice = with_edge_introductions(g, nice)
    if not validate_nice(g, nice):
        raise DecompositionError("invalid nice decomposition for this graph")
    return nice


def eval_courcelle(g: Graph, f: Formula, td: TreeDecomposition | NiceTreeDecomposition | None = None,
                   budget: EvalBudget | None = None):
    """True/False by bottom-up propagation over ``td``, or ``UNSUPPORTED``.

    Formulas with Interpreted nodes and decompositions wider than
    ``budget.width_limit`` are unsupported.  Raises RankLimitError when the
    set-quantifier rank exceeds ``budget.q_limit`` and BudgetExceeded when the
    number of distinct states runs past ``budget.max_expansions``.
    """
    budget = budget or EvalBudget()
    if free_variables(f):
        raise FormulaError("eval_courcelle needs a closed formula")
    sort_check(f)
    if any(isinstance(x, Interpreted) for x in _walk(f)):
        return UNSUPPORTED
    if set_rank(f) > budget.q_limit:
        raise RankLimitError(f"set-quantifier rank {set_rank(f)} exceeds the limit {budget.q_limit}")
    nice = nice_decomposition(g, td)
    if nice.width > budget.width_limit:
        return UNSUPPORTED
    counter = _Counter(budget)
    top = _build(f, counter)
    empty = frozenset()
    state: dict[int, int] = {}
    for i in nice.postorder():
        nd = nice.nodes[i]
        if nd.kind == "leaf":
            s = top.leaf()
        elif nd.kind == "introduce":
            s = top.intro_v(state.pop(nd.children[0]), nd.vertex, empty)
        elif nd.kind == "forget":
            s = top.forget(state.pop(nd.children[0]), nd.vertex)
        elif nd.kind == "introduce_edge":
            s = top.intro_e(state.pop(nd.children[0]), nd.edge, g.edges[nd.edge], empty)
        else:
            s = top.join(state.pop(nd.children[0]), state.pop(nd.children[1]))
        state[i] = s
    return top.final(state[nice.root])


def _walk(f: Formula):
    yield f
    for c in f.children():
        yield from _walk(c)


def model_check(g: Graph, f: Formula, budget: EvalBudget | None = None, with_engine: bool = False):
    """Decide a closed formula, using the DP when it applies and the naive evaluator otherwise.

    ``budget.engine`` forces one engine.  With ``with_engine`` returns
    ``(answer, engine_name)``.
    """
    budget = budget or EvalBudget()
    if free_variables(f):
        raise FormulaError("model_check needs a closed formula")
    answer, engine = None, "naive"
    if budget.engine in ("courcelle", "auto"):
        try:
            r = eval_courcelle(g, f, budget=budget)
        except RankLimitError:
            if budget.engine == "courcelle":
                raise
            r = UNSUPPORTED
        except BudgetExceeded:
            if budget.engine == "courcelle":
                raise
            r = UNSUPPORTED
        if r is UNSUPPORTED and budget.engine == "courcelle":
            raise FormulaError("formula or decomposition not supported by the courcelle engine")
        if r is not UNSUPPORTED:
            answer, engine = r, "courcelle"
    if answer is None:
        answer = eval_naive(g, f, budget=budget)
    return (answer, engine) if with_engine else answer


__all__ = ["UNSUPPORTED", "RankLimitError", "eval_courcelle", "model_check", "nice_decomposition", "set_rank"]

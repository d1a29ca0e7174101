"""Reference model checker: direct recursive semantics.

Formulas are compiled once into closures ``fn(ctx, env) -> bool`` where
``ctx`` holds the graph and ``env`` maps variable names to values (ints for
elements, bitmasks for sets).  Two shortcuts keep desk-scale inputs fast
without changing the answer:

* guards: an element quantifier whose body starts with ``(in x S)``,
  ``(inc x v)``, ``(inc e x)`` or ``(= x y)`` only tries the elements the
  guard admits; a set quantifier with a subset or superset guard only
  enumerates sets between the two bounds;
* memoization of subtrees that contain set quantifiers, keyed by the values
  of their free variables.

Formulas registered in the kernel table are answered by their direct
algorithm when ``budget.kernels`` is set.
"""
from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from ..graph import Graph
from ..mso2.library import KERNELS
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
    sort_check,
)
from . import transforms

ELEMENT = {"V": "v", "E": "e"}


class BudgetExceeded(RuntimeError):
    """Raised when an evaluation runs past its budget; distinct from a false answer."""


@dataclass(frozen=True)
class EvalBudget:
    max_expansions: int = 20_000_000
    max_seconds: float | None = None
    engine: str = "auto"
    kernels: bool = True
    q_limit: int = 3
    width_limit: int = 4

    def __post_init__(self):
        if self.max_expansions <= 0:
            raise ValueError("max_expansions must be positive")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise ValueError("max_seconds must be positive")
        if self.engine not in ("naive", "courcelle", "auto"):
            raise ValueError(f"unknown engine {self.engine!r}")
        if self.q_limit < 0 or self.width_limit < 0:
            raise ValueError("limits must be non-negative")


class _Counter:
    __slots__ = ("left", "deadline", "tick")

    def __init__(self, budget: EvalBudget):
        self.left = budget.max_expansions
        self.deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds
        self.tick = 0

    def spend(self, k: int = 1):
        self.left -= k
        if self.left < 0:
            raise BudgetExceeded("expansion budget exhausted")
        self.tick += k
        if self.deadline is not None and self.tick >= 512:
            self.tick = 0
            if time.monotonic() > self.deadline:
                raise BudgetExceeded("time budget exhausted")


class _Ctx:
    __slots__ = ("g", "n", "m", "edges", "incident", "memo", "counter", "kernels")

    def __init__(self, g: Graph, counter: _Counter, kernels: bool):
        self.g = g
        self.n = g.n
        self.m = g.m
        self.edges = g.edges
        self.incident = g.incident
        self.memo: dict = {}
        self.counter = counter
        self.kernels = kernels


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ---------------------------------------------------------------------------
# compilation

Fn = Callable[[_Ctx, dict], bool]
_CACHE: dict = {}
_KEEP: list = []


def _has_heavy(f: Formula) -> bool:
    if isinstance(f, Quant) and f.sort in ("V", "E"):
        return True
    if isinstance(f, Interpreted):
        return True
    return any(_has_heavy(c) for c in f.children())


def compile_formula(f: Formula, scope: Mapping[str, str]) -> Fn:
    """Closure evaluating ``f`` given the sorts of its free variables."""
    fv = tuple(sorted(free_variables(f)))
    key = (id(f), tuple(scope.get(v) for v in fv))
    hit = _CACHE.get(key)
    if hit is not None and hit[0] is f:
        return hit[1]
    fn = _compile(f, dict(scope))
    _CACHE[key] = (f, fn)
    _KEEP.append(f)
    return fn


def _compile(f: Formula, scope: dict) -> Fn:
    kernel = KERNELS.get(f)
    base = _compile_node(f, scope)
    heavy = isinstance(f, (Quant, Interpreted)) and _has_heavy(f)
    if heavy:
        fv = tuple(sorted(free_variables(f)))
        nid = id(f)

        def memo_fn(ctx, env, base=base, fv=fv, nid=nid):
            k = (nid, tuple([env[v] for v in fv]))
            r = ctx.memo.get(k)
            if r is None:
                r = base(ctx, env)
                ctx.memo[k] = r
            return r

        body = memo_fn
    else:
        body = base
    if kernel is None:
        return body

    def with_kernel(ctx, env, kernel=kernel, body=body):
        if ctx.kernels:
            return bool(kernel(ctx.g, env))
        return body(ctx, env)

    return with_kernel


def _compile_node(f: Formula, scope: dict) -> Fn:
    if isinstance(f, Eq):
        a, b = f.a, f.b
        return lambda ctx, env: env[a] == env[b]
    if isinstance(f, In):
        x, s = f.x, f.s
        return lambda ctx, env: (env[s] >> env[x]) & 1 == 1
    if isinstance(f, Inc):
        e, v = f.e, f.v
        return lambda ctx, env: env[v] in ctx.edges[env[e]]
    if isinstance(f, Not):
        inner = _compile(f.body, scope)
        return lambda ctx, env: not inner(ctx, env)
    if isinstance(f, And):
        parts = [_compile(a, scope) for a in f.args]
        if len(parts) == 2:
            p0, p1 = parts
            return lambda ctx, env: p0(ctx, env) and p1(ctx, env)

        def and_fn(ctx, env):
            for p in parts:
                if not p(ctx, env):
                    return False
            return True

        return and_fn
    if isinstance(f, Or):
        parts = [_compile(a, scope) for a in f.args]

        def or_fn(ctx, env):
            for p in parts:
                if p(ctx, env):
                    return True
            return False

        return or_fn
    if isinstance(f, Implies):
        left, right = _compile(f.left, scope), _compile(f.right, scope)
        return lambda ctx, env: (not left(ctx, env)) or right(ctx, env)
    if isinstance(f, Quant):
        if f.sort in ("v", "e"):
            return _compile_elem_quant(f, scope)
        return _compile_set_quant(f, scope)
    if isinstance(f, Interpreted):
        return _compile_interpreted(f, scope)
    raise FormulaError(f"cannot evaluate node {type(f).__name__}")


def _guard_parts(f: Quant) -> list[Formula]:
    """Conjuncts that restrict the quantified variable."""
    body = f.body
    if f.kind == "exists":
        return list(body.args) if isinstance(body, And) else [body]
    if isinstance(body, Implies):
        left = body.left
        return list(left.args) if isinstance(left, And) else [left]
    return []


def _elem_guard(atom: Formula, x: str, sort: str):
    """Candidate generator for ``x`` if ``atom`` is an element guard, else None."""
    if isinstance(atom, In) and atom.x == x and atom.s != x:
        s = atom.s
        return lambda ctx, env: _bits(env[s])
    if isinstance(atom, Inc):
        if sort == "e" and atom.e == x and atom.v != x:
            v = atom.v
            return lambda ctx, env: ctx.incident[env[v]]
        if sort == "v" and atom.v == x and atom.e != x:
            e = atom.e
            return lambda ctx, env: ctx.edges[env[e]]
    if isinstance(atom, Eq) and (atom.a == x) != (atom.b == x):
        y = atom.b if atom.a == x else atom.a
        return lambda ctx, env: (env[y],)
    if isinstance(atom, Or) and atom.args:
        subs = [_elem_guard(a, x, sort) for a in atom.args]
        if all(s is not None for s in subs):
            def union(ctx, env, subs=subs):
                out = []
                for s in subs:
                    for c in s(ctx, env):
                        if c not in out:
                            out.append(c)
                return out
            return union
    if isinstance(atom, And):
        for a in atom.args:
            g = _elem_guard(a, x, sort)
            if g is not None:
                return g
    return None


def _compile_elem_quant(f: Quant, scope: dict) -> Fn:
    x, sort = f.var, f.sort
    inner_scope = dict(scope)
    inner_scope[x] = sort
    body = _compile(f.body, inner_scope)
    cand = None
    for part in _guard_parts(f):
        cand = _elem_guard(part, x, sort)
        if cand is not None:
            break
    want = f.kind == "exists"

    def quant(ctx, env):
        pool = cand(ctx, env) if cand is not None else range(ctx.n if sort == "v" else ctx.m)
        old = env.get(x, _MISSING)
        try:
            for val in pool:
                env[x] = val
                if body(ctx, env) == want:
                    return want
            return not want
        finally:
            if old is _MISSING:
                env.pop(x, None)
            else:
                env[x] = old

    return quant


_MISSING = object()


def _set_guards(f: Quant, scope: dict):
    """(subset guards, superset guards) as compiled predicates on the element."""
    X = f.var
    el = ELEMENT[f.sort]
    subs, sups = [], []
    for part in _guard_parts(f):
        if not (isinstance(part, Quant) and part.kind == "forall" and part.sort == el):
            continue
        b = part.body
        if not isinstance(b, Implies):
            continue
        y = part.var
        sc = dict(scope)
        sc[y] = el
        if b.left == In(y, X) and X not in free_variables(b.right):
            subs.append((y, _compile(b.right, sc)))
        elif b.right == In(y, X) and X not in free_variables(b.left):
            sups.append((y, _compile(b.left, sc)))
    return subs, sups


def _compile_set_quant(f: Quant, scope: dict) -> Fn:
    X, sort = f.var, f.sort
    inner_scope = dict(scope)
    inner_scope[X] = sort
    body = _compile(f.body, inner_scope)
    subs, sups = _set_guards(f, scope)
    want = f.kind == "exists"

    def bound(ctx, env, preds, universe):
        for y, pred in preds:
            old = env.get(y, _MISSING)
            m = 0
            for u in range(universe):
                env[y] = u
                if pred(ctx, env):
                    m |= 1 << u
            if old is _MISSING:
                env.pop(y, None)
            else:
                env[y] = old
            yield m

    def quant(ctx, env):
        universe = ctx.n if sort == "V" else ctx.m
        full = (1 << universe) - 1
        allowed, required = full, 0
        for m in bound(ctx, env, subs, universe):
            allowed &= m
        for m in bound(ctx, env, sups, universe):
            required |= m
        if required & ~allowed:
            return not want
        free = allowed & ~required
        counter = ctx.counter
        old = env.get(X, _MISSING)
        try:
            sub = free
            while True:
                counter.spend()
                env[X] = required | sub
                if body(ctx, env) == want:
                    return want
                if sub == 0:
                    return not want
                sub = (sub - 1) & free
        finally:
            if old is _MISSING:
                env.pop(X, None)
            else:
                env[X] = old

    return quant


def _compile_interpreted(f: Interpreted, scope: dict) -> Fn:
    tid, args = f.transform, f.args
    inner = transforms.inner_scope(tid, args, scope, lambda n: scope.get(n))
    body = _compile(f.body, inner)
    outer_fv = tuple(sorted(free_variables(f)))
    sorts = {v: scope[v] for v in outer_fv}

    def interp(ctx, env):
        local = {v: env[v] for v in outer_fv}
        g2, env2, _ = transforms.apply(tid, args, ctx.g, local, sorts)
        ctx2 = _Ctx(g2, ctx.counter, ctx.kernels)
        return body(ctx2, env2)

    return interp


# ---------------------------------------------------------------------------
# entry point


def _encode(g: Graph, sort: str, value) -> int:
    if sort in ("v", "e"):
        v = int(value)
        if not 0 <= v < (g.n if sort == "v" else g.m):
            raise FormulaError(f"{sort}-value {v} out of range")
        return v
    if isinstance(value, int):
        return value
    mask = 0
    for x in value:
        mask |= 1 << int(x)
    return mask


def eval_naive(g: Graph, f: Formula, a: Mapping[str, object] | None = None,
               budget: EvalBudget | None = None, sorts: Mapping[str, str] | None = None) -> bool:
    """Truth of ``f`` in ``g`` under assignment ``a``.

    ``a`` maps names to vertex/edge ids or to iterables of ids (sets);
    ``sorts`` declares their sorts, otherwise they are inferred from use.
    Raises :class:`BudgetExceeded` when the budget runs out.
    """
    a = dict(a or {})
    budget = budget or EvalBudget()
    free = sort_check(f, sorts, infer=True)
    missing = set(free) - set(a)
    if missing:
        raise FormulaError(f"assignment misses free variables {sorted(missing)}")
    env = {k: _encode(g, free[k], a[k]) for k in free}
    fn = compile_formula(f, free)
    ctx = _Ctx(g, _Counter(budget), budget.kernels)
    limit = sys.getrecursionlimit()
    if limit < 20000:
        sys.setrecursionlimit(20000)
    try:
        return bool(fn(ctx, env))
    finally:
        sys.setrecursionlimit(limit)

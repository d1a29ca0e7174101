"""Random closed MSO2 formulas for engine-agreement and duality checks."""
from __future__ import annotations

import random

from .syntax import And, Eq, Formula, In, Inc, Not, Or, Quant

_SORTS = ("v", "e", "V", "E")


def random_formula(rng: random.Random, depth: int = 5, set_rank: int = 2) -> Formula:
    """A closed formula with at most ``set_rank`` nested set quantifiers."""
    counter = iter(range(10 ** 6))

    def fresh(sort):
        return f"{sort}{next(counter)}"

    def atom(env):
        choices = []
        vs = [x for x, s in env if s == "v"]
        es = [x for x, s in env if s == "e"]
        sv = [x for x, s in env if s == "V"]
        se = [x for x, s in env if s == "E"]
        if len(vs) >= 1:
            choices.append(lambda: Eq(rng.choice(vs), rng.choice(vs)))
        if es and vs:
            choices.append(lambda: Inc(rng.choice(es), rng.choice(vs)))
        if vs and sv:
            choices.append(lambda: In(rng.choice(vs), rng.choice(sv)))
        if es and se:
            choices.append(lambda: In(rng.choice(es), rng.choice(se)))
        if len(es) >= 1:
            choices.append(lambda: Eq(rng.choice(es), rng.choice(es)))
        return rng.choice(choices)() if choices else None

    def rec(env, d, sets_left):
        a = atom(env)
        if a is not None and (d == 0 or rng.random() < 0.3):
            return a
        if d == 0:
            sort = rng.choice(("v", "e"))
            x = fresh(sort)
            return Quant(rng.choice(("exists", "forall")), sort, x, Eq(x, x))
        r = rng.random()
        if r < 0.45 or a is None:
            sorts = [s for s in _SORTS if s in ("v", "e") or sets_left > 0]
            sort = rng.choice(sorts)
            x = fresh(sort)
            body = rec(env + [(x, sort)], d - 1, sets_left - (sort in ("V", "E")))
            return Quant(rng.choice(("exists", "forall")), sort, x, body)
        if r < 0.6:
            return Not(rec(env, d - 1, sets_left))
        k = rng.randint(2, 3)
        parts = [rec(env, d - 1, sets_left) for _ in range(k)]
        return And(*parts) if rng.random() < 0.5 else Or(*parts)

    return rec([], depth, set_rank)

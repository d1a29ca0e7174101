"""Graph transforms behind the ``interpreted`` formula node.

Each transform rewrites the graph and carries the current assignment across:

``identify``              args (a, b) vertex variables; merges a and b.
``separate``              args (A, B) edge-set variables; builds separate(G; A, B).
                          The inner formula sees no outer variables.
``planarize@<diagram>``   args: one edge variable per diagram segment, one
                          vertex variable per diagram point, then one fresh
                          vertex variable per crossing, bound inside to the
                          new degree-four vertex.
"""
from __future__ import annotations

from typing import Callable, Mapping, Sequence

from ..bookdraw import CrossingDiagram, DiagramError
from ..graph import Graph, identify_vertices_map
from ..mso2.syntax import FormulaError, SortError

BASE_IDS = ("identify", "separate", "planarize")


class TransformError(FormulaError):
    pass


def split_id(tid: str) -> tuple[str, str]:
    base, _, param = tid.partition("@")
    if base not in BASE_IDS:
        raise TransformError(f"unknown transform {tid!r}")
    if (base == "planarize") != bool(param):
        raise TransformError(f"transform {tid!r} has a malformed parameter")
    return base, param


def _diagram(param: str) -> CrossingDiagram:
    try:
        return CrossingDiagram.from_code(param)
    except DiagramError as exc:
        raise TransformError(str(exc)) from exc


def _planarize_arity(param: str) -> tuple[int, int, int]:
    d = _diagram(param)
    return len(d.segments), d.npoints, d.k


def arg_sorts(tid: str, nargs: int) -> tuple[str, ...]:
    base, param = split_id(tid)
    if base == "identify":
        want = ("v", "v")
    elif base == "separate":
        want = ("E", "E")
    else:
        r, p, k = _planarize_arity(param)
        want = ("e",) * r + ("v",) * (p + k)
    if nargs != len(want):
        raise TransformError(f"{tid} takes {len(want)} arguments, got {nargs}")
    return want


def bound_by(tid: str, args: Sequence[str]) -> frozenset[str]:
    base, param = split_id(tid)
    if base != "planarize":
        return frozenset()
    r, p, _ = _planarize_arity(param)
    return frozenset(args[r + p:])


def inner_scope(tid: str, args: Sequence[str], env: Mapping[str, str], sortof: Callable) -> dict[str, str]:
    """Sorts of the variables visible inside; checks the argument sorts."""
    base, _ = split_id(tid)
    want = arg_sorts(tid, len(args))
    inner_bound = bound_by(tid, args)
    for a, s in zip(args, want):
        if a in inner_bound:
            continue
        got = sortof(a)
        if got is not None and got != s:
            raise SortError(f"{tid} argument {a!r} must have sort {s}, has {got}")
    if base == "separate":
        return {}
    scope = dict(env)
    if base == "planarize":
        r = want.count("e")
        for a in args[:r]:
            scope.pop(a, None)
        for a in inner_bound:
            scope[a] = "v"
    return scope


# ---------------------------------------------------------------------------
# runtime


def _mask_map(mask: int, table: Sequence[int | None]) -> int:
    out = 0
    while mask:
        low = mask & -mask
        i = low.bit_length() - 1
        mask ^= low
        j = table[i]
        if j is not None:
            out |= 1 << j
    return out


def apply(tid: str, args: Sequence[str], g: Graph, env: Mapping[str, object], sorts: Mapping[str, str]):
    """Return ``(g2, env2, sorts2)`` for evaluating the inner formula.

    Sets are bitmasks; element variables hold ints.  Edge variables whose edge
    disappears are dropped from the inner environment.
    """
    base, param = split_id(tid)
    if base == "identify":
        a, b = env[args[0]], env[args[1]]
        if a == b:
            raise TransformError("identify needs two distinct vertices")
        g2, vmap, emap = identify_vertices_map(g, a, b)
        env2: dict[str, object] = {}
        sorts2: dict[str, str] = {}
        for name, val in env.items():
            s = sorts[name]
            if s == "v":
                env2[name] = vmap[val]
            elif s == "e":
                if emap[val] is None:
                    continue
                env2[name] = emap[val]
            elif s == "V":
                env2[name] = _mask_map(val, vmap)
            else:
                env2[name] = _mask_map(val, emap)
            sorts2[name] = s
        return g2, env2, sorts2
    if base == "separate":
        from ..pagechar import separate

        A, B = env[args[0]], env[args[1]]
        if A & B or (A | B) != (1 << g.m) - 1:
            raise TransformError("separate needs a partition of the edges")
        ids_a = [i for i in range(g.m) if A >> i & 1]
        ids_b = [i for i in range(g.m) if B >> i & 1]
        return separate(g, ids_a, ids_b), {}, {}
    from ..pagechar import WitnessError, planarize

    d = _diagram(param)
    r, p = len(d.segments), d.npoints
    edge_map = [env[x] for x in args[:r]]
    point_map = [env[x] for x in args[r:r + p]]
    try:
        pg = planarize(g, d, edge_map, point_map)
    except WitnessError as exc:
        raise TransformError(str(exc)) from exc
    g2 = pg.base
    # old edge id -> new id for untouched edges
    emap: list[int | None] = [None] * g.m
    for new, old in enumerate(pg.origin):
        if old not in pg.paths:
            emap[old] = new
    env2, sorts2 = {}, {}
    for name, val in env.items():
        if name in args[:r]:
            continue
        s = sorts[name]
        if s == "e":
            if emap[val] is None:
                continue
            env2[name] = emap[val]
        elif s == "E":
            env2[name] = _mask_map(val, emap)
        else:
            env2[name] = val
        sorts2[name] = s
    for name, cv in zip(args[r + p:], pg.crossing_vertices):
        env2[name] = cv
        sorts2[name] = "v"
    return g2, env2, sorts2

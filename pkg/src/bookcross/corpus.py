"""Graph corpora: every graph up to seven vertices, seeded random graphs, named suites."""
from __future__ import annotations

import itertools
import random
from functools import lru_cache
from importlib import resources

from .graph import NAMED_GRAPHS, Graph, complete_graph, cycle_graph, parse_graph6


@lru_cache(maxsize=None)
def _atlas() -> tuple[Graph, ...]:
    text = resources.files("bookcross").joinpath("data/atlas7.g6").read_text()
    return tuple(parse_graph6(line) for line in text.split())


def all_graphs(max_n: int, min_n: int = 1, connected: bool | None = None) -> list[Graph]:
    """Every graph on ``min_n..max_n`` vertices up to isomorphism (``max_n`` at most 7).

    The empty graph on zero vertices is not part of the corpus.
    """
    if max_n > 7:
        raise ValueError("the bundled corpus stops at 7 vertices")
    out = [g for g in _atlas() if min_n <= g.n <= max_n]
    if connected is not None:
        out = [g for g in out if g.is_connected() == connected]
    return out


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p))


def random_graphs(count: int, max_n: int, seed: int = 0, min_n: int = 1) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(min_n, max_n)
        out.append(random_graph(n, rng.uniform(0.2, 0.8), rng))
    return out


def random_partial_ktree(n: int, k: int, rng: random.Random, keep: float = 0.7) -> Graph:
    """Random subgraph of a k-tree on ``n`` vertices; treewidth at most ``k``.

    Starts from a clique on ``k + 1`` vertices; every later vertex is joined
    to an existing ``k``-clique.
    """
    first = min(n, k + 1)
    edges = {(u, v) for u in range(first) for v in range(u + 1, first)}
    cliques = [c for c in itertools.combinations(range(first), k)] or [()]
    for v in range(first, n):
        base = rng.choice(cliques)
        for u in base:
            edges.add((u, v))
        for i in range(len(base)):
            cliques.append(tuple(sorted(base[:i] + base[i + 1:] + (v,))))
    chosen = sorted(e for e in edges if rng.random() < keep)
    return Graph(n, tuple(chosen))


def named(name: str) -> Graph:
    if name in NAMED_GRAPHS:
        return NAMED_GRAPHS[name]()
    if name.startswith("C") and name[1:].isdigit():
        return cycle_graph(int(name[1:]))
    if name.startswith("K") and name[1:].isdigit():
        return complete_graph(int(name[1:]))
    raise KeyError(name)


LEMMA8_SUITE = ("K4", "K5", "K2,3", "K3,3", "Q3", "prism", "W5")


def zeta_suite(size: int = 30, seed: int = 9) -> list[tuple[str, Graph]]:
    """K5, K6, K3,3 and K4 plus seeded random graphs on at most five vertices."""
    out = [(name, named(name)) for name in ("K5", "K6", "K3,3", "K4")]
    for i, g in enumerate(random_graphs(size - len(out), 5, seed=seed, min_n=2)):
        out.append((f"random{i}", g))
    return out

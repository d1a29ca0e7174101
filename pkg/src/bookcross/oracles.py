"""Brute-force reference implementations used to cross-check the solvers.

Nothing here shares code with the branch-and-bound solvers or the diagram
enumerator; the point is to be obviously correct, not fast.
"""
from __future__ import annotations

import itertools

import numpy as np

from .graph import Graph, SizeLimitError


def _cyclic_orders(n: int):
    # vertex 0 first; rotations of a cyclic order give the same crossings
    if n == 0:
        yield ()
        return
    for rest in itertools.permutations(range(1, n)):
        yield (0,) + rest


def _chords_cross(pos, e, f) -> bool:
    a, b = sorted((pos[e[0]], pos[e[1]]))
    c, d = sorted((pos[f[0]], pos[f[1]]))
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


def conflict_matrix(g: Graph, order) -> np.ndarray:
    """Boolean m x m matrix of interleaving edge pairs for a spine order."""
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    m = g.m
    out = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(i + 1, m):
            if _chords_cross(pos, g.edges[i], g.edges[j]):
                out[i, j] = out[j, i] = True
    return out


def cr1_bruteforce(g: Graph, max_n: int = 8) -> int:
    """Minimum 1-page crossings over every cyclic order."""
    if g.n > max_n:
        raise SizeLimitError(f"cr1_bruteforce limited to n <= {max_n}")
    if g.m < 2:
        return 0
    return min(int(conflict_matrix(g, o).sum()) // 2 for o in _cyclic_orders(g.n))


def cr2_bruteforce(g: Graph, max_n: int = 7, max_m: int = 16) -> int:
    """Minimum 2-page crossings over every cyclic order and every page assignment.

    For each order the crossing counts of all 2^m page vectors are computed
    at once: same-page pairs are the conflict pairs with equal page bits.
    """
    if g.n > max_n or g.m > max_m:
        raise SizeLimitError(f"cr2_bruteforce limited to n <= {max_n}, m <= {max_m}")
    m = g.m
    if m < 2:
        return 0
    bits = ((np.arange(1 << m)[:, None] >> np.arange(m)[None, :]) & 1).astype(np.int8)
    best = None
    for o in _cyclic_orders(g.n):
        cm = conflict_matrix(g, o)
        ii, jj = np.nonzero(np.triu(cm))
        if len(ii) == 0:
            return 0
        same = (bits[:, ii] == bits[:, jj]).sum(axis=1)
        low = int(same.min())
        if best is None or low < best:
            best = low
            if best == 0:
                return 0
    return best


def _interleave(a, b, c, d) -> bool:
    a, b = min(a, b), max(a, b)
    return len({a, b, c, d}) == 4 and ((a < c < b) != (a < d < b))


def _canonical_word(npoints: int, segs, cols) -> tuple:
    """Least rotation, written as the sorted list of (low, high, colour) triples."""
    best = None
    for r in range(npoints):
        word = tuple(sorted((min((a - r) % npoints, (b - r) % npoints), max((a - r) % npoints, (b - r) % npoints), c)
                            for (a, b), c in zip(segs, cols)))
        if best is None or word < best:
            best = word
    return best


def diagrams_bruteforce(k: int, pages: int = 1) -> set[tuple]:
    """Canonical words of every crossing diagram with exactly ``k`` crossings.

    A diagram is a set of chords on ``npoints`` circle points where every
    point is an endpoint, every chord is crossed by a same-colour chord and
    the number of crossing pairs is ``k``.  Chord sets of size up to ``2k``
    on up to ``4k`` points are tried exhaustively.
    """
    out: set[tuple] = set()
    if k == 0:
        out.add((pages, 0, ()))
        return out
    for npoints in range(4, 4 * k + 1):
        chords = list(itertools.combinations(range(npoints), 2))
        for size in range(2, 2 * k + 1):
            for segs in itertools.combinations(chords, size):
                if len({p for s in segs for p in s}) != npoints:
                    continue
                for cols in itertools.product(range(pages), repeat=size):
                    pairs = [(i, j) for i, j in itertools.combinations(range(size), 2)
                             if cols[i] == cols[j] and _interleave(*segs[i], *segs[j])]
                    if len(pairs) != k:
                        continue
                    if {x for p in pairs for x in p} != set(range(size)):
                        continue
                    out.add((pages, npoints, _canonical_word(npoints, segs, cols)))
    return out


def is_hamiltonian_bruteforce(g: Graph) -> bool:
    """Some cyclic order of all vertices is a cycle of ``g`` (needs n >= 3)."""
    if g.n < 3:
        return False
    adj = g.adj
    for o in _cyclic_orders(g.n):
        if all(o[(i + 1) % g.n] in adj[o[i]] for i in range(g.n)):
            return True
    return False


def is_colorable_bruteforce(g: Graph, k: int) -> bool:
    """Some map V -> {0..k-1} gives distinct colours to the ends of every edge."""
    for cols in itertools.product(range(k), repeat=g.n):
        if all(cols[u] != cols[v] for u, v in g.edges):
            return True
    return False

"""Pure-Python implementations of the hot search kernels.

The compiled module ``_ckernels`` mirrors these signatures exactly; see
:mod:`bookcross.kernels` for the selection logic.  Graphs arrive as lists of
adjacency bitmasks.
"""
from __future__ import annotations


def _connected(mask: int, adj: list[int]) -> bool:
    if mask == 0:
        return False
    seen = mask & -mask
    frontier = seen
    while frontier:
        grow = 0
        f = frontier
        while f:
            low = f & -f
            grow |= adj[low.bit_length() - 1]
            f ^= low
        frontier = grow & mask & ~seen
        seen |= frontier
    return seen == mask


def _match_into(q: list[int], h_adj: list[int]) -> list[int] | None:
    """Injective map of h-vertices onto quotient vertices preserving h-edges."""
    k = len(h_adj)
    order = sorted(range(k), key=lambda i: -bin(h_adj[i]).count("1"))
    img = [-1] * k
    used = 0

    def rec(t: int) -> bool:
        nonlocal used
        if t == k:
            return True
        i = order[t]
        for p in range(len(q)):
            if used >> p & 1:
                continue
            ok = True
            nbrs = h_adj[i]
            while nbrs:
                low = nbrs & -nbrs
                j = low.bit_length() - 1
                nbrs ^= low
                if img[j] >= 0 and not (q[p] >> img[j] & 1):
                    ok = False
                    break
            if ok:
                img[i] = p
                used |= 1 << p
                if rec(t + 1):
                    return True
                used &= ~(1 << p)
                img[i] = -1
        return False

    return img if rec(0) else None


def connected_partition_minor(adj: list[int], h_adj: list[int]) -> bool:
    """Does connected ``adj`` split into ``len(h_adj)`` connected parts whose quotient contains h?"""
    n, k = len(adj), len(h_adj)
    if k > n:
        return False
    h_edges = sum(bin(x).count("1") for x in h_adj) // 2
    labels = [0] * n
    parts = [0] * k

    def check() -> bool:
        for p in range(k):
            if not _connected(parts[p], adj):
                return False
        q = [0] * k
        qe = 0
        for p in range(k):
            reach = 0
            mask = parts[p]
            while mask:
                low = mask & -mask
                reach |= adj[low.bit_length() - 1]
                mask ^= low
            for r in range(k):
                if r != p and reach & parts[r]:
                    q[p] |= 1 << r
                    qe += 1
        if qe // 2 < h_edges:
            return False
        return _match_into(q, h_adj) is not None

    def rec(i: int, used: int) -> bool:
        if n - i < k - used:
            return False
        if i == n:
            return check()
        bit = 1 << i
        for p in range(used):
            parts[p] |= bit
            labels[i] = p
            if rec(i + 1, used):
                return True
            parts[p] &= ~bit
        if used < k:
            parts[used] |= bit
            labels[i] = used
            if rec(i + 1, used + 1):
                return True
            parts[used] &= ~bit
        return False

    return rec(0, 0)


def minor_labels(adj: list[int], h_adj: list[int]) -> list[int] | None:
    """General branch-set search allowing deleted vertices (label -1)."""
    n, k = len(adj), len(h_adj)
    labels = [-1] * n
    sets = [0] * k

    def check() -> bool:
        for i in range(k):
            if not _connected(sets[i], adj):
                return False
        for i in range(k):
            reach = 0
            mask = sets[i]
            while mask:
                low = mask & -mask
                reach |= adj[low.bit_length() - 1]
                mask ^= low
            nbrs = h_adj[i]
            while nbrs:
                low = nbrs & -nbrs
                j = low.bit_length() - 1
                nbrs ^= low
                if not reach & sets[j]:
                    return False
        return True

    def rec(v: int) -> bool:
        if v == n:
            return check()
        for lab in range(-1, k):
            labels[v] = lab
            if lab >= 0:
                sets[lab] |= 1 << v
            if rec(v + 1):
                return True
            if lab >= 0:
                sets[lab] &= ~(1 << v)
        labels[v] = -1
        return False

    return list(labels) if rec(0) else None


def cr1_search(n: int, edges: list[tuple[int, int]]) -> tuple[int, list[int]]:
    """Minimum cyclic-order crossings for a connected graph; vertex 0 fixed first.

    Branch and bound over placements; the best order found first in
    lexicographic DFS order is kept, with reflections pruned at the leaves.
    """
    if n <= 3:
        return 0, list(range(n))
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    pos = [-1] * n
    order = [0] * n
    chords: list[tuple[int, int]] = []
    best = [len(edges) * len(edges) + 1]
    best_order = [list(range(n))]

    def rec(p: int, cost: int):
        if p == n:
            if order[1] < order[n - 1] and cost < best[0]:
                best[0] = cost
                best_order[0] = list(order)
            return
        for v in range(1, n):
            if pos[v] >= 0:
                continue
            add = 0
            new = []
            for u in nbrs[v]:
                pu = pos[u]
                if pu < 0:
                    continue
                for c, d in chords:
                    if c < pu < d:
                        add += 1
                new.append((pu, p))
            if cost + add >= best[0]:
                continue
            pos[v] = p
            order[p] = v
            chords.extend(new)
            rec(p + 1, cost + add)
            del chords[len(chords) - len(new):]
            pos[v] = -1
            if best[0] == 0:
                return

    pos[0] = 0
    order[0] = 0
    rec(1, 0)
    return best[0], best_order[0]


def min_mono(k: int, pairs: list[tuple[int, int]], cutoff: int) -> tuple[int, list[int]]:
    """Two-colour ``k`` nodes minimising monochromatic ``pairs``; search stops at ``cutoff``.

    Returns ``(cost, colours)``; when no colouring beats ``cutoff`` the cost
    returned is ``cutoff`` and the colours are meaningless.
    """
    nb: list[list[int]] = [[] for _ in range(k)]
    for a, b in pairs:
        nb[a].append(b)
        nb[b].append(a)
    order = sorted(range(k), key=lambda x: -len(nb[x]))
    rank = [0] * k
    for i, x in enumerate(order):
        rank[x] = i
    earlier = [[y for y in nb[x] if rank[y] < rank[x]] for x in order]
    col = [-1] * k
    best = [cutoff]
    best_col = [[0] * k]

    def rec(i: int, cost: int):
        if i == k:
            best[0] = cost
            best_col[0] = list(col)
            return
        x = order[i]
        choices = (0,) if i == 0 else (0, 1)
        for c in choices:
            add = 0
            for y in earlier[i]:
                if col[y] == c:
                    add += 1
            if cost + add < best[0]:
                col[x] = c
                rec(i + 1, cost + add)
                col[x] = -1
                if best[0] == 0:
                    return

    rec(0, 0)
    return best[0], best_col[0]


def conflict_pairs(pos: list[int], edges: list[tuple[int, int]]) -> list[tuple[int, int]]:
    iv = []
    for u, v in edges:
        a, b = pos[u], pos[v]
        iv.append((a, b) if a < b else (b, a))
    out = []
    m = len(iv)
    for i in range(m):
        a, b = iv[i]
        for j in range(i + 1, m):
            c, d = iv[j]
            if a < c < b < d or c < a < d < b:
                out.append((i, j))
    return out


def cr2_search(n: int, edges: list[tuple[int, int]]) -> tuple[int, list[int], list[int]]:
    """Minimum 2-page crossings: every cyclic order, exact page split per order."""
    m = len(edges)
    if n <= 3:
        return 0, list(range(n)), [0] * m
    best = m * m + 1
    best_order: list[int] = list(range(n))
    best_pages: list[int] = [0] * m
    order = [0] * n
    used = [False] * n
    used[0] = True

    def leaf():
        nonlocal best, best_order, best_pages
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        pairs = conflict_pairs(pos, edges)
        cost, cols = min_mono(m, pairs, best)
        if cost < best:
            best, best_order, best_pages = cost, list(order), cols

    def rec(p: int):
        if best == 0:
            return
        if p == n:
            if order[1] < order[n - 1]:
                leaf()
            return
        for v in range(1, n):
            if not used[v]:
                used[v] = True
                order[p] = v
                rec(p + 1)
                used[v] = False

    rec(1)
    return best, best_order, best_pages

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the search kernels in ``_pykernels``.

Vertex sets are ``unsigned long long`` bitmasks, so graphs are limited to 64
vertices and the crossing solvers to 64 edges.
"""
from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

DEF MAXN = 64
DEF MAXK = 16
DEF MAXM = 128


cdef inline int popcount(u64 x) nogil:
    return __builtin_popcountll(x)


cdef inline int lowbit_index(u64 x) nogil:
    return __builtin_ctzll(x)


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef bint connected_mask(u64 mask, u64* adj) nogil:
    cdef u64 seen, frontier, grow, f
    if mask == 0:
        return 0
    seen = mask & (~mask + 1)
    frontier = seen
    while frontier:
        grow = 0
        f = frontier
        while f:
            grow |= adj[lowbit_index(f)]
            f &= f - 1
        frontier = grow & mask & ~seen
        seen |= frontier
    return seen == mask


cdef struct MatchState:
    int k
    int q_n
    u64* q
    u64* h
    int* order
    int* img
    u64 used


cdef bint match_rec(MatchState* s, int t) nogil:
    cdef int i, p, j
    cdef u64 nb
    cdef bint ok
    if t == s.k:
        return 1
    i = s.order[t]
    for p in range(s.q_n):
        if (s.used >> p) & 1:
            continue
        ok = 1
        nb = s.h[i]
        while nb:
            j = lowbit_index(nb)
            nb &= nb - 1
            if s.img[j] >= 0 and not ((s.q[p] >> s.img[j]) & 1):
                ok = 0
                break
        if ok:
            s.img[i] = p
            s.used |= (<u64>1) << p
            if match_rec(s, t + 1):
                return 1
            s.used &= ~((<u64>1) << p)
            s.img[i] = -1
    return 0


cdef bint match_into(u64* q, int qn, u64* h, int k) nogil:
    cdef int order[MAXK]
    cdef int img[MAXK]
    cdef int i, j, t
    cdef MatchState s
    for i in range(k):
        order[i] = i
        img[i] = -1
    # sort by descending degree (insertion sort, k is tiny)
    for i in range(1, k):
        t = order[i]
        j = i - 1
        while j >= 0 and popcount(h[order[j]]) < popcount(h[t]):
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = t
    s.k = k
    s.q_n = qn
    s.q = q
    s.h = h
    s.order = order
    s.img = img
    s.used = 0
    return match_rec(&s, 0)


cdef struct PartState:
    int n
    int k
    int h_edges
    u64* adj
    u64* h
    u64 parts[MAXK]


cdef bint part_check(PartState* s) nogil:
    cdef int p, r, qe = 0
    cdef u64 reach, mask
    cdef u64 q[MAXK]
    for p in range(s.k):
        if not connected_mask(s.parts[p], s.adj):
            return 0
    for p in range(s.k):
        q[p] = 0
        reach = 0
        mask = s.parts[p]
        while mask:
            reach |= s.adj[lowbit_index(mask)]
            mask &= mask - 1
        for r in range(s.k):
            if r != p and (reach & s.parts[r]):
                q[p] |= (<u64>1) << r
                qe += 1
    if qe // 2 < s.h_edges:
        return 0
    return match_into(q, s.k, s.h, s.k)


cdef bint part_rec(PartState* s, int i, int used) nogil:
    cdef int p
    cdef u64 bit
    if s.n - i < s.k - used:
        return 0
    if i == s.n:
        return part_check(s)
    bit = (<u64>1) << i
    for p in range(used):
        s.parts[p] |= bit
        if part_rec(s, i + 1, used):
            return 1
        s.parts[p] &= ~bit
    if used < s.k:
        s.parts[used] |= bit
        if part_rec(s, i + 1, used + 1):
            return 1
        s.parts[used] &= ~bit
    return 0


def connected_partition_minor(list adj, list h_adj):
    cdef int n = len(adj), k = len(h_adj), i
    cdef u64 a[MAXN]
    cdef u64 h[MAXK]
    cdef PartState s
    if n > MAXN or k > MAXK:
        raise ValueError("kernel limits exceeded")
    if k > n:
        return False
    for i in range(n):
        a[i] = adj[i]
    s.h_edges = 0
    for i in range(k):
        h[i] = h_adj[i]
        s.h_edges += popcount(h[i])
        s.parts[i] = 0
    s.h_edges //= 2
    s.n = n
    s.k = k
    s.adj = a
    s.h = h
    with nogil:
        ok = part_rec(&s, 0, 0)
    return bool(ok)


cdef struct LabelState:
    int n
    int k
    u64* adj
    u64* h
    int labels[MAXN]
    u64 sets[MAXK]


cdef bint label_check(LabelState* s) nogil:
    cdef int i, j
    cdef u64 reach, mask, nb
    for i in range(s.k):
        if not connected_mask(s.sets[i], s.adj):
            return 0
    for i in range(s.k):
        reach = 0
        mask = s.sets[i]
        while mask:
            reach |= s.adj[lowbit_index(mask)]
            mask &= mask - 1
        nb = s.h[i]
        while nb:
            j = lowbit_index(nb)
            nb &= nb - 1
            if not (reach & s.sets[j]):
                return 0
    return 1


cdef bint label_rec(LabelState* s, int v) nogil:
    cdef int lab
    if v == s.n:
        return label_check(s)
    for lab in range(-1, s.k):
        s.labels[v] = lab
        if lab >= 0:
            s.sets[lab] |= (<u64>1) << v
        if label_rec(s, v + 1):
            return 1
        if lab >= 0:
            s.sets[lab] &= ~((<u64>1) << v)
    s.labels[v] = -1
    return 0


def minor_labels(list adj, list h_adj):
    cdef int n = len(adj), k = len(h_adj), i
    cdef u64 a[MAXN]
    cdef u64 h[MAXK]
    cdef LabelState s
    if n > MAXN or k > MAXK:
        raise ValueError("kernel limits exceeded")
    for i in range(n):
        a[i] = adj[i]
        s.labels[i] = -1
    for i in range(k):
        h[i] = h_adj[i]
        s.sets[i] = 0
    s.n = n
    s.k = k
    s.adj = a
    s.h = h
    with nogil:
        ok = label_rec(&s, 0)
    if not ok:
        return None
    return [s.labels[i] for i in range(n)]


# ---------------------------------------------------------------- crossings

cdef struct Cr1State:
    int n
    int* nb_start
    int* nb
    int pos[MAXN]
    int order[MAXN]
    int best_order[MAXN]
    int chord_a[MAXM]
    int chord_b[MAXM]
    int nchords
    int best


cdef void cr1_rec(Cr1State* s, int p, int cost) nogil:
    cdef int v, t, u, pu, c, add, nnew, base
    if p == s.n:
        if s.order[1] < s.order[s.n - 1] and cost < s.best:
            s.best = cost
            for t in range(s.n):
                s.best_order[t] = s.order[t]
        return
    for v in range(1, s.n):
        if s.pos[v] >= 0:
            continue
        add = 0
        for t in range(s.nb_start[v], s.nb_start[v + 1]):
            pu = s.pos[s.nb[t]]
            if pu < 0:
                continue
            for c in range(s.nchords):
                if s.chord_a[c] < pu and pu < s.chord_b[c]:
                    add += 1
        if cost + add >= s.best:
            continue
        s.pos[v] = p
        s.order[p] = v
        base = s.nchords
        for t in range(s.nb_start[v], s.nb_start[v + 1]):
            pu = s.pos[s.nb[t]]
            if pu >= 0 and s.nb[t] != v:
                s.chord_a[s.nchords] = pu
                s.chord_b[s.nchords] = p
                s.nchords += 1
        cr1_rec(s, p + 1, cost + add)
        s.nchords = base
        s.pos[v] = -1
        if s.best == 0:
            return


def cr1_search(int n, list edges):
    cdef int m = len(edges), i, u, v
    cdef Cr1State s
    if n <= 3:
        return 0, list(range(n))
    if n > MAXN or m > MAXM:
        raise ValueError("kernel limits exceeded")
    deg = [0] * (n + 1)
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    cdef int* start = <int*>malloc((n + 1) * sizeof(int))
    cdef int* nb = <int*>malloc((2 * m + 1) * sizeof(int))
    cdef int* fill = <int*>malloc((n + 1) * sizeof(int))
    try:
        start[0] = 0
        for i in range(n):
            start[i + 1] = start[i] + deg[i]
            fill[i] = start[i]
        for u, v in edges:
            nb[fill[u]] = v
            fill[u] += 1
            nb[fill[v]] = u
            fill[v] += 1
        s.n = n
        s.nb_start = start
        s.nb = nb
        s.nchords = 0
        s.best = m * m + 1
        for i in range(n):
            s.pos[i] = -1
            s.order[i] = 0
            s.best_order[i] = i
        s.pos[0] = 0
        s.order[0] = 0
        with nogil:
            cr1_rec(&s, 1, 0)
        return s.best, [s.best_order[i] for i in range(n)]
    finally:
        free(start)
        free(nb)
        free(fill)


cdef struct MonoState:
    int k
    int* order
    int* e_start
    int* earlier
    int col[MAXM]
    int best_col[MAXM]
    int best


cdef void mono_rec(MonoState* s, int i, int cost) nogil:
    cdef int x, c, add, t, first
    if i == s.k:
        s.best = cost
        for t in range(s.k):
            s.best_col[t] = s.col[t]
        return
    x = s.order[i]
    first = 1 if i == 0 else 2
    for c in range(first):
        add = 0
        for t in range(s.e_start[i], s.e_start[i + 1]):
            if s.col[s.earlier[t]] == c:
                add += 1
        if cost + add < s.best:
            s.col[x] = c
            mono_rec(s, i + 1, cost + add)
            s.col[x] = -1
            if s.best == 0:
                return


cdef int mono_solve(int k, int npairs, int* pa, int* pb, int cutoff, int* out_col) nogil:
    cdef int deg[MAXM]
    cdef int order[MAXM]
    cdef int rank[MAXM]
    cdef int i, j, t, x, y, tmp
    cdef MonoState s
    cdef int* e_start = <int*>malloc((k + 1) * sizeof(int))
    cdef int* earlier = <int*>malloc((npairs + 1) * sizeof(int))
    for i in range(k):
        deg[i] = 0
        order[i] = i
    for t in range(npairs):
        deg[pa[t]] += 1
        deg[pb[t]] += 1
    # stable sort by descending degree
    for i in range(1, k):
        tmp = order[i]
        j = i - 1
        while j >= 0 and deg[order[j]] < deg[tmp]:
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = tmp
    for i in range(k):
        rank[order[i]] = i
    e_start[0] = 0
    for i in range(k):
        x = order[i]
        e_start[i + 1] = e_start[i]
        for t in range(npairs):
            if pa[t] == x and rank[pb[t]] < i:
                earlier[e_start[i + 1]] = pb[t]
                e_start[i + 1] += 1
            elif pb[t] == x and rank[pa[t]] < i:
                earlier[e_start[i + 1]] = pa[t]
                e_start[i + 1] += 1
    s.k = k
    s.order = order
    s.e_start = e_start
    s.earlier = earlier
    s.best = cutoff
    for i in range(k):
        s.col[i] = -1
        s.best_col[i] = 0
    mono_rec(&s, 0, 0)
    for i in range(k):
        out_col[i] = s.best_col[i]
    free(e_start)
    free(earlier)
    return s.best


def min_mono(int k, list pairs, int cutoff):
    cdef int npairs = len(pairs), t
    cdef int col[MAXM]
    if k > MAXM:
        raise ValueError("kernel limits exceeded")
    cdef int* pa = <int*>malloc((npairs + 1) * sizeof(int))
    cdef int* pb = <int*>malloc((npairs + 1) * sizeof(int))
    try:
        for t in range(npairs):
            pa[t] = pairs[t][0]
            pb[t] = pairs[t][1]
        with nogil:
            best = mono_solve(k, npairs, pa, pb, cutoff, col)
        return best, [col[t] for t in range(k)]
    finally:
        free(pa)
        free(pb)


cdef struct Cr2State:
    int n
    int m
    int* eu
    int* ev
    int* pa
    int* pb
    int order[MAXN]
    int used[MAXN]
    int best_order[MAXN]
    int best_pages[MAXM]
    int best


cdef void cr2_leaf(Cr2State* s) nogil:
    cdef int pos[MAXN]
    cdef int lo[MAXM]
    cdef int hi[MAXM]
    cdef int col[MAXM]
    cdef int i, j, a, b, c, d, np = 0, cost
    for i in range(s.n):
        pos[s.order[i]] = i
    for i in range(s.m):
        a = pos[s.eu[i]]
        b = pos[s.ev[i]]
        if a < b:
            lo[i] = a
            hi[i] = b
        else:
            lo[i] = b
            hi[i] = a
    for i in range(s.m):
        a = lo[i]
        b = hi[i]
        for j in range(i + 1, s.m):
            c = lo[j]
            d = hi[j]
            if (a < c and c < b and b < d) or (c < a and a < d and d < b):
                s.pa[np] = i
                s.pb[np] = j
                np += 1
    cost = mono_solve(s.m, np, s.pa, s.pb, s.best, col)
    if cost < s.best:
        s.best = cost
        for i in range(s.n):
            s.best_order[i] = s.order[i]
        for i in range(s.m):
            s.best_pages[i] = col[i]


cdef void cr2_rec(Cr2State* s, int p) nogil:
    cdef int v
    if s.best == 0:
        return
    if p == s.n:
        if s.order[1] < s.order[s.n - 1]:
            cr2_leaf(s)
        return
    for v in range(1, s.n):
        if not s.used[v]:
            s.used[v] = 1
            s.order[p] = v
            cr2_rec(s, p + 1)
            s.used[v] = 0


def cr2_search(int n, list edges):
    cdef int m = len(edges), i
    cdef Cr2State s
    if n <= 3:
        return 0, list(range(n)), [0] * m
    if n > MAXN or m > MAXM:
        raise ValueError("kernel limits exceeded")
    cdef int* eu = <int*>malloc((m + 1) * sizeof(int))
    cdef int* ev = <int*>malloc((m + 1) * sizeof(int))
    cdef int* pa = <int*>malloc((m * m + 1) * sizeof(int))
    cdef int* pb = <int*>malloc((m * m + 1) * sizeof(int))
    try:
        for i in range(m):
            eu[i] = edges[i][0]
            ev[i] = edges[i][1]
        s.n = n
        s.m = m
        s.eu = eu
        s.ev = ev
        s.pa = pa
        s.pb = pb
        s.best = m * m + 1
        for i in range(n):
            s.used[i] = 0
            s.order[i] = 0
            s.best_order[i] = i
        for i in range(m):
            s.best_pages[i] = 0
        s.used[0] = 1
        with nogil:
            cr2_rec(&s, 1)
        return s.best, [s.best_order[i] for i in range(n)], [s.best_pages[i] for i in range(m)]
    finally:
        free(eu)
        free(ev)
        free(pa)
        free(pb)

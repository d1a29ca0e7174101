"""Structural characterizations of bounded 1-page and 2-page crossing numbers.

Executable forms of three witness conditions: the one-page decomposition
into crossing edges plus outerplanar pockets, the six-way edge partition for
2-page planarity, and its extension to planarized drawings.  Also the two
graph constructions they rely on, ``separate`` and ``planarize``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .bookdraw import CrossingDiagram, EMPTY_DIAGRAM, enumerate_crossing_diagrams
from .graph import (
    Graph,
    SizeLimitError,
    is_outerplanar,
    is_planar,
)


class WitnessError(ValueError):
    pass


# ---------------------------------------------------------------------------
# constructions


def separate(g: Graph, a: Iterable[int], b: Iterable[int]) -> Graph:
    """Split every vertex into a page-A copy ``v`` and a page-B copy ``n + v``."""
    a, b = set(a), set(b)
    if a & b or a | b != set(range(g.m)):
        raise WitnessError("separate needs a partition of the edge ids")
    n = g.n
    edges = [(v, n + v) for v in range(n)]
    edges += [g.edges[i] for i in sorted(a)]
    edges += [(n + g.edges[i][0], n + g.edges[i][1]) for i in sorted(b)]
    return Graph(2 * n, tuple(edges))


@dataclass(frozen=True)
class PlanarizedGraph:
    base: Graph
    original: Graph
    paths: dict[int, tuple[int, ...]]  # original edge id -> new edge ids along the path
    crossing_vertices: tuple[int, ...]
    crossing_pages: tuple[int, ...]  # page of each crossing vertex (same order)
    origin: tuple[int, ...]  # new edge id -> original edge id
    point_map: tuple[int, ...]  # diagram point -> vertex
    introduced: dict[int, int] = field(default_factory=dict)  # path edge id -> page of its segment

    def introduced_edges(self) -> dict[int, int]:
        return dict(self.introduced)


def _point_map(g: Graph, d: CrossingDiagram, edge_map: Sequence[int]) -> list[int] | None:
    pts: list[int] = [-1] * d.npoints

    def rec(i: int) -> bool:
        if i == len(d.segments):
            return True
        p, q = d.segments[i]
        u, v = g.edges[edge_map[i]]
        for x, y in ((u, v), (v, u)):
            ok = (pts[p] in (-1, x)) and (pts[q] in (-1, y))
            if not ok:
                continue
            if (pts[p] == -1 and x in pts) or (pts[q] == -1 and y in pts):
                continue
            saved = pts[p], pts[q]
            pts[p], pts[q] = x, y
            if rec(i + 1):
                return True
            pts[p], pts[q] = saved
        return False

    return pts if rec(0) else None


def planarize(g: Graph, d: CrossingDiagram, edge_map: Sequence[int],
              point_map: Sequence[int] | None = None) -> PlanarizedGraph:
    """Replace every mapped edge by a path through its crossings in chord order.

    ``point_map`` fixes which vertex sits at each diagram point; without it
    the first consistent assignment is used.
    """
    edge_map = list(edge_map)
    if len(edge_map) != len(d.segments):
        raise WitnessError("edge_map needs one edge per segment")
    if len(set(edge_map)) != len(edge_map) or any(not 0 <= e < g.m for e in edge_map):
        raise WitnessError("edge_map must be injective onto edge ids")
    if point_map is not None:
        pts = list(point_map)
        ok = len(pts) == d.npoints and len(set(pts)) == len(pts) and all(
            set(g.edges[e]) == {pts[p], pts[q]} for e, (p, q) in zip(edge_map, d.segments))
        if not ok:
            raise WitnessError("point_map does not match the mapped edges")
    else:
        pts = _point_map(g, d, edge_map)
    if pts is None:
        raise WitnessError("edge_map inconsistent with the diagram's shared endpoints")
    pairs = d.crossing_pairs()
    along = d.crossings_along()
    n = g.n
    cross_v = tuple(n + i for i in range(len(pairs)))
    cross_pg = tuple(d.color(i) for i, _ in pairs)
    mapped = {e: s for s, e in enumerate(edge_map)}
    edges: list[tuple[int, int]] = []
    origin: list[int] = []
    for eid, e in enumerate(g.edges):
        if eid not in mapped:
            edges.append(e)
            origin.append(eid)
    paths: dict[int, tuple[int, ...]] = {}
    intro: dict[int, int] = {}
    for s, eid in enumerate(edge_map):
        p, q = d.segments[s]
        walk = [pts[p]] + [n + c for c in along[s]] + [pts[q]]
        ids = []
        for x, y in zip(walk, walk[1:]):
            ids.append(len(edges))
            intro[len(edges)] = d.color(s)
            edges.append((x, y))
            origin.append(eid)
        paths[eid] = tuple(ids)
    base = Graph(n + len(pairs), tuple(edges))
    return PlanarizedGraph(base, g, paths, cross_v, cross_pg, tuple(origin), tuple(pts), intro)


# ---------------------------------------------------------------------------
# small helpers shared by the checks


def _mask(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def _ids(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _degrees(g: Graph, mask: int) -> list[int]:
    deg = [0] * g.n
    for i in _ids(mask):
        u, v = g.edges[i]
        deg[u] += 1
        deg[v] += 1
    return deg


def _even(g: Graph, mask: int) -> bool:
    return all(d % 2 == 0 for d in _degrees(g, mask))


def even_subgraphs(g: Graph, allowed: int) -> Iterator[int]:
    """All edge subsets of ``allowed`` with every degree even (the cycle space)."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree, extra = [], []
    for i in _ids(allowed):
        u, v = g.edges[i]
        ru, rv = find(u), find(v)
        if ru == rv:
            extra.append(i)
        else:
            parent[ru] = rv
            tree.append(i)
    tmask = _mask(tree)
    basis = []
    for i in extra:
        basis.append((1 << i) | _tree_path(g, tmask, *g.edges[i]))
    out = set()
    for r in range(len(basis) + 1):
        for combo in itertools.combinations(basis, r):
            x = 0
            for b in combo:
                x ^= b
            out.add(x)
    yield from sorted(out)


def _tree_path(g: Graph, tmask: int, s: int, t: int) -> int:
    prev: dict[int, tuple[int, int] | None] = {s: None}
    queue = [s]
    for x in queue:
        if x == t:
            break
        for eid in g.incident[x]:
            if tmask >> eid & 1:
                a, b = g.edges[eid]
                y = b if a == x else a
                if y not in prev:
                    prev[y] = (x, eid)
                    queue.append(y)
    m, x = 0, t
    while prev[x] is not None:
        x, eid = prev[x]
        m |= 1 << eid
    return m


def _cycles_through(g: Graph, mask: int, e: int) -> Iterator[int]:
    """Simple cycles inside ``mask`` containing edge ``e`` (as edge masks)."""
    s, t = g.edges[e]
    rest = mask & ~(1 << e)

    def rec(x: int, seen: set[int], acc: int):
        if x == t:
            yield acc | (1 << e)
            return
        for eid in g.incident[x]:
            if rest >> eid & 1 and not acc >> eid & 1:
                a, b = g.edges[eid]
                y = b if a == x else a
                if y not in seen:
                    seen.add(y)
                    yield from rec(y, seen, acc | (1 << eid))
                    seen.discard(y)

    yield from rec(s, {s}, 0)


def cycle_decompositions(g: Graph, mask: int) -> Iterator[list[int]]:
    """Every partition of the even edge set ``mask`` into edge-disjoint simple cycles."""
    if mask == 0:
        yield []
        return
    e = (mask & -mask).bit_length() - 1
    for c in _cycles_through(g, mask, e):
        for rest in cycle_decompositions(g, mask & ~c):
            yield [c] + rest


def cycle_order(g: Graph, cmask: int) -> list[int]:
    ids = _ids(cmask)
    nb: dict[int, list[int]] = {}
    for i in ids:
        u, v = g.edges[i]
        nb.setdefault(u, []).append(v)
        nb.setdefault(v, []).append(u)
    start = min(nb)
    order, prev, x = [start], None, start
    while True:
        a, b = nb[x]
        y = a if a != prev else b
        if y == start:
            return order
        order.append(y)
        prev, x = x, y


def crossing_position(order: Sequence[int], a: int, b: int, c: int, d: int) -> bool:
    """Do pairs {a,b} and {c,d} (four distinct vertices) alternate around ``order``?"""
    pos = {v: i for i, v in enumerate(order)}
    if len({a, b, c, d}) != 4 or not all(x in pos for x in (a, b, c, d)):
        return False
    lo, hi = sorted((pos[a], pos[b]))
    return (lo < pos[c] < hi) != (lo < pos[d] < hi)


def _is_isthmus_set(g: Graph, xb: int, within: int) -> bool:
    """Is every edge of ``xb`` an isthmus of the subgraph formed by ``within``?"""
    for e in _ids(xb):
        s, t = g.edges[e]
        rest = within & ~(1 << e)
        seen = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for eid in g.incident[x]:
                if rest >> eid & 1:
                    a, b = g.edges[eid]
                    y = b if a == x else a
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
        if t in seen:
            return False
    return True


def _crossing_paths(g: Graph, order: list[int], usable) -> bool:
    """Two vertex-disjoint paths with alternating endpoints on the cycle ``order``.

    Interiors avoid the cycle; ``usable(path_edges)`` filters candidate paths.
    """
    on_c = set(order)
    paths: list[tuple[int, int, frozenset[int]]] = []

    def rec(start: int, x: int, seen: list[int], eids: list[int]):
        for eid in g.incident[x]:
            a, b = g.edges[eid]
            y = b if a == x else a
            if y in seen:
                continue
            if y in on_c:
                if y > start and usable(eids + [eid]):
                    paths.append((start, y, frozenset(seen[1:])))
                continue
            seen.append(y)
            eids.append(eid)
            rec(start, y, seen, eids)
            eids.pop()
            seen.pop()

    for s in order:
        rec(s, s, [s], [])
    for i, (a, b, inner1) in enumerate(paths):
        for c, d, inner2 in paths[i + 1 :]:
            if inner1 & inner2:
                continue
            if crossing_position(order, a, b, c, d):
                return True
    return False


# ---------------------------------------------------------------------------
# one page


@dataclass(frozen=True)
class OnePageWitness:
    F: tuple[int, ...]
    W: tuple[int, ...]
    U: tuple[frozenset[int], ...]
    diagram: CrossingDiagram = EMPTY_DIAGRAM


def _index_crossings(g: Graph, w: OnePageWitness) -> int:
    pos = {v: i for i, v in enumerate(w.W)}
    count = 0
    for x, y in itertools.combinations(w.F, 2):
        a, b = (pos[v] for v in g.edges[x])
        c, d = (pos[v] for v in g.edges[y])
        if len({a, b, c, d}) == 4:
            lo, hi = sorted((a, b))
            if (lo < c < hi) != (lo < d < hi):
                count += 1
    return count


def _pocket_ok(g: Graph, u: frozenset[int], a: int | None, b: int | None) -> bool:
    """Outerplanar drawing of the pocket plus anchors with ``a`` and ``b`` consecutive.

    Tested as outerplanarity after adding one new vertex adjacent to both
    anchors.  Merging the anchors instead is too weak: a vertex adjacent to
    both ends of the path u1-u2-u3 and another adjacent to u2 merge into an
    outerplanar fan, yet cannot sit next to each other in any drawing.
    """
    if a is None:
        sub, _ = g.induced_subgraph(u)
        return is_outerplanar(sub)
    sub, keep = g.induced_subgraph(set(u) | {a, b})
    x = sub.n
    return is_outerplanar(Graph(x + 1, sub.edges + ((keep.index(a), x), (keep.index(b), x))))


def _far_anchor(g: Graph, u: Iterable[int], ws: set[int], a: int, b: int) -> bool:
    """Does a pocket vertex see a W vertex other than its two anchors?"""
    return any(y in ws and y != a and y != b for v in u for y in g.adj[v])


def check_lemma5(g: Graph, w: OnePageWitness, k: int) -> bool:
    """One-page properties; pocket ``U_i`` sits between ``v_i`` and ``v_{i+1}`` cyclically.

    Besides the endpoint, induced, partition, pocket and crossing properties,
    pocket vertices may only be adjacent to their own two anchors in W.
    """
    if len(set(w.W)) != len(w.W) or len(set(w.F)) != len(w.F):
        raise WitnessError("repeated vertex or edge in witness")
    if any(not 0 <= e < g.m for e in w.F) or any(not 0 <= v < g.n for v in w.W):
        raise WitnessError("witness refers to missing vertices or edges")
    rest = set(range(g.n)) - set(w.W)
    union: set[int] = set()
    for u in w.U:
        if union & u:
            raise WitnessError("U sets overlap")
        union |= u
    if union != rest:
        raise WitnessError("U sets must partition V minus W")
    if not w.W:
        if len(w.U) != 1 or w.F:
            raise WitnessError("an empty W takes exactly one U set and no edges")
        return _pocket_ok(g, w.U[0], None, None)
    if len(w.U) != len(w.W):
        raise WitnessError("one U set per W vertex")
    # W is exactly the endpoint set of F
    if {v for e in w.F for v in g.edges[e]} != set(w.W):
        return False
    # F holds every edge of the induced subgraph on W
    ws = set(w.W)
    fs = set(w.F)
    if any(u in ws and v in ws and i not in fs for i, (u, v) in enumerate(g.edges)):
        return False
    # no edges between different pockets
    where = {v: i for i, u in enumerate(w.U) for v in u}
    for u, v in g.edges:
        if u in where and v in where and where[u] != where[v]:
            return False
    L = len(w.W)
    for i, u in enumerate(w.U):
        a, b = w.W[i], w.W[(i + 1) % L]
        if _far_anchor(g, u, ws, a, b) or not _pocket_ok(g, u, a, b):
            return False
    return _index_crossings(g, w) <= k


def _diagram_embeddings(g: Graph, d: CrossingDiagram) -> Iterator[tuple[list[int], list[int]]]:
    """Injective point->vertex maps sending every segment to an edge of ``g``."""
    pts = [-1] * d.npoints
    segs_at: list[list[int]] = [[] for _ in range(d.npoints)]
    for s, (p, q) in enumerate(d.segments):
        segs_at[p].append(s)
        segs_at[q].append(s)

    def rec(p: int):
        if p == d.npoints:
            yield list(pts), [g.edge_id(pts[a], pts[b]) for a, b in d.segments]
            return
        for v in range(g.n):
            if v in pts:
                continue
            ok = True
            for s in segs_at[p]:
                a, b = d.segments[s]
                other = b if a == p else a
                if other < p and not g.has_edge(v, pts[other]):
                    ok = False
                    break
            if ok:
                pts[p] = v
                yield from rec(p + 1)
                pts[p] = -1

    yield from rec(0)


def chord_diagram(g: Graph, W: Sequence[int], F: Sequence[int]) -> CrossingDiagram:
    """All edges of F as chords between the positions of W (crossed or not)."""
    pos = {v: i for i, v in enumerate(W)}
    return CrossingDiagram(len(W), tuple((pos[g.edges[e][0]], pos[g.edges[e][1]]) for e in F))


def find_lemma5_witness(g: Graph, k: int, max_n: int = 8, max_k: int = 2) -> OnePageWitness | None:
    """Search W from the crossing diagrams with 1..k crossings; F is then every edge inside W."""
    if g.n > max_n or k > max_k:
        raise SizeLimitError(f"one-page witness search limited to n <= {max_n}, k <= {max_k}")
    if is_outerplanar(g):
        return OnePageWitness((), (), (frozenset(range(g.n)),))
    seen: set[tuple[int, ...]] = set()
    for kk in range(1, k + 1):
        for d in enumerate_crossing_diagrams(kk, 1):
            for pts, _ in _diagram_embeddings(g, d):
                # rotations of the same cyclic order give the same witness
                r = pts.index(min(pts))
                key = tuple(pts[r:] + pts[:r])
                if key in seen:
                    continue
                seen.add(key)
                ws = set(pts)
                fs = tuple(i for i, (u, v) in enumerate(g.edges) if u in ws and v in ws)
                w0 = OnePageWitness(fs, tuple(pts), ())
                if _index_crossings(g, w0) > k:
                    continue
                pockets = _assign_pockets(g, pts)
                if pockets is not None:
                    return OnePageWitness(fs, tuple(pts), pockets, chord_diagram(g, pts, fs))
    return None


def _assign_pockets(g: Graph, W: list[int]) -> tuple[frozenset[int], ...] | None:
    ws = set(W)
    rest = [v for v in range(g.n) if v not in ws]
    sub, keep = g.induced_subgraph(rest)
    comps = [frozenset(keep[x] for x in c) for c in sub.components()]
    L = len(W)
    slots: list[set[int]] = [set() for _ in range(L)]
    memo: dict[tuple[int, frozenset[int]], bool] = {}

    def ok(i: int) -> bool:
        key = (i, frozenset(slots[i]))
        if key not in memo:
            memo[key] = _pocket_ok(g, key[1], W[i], W[(i + 1) % L])
        return memo[key]

    def rec(c: int) -> bool:
        if c == len(comps):
            return all(ok(i) for i in range(L))
        for i in range(L):
            if _far_anchor(g, comps[c], ws, W[i], W[(i + 1) % L]):
                continue
            slots[i] |= comps[c]
            if ok(i) and rec(c + 1):
                return True
            slots[i] -= comps[c]
        return False

    if rec(0):
        return tuple(frozenset(s) for s in slots)
    return None


# ---------------------------------------------------------------------------
# two pages

PART_NAMES = ("Ab", "Ac", "Ai", "Bb", "Bc", "Bi")


@dataclass(frozen=True)
class Partition6:
    Ab: frozenset[int] = frozenset()
    Ac: frozenset[int] = frozenset()
    Ai: frozenset[int] = frozenset()
    Bb: frozenset[int] = frozenset()
    Bc: frozenset[int] = frozenset()
    Bi: frozenset[int] = frozenset()

    def parts(self) -> tuple[frozenset[int], ...]:
        return tuple(getattr(self, name) for name in PART_NAMES)

    def page(self, x: str) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
        """(X_c, X_b, X_i) for ``x`` in {"A", "B"}."""
        return getattr(self, x + "c"), getattr(self, x + "b"), getattr(self, x + "i")

    @property
    def A(self) -> frozenset[int]:
        return self.Ab | self.Ac | self.Ai

    @property
    def B(self) -> frozenset[int]:
        return self.Bb | self.Bc | self.Bi

    def validate(self, m: int) -> None:
        seen: set[int] = set()
        for p in self.parts():
            if seen & p:
                raise WitnessError("partition classes overlap")
            seen |= p
        if seen != set(range(m)):
            raise WitnessError("partition does not cover every edge exactly once")

    def to_text(self, g: Graph) -> str:
        lines = []
        for name in PART_NAMES:
            es = " ".join(f"{u}-{v}" for u, v in (g.edges[i] for i in sorted(getattr(self, name))))
            lines.append(f"{name}: {es}".rstrip())
        return "\n".join(lines) + "\n"


def parse_partition(text: str, g: Graph) -> Partition6:
    parts: dict[str, frozenset[int]] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        name, _, rest = line.partition(":")
        name = name.strip()
        if name not in PART_NAMES or name in parts:
            raise WitnessError(f"bad partition line {line!r}")
        ids = set()
        for tok in rest.split():
            try:
                u, v = (int(x) for x in tok.split("-"))
                ids.add(g.edge_id(u, v))
            except (ValueError, KeyError) as exc:
                raise WitnessError(f"unknown edge {tok!r}") from exc
        parts[name] = frozenset(ids)
    p = Partition6(**parts)
    p.validate(g.m)
    return p


def _page_basic(g: Graph, xc: int, xb: int) -> bool:
    return _even(g, xc) and _is_isthmus_set(g, xb, xc | xb)


def _lemma8_cycles_ok(g: Graph, cycles: list[int], xi: int) -> bool:
    orders = [cycle_order(g, c) for c in cycles]
    vsets = [set(o) for o in orders]
    for e in _ids(xi):
        u, v = g.edges[e]
        if not any(u in s and v in s for s in vsets):
            return False

    def usable(eids: list[int]) -> bool:
        return not (len(eids) == 1 and xi >> eids[0] & 1)

    return not any(_crossing_paths(g, o, usable) for o in orders)


def _lemma8_page(g: Graph, xc: int, xb: int, xi: int) -> bool:
    if not _page_basic(g, xc, xb):
        return False
    if not is_outerplanar(g.edge_subgraph(_ids(xc | xb | xi))):
        return False
    return any(_lemma8_cycles_ok(g, dec, xi) for dec in cycle_decompositions(g, xc))


def check_lemma8(g: Graph, p: Partition6) -> bool:
    """Both pages satisfy the cycle, isthmus, inner, outerplanar and path properties, and the split is planar."""
    p.validate(g.m)
    for x in "AB":
        xc, xb, xi = (_mask(s) for s in p.page(x))
        if not _lemma8_page(g, xc, xb, xi):
            return False
    return is_planar(separate(g, p.A, p.B))


def _lemma8_page_witness(g: Graph, x: int) -> tuple[int, int, int] | None:
    for xc in even_subgraphs(g, x):
        for dec in cycle_decompositions(g, xc):
            vsets = [set(cycle_order(g, c)) for c in dec]
            # X_i as large as possible: that only weakens the isthmus and path properties
            xi = 0
            for e in _ids(x & ~xc):
                u, v = g.edges[e]
                if any(u in s and v in s for s in vsets):
                    xi |= 1 << e
            xb = x & ~xc & ~xi
            if _is_isthmus_set(g, xb, xc | xb) and _lemma8_cycles_ok(g, dec, xi):
                return xc, xb, xi
    return None


def _page_splits(g: Graph, forced: dict[int, int] | None = None) -> Iterator[tuple[int, int]]:
    forced = forced or {}
    free = [e for e in range(g.m) if e not in forced]
    base = _mask(e for e, pg in forced.items() if pg == 0)
    full = (1 << g.m) - 1
    # without forced edges the split is symmetric, so keep the first free edge on page A
    fix = not forced and free
    choices = free[1:] if fix else free
    for bits in range(1 << len(choices)):
        a = base | _mask(c for i, c in enumerate(choices) if bits >> i & 1)
        if fix:
            a |= 1 << free[0]
        yield a, full & ~a


def find_lemma8_witness(g: Graph, max_n: int = 8) -> Partition6 | None:
    if g.n > max_n:
        raise SizeLimitError(f"two-page witness search limited to n <= {max_n}")
    if not is_planar(g):
        return None
    for a, b in _page_splits(g):
        ga, gb = g.edge_subgraph(_ids(a)), g.edge_subgraph(_ids(b))
        if not (is_outerplanar(ga) and is_outerplanar(gb)):
            continue
        if not is_planar(separate(g, _ids(a), _ids(b))):
            continue
        pa = _lemma8_page_witness(g, a)
        if pa is None:
            continue
        pb = _lemma8_page_witness(g, b)
        if pb is None:
            continue
        (ac, ab, ai), (bc, bb, bi) = pa, pb
        f = lambda m: frozenset(_ids(m))  # noqa: E731
        return Partition6(f(ab), f(ac), f(ai), f(bb), f(bc), f(bi))
    return None


# ---------------------------------------------------------------------------
# planarized drawings


def _closure(g: Graph, e: int, special: set[int]) -> tuple[int, set[int]]:
    """Edges reachable from ``e`` through planarization vertices; returns (mask, vertices)."""
    mask = 1 << e
    verts = set(g.edges[e])
    todo = [v for v in verts if v in special]
    done: set[int] = set()
    while todo:
        c = todo.pop()
        if c in done:
            continue
        done.add(c)
        for eid in g.incident[c]:
            if not mask >> eid & 1:
                mask |= 1 << eid
                for y in g.edges[eid]:
                    if y not in verts:
                        verts.add(y)
                        if y in special:
                            todo.append(y)
    return mask, verts


def _lemma9_cycles_ok(g: Graph, cycles: list[int], xi: int, special: set[int]) -> bool:
    orders = [cycle_order(g, c) for c in cycles]
    vsets = [set(o) for o in orders]
    closures = {}
    for e in _ids(xi):
        pm, pv = _closure(g, e, special)
        plain = pv - special
        if not any(plain <= s and len(plain & s) >= 2 for s in vsets):
            return False
        closures[e] = (pm, plain)
    # property 5: distinct closures never both span crossing pairs on one cycle
    es = sorted(closures)
    for i, e in enumerate(es):
        for f in es[i + 1 :]:
            if closures[e][0] == closures[f][0]:
                continue
            for o, s in zip(orders, vsets):
                pe, pf = sorted(closures[e][1] & s), sorted(closures[f][1] & s)
                for a, b in itertools.combinations(pe, 2):
                    if any(crossing_position(o, a, b, c, d) for c, d in itertools.combinations(pf, 2)):
                        return False

    def usable(eids: list[int]) -> bool:
        return not any(xi >> x & 1 for x in eids)

    return not any(_crossing_paths(g, o, usable) for o in orders)


def _lemma9_page(g: Graph, xc: int, xb: int, xi: int, special: set[int]) -> bool:
    if not _page_basic(g, xc, xb):
        return False
    return any(_lemma9_cycles_ok(g, dec, xi, special) for dec in cycle_decompositions(g, xc))


def check_lemma9(g: Graph, d: CrossingDiagram, edge_map: Sequence[int], p: Partition6) -> bool:
    """The seven properties on the planarization of ``g`` by ``d``; ``p`` partitions its edges."""
    pg = planarize(g, d, edge_map)
    gd = pg.base
    p.validate(gd.m)
    a = p.A
    for eid, page in pg.introduced_edges().items():
        if (eid in a) != (page == 0):
            return False
    special = set(pg.crossing_vertices)
    for x in "AB":
        xc, xb, xi = (_mask(s) for s in p.page(x))
        if not _lemma9_page(gd, xc, xb, xi, special):
            return False
    return is_planar(separate(gd, p.A, p.B))


def _lemma9_page_witness(g: Graph, x: int, special: set[int]) -> tuple[int, int, int] | None:
    for xc in even_subgraphs(g, x):
        for dec in cycle_decompositions(g, xc):
            vsets = [set(cycle_order(g, c)) for c in dec]
            cands = []
            for e in _ids(x & ~xc):
                _, pv = _closure(g, e, special)
                plain = pv - special
                if any(plain <= s and len(plain & s) >= 2 for s in vsets):
                    cands.append(e)
            for r in range(len(cands), -1, -1):
                for chosen in itertools.combinations(cands, r):
                    xi = _mask(chosen)
                    xb = x & ~xc & ~xi
                    if _is_isthmus_set(g, xb, xc | xb) and _lemma9_cycles_ok(g, dec, xi, special):
                        return xc, xb, xi
    return None


def find_lemma9_witness(g: Graph, d: CrossingDiagram, edge_map: Sequence[int]) -> Partition6 | None:
    pg = planarize(g, d, edge_map)
    gd = pg.base
    if not is_planar(gd):
        return None
    special = set(pg.crossing_vertices)
    forced = pg.introduced_edges()
    for a, b in _page_splits(gd, forced):
        if not is_planar(separate(gd, _ids(a), _ids(b))):
            continue
        pa = _lemma9_page_witness(gd, a, special)
        if pa is None:
            continue
        pb = _lemma9_page_witness(gd, b, special)
        if pb is None:
            continue
        (ac, ab, ai), (bc, bb, bi) = pa, pb
        f = lambda m: frozenset(_ids(m))  # noqa: E731
        return Partition6(f(ab), f(ac), f(ai), f(bb), f(bc), f(bi))
    return None


def diagram_placements(g: Graph, d: CrossingDiagram) -> Iterator[list[int]]:
    """Edge maps for ``d``: injective segment->edge maps consistent with shared endpoints."""
    seen = set()
    for _, eids in _diagram_embeddings(g, d):
        key = tuple(eids)
        if key not in seen:
            seen.add(key)
            yield list(eids)


def cr2_via_characterization(g: Graph, kmax: int = 1, max_n: int = 6) -> int | None:
    """Smallest ``k <= kmax`` admitting a witness (k = 0 via the planar partition)."""
    if kmax > 1 or g.n > max_n:
        raise SizeLimitError("characterization search limited to kmax <= 1, n <= 6")
    if find_lemma8_witness(g) is not None:
        return 0
    for k in range(1, kmax + 1):
        for d in enumerate_crossing_diagrams(k, 2):
            for em in diagram_placements(g, d):
                if find_lemma9_witness(g, d, em) is not None:
                    return k
    return None

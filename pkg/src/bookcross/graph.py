"""Simple undirected graphs and the structural primitives built on them.

Vertices are ``0..n-1``; edges carry stable ids ``0..m-1`` given by their
position in :attr:`Graph.edges`.  Every operation here is a pure function.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import kernels


class GraphError(ValueError):
    pass


class Graph6Error(GraphError):
    pass


class Graph6HeaderError(Graph6Error):
    pass


class Graph6TruncatedError(Graph6Error):
    pass


class Graph6TrailingDataError(Graph6Error):
    pass


class Graph6CharacterError(Graph6Error):
    pass


class EdgeListError(GraphError):
    pass


class SizeLimitError(ValueError):
    """Input exceeds the configured limit of an exhaustive search."""


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...] = ()
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("negative vertex count")
        norm = []
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            e = _norm(u, v)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("label count does not match vertex count")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int | None = None) -> "Graph":
        edges = list(edges)
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edge_index

    def edge_id(self, u: int, v: int) -> int:
        return self.edge_index[_norm(u, v)]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return the induced subgraph and the list mapping new ids to old ids."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph(len(keep), tuple(edges)), keep

    def edge_subgraph(self, edge_ids: Iterable[int]) -> "Graph":
        """Spanning subgraph keeping only the given edges (vertex ids unchanged)."""
        ids = sorted(set(edge_ids))
        return Graph(self.n, tuple(self.edges[i] for i in ids))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``; edge order preserved."""
        return Graph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    def add_edges(self, pairs: Iterable[tuple[int, int]]) -> "Graph":
        extra = [_norm(u, v) for u, v in pairs if u != v]
        have = set(self.edges)
        new = []
        for e in extra:
            if e not in have:
                have.add(e)
                new.append(e)
        return Graph(self.n, self.edges + tuple(new))

    def edge_key(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def same_graph(self, other: "Graph") -> bool:
        """Equality as labelled graphs, ignoring edge order."""
        return self.n == other.n and self.edge_key() == other.edge_key()

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


# ----------------------------------------------------------------------------
# standard families


def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a simple cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def star_graph(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def wheel_graph(rim: int) -> Graph:
    """Hub vertex 0 joined to a rim cycle on ``1..rim``."""
    spokes = [(0, i) for i in range(1, rim + 1)]
    ring = [(i, i % rim + 1) for i in range(1, rim + 1)]
    return Graph(rim + 1, tuple(spokes + ring))


def prism_graph() -> Graph:
    tri = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
    return Graph(6, tuple(tri + [(0, 3), (1, 4), (2, 5)]))


def cube_graph() -> Graph:
    edges = [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)]
    return Graph(8, tuple(edges))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    return Graph(g.n + h.n, g.edges + tuple((u + g.n, v + g.n) for u, v in h.edges))


NAMED_GRAPHS = {
    "K4": lambda: complete_graph(4),
    "K5": lambda: complete_graph(5),
    "K6": lambda: complete_graph(6),
    "K2,3": lambda: complete_bipartite(2, 3),
    "K3,3": lambda: complete_bipartite(3, 3),
    "Q3": cube_graph,
    "prism": prism_graph,
    "W5": lambda: wheel_graph(5),
}


# ----------------------------------------------------------------------------
# I/O

_G6_HEADER = ">>graph6<<"


def _g6_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise Graph6Error("graph6 supports at most 258047 vertices")


def emit_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _g6_size(g.n) + body


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise Graph6HeaderError("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise Graph6CharacterError(f"character {ch!r} outside graph6 range")
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] < 63:
        n, data = vals[0], vals[1:]
    else:
        if len(vals) < 4:
            raise Graph6HeaderError("truncated size field")
        if vals[1] == 63:
            raise Graph6HeaderError("8-byte size form not supported")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        data = vals[4:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) < need:
        raise Graph6TruncatedError(f"need {need} data bytes for n={n}, got {len(data)}")
    if len(data) > need:
        raise Graph6TrailingDataError(f"{len(data) - need} unexpected trailing bytes")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (data[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, tuple(edges))


def parse_edge_list(text: str) -> Graph:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise EdgeListError(f"line {lineno}: non-integer token in {line!r}") from None
        if len(nums) != 2 or min(nums) < 0:
            raise EdgeListError(f"line {lineno}: expected two nonnegative integers")
        rows.append((lineno, nums[0], nums[1]))
    n = None
    if rows:
        # an "n m" header is recognised when the second number matches the edge
        # count; "a a" is always a self-loop, never a header
        _, a, b = rows[0]
        if a != b and b == len(rows) - 1 and a > max((max(r[1], r[2]) for r in rows[1:]), default=-1):
            n = a
            rows = rows[1:]
    seen = set()
    edges = []
    for lineno, u, v in rows:
        if u == v:
            raise EdgeListError(f"line {lineno}: self-loop at {u}")
        e = _norm(u, v)
        if e in seen:
            raise EdgeListError(f"line {lineno}: duplicate edge {e}")
        seen.add(e)
        edges.append(e)
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Graph(n, tuple(edges))


def emit_edge_list(g: Graph) -> str:
    if g.n == 0:
        return ""
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str, fmt: str = "graph6") -> Graph:
    if fmt == "graph6":
        return parse_graph6(text)
    if fmt == "edgelist":
        return parse_edge_list(text)
    raise GraphError(f"unknown graph format {fmt!r}")


# ----------------------------------------------------------------------------
# isthmuses and flaps


def isthmuses(g: Graph) -> frozenset[int]:
    """Edge ids whose removal increases the number of components."""
    disc = [-1] * g.n
    low = [0] * g.n
    out: set[int] = set()
    t = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        # iterative DFS: (vertex, parent edge id, iterator over incident edges)
        stack = [(root, -1, iter(g.incident[root]))]
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for eid in it:
                if eid == pe:
                    continue
                a, b = g.edges[eid]
                w = b if a == v else a
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, eid, iter(g.incident[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        out.add(pe)
    return frozenset(out)


def is_simple_cycle(g: Graph, c: Iterable[int]) -> bool:
    c = set(c)
    if len(c) < 3:
        return False
    deg: dict[int, int] = {}
    for eid in c:
        if not 0 <= eid < g.m:
            return False
        for x in g.edges[eid]:
            deg[x] = deg.get(x, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    return _edges_connected(g, c)


def _edges_connected(g: Graph, edge_ids: Iterable[int]) -> bool:
    edge_ids = list(edge_ids)
    if not edge_ids:
        return True
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in edge_ids:
        u, v = g.edges[eid]
        parent[find(u)] = find(v)
    return len({find(x) for x in parent}) == 1


@dataclass(frozen=True)
class Flap:
    edges: frozenset[int]
    attachments: frozenset[int]


def flaps(g: Graph, c: Iterable[int]) -> list[Flap]:
    """Flaps of the simple cycle with edge ids ``c``, ordered by smallest edge id."""
    c = frozenset(c)
    if not is_simple_cycle(g, c):
        raise GraphError("flaps() requires the edge set of a simple cycle")
    on_cycle = {x for eid in c for x in g.edges[eid]}
    rest = [eid for eid in range(g.m) if eid not in c]
    parent = {eid: eid for eid in rest}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # edges meeting at a vertex off the cycle lie on a common C-avoiding path
    by_vertex: dict[int, list[int]] = {}
    for eid in rest:
        for x in g.edges[eid]:
            if x not in on_cycle:
                by_vertex.setdefault(x, []).append(eid)
    for group in by_vertex.values():
        for other in group[1:]:
            parent[find(other)] = find(group[0])
    classes: dict[int, list[int]] = {}
    for eid in rest:
        classes.setdefault(find(eid), []).append(eid)
    out = []
    for members in classes.values():
        att = {x for eid in members for x in g.edges[eid] if x in on_cycle}
        out.append(Flap(frozenset(members), frozenset(att)))
    out.sort(key=lambda f: min(f.edges))
    return out


# ----------------------------------------------------------------------------
# minors


def _min_degree(h: Graph) -> int:
    return min((h.degree(v) for v in range(h.n)), default=0)


def _reduce_for_minor(g: Graph, hmin: int) -> Graph:
    """Shrink ``g`` without changing containment of any minor of min degree ``hmin``.

    Degree <= 1 vertices are deleted when ``hmin >= 2``; degree-2 vertices are
    suppressed (contracted into a neighbour) when ``hmin >= 3``.
    """
    if hmin < 2:
        return g
    nb = [set(s) for s in g.adj]
    alive = set(range(g.n))
    changed = True
    while changed:
        changed = False
        for v in list(alive):
            d = len(nb[v])
            if d <= 1:
                for w in nb[v]:
                    nb[w].discard(v)
                nb[v].clear()
                alive.discard(v)
                changed = True
            elif d == 2 and hmin >= 3:
                a, b = nb[v]
                nb[a].discard(v)
                nb[b].discard(v)
                nb[a].add(b)
                nb[b].add(a)
                nb[v].clear()
                alive.discard(v)
                changed = True
    keep = sorted(alive)
    pos = {v: i for i, v in enumerate(keep)}
    edges = {_norm(pos[u], pos[w]) for u in keep for w in nb[u] if u < w}
    return Graph(len(keep), tuple(sorted(edges)))


def minor_model(g: Graph, h: Graph) -> list[int] | None:
    """Branch-set witness: ``out[v]`` is the ``h``-vertex whose branch set holds ``v`` (or -1).

    Returned only for the unreduced brute-force path; reduced searches return a
    model of the reduced graph and are therefore exposed through :func:`is_minor`.
    """
    if h.n == 0:
        return [-1] * g.n
    if h.n > g.n or h.m > g.m:
        return None
    return kernels.minor_labels(list(g.adj_masks), list(h.adj_masks))


def is_minor(g: Graph, h: Graph) -> bool:
    """True iff ``h`` is a minor of ``g`` (disjoint connected branch sets, one edge per h-edge)."""
    if h.n == 0:
        return True
    if h.n > g.n or h.m > g.m:
        return False
    if h.is_connected() and h.n >= 2:
        r = _reduce_for_minor(g, _min_degree(h))
        if h.n > r.n or h.m > r.m:
            return False
        for comp in r.components():
            if len(comp) < h.n:
                continue
            sub, _ = r.induced_subgraph(comp)
            if sub.m < h.m:
                continue
            if kernels.connected_partition_minor(list(sub.adj_masks), list(h.adj_masks)):
                return True
        return False
    return kernels.minor_labels(list(g.adj_masks), list(h.adj_masks)) is not None


K33 = complete_bipartite(3, 3)
K5 = complete_graph(5)
K4 = complete_graph(4)
K23 = complete_bipartite(2, 3)


def is_planar_by_minors(g: Graph) -> bool:
    """Wagner's criterion; slow, kept as an oracle for :func:`is_planar`."""
    if g.n >= 3 and g.m > 3 * g.n - 6:
        return False
    return not is_minor(g, K5) and not is_minor(g, K33)


def is_outerplanar_by_minors(g: Graph) -> bool:
    if g.n >= 2 and g.m > 2 * g.n - 3:
        return False
    return not is_minor(g, K4) and not is_minor(g, K23)


def biconnected_components(g: Graph) -> list[list[int]]:
    """Edge-id lists of the blocks of ``g`` (isolated vertices contribute nothing)."""
    disc = [-1] * g.n
    low = [0] * g.n
    blocks: list[list[int]] = []
    estack: list[int] = []
    t = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(g.incident[root]))]
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for eid in it:
                if eid == pe:
                    continue
                a, b = g.edges[eid]
                w = b if a == v else a
                if disc[w] == -1:
                    estack.append(eid)
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, eid, iter(g.incident[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    estack.append(eid)
                    low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] >= disc[p]:
                        block = []
                        while True:
                            e = estack.pop()
                            block.append(e)
                            if e == pe:
                                break
                        blocks.append(sorted(block))
    return blocks


def _find_cycle(nb: dict[int, set[int]]) -> list[int]:
    start = min(nb)
    parent = {start: None}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in sorted(nb[v]):
            if w == parent[v]:
                continue
            if w in parent:
                # back edge closes a cycle: climb both ends to the common ancestor
                pa, x = [], v
                while x is not None:
                    pa.append(x)
                    x = parent[x]
                pb, x = [], w
                while x not in pa:
                    pb.append(x)
                    x = parent[x]
                return pa[: pa.index(x) + 1] + pb[::-1]
            parent[w] = v
            stack.append(w)
    raise GraphError("block without a cycle")


def _fragment_path(nb: dict[int, set[int]], placed: set[int], inside: set[int], a: int) -> list[int]:
    """Path from attachment ``a`` through ``inside`` to another placed vertex."""
    prev: dict[int, int | None] = {a: None}
    queue = [a]
    for x in queue:
        for y in sorted(nb[x]):
            if y in prev:
                continue
            if y in inside:
                prev[y] = x
                queue.append(y)
            elif x != a and y in placed:
                path = [y, x]
                while prev[x] is not None:
                    x = prev[x]
                    path.append(x)
                return path[::-1]
    raise GraphError("fragment with a single attachment in a 2-connected block")


def _block_planar(edges: list[tuple[int, int]]) -> bool:
    """Path-addition test (Demoucron, Malgrange and Pertuiset) on a 2-connected block."""
    nb: dict[int, set[int]] = {}
    for u, v in edges:
        nb.setdefault(u, set()).add(v)
        nb.setdefault(v, set()).add(u)
    if len(edges) > 3 * len(nb) - 6:
        return False
    cyc = _find_cycle(nb)
    faces = [list(cyc), list(reversed(cyc))]
    placed = set(cyc)
    placed_e = {_norm(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))}
    while len(placed_e) < len(edges):
        # fragments: (attachments, interior vertices); chords have no interior
        fragments: list[tuple[set[int], set[int]]] = []
        for u, v in edges:
            if u in placed and v in placed and _norm(u, v) not in placed_e:
                fragments.append(({u, v}, set()))
        seen: set[int] = set()
        for s in nb:
            if s in placed or s in seen:
                continue
            comp, stack, att = {s}, [s], set()
            seen.add(s)
            while stack:
                x = stack.pop()
                for y in nb[x]:
                    if y in placed:
                        att.add(y)
                    elif y not in seen:
                        seen.add(y)
                        comp.add(y)
                        stack.append(y)
            fragments.append((att, comp))
        best = None
        for att, inside in fragments:
            ok = [i for i, f in enumerate(faces) if att <= set(f)]
            if not ok:
                return False
            if best is None or len(ok) < len(best[2]):
                best = (att, inside, ok)
                if len(ok) == 1:
                    break
        att, inside, ok = best
        if inside:
            path = _fragment_path(nb, placed, inside, min(att))
        else:
            path = sorted(att)
        face = faces.pop(ok[0])
        i, j = face.index(path[0]), face.index(path[-1])
        interior = path[1:-1]
        if i <= j:
            arc1, arc2 = face[i : j + 1], face[j:] + face[: i + 1]
        else:
            arc1, arc2 = face[i:] + face[: j + 1], face[j : i + 1]
        faces.append(arc1 + interior[::-1])
        faces.append(arc2 + interior)
        placed.update(interior)
        for x, y in zip(path, path[1:]):
            placed_e.add(_norm(x, y))
    return True


def is_planar(g: Graph) -> bool:
    if g.n >= 3 and g.m > 3 * g.n - 6:
        return False
    for block in biconnected_components(g):
        if len(block) >= 9 and not _block_planar([g.edges[e] for e in block]):
            return False
    return True


def is_outerplanar(g: Graph) -> bool:
    """Outerplanar iff adding an apex adjacent to every vertex keeps the graph planar."""
    if g.n >= 2 and g.m > 2 * g.n - 3:
        return False
    if g.n <= 3:
        return True
    return is_planar(Graph(g.n + 1, g.edges + tuple((v, g.n) for v in range(g.n))))


# ----------------------------------------------------------------------------
# transforms


def identify_vertices_map(g: Graph, a: int, b: int) -> tuple[Graph, list[int], list[int | None]]:
    """Identify ``a`` and ``b``; return the graph plus vertex and edge maps.

    Parallel edges collapse onto the first surviving copy; the ``a``-``b`` edge,
    if present, disappears (its map entry is ``None``).
    """
    if a == b:
        raise GraphError("cannot identify a vertex with itself")
    if not (0 <= a < g.n and 0 <= b < g.n):
        raise GraphError("vertex out of range")
    vmap = []
    for v in range(g.n):
        w = a if v == b else v
        vmap.append(w - (1 if w > b else 0))
    emap: list[int | None] = []
    new_edges: list[tuple[int, int]] = []
    index: dict[tuple[int, int], int] = {}
    for u, v in g.edges:
        x, y = vmap[u], vmap[v]
        if x == y:
            emap.append(None)
            continue
        e = _norm(x, y)
        if e not in index:
            index[e] = len(new_edges)
            new_edges.append(e)
        emap.append(index[e])
    return Graph(g.n - 1, tuple(new_edges)), vmap, emap


def identify_vertices(g: Graph, a: int, b: int) -> Graph:
    return identify_vertices_map(g, a, b)[0]


def _is_clique(g: Graph, vs: Sequence[int]) -> bool:
    return all(g.has_edge(u, v) for u, v in itertools.combinations(vs, 2))


def clique_sum(g1: Graph, g2: Graph, mapping: dict[int, int],
               drop: Iterable[tuple[int, int]] = ()) -> Graph:
    """Glue ``g2`` onto ``g1`` along ``mapping`` (g1 clique vertex -> g2 clique vertex).

    Vertices of ``g1`` keep their ids; the remaining vertices of ``g2`` follow in
    increasing order.  ``drop`` lists clique edges (as g1 vertex pairs) to remove.
    """
    src = list(mapping)
    dst = [mapping[v] for v in src]
    if len(set(dst)) != len(dst):
        raise GraphError("clique map is not injective")
    if not (_is_clique(g1, src) and _is_clique(g2, dst)):
        raise GraphError("clique_sum requires cliques on both sides")
    back = {w: v for v, w in mapping.items()}
    rest = [w for w in range(g2.n) if w not in back]
    new_id = dict(back)
    for i, w in enumerate(rest):
        new_id[w] = g1.n + i
    edges = set(g1.edges)
    edges |= {_norm(new_id[u], new_id[v]) for u, v in g2.edges}
    for u, v in drop:
        e = _norm(u, v)
        if u not in mapping or v not in mapping or e not in edges:
            raise GraphError(f"drop edge {e} is not a glued clique edge")
        edges.discard(e)
    return Graph(g1.n + len(rest), tuple(sorted(edges)))


# ----------------------------------------------------------------------------
# subhamiltonicity


def cyclic_orders(n: int):
    """Cyclic orders of ``0..n-1`` with 0 first, one per reflection pair."""
    if n <= 2:
        yield tuple(range(n))
        return
    for rest in itertools.permutations(range(1, n)):
        if rest[0] < rest[-1]:
            yield (0,) + rest


def subhamiltonian_witness(g: Graph) -> tuple[int, ...] | None:
    """A cyclic vertex order whose Hamilton cycle keeps ``g`` planar, or ``None``.

    Graphs on fewer than three vertices are accepted with the identity order.
    """
    if g.n < 3:
        return tuple(range(g.n))
    if not is_planar(g):
        return None
    for order in cyclic_orders(g.n):
        ring = [(order[i], order[(i + 1) % g.n]) for i in range(g.n)]
        if is_planar(g.add_edges(ring)):
            return order
    return None


def is_subhamiltonian(g: Graph) -> bool:
    return subhamiltonian_witness(g) is not None

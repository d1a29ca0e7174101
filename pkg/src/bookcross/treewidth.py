"""Exact treewidth for small graphs and nice tree decompositions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Graph, SizeLimitError


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    tree: tuple[tuple[int, int], ...] = ()

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbours(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree:
            nb[a].append(b)
            nb[b].append(a)
        return nb


def _is_tree(td: TreeDecomposition) -> bool:
    k = len(td.bags)
    if k == 0:
        return True
    if len(td.tree) != k - 1:
        return False
    nb = td.neighbours()
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in nb[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == k


def _occurrences_connected(td: TreeDecomposition) -> bool:
    nb = td.neighbours()
    verts = set().union(*td.bags) if td.bags else set()
    for v in verts:
        holders = {i for i, b in enumerate(td.bags) if v in b}
        start = next(iter(holders))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in nb[x]:
                if y in holders and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != holders:
            return False
    return True


def validate_decomposition(g: Graph, td: TreeDecomposition) -> bool:
    if not _is_tree(td):
        return False
    covered = set().union(*td.bags) if td.bags else set()
    if covered != set(range(g.n)):
        return False
    for u, v in g.edges:
        if not any(u in b and v in b for b in td.bags):
            return False
    return _occurrences_connected(td)


# ---------------------------------------------------------------------------
# elimination orderings


def _higher_neighbours(adj: Sequence[int], eliminated: int, v: int) -> int:
    """Vertices outside ``eliminated`` reachable from ``v`` through ``eliminated``."""
    seen = 1 << v
    frontier = 1 << v
    out = 0
    while frontier:
        grow = 0
        f = frontier
        while f:
            low = f & -f
            grow |= adj[low.bit_length() - 1]
            f ^= low
        grow &= ~seen
        seen |= grow
        out |= grow & ~eliminated
        frontier = grow & eliminated
    return out


def decomposition_from_order(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    if g.n == 0:
        return TreeDecomposition((frozenset(),), ())
    adj = g.adj_masks
    rank = {v: i for i, v in enumerate(order)}
    eliminated = 0
    bags = []
    higher = []
    for v in order:
        q = _higher_neighbours(adj, eliminated, v)
        hv = [w for w in range(g.n) if q >> w & 1]
        bags.append(frozenset(hv + [v]))
        higher.append(hv)
        eliminated |= 1 << v
    edges = []
    roots = []
    for i, hv in enumerate(higher):
        if hv:
            edges.append((i, min(rank[w] for w in hv)))
        else:
            roots.append(i)
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(tuple(bags), tuple(edges))


def _min_fill_order(g: Graph) -> list[int]:
    nb = [set(s) for s in g.adj]
    alive = set(range(g.n))
    order = []
    while alive:
        def fill(v):
            ns = list(nb[v])
            return sum(1 for i, a in enumerate(ns) for b in ns[i + 1:] if b not in nb[a])
        v = min(sorted(alive), key=lambda x: (fill(x), len(nb[x])))
        ns = list(nb[v])
        for i, a in enumerate(ns):
            for b in ns[i + 1:]:
                nb[a].add(b)
                nb[b].add(a)
        for a in ns:
            nb[a].discard(v)
        alive.discard(v)
        order.append(v)
    return order


def treewidth_upperbound(g: Graph) -> tuple[int, TreeDecomposition]:
    td = decomposition_from_order(g, _min_fill_order(g))
    return td.width, td


def treewidth_exact(g: Graph, max_n: int = 20) -> tuple[int, TreeDecomposition]:
    """Exact treewidth by branch and bound over elimination orders.

    States are sets of eliminated vertices; a state is re-expanded only when
    reached with a strictly smaller running width.
    """
    if g.n > max_n:
        raise SizeLimitError(f"treewidth_exact limited to {max_n} vertices, got {g.n}")
    ub, ub_td = treewidth_upperbound(g)
    if g.n == 0:
        return ub_td.width, ub_td
    lower = _degeneracy(g)
    if ub <= lower:
        return ub, ub_td
    adj = g.adj_masks
    full = (1 << g.n) - 1
    best = [ub]
    best_order: list[list[int]] = [[]]
    seen: dict[int, int] = {}
    order: list[int] = []

    def rec(elim: int, width: int):
        if width >= best[0]:
            return
        remaining = full & ~elim
        r = bin(remaining).count("1")
        if r - 1 <= width:
            # any order of the rest keeps the width
            best[0] = width
            best_order[0] = order + [v for v in range(g.n) if remaining >> v & 1]
            return
        if seen.get(elim, best[0] + 1) <= width:
            return
        seen[elim] = width
        cands = []
        for v in range(g.n):
            if remaining >> v & 1:
                d = bin(_higher_neighbours(adj, elim, v)).count("1")
                cands.append((d, v))
        cands.sort()
        # a vertex whose neighbourhood is a clique can be eliminated first
        for d, v in cands:
            q = _higher_neighbours(adj, elim, v)
            if _is_clique_mask(adj, elim, q):
                order.append(v)
                rec(elim | (1 << v), max(width, d))
                order.pop()
                return
        for d, v in cands:
            if max(width, d) >= best[0]:
                break
            order.append(v)
            rec(elim | (1 << v), max(width, d))
            order.pop()

    rec(0, 0)
    if best_order[0]:
        td = decomposition_from_order(g, best_order[0])
        return td.width, td
    return ub, ub_td


def _is_clique_mask(adj, elim, q) -> bool:
    m = q
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        others = q & ~low
        if _higher_neighbours(adj, elim, v) & others != others:
            return False
    return True


def _degeneracy(g: Graph) -> int:
    nb = [set(s) for s in g.adj]
    alive = set(range(g.n))
    best = 0
    while alive:
        v = min(alive, key=lambda x: len(nb[x]))
        best = max(best, len(nb[v]))
        for w in nb[v]:
            nb[w].discard(v)
        alive.discard(v)
    return best


# ---------------------------------------------------------------------------
# nice decompositions


@dataclass(frozen=True)
class NiceNode:
    kind: str  # leaf | introduce | forget | join | introduce_edge
    bag: frozenset[int]
    children: tuple[int, ...] = ()
    vertex: int | None = None
    edge: int | None = None


@dataclass
class NiceTreeDecomposition:
    nodes: list[NiceNode] = field(default_factory=list)
    root: int = -1

    @property
    def width(self) -> int:
        return max((len(nd.bag) for nd in self.nodes), default=0) - 1

    def add(self, node: NiceNode) -> int:
        self.nodes.append(node)
        return len(self.nodes) - 1

    def postorder(self) -> list[int]:
        out = []
        stack = [(self.root, False)]
        while stack:
            x, done = stack.pop()
            if done:
                out.append(x)
                continue
            stack.append((x, True))
            for c in reversed(self.nodes[x].children):
                stack.append((c, False))
        return out

    def as_tree_decomposition(self) -> TreeDecomposition:
        edges = [(i, c) for i, nd in enumerate(self.nodes) for c in nd.children]
        return TreeDecomposition(tuple(nd.bag for nd in self.nodes), tuple(edges))


def make_nice(td: TreeDecomposition) -> NiceTreeDecomposition:
    if not _is_tree(td) or not td.bags:
        raise DecompositionError("decomposition is not a tree")
    if not _occurrences_connected(td):
        raise DecompositionError("bags holding a vertex do not form a connected subtree")
    nb = td.neighbours()
    out = NiceTreeDecomposition()

    def chain(node: int, bag: frozenset[int], target: frozenset[int]) -> int:
        for v in sorted(bag - target):
            bag = bag - {v}
            node = out.add(NiceNode("forget", bag, (node,), vertex=v))
        for v in sorted(target - bag):
            bag = bag | {v}
            node = out.add(NiceNode("introduce", bag, (node,), vertex=v))
        return node

    def build(t: int, parent: int) -> int:
        bag = td.bags[t]
        kids = [build(c, t) for c in nb[t] if c != parent]
        kids = [chain(k, out.nodes[k].bag, bag) for k in kids]
        if not kids:
            leaf = out.add(NiceNode("leaf", frozenset()))
            return chain(leaf, frozenset(), bag)
        while len(kids) > 1:
            a, b = kids.pop(), kids.pop()
            kids.append(out.add(NiceNode("join", bag, (b, a))))
        return kids[0]

    top = build(0, -1)
    out.root = chain(top, out.nodes[top].bag, frozenset())
    return out


def validate_nice(g: Graph, ntd: NiceTreeDecomposition) -> bool:
    """Decomposition invariants plus the local shape rules of each node kind."""
    if ntd.nodes[ntd.root].bag:
        return False
    for nd in ntd.nodes:
        kids = [ntd.nodes[c] for c in nd.children]
        if nd.kind == "leaf":
            ok = not kids and not nd.bag
        elif nd.kind == "introduce":
            ok = len(kids) == 1 and nd.vertex not in kids[0].bag and nd.bag == kids[0].bag | {nd.vertex}
        elif nd.kind == "forget":
            ok = len(kids) == 1 and nd.vertex in kids[0].bag and nd.bag == kids[0].bag - {nd.vertex}
        elif nd.kind == "join":
            ok = len(kids) == 2 and kids[0].bag == nd.bag == kids[1].bag
        elif nd.kind == "introduce_edge":
            ok = len(kids) == 1 and kids[0].bag == nd.bag and set(g.edges[nd.edge]) <= nd.bag
        else:
            ok = False
        if not ok:
            return False
    return validate_decomposition(g, ntd.as_tree_decomposition())


def with_edge_introductions(g: Graph, ntd: NiceTreeDecomposition) -> NiceTreeDecomposition:
    """Copy of ``ntd`` with an ``introduce_edge`` node below the first forget of each edge's endpoint."""
    out = NiceTreeDecomposition()
    done: set[int] = set()
    remap: dict[int, int] = {}
    for i in ntd.postorder():
        nd = ntd.nodes[i]
        kids = tuple(remap[c] for c in nd.children)
        if nd.kind == "forget":
            (child,) = kids
            bag = ntd.nodes[nd.children[0]].bag
            for eid in g.incident[nd.vertex]:
                if eid in done:
                    continue
                u, v = g.edges[eid]
                if u in bag and v in bag:
                    done.add(eid)
                    child = out.add(NiceNode("introduce_edge", bag, (child,), edge=eid))
            kids = (child,)
        remap[i] = out.add(NiceNode(nd.kind, nd.bag, kids, nd.vertex, nd.edge))
    out.root = remap[ntd.root]
    if len(done) != g.m:
        raise DecompositionError("decomposition does not cover every edge")
    return out


# ---------------------------------------------------------------------------
# text format


def format_decomposition(td: TreeDecomposition) -> str:
    lines = [f"bag {i}: " + " ".join(map(str, sorted(b))) for i, b in enumerate(td.bags)]
    lines += [f"edge {a} {b}" for a, b in td.tree]
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str) -> TreeDecomposition:
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("bag "):
            head, _, rest = line[4:].partition(":")
            bags[int(head)] = frozenset(int(x) for x in rest.split())
        elif line.startswith("edge "):
            a, b = line[5:].split()
            edges.append((int(a), int(b)))
        else:
            raise DecompositionError(f"unrecognised line {line!r}")
    if sorted(bags) != list(range(len(bags))):
        raise DecompositionError("bag ids must be 0..k-1")
    return TreeDecomposition(tuple(bags[i] for i in range(len(bags))), tuple(edges))


def decomposition_of(bags: Iterable[Iterable[int]], tree: Iterable[tuple[int, int]]) -> TreeDecomposition:
    return TreeDecomposition(tuple(frozenset(b) for b in bags), tuple(tree))

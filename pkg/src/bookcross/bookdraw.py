"""Book drawings, crossing counts, exact solvers and crossing diagrams.

Spine orders are cyclic: two same-page edges cross iff their endpoints
interleave around the circle, so rotating or reflecting an order never
changes a count.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from . import kernels
from .graph import Graph, GraphError, SizeLimitError

CR1_MAX_N = 11
CR2_MAX_N = 9
DIAGRAM_MAX_K = 2


class DrawingError(GraphError):
    pass


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class BookDrawing:
    order: tuple[int, ...]
    pages: tuple[int, ...]
    page_count: int = 1

    def validate(self, g: Graph) -> None:
        if sorted(self.order) != list(range(g.n)):
            raise DrawingError("spine order is not a permutation of the vertices")
        if len(self.pages) != g.m:
            raise DrawingError("page assignment does not cover every edge")
        if self.page_count not in (1, 2):
            raise DrawingError("page_count must be 1 or 2")
        if any(p not in range(self.page_count) for p in self.pages):
            raise DrawingError("page index out of range")

    def positions(self) -> list[int]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return pos

    def to_text(self, g: Graph) -> str:
        lines = ["order: " + " ".join(map(str, self.order))]
        for p in range(2):
            es = [f"{u}-{v}" for (u, v), q in zip(g.edges, self.pages) if q == p]
            lines.append(f"page{p}: " + " ".join(es))
        return "\n".join(lines) + "\n"


def parse_drawing(text: str, g: Graph) -> BookDrawing:
    order: tuple[int, ...] | None = None
    pages = [-1] * g.m
    page_count = 1
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip()
        try:
            if key == "order":
                order = tuple(int(t) for t in rest.split())
            elif key in ("page0", "page1"):
                p = int(key[-1])
                for tok in rest.split():
                    u, v = (int(x) for x in tok.split("-"))
                    pages[g.edge_id(u, v)] = p
                    if p == 1:
                        page_count = 2
            else:
                raise DrawingError(f"unknown drawing line {key!r}")
        except (ValueError, KeyError) as exc:
            raise DrawingError(f"bad drawing line {line!r}") from exc
    if order is None or -1 in pages:
        raise DrawingError("drawing needs an order line and a page for every edge")
    d = BookDrawing(order, tuple(pages), page_count)
    d.validate(g)
    return d


def interleave(a: int, b: int, c: int, d: int) -> bool:
    """Do chords (a,b) and (c,d) between spine positions interleave?"""
    if a > b:
        a, b = b, a
    if c > d:
        c, d = d, c
    return a < c < b < d or c < a < d < b


def crossing_pairs(g: Graph, d: BookDrawing) -> list[tuple[int, int]]:
    d.validate(g)
    pos = d.positions()
    out = []
    for i, j in kernels.conflict_pairs(pos, list(g.edges)):
        if d.pages[i] == d.pages[j]:
            out.append((i, j))
    return out


def crossings(g: Graph, d: BookDrawing) -> int:
    return len(crossing_pairs(g, d))


def _by_component(g: Graph, solve) -> tuple[int, list[int], list[int]]:
    total = 0
    order: list[int] = []
    pages = [0] * g.m
    for comp in g.components():
        sub, keep = g.induced_subgraph(comp)
        k, o, pg = solve(sub.n, list(sub.edges))
        total += k
        order.extend(keep[v] for v in o)
        for i, (u, v) in enumerate(sub.edges):
            pages[g.edge_id(keep[u], keep[v])] = pg[i]
    return total, order, pages


def cr1_exact(g: Graph, max_n: int = CR1_MAX_N) -> tuple[int, BookDrawing]:
    """Exact 1-page crossing number with a witness drawing."""
    if g.n > max_n:
        raise SizeLimitError(f"cr1_exact limited to n <= {max_n}")
    k, order, _ = _by_component(g, lambda n, es: kernels.cr1_search(n, es) + ([0] * len(es),))
    return k, BookDrawing(tuple(order), (0,) * g.m, 1)


def cr2_exact(g: Graph, max_n: int = CR2_MAX_N) -> tuple[int, BookDrawing]:
    """Exact 2-page crossing number with a witness drawing."""
    if g.n > max_n:
        raise SizeLimitError(f"cr2_exact limited to n <= {max_n}")
    k, order, pages = _by_component(g, kernels.cr2_search)
    return k, BookDrawing(tuple(order), tuple(pages), 2)


def is_2page_planar(g: Graph, max_n: int = CR2_MAX_N) -> bool:
    return cr2_exact(g, max_n)[0] == 0


# ---------------------------------------------------------------------------
# crossing diagrams


def _angles(npoints: int) -> list[float]:
    # slightly irregular spacing keeps three chords from meeting in one point
    return [2 * math.pi * (i + 0.1 * math.sin(1.7 * i + 0.3)) / npoints for i in range(npoints)]


@dataclass(frozen=True)
class CrossingDiagram:
    """Segments between points 0..npoints-1 placed in order around a circle."""

    npoints: int
    segments: tuple[tuple[int, int], ...]
    colors: tuple[int, ...] | None = None

    def __post_init__(self):
        segs = tuple(tuple(sorted(s)) for s in self.segments)
        object.__setattr__(self, "segments", segs)
        if self.colors is not None:
            object.__setattr__(self, "colors", tuple(self.colors))
            if len(self.colors) != len(segs):
                raise DiagramError("one colour per segment")

    @property
    def pages(self) -> int:
        return 1 if self.colors is None else 2

    def color(self, s: int) -> int:
        return 0 if self.colors is None else self.colors[s]

    def crossing_pairs(self) -> list[tuple[int, int]]:
        out = []
        segs = self.segments
        for i in range(len(segs)):
            a, b = segs[i]
            for j in range(i + 1, len(segs)):
                c, d = segs[j]
                if len({a, b, c, d}) == 4 and interleave(a, b, c, d) and self.color(i) == self.color(j):
                    out.append((i, j))
        return out

    @property
    def k(self) -> int:
        return len(self.crossing_pairs())

    def problems(self) -> list[str]:
        out = []
        segs = self.segments
        if len(set(segs)) != len(segs):
            out.append("duplicate segment")
        for a, b in segs:
            if a == b or not (0 <= a < self.npoints and 0 <= b < self.npoints):
                out.append(f"bad segment {a}-{b}")
        used = {p for s in segs for p in s}
        if used != set(range(self.npoints)):
            out.append("point not incident to a segment")
        crossed = {i for pair in self.crossing_pairs() for i in pair}
        if crossed != set(range(len(segs))):
            out.append("uncrossed segment")
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def rotated(self, r: int) -> "CrossingDiagram":
        n = self.npoints
        segs = [((a - r) % n, (b - r) % n) for a, b in self.segments]
        return CrossingDiagram(n, tuple(segs), self.colors)

    def _word(self) -> tuple:
        return tuple(sorted((a, b, self.color(i)) for i, (a, b) in enumerate(self.segments)))

    def canonical(self) -> "CrossingDiagram":
        if self.npoints == 0:
            return self
        best = min((self.rotated(r) for r in range(self.npoints)), key=lambda d: d._word())
        w = best._word()
        return CrossingDiagram(
            self.npoints,
            tuple((a, b) for a, b, _ in w),
            None if self.colors is None else tuple(c for _, _, c in w),
        )

    @property
    def canonical_key(self) -> bytes:
        c = self.canonical()
        body = ",".join(f"{a}-{b}:{c.color(i)}" for i, (a, b) in enumerate(c.segments))
        return f"{self.pages}|{self.npoints}|{body}".encode()

    @property
    def code(self) -> str:
        """Compact token used inside transform ids, e.g. ``4|0-2:0,1-3:0``."""
        segs = ",".join(f"{a}-{b}:{self.color(i)}" for i, (a, b) in enumerate(self.segments))
        tag = "" if self.colors is None else "c"
        return f"{self.npoints}{tag}|{segs}"

    @classmethod
    def from_code(cls, code: str) -> "CrossingDiagram":
        try:
            head, _, body = code.partition("|")
            two = head.endswith("c")
            npoints = int(head[:-1] if two else head)
            segs, cols = [], []
            for tok in filter(None, body.split(",")):
                ends, _, col = tok.partition(":")
                a, b = (int(x) for x in ends.split("-"))
                segs.append((a, b))
                cols.append(int(col or 0))
        except ValueError as exc:
            raise DiagramError(f"bad diagram code {code!r}") from exc
        return cls(npoints, tuple(segs), tuple(cols) if two else None)

    def crossings_along(self) -> list[list[int]]:
        """For each segment, crossing-pair indices ordered from its first to its second endpoint."""
        ang = _angles(max(self.npoints, 1))
        pts = [(math.cos(t), math.sin(t)) for t in ang]
        pairs = self.crossing_pairs()
        along: list[list[tuple[float, int]]] = [[] for _ in self.segments]
        for idx, (i, j) in enumerate(pairs):
            (a, b), (c, d) = self.segments[i], self.segments[j]
            p, q, r, s = pts[a], pts[b], pts[c], pts[d]
            den = (q[0] - p[0]) * (s[1] - r[1]) - (q[1] - p[1]) * (s[0] - r[0])
            t = ((r[0] - p[0]) * (s[1] - r[1]) - (r[1] - p[1]) * (s[0] - r[0])) / den
            u = ((r[0] - p[0]) * (q[1] - p[1]) - (r[1] - p[1]) * (q[0] - p[0])) / den
            along[i].append((t, idx))
            along[j].append((u, idx))
        return [[idx for _, idx in sorted(lst)] for lst in along]


EMPTY_DIAGRAM = CrossingDiagram(0, ())


def _segment_sets(npoints: int, max_segments: int):
    pairs = list(itertools.combinations(range(npoints), 2))
    for r in range(1, max_segments + 1):
        for segs in itertools.combinations(pairs, r):
            if {p for s in segs for p in s} == set(range(npoints)):
                yield segs


def enumerate_crossing_diagrams(
    k: int, pages: int = 1, exact: bool = True, max_k: int = DIAGRAM_MAX_K
) -> list[CrossingDiagram]:
    """Canonical diagrams with exactly ``k`` crossings (``exact=False``: at most ``k``)."""
    if k < 0 or k > max_k:
        raise DiagramError(f"k must be in 0..{max_k}")
    if pages not in (1, 2):
        raise DiagramError("pages must be 1 or 2")
    if not exact:
        out = []
        for kk in range(k + 1):
            out.extend(enumerate_crossing_diagrams(kk, pages, True, max_k))
        return out
    if k == 0:
        return [EMPTY_DIAGRAM if pages == 1 else CrossingDiagram(0, (), ())]
    seen: dict[bytes, CrossingDiagram] = {}
    for npoints in range(4, 4 * k + 1):
        for segs in _segment_sets(npoints, 2 * k):
            colourings = [None] if pages == 1 else itertools.product((0, 1), repeat=len(segs))
            for cols in colourings:
                d = CrossingDiagram(npoints, segs, cols)
                if d.k != k or not d.is_valid():
                    continue
                c = d.canonical()
                seen.setdefault(c.canonical_key, c)
    return [seen[key] for key in sorted(seen)]


# ---------------------------------------------------------------------------
# SVG


def render_svg(g: Graph, d: BookDrawing, width: int = 640) -> str:
    """Arc diagram: spine left to right, page 0 above, page 1 below."""
    d.validate(g)
    n = g.n
    gap = width / (n + 1) if n else width / 2
    height = int(width * 0.75)
    mid = height / 2
    pos = d.positions()
    x = [gap * (pos[v] + 1) for v in range(n)]
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<line x1="0" y1="{mid}" x2="{width}" y2="{mid}" stroke="black" stroke-width="2"/>',
    ]
    colours = ("#1f5fa8", "#b8412c")
    for (u, v), p in zip(g.edges, d.pages):
        x0, x1 = sorted((x[u], x[v]))
        r = (x1 - x0) / 2
        sweep = 1 if p == 0 else 0
        out.append(
            f'<path d="M {x0:.2f} {mid} A {r:.2f} {r:.2f} 0 0 {sweep} {x1:.2f} {mid}" '
            f'fill="none" stroke="{colours[p]}" stroke-width="1.5"/>'
        )
    for v in range(n):
        label = escape(str(g.labels[v]) if g.labels else str(v))
        out.append(f'<circle cx="{x[v]:.2f}" cy="{mid}" r="5" fill="black"/>')
        out.append(f'<text x="{x[v]:.2f}" y="{mid + 20}" font-size="12" text-anchor="middle">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

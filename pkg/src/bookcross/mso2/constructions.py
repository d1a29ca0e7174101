"""The crossing formulas: one page (``onepage_k``), two pages (``twopage``)
and two pages with crossings (``zeta_k``).

Inside the two-page formulas the set ``X_c`` is required to be a cactus
(every edge on a cycle, no two vertices of a cycle joined outside it).  Its
cycles are then exactly its blocks, which lets "the cycles of X_c" be
quantified as subsets ``C`` of ``X_c`` with ``cycle(C)``.
"""
from __future__ import annotations

import itertools
from typing import Sequence

from ..bookdraw import CrossingDiagram, enumerate_crossing_diagrams, interleave
from .library import (
    Namer,
    connected_vertices,
    cycle,
    exists_block,
    mem,
    on_edges,
    outerplanar_f,
    partition_chain,
    planar_f,
    register_kernel,
    relativize,
    relativize_edges,
    subset_guard,
    superset_guard,
)
from .syntax import (
    FALSE,
    TRUE,
    And,
    Eq,
    Formula,
    FormulaError,
    Implies,
    In,
    Inc,
    Interpreted,
    Not,
    conj,
    disj,
    exists,
    forall,
    neq,
)

ONEPAGE_MAX_K = 2
ZETA_MAX_K = 1


# ---------------------------------------------------------------------------
# one page


def theta1(W, F, ns: Namer) -> Formula:
    """Every vertex of W is an endpoint of an edge of F."""
    v, e = ns("v"), ns("e")
    return forall("v", v, Implies(mem(v, W), exists("e", e, conj(mem(e, F), Inc(e, v)))))


def theta2(F, W, ns: Namer) -> Formula:
    """F contains every edge with both endpoints in W."""
    e, v = ns("e"), ns("v")
    return forall("e", e, Implies(forall("v", v, Implies(Inc(e, v), mem(v, W))), mem(e, F)))


def theta3(ui: str, uj: str, ns: Namer) -> Formula:
    """No edge between U_i and U_j."""
    u, e, v = ns("u"), ns("e"), ns("v")
    return Not(exists("v", u, conj(In(u, ui), exists("e", e, conj(Inc(e, u), exists("v", v, conj(Inc(e, v), In(v, uj))))))))


def theta4_identify(u: str, vi: str, vj: str, ns: Namer | None = None) -> Formula:
    """U plus v_i and v_j, with v_i and v_j identified, is outerplanar.

    Necessary for the pocket property but not sufficient; kept for reference
    and for exercising the identify transform.
    """
    return Interpreted("identify", (vi, vj), relativize(outerplanar_f(), u, [vi, vj]))


def _virtual_connected(s: str, a: str, b: str, ns: Namer) -> Formula:
    """``s`` is connected in the graph with an extra edge between a and b."""
    Z, x, y, p, e, q = ns("Z"), ns("x"), ns("y"), ns("p"), ns("e"), ns("q")

    def split(c, d):
        return conj(In(c, Z), In(d, s), Not(In(d, Z)))

    return Not(exists("V", Z, conj(
        subset_guard("v", Z, lambda t: In(t, s), ns),
        exists("v", x, In(x, Z)),
        exists("v", y, conj(In(y, s), Not(In(y, Z)))),
        Not(exists("v", p, conj(In(p, Z), exists("e", e, conj(Inc(e, p), exists("v", q, conj(
            Inc(e, q), In(q, s), Not(In(q, Z))))))))),
        Not(disj(split(a, b), split(b, a))))))


def _virtual_minor(h, u: str, a: str, b: str, ns: Namer) -> Formula:
    """``h`` is a minor of the subgraph induced by U plus a and b, with an edge a-b added."""
    from .library import adjacent_sets

    sets = [ns("M") for _ in range(h.n)]
    conjuncts: list[Formula] = []
    for i, s in enumerate(sets):
        earlier = sets[:i]
        conjuncts.append(subset_guard("v", s, lambda x, earlier=earlier: conj(
            disj(In(x, u), Eq(x, a), Eq(x, b)), *(Not(In(x, t)) for t in earlier)), ns))
        y = ns("y")
        conjuncts.append(exists("v", y, In(y, s)))
        for j in range(i):
            if h.has_edge(i, j):
                t = sets[j]
                conjuncts.append(disj(adjacent_sets(t, s, ns),
                                      conj(In(a, t), In(b, s)), conj(In(b, t), In(a, s))))
        conjuncts.append(_virtual_connected(s, a, b, ns))
    return exists_block([("V", s) for s in sets], conjuncts)


def _single_bridge(u: str, a: str, b: str, ns: Namer) -> Formula:
    """At most one component of U is adjacent to both a and b."""

    def touches(z, anchor):
        t, f = ns("t"), ns("f")
        return exists("v", t, conj(In(t, z), exists("e", f, conj(Inc(f, t), Inc(f, anchor)))))

    def component(z):
        # z is a nonempty connected subset of U with no edge leaving it inside U
        x, e, y = ns("x"), ns("e"), ns("y")
        closed = Not(exists("v", x, conj(In(x, z), exists("e", e, conj(Inc(e, x), exists("v", y, conj(
            Inc(e, y), In(y, u), Not(In(y, z)))))))))
        return conj(subset_guard("v", z, lambda t: In(t, u), ns), closed, connected_vertices(z, ns),
                    touches(z, a), touches(z, b))

    z1, z2, x = ns("Z"), ns("Z"), ns("x")
    return Not(exists("V", z1, conj(component(z1), exists("V", z2, conj(
        component(z2), exists("v", x, conj(In(x, z2), Not(In(x, z1)))))))))


def theta4(u: str, vi: str, vj: str, ns: Namer) -> Formula:
    """U plus v_i and v_j has an outerplanar drawing with v_i and v_j consecutive.

    Equivalently: adding the edge v_i v_j keeps it outerplanar and at most one
    component of U is adjacent to both anchors.
    """
    from ..graph import K4, K23
    from ..pagechar import _pocket_ok

    f = conj(Not(_virtual_minor(K4, u, vi, vj, ns)), Not(_virtual_minor(K23, u, vi, vj, ns)),
             _single_bridge(u, vi, vj, ns))

    def kernel(g, env):
        us = frozenset(x for x in range(g.n) if env[u] >> x & 1)
        return _pocket_ok(g, us, env[vi], env[vj])

    return register_kernel(f, kernel)


def theta_anchor(u: str, ws: Sequence[str], vi: str, vj: str, ns: Namer) -> Formula:
    """No vertex of U is adjacent to a vertex of W other than v_i and v_j."""
    x, e, y = ns("x"), ns("e"), ns("y")
    return Not(exists("v", x, conj(In(x, u), exists("e", e, conj(Inc(e, x), exists("v", y, conj(
        Inc(e, y), mem(y, list(ws)), neq(y, vi), neq(y, vj))))))))


def build_theta_1page(i: int, *args, ns: Namer | None = None) -> Formula:
    """θ_i of the one-page characterization.

    θ1(W, F), θ2(F, W), θ3(U_i, U_j), θ4(U, v_i, v_j).  W and F may be set
    variable names or lists of element variables (the tuple form).
    ``build_theta_1page(5, U, W, v_i, v_j)`` is the anchor condition.
    """
    ns = ns or Namer(avoid=[a for x in args for a in ([x] if isinstance(x, str) else x)])
    want = {1: 2, 2: 2, 3: 2, 4: 3, 5: 4}
    if i not in want:
        raise FormulaError("theta index must be 1..5")
    if len(args) != want[i]:
        raise FormulaError(f"theta{i} takes {want[i]} arguments")
    return {1: theta1, 2: theta2, 3: theta3, 4: theta4, 5: theta_anchor}[i](*args, ns)


def _diagram_vars(d: CrossingDiagram, ns: Namer) -> tuple[list[str], list[str], list[tuple[str, str]]]:
    """Point and segment variables, plus a binding order (segment, then its new points)."""
    vs = [ns("p") for _ in range(d.npoints)]
    es = [ns("s") for _ in d.segments]
    order: list[tuple[str, str]] = []
    seen: set[int] = set()
    for s, (p, q) in enumerate(d.segments):
        order.append(("e", es[s]))
        for x in (p, q):
            if x not in seen:
                seen.add(x)
                order.append(("v", vs[x]))
    for x in range(d.npoints):
        if x not in seen:
            order.append(("v", vs[x]))
    return vs, es, order


def alpha_parts(d: CrossingDiagram, vs: Sequence[str], es: Sequence[str]) -> list[Formula]:
    if len(vs) != d.npoints or len(es) != len(d.segments):
        raise FormulaError("variable counts must match the diagram's points and segments")
    parts: list[Formula] = []
    for s, (p, q) in enumerate(d.segments):
        parts.append(Inc(es[s], vs[p]))
        parts.append(Inc(es[s], vs[q]))
    for i in range(len(vs)):
        for j in range(i):
            parts.append(neq(vs[i], vs[j]))
    for i in range(len(es)):
        for j in range(i):
            parts.append(neq(es[i], es[j]))
    return parts


def build_alpha(d: CrossingDiagram, vs: Sequence[str], es: Sequence[str]) -> Formula:
    """The vertices and edges sit in configuration ``d``."""
    parts = alpha_parts(d, vs, es)
    return conj(*parts) if parts else TRUE


def _adjacent(p: str, q: str, ns: Namer) -> Formula:
    e = ns("e")
    return exists("e", e, conj(Inc(e, p), Inc(e, q)))


def theta2_chords(d: CrossingDiagram, vs: Sequence[str], ns: Namer) -> list[Formula]:
    """Edges among W besides the segments are chords crossing nothing.

    This replaces enumerating every completion of ``d`` by its uncrossed
    chords: a chord meeting a segment is not an edge, and two interleaving
    optional chords are not both edges.
    """
    n = d.npoints
    have = {tuple(sorted(s)) for s in d.segments}

    def crosses(c, s):
        return len({*c, *s}) == 4 and interleave(*c, *s)

    out: list[Formula] = []
    free = []
    for c in itertools.combinations(range(n), 2):
        if c in have:
            continue
        if any(crosses(c, s) for s in d.segments):
            out.append(Not(_adjacent(vs[c[0]], vs[c[1]], ns)))
        else:
            free.append(c)
    for c1, c2 in itertools.combinations(free, 2):
        if crosses(c1, c2):
            out.append(Not(conj(_adjacent(vs[c1[0]], vs[c1[1]], ns), _adjacent(vs[c2[0]], vs[c2[1]], ns))))
    return out


def build_beta(d: CrossingDiagram, ns: Namer | None = None) -> Formula:
    """A one-page drawing whose crossed chords among W form diagram ``d``.

    W is the point set of ``d``; the remaining edges among W must be chords
    that cross nothing, so the drawing has exactly ``d.k`` crossings.
    """
    if d.k == 0 or d.pages != 1:
        raise FormulaError("beta needs a one-page diagram with at least one crossing")
    ns = ns or Namer()
    vs, es, order = _diagram_vars(d, ns)
    L = len(vs)
    us = [ns("U") for _ in range(L)]
    conj_list = alpha_parts(d, vs, es)
    conj_list.append(theta1(vs, es, ns))
    conj_list.extend(theta2_chords(d, vs, ns))
    for i, u in enumerate(us):
        def outside(x, i=i):
            return conj(*(neq(x, v) for v in vs), *(Not(In(x, t)) for t in us[:i]))
        conj_list.append(subset_guard("v", u, outside, ns))
        if i == L - 1:
            conj_list.append(superset_guard("v", u, outside, ns))
        for j in range(i):
            conj_list.append(theta3(us[j], u, ns))
        a, b = vs[i], vs[(i + 1) % L]
        conj_list.append(theta_anchor(u, vs, a, b, ns))
        conj_list.append(theta4(u, a, b, ns))
    return exists_block(order + [("V", u) for u in us], conj_list)


def onepage_diagrams(k: int, max_k: int = ONEPAGE_MAX_K) -> list[CrossingDiagram]:
    """The crossing diagrams with 1..k crossings that the one-page formula ranges over."""
    out = []
    for j in range(1, k + 1):
        out.extend(enumerate_crossing_diagrams(j, 1, True, max_k))
    return out


def build_onepage(k: int, max_k: int = ONEPAGE_MAX_K) -> Formula:
    """At most ``k`` crossings in one page (outerplanar when k = 0)."""
    if k < 0 or k > max_k:
        raise FormulaError(f"onepage supports 0 <= k <= {max_k}")
    ns = Namer()
    out = [outerplanar_f(ns)]
    for d in onepage_diagrams(k, max_k):
        out.append(build_beta(d, ns))
    return disj(*out)


# ---------------------------------------------------------------------------
# two pages


def _sub(x: str, big: str, ns: Namer) -> Formula:
    return subset_guard("e", x, lambda f: In(f, big), ns)


def cactus(xc: str, ns: Namer) -> Formula:
    """Every edge of X_c lies on a cycle of X_c and no two vertices of such a cycle are joined outside it."""
    e, C = ns("e"), ns("C")
    part1 = forall("e", e, Implies(In(e, xc), exists("E", C, conj(_sub(C, xc, ns), In(e, C), cycle(C, ns)))))
    C2, x, y, Z = ns("C"), ns("x"), ns("y"), ns("Z")
    w, a, f, b = ns("w"), ns("a"), ns("f"), ns("b")
    closed = forall("v", a, Implies(In(a, Z), forall("e", f, Implies(
        conj(Inc(f, a), In(f, xc), Not(In(f, C2))),
        forall("v", b, Implies(Inc(f, b), In(b, Z)))))))
    linked = forall("V", Z, Implies(
        conj(subset_guard("v", Z, lambda t: on_edges(t, xc, ns), ns), In(x, Z), closed), In(y, Z)))
    part2 = forall("E", C2, Implies(conj(_sub(C2, xc, ns), cycle(C2, ns)), Not(exists("v", x, conj(
        on_edges(x, C2, ns), exists("v", y, conj(on_edges(y, C2, ns), neq(x, y), linked)))))))
    return conj(part1, part2)


def isthmus_part(xc: str, xb: str, ns: Namer) -> Formula:
    """Every edge of X_b is an isthmus of X_c plus X_b."""
    e, Z, u, w, a, f, b = ns("e"), ns("Z"), ns("u"), ns("w"), ns("a"), ns("f"), ns("b")
    closed = forall("v", a, Implies(In(a, Z), forall("e", f, Implies(
        conj(Inc(f, a), disj(In(f, xc), In(f, xb)), neq(f, e)),
        forall("v", b, Implies(Inc(f, b), In(b, Z)))))))
    return forall("e", e, Implies(In(e, xb), exists("V", Z, conj(
        exists("v", u, conj(Inc(e, u), In(u, Z))),
        exists("v", w, conj(Inc(e, w), Not(In(w, Z)))),
        closed))))


def inner_part(xc: str, xi: str, ns: Namer) -> Formula:
    """Both endpoints of every X_i edge lie on one cycle of X_c."""
    e, C, u = ns("e"), ns("C"), ns("u")
    return forall("e", e, Implies(In(e, xi), exists("E", C, conj(
        _sub(C, xc, ns), cycle(C, ns),
        forall("v", u, Implies(Inc(e, u), on_edges(u, C, ns)))))))


def _link(a: str, b: str, s: str, allowed, ns: Namer) -> Formula:
    """A path from a to b with interior in S using only edges passing ``allowed(f)``."""
    Z, x, f, y = ns("Z"), ns("x"), ns("f"), ns("y")
    closed = forall("v", x, Implies(In(x, Z), forall("e", f, Implies(
        conj(Inc(f, x), allowed(f)),
        forall("v", y, Implies(conj(Inc(f, y), disj(In(y, s), Eq(y, a), Eq(y, b))), In(y, Z)))))))
    return forall("V", Z, Implies(conj(
        subset_guard("v", Z, lambda t: disj(In(t, s), Eq(t, a), Eq(t, b)), ns),
        In(a, Z), closed), In(b, Z)))


def _alternate(C: str, vc: str, a: str, b: str, c: str, d: str, ns: Namer) -> Formula:
    """c and d lie on different arcs of cycle C between a and b."""
    Z, x, f, y = ns("Z"), ns("x"), ns("f"), ns("y")
    return exists("V", Z, conj(
        subset_guard("v", Z, lambda t: In(t, vc), ns),
        In(c, Z), Not(In(d, Z)),
        forall("v", x, Implies(conj(In(x, Z), neq(x, a), neq(x, b)), forall("e", f, Implies(
            conj(Inc(f, x), In(f, C)),
            forall("v", y, Implies(Inc(f, y), disj(Eq(y, a), Eq(y, b), In(y, Z))))))))))


def paths_part(xc: str, xi: str, ns: Namer, strict: bool = False) -> Formula:
    """No cycle of X_c has two vertex-disjoint paths off the cycle with alternating ends.

    Without ``strict`` a path may not be a single X_i edge; with it no path
    may use any X_i edge.
    """
    C, VC, a, b, c, d, S1, S2 = (ns(t) for t in ("C", "VC", "a", "b", "c", "d", "S", "S"))

    def allowed_for(p, q):
        if strict:
            return lambda f: Not(In(f, xi))
        return lambda f: Not(conj(In(f, xi), Inc(f, p), Inc(f, q)))

    inner = exists("V", VC, conj(
        subset_guard("v", VC, lambda t: on_edges(t, C, ns), ns),
        superset_guard("v", VC, lambda t: on_edges(t, C, ns), ns),
        exists("v", a, conj(In(a, VC), exists("v", b, conj(In(b, VC), neq(a, b), exists("V", S1, conj(
            subset_guard("v", S1, lambda t: Not(In(t, VC)), ns),
            _link(a, b, S1, allowed_for(a, b), ns),
            exists("v", c, conj(In(c, VC), neq(c, a), neq(c, b), exists("v", d, conj(
                In(d, VC), neq(d, a), neq(d, b), neq(d, c),
                _alternate(C, VC, a, b, c, d, ns),
                exists("V", S2, conj(
                    subset_guard("v", S2, lambda t: conj(Not(In(t, VC)), Not(In(t, S1))), ns),
                    _link(c, d, S2, allowed_for(c, d), ns)))))))))))))))
    return forall("E", C, Implies(conj(_sub(C, xc, ns), cycle(C, ns)), Not(inner)))


def _page(x: str, ns: Namer, inner_parts) -> Formula:
    xc, xb, xi = ns(x + "c"), ns(x + "b"), ns(x + "i")
    parts = [
        _sub(xc, x, ns), cactus(xc, ns),
        subset_guard("e", xb, lambda f: conj(In(f, x), Not(In(f, xc))), ns),
        isthmus_part(xc, xb, ns),
        *partition_chain("e", [xc, xb, xi], ns, within=x)[2:],
        *inner_parts(xc, xi),
    ]
    return exists_block([("E", xc), ("E", xb), ("E", xi)], parts)


def _split(ns: Namer, extra_at_split=()) -> tuple[str, str, list[Formula]]:
    A, B = ns("A"), ns("B")
    guards = [subset_guard("e", B, lambda f: Not(In(f, A)), ns),
              superset_guard("e", B, lambda f: Not(In(f, A)), ns)]
    return A, B, guards


def build_twopage() -> Formula:
    """A crossing-free two-page drawing exists."""
    ns = Namer()
    A, B, guards = _split(ns)

    def page_parts(xc, xi):
        return [inner_part(xc, xi, ns), paths_part(xc, xi, ns)]

    conjuncts = [
        relativize_edges(outerplanar_f(), A),
        *guards,
        relativize_edges(outerplanar_f(), B),
        Interpreted("separate", (A, B), planar_f()),
        _page(A, ns, page_parts),
        _page(B, ns, page_parts),
    ]
    return conj(planar_f(), exists_block([("E", A), ("E", B)], conjuncts))


# ---------------------------------------------------------------------------
# two pages with crossings


def _closure_member(f: str, e: str, pv: Sequence[str], ns: Namer) -> Formula:
    """f is e, or both touch one connected group of crossing vertices."""
    if not pv:
        return Eq(f, e)
    Z, x, y = ns("Z"), ns("x"), ns("y")
    return disj(Eq(f, e), exists("V", Z, conj(
        subset_guard("v", Z, lambda t: mem(t, list(pv)), ns),
        exists("v", x, conj(In(x, Z), Inc(e, x))),
        exists("v", y, conj(In(y, Z), Inc(f, y))),
        connected_vertices(Z, ns))))


def _closure_vertex(x: str, e: str, pv: Sequence[str], ns: Namer) -> Formula:
    """x is a non-crossing vertex touched by the closure of e."""
    f = ns("f")
    return conj(*(neq(x, c) for c in pv), exists("e", f, conj(Inc(f, x), _closure_member(f, e, pv, ns))))


def zeta_inner_part(xc: str, xi: str, pv: Sequence[str], ns: Namer) -> Formula:
    """Every X_i closure has all its non-crossing vertices, at least two, on one cycle of X_c."""
    e, C, x, y = ns("e"), ns("C"), ns("x"), ns("y")
    return forall("e", e, Implies(In(e, xi), exists("E", C, conj(
        _sub(C, xc, ns), cycle(C, ns),
        forall("v", x, Implies(_closure_vertex(x, e, pv, ns), on_edges(x, C, ns))),
        exists("v", x, conj(on_edges(x, C, ns), _closure_vertex(x, e, pv, ns),
                            exists("v", y, conj(on_edges(y, C, ns), neq(x, y), _closure_vertex(y, e, pv, ns)))))))))


def zeta_closure_part(xc: str, xi: str, pv: Sequence[str], ns: Namer) -> Formula:
    """Two different X_i closures never sit in crossing position on a cycle of X_c."""
    e, f, C, VC = ns("e"), ns("f"), ns("C"), ns("VC")
    a, b, c, d = ns("a"), ns("b"), ns("c"), ns("d")
    body = exists("V", VC, conj(
        subset_guard("v", VC, lambda t: on_edges(t, C, ns), ns),
        superset_guard("v", VC, lambda t: on_edges(t, C, ns), ns),
        exists("v", a, conj(In(a, VC), _closure_vertex(a, e, pv, ns), exists("v", b, conj(
            In(b, VC), neq(a, b), _closure_vertex(b, e, pv, ns), exists("v", c, conj(
                In(c, VC), neq(c, a), neq(c, b), _closure_vertex(c, f, pv, ns), exists("v", d, conj(
                    In(d, VC), neq(d, a), neq(d, b), neq(d, c), _closure_vertex(d, f, pv, ns),
                    _alternate(C, VC, a, b, c, d, ns)))))))))))
    return Not(exists("e", e, conj(In(e, xi), exists("e", f, conj(
        In(f, xi), Not(_closure_member(f, e, pv, ns)),
        exists("E", C, conj(_sub(C, xc, ns), cycle(C, ns), body)))))))


def build_gamma(d: CrossingDiagram, ns: Namer | None = None) -> Formula:
    """A two-page drawing whose crossings form diagram ``d``, checked on the planarization."""
    if d.k == 0 or d.pages != 2:
        raise FormulaError("gamma needs a two-page diagram with at least one crossing")
    ns = ns or Namer()
    vs, es, order = _diagram_vars(d, ns)
    cs = [ns("c") for _ in range(d.k)]
    pages = [d.color(s) for s, _ in d.crossing_pairs()]
    A, B, guards = _split(ns)
    forced = []
    for c, pg in zip(cs, pages):
        f = ns("f")
        forced.append(forall("e", f, Implies(Inc(f, c), In(f, A if pg == 0 else B))))

    def page_parts(xc, xi):
        return [zeta_inner_part(xc, xi, cs, ns),
                zeta_closure_part(xc, xi, cs, ns),
                paths_part(xc, xi, ns, strict=True)]

    inner = conj(planar_f(), exists_block([("E", A), ("E", B)], [
        *guards,
        *forced,
        Interpreted("separate", (A, B), planar_f()),
        _page(A, ns, page_parts),
        _page(B, ns, page_parts),
    ]))
    tid = f"planarize@{d.code}"
    conjuncts = alpha_parts(d, vs, es) + [Interpreted(tid, (*es, *vs, *cs), inner)]
    return exists_block(order, conjuncts)


def build_zeta(k: int, max_k: int = ZETA_MAX_K) -> Formula:
    """At most ``k`` crossings in two pages; zeta_0 is twopage."""
    if k < 0 or k > max_k:
        raise FormulaError(f"zeta supports 0 <= k <= {max_k}")
    out = [build_twopage()]
    ns = Namer()
    for j in range(1, k + 1):
        for d in enumerate_crossing_diagrams(j, pages=2, exact=True, max_k=max(max_k, j)):
            out.append(build_gamma(d, ns))
    return disj(*out)

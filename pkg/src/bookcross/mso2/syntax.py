"""MSO2 abstract syntax, S-expression text format and sort checking.

Sorts: ``v`` vertex, ``e`` edge, ``V`` vertex set, ``E`` edge set.
"""
from __future__ import annotations

import re
from typing import Iterator, Mapping

SORTS = ("v", "e", "V", "E")
ELEMENT_OF = {"V": "v", "E": "e"}
SET_OF = {"v": "V", "e": "E"}


class FormulaError(ValueError):
    pass


class ParseError(FormulaError):
    pass


class UnknownOperatorError(ParseError):
    pass


class SortError(FormulaError):
    pass


class UnboundVariableError(FormulaError):
    pass


class Formula:
    """Immutable AST node with structural equality and a cached hash."""

    __slots__ = ("_hash",)
    _fields: tuple[str, ...] = ()

    def _key(self):
        return tuple(getattr(self, f) for f in self._fields)

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or hash(self) != hash(other):
            return False
        return self._key() == other._key()

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((type(self).__name__,) + self._key())
            object.__setattr__(self, "_hash", h)
            return h

    def __setattr__(self, name, value):
        raise AttributeError("Formula nodes are immutable")

    def _init(self, **kw):
        for k, v in kw.items():
            object.__setattr__(self, k, v)

    def __repr__(self):
        return to_text(self)

    def children(self) -> tuple["Formula", ...]:
        return ()


class Quant(Formula):
    __slots__ = ("kind", "sort", "var", "body")
    _fields = ("kind", "sort", "var", "body")

    def __init__(self, kind: str, sort: str, var: str, body: Formula):
        if kind not in ("forall", "exists"):
            raise FormulaError(f"bad quantifier {kind!r}")
        if sort not in SORTS:
            raise FormulaError(f"bad sort {sort!r}")
        self._init(kind=kind, sort=sort, var=var, body=body)

    def children(self):
        return (self.body,)


class Not(Formula):
    __slots__ = ("body",)
    _fields = ("body",)

    def __init__(self, body: Formula):
        self._init(body=body)

    def children(self):
        return (self.body,)


class And(Formula):
    __slots__ = ("args",)
    _fields = ("args",)

    def __init__(self, *args: Formula):
        self._init(args=tuple(args))

    def children(self):
        return self.args


class Or(Formula):
    __slots__ = ("args",)
    _fields = ("args",)

    def __init__(self, *args: Formula):
        self._init(args=tuple(args))

    def children(self):
        return self.args


class Implies(Formula):
    __slots__ = ("left", "right")
    _fields = ("left", "right")

    def __init__(self, left: Formula, right: Formula):
        self._init(left=left, right=right)

    def children(self):
        return (self.left, self.right)


class Eq(Formula):
    __slots__ = ("a", "b")
    _fields = ("a", "b")

    def __init__(self, a: str, b: str):
        self._init(a=a, b=b)


class In(Formula):
    __slots__ = ("x", "s")
    _fields = ("x", "s")

    def __init__(self, x: str, s: str):
        self._init(x=x, s=s)


class Inc(Formula):
    __slots__ = ("e", "v")
    _fields = ("e", "v")

    def __init__(self, e: str, v: str):
        self._init(e=e, v=v)


class Interpreted(Formula):
    """Evaluate ``body`` on a transformed graph; see :mod:`bookcross.checker.transforms`."""

    __slots__ = ("transform", "args", "body")
    _fields = ("transform", "args", "body")

    def __init__(self, transform: str, args, body: Formula):
        self._init(transform=transform, args=tuple(args), body=body)

    def children(self):
        return (self.body,)


TRUE = And()
FALSE = Or()


# ---------------------------------------------------------------------------
# small constructors


def forall(sort: str, var: str, body: Formula) -> Quant:
    return Quant("forall", sort, var, body)


def exists(sort: str, var: str, body: Formula) -> Quant:
    return Quant("exists", sort, var, body)


def conj(*args: Formula) -> Formula:
    flat = []
    for a in args:
        if isinstance(a, And):
            flat.extend(a.args)
        else:
            flat.append(a)
    return flat[0] if len(flat) == 1 else And(*flat)


def disj(*args: Formula) -> Formula:
    flat = []
    for a in args:
        if isinstance(a, Or):
            flat.extend(a.args)
        else:
            flat.append(a)
    return flat[0] if len(flat) == 1 else Or(*flat)


def neq(a: str, b: str) -> Formula:
    return Not(Eq(a, b))


# ---------------------------------------------------------------------------
# printing


def to_text(f: Formula) -> str:
    parts: list[str] = []
    _emit(f, parts)
    return "".join(parts)


def _emit(f: Formula, out: list[str]) -> None:
    if isinstance(f, Quant):
        out.append(f"({f.kind}-{f.sort} {f.var} ")
        _emit(f.body, out)
        out.append(")")
    elif isinstance(f, Not):
        out.append("(not ")
        _emit(f.body, out)
        out.append(")")
    elif isinstance(f, (And, Or)):
        out.append("(and" if isinstance(f, And) else "(or")
        for a in f.args:
            out.append(" ")
            _emit(a, out)
        out.append(")")
    elif isinstance(f, Implies):
        out.append("(-> ")
        _emit(f.left, out)
        out.append(" ")
        _emit(f.right, out)
        out.append(")")
    elif isinstance(f, Eq):
        out.append(f"(= {f.a} {f.b})")
    elif isinstance(f, In):
        out.append(f"(in {f.x} {f.s})")
    elif isinstance(f, Inc):
        out.append(f"(inc {f.e} {f.v})")
    elif isinstance(f, Interpreted):
        out.append(f"(interpreted {f.transform} (" + " ".join(f.args) + ") ")
        _emit(f.body, out)
        out.append(")")
    else:
        raise FormulaError(f"unknown node {type(f).__name__}")


def pretty(f: Formula, indent: int = 2) -> str:
    """Multi-line rendering; parses back to the same formula."""
    lines: list[str] = []

    def rec(g: Formula, depth: int):
        pad = " " * (indent * depth)
        flat = to_text(g)
        if len(flat) + len(pad) <= 88 or not g.children():
            lines.append(pad + flat)
            return
        if isinstance(g, Quant):
            lines.append(f"{pad}({g.kind}-{g.sort} {g.var}")
        elif isinstance(g, Not):
            lines.append(pad + "(not")
        elif isinstance(g, And):
            lines.append(pad + "(and")
        elif isinstance(g, Or):
            lines.append(pad + "(or")
        elif isinstance(g, Implies):
            lines.append(pad + "(->")
        elif isinstance(g, Interpreted):
            lines.append(f"{pad}(interpreted {g.transform} (" + " ".join(g.args) + ")")
        for c in g.children():
            rec(c, depth + 1)
        lines[-1] += ")"

    rec(f, 0)
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")
_QUANT = re.compile(r"^(forall|exists)-([veVE])$")
_NAME = re.compile(r"^!?[A-Za-z_][A-Za-z0-9_']*$")


def _tokens(text: str) -> list[str]:
    out = []
    pos = 0
    text = "\n".join(line.split(";", 1)[0] for line in text.splitlines())
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character at offset {pos}")
        if m.end() == pos:
            break
        pos = m.end()
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok:
            out.append(tok)
    return out


def _read(tokens: list[str], i: int):
    if i >= len(tokens):
        raise ParseError("unexpected end of input")
    t = tokens[i]
    if t == "(":
        items = []
        i += 1
        while True:
            if i >= len(tokens):
                raise ParseError("missing ')'")
            if tokens[i] == ")":
                return items, i + 1
            item, i = _read(tokens, i)
            items.append(item)
    if t == ")":
        raise ParseError("unexpected ')'")
    return t, i + 1


def _name(x) -> str:
    if not isinstance(x, str) or not _NAME.match(x):
        raise ParseError(f"expected a variable name, got {x!r}")
    return x


def _build(sx) -> Formula:
    if not isinstance(sx, list) or not sx:
        raise ParseError(f"expected a formula, got {sx!r}")
    op = sx[0]
    if not isinstance(op, str):
        raise ParseError("operator must be a symbol")
    m = _QUANT.match(op)
    if m:
        if len(sx) != 3:
            raise ParseError(f"{op} takes a variable and a body")
        return Quant(m.group(1), m.group(2), _name(sx[1]), _build(sx[2]))
    if op == "not":
        if len(sx) != 2:
            raise ParseError("not takes one argument")
        return Not(_build(sx[1]))
    if op == "and":
        return And(*(_build(a) for a in sx[1:]))
    if op == "or":
        return Or(*(_build(a) for a in sx[1:]))
    if op == "->":
        if len(sx) != 3:
            raise ParseError("-> takes two arguments")
        return Implies(_build(sx[1]), _build(sx[2]))
    if op in ("=", "in", "inc"):
        if len(sx) != 3:
            raise ParseError(f"{op} takes two arguments")
        a, b = _name(sx[1]), _name(sx[2])
        return {"=": Eq, "in": In, "inc": Inc}[op](a, b)
    if op == "interpreted":
        if len(sx) != 4 or not isinstance(sx[1], str) or not isinstance(sx[2], list):
            raise ParseError("interpreted takes an id, an argument list and a body")
        return Interpreted(sx[1], [_name(a) for a in sx[2]], _build(sx[3]))
    from .library import MACROS, Namer

    if op in MACROS:
        arity, build = MACROS[op]
        if len(sx) - 1 != arity:
            raise ParseError(f"{op} takes {arity} argument(s)")
        args = [_name(a) for a in sx[1:]]
        return build(*args, ns=Namer(avoid=args))
    raise UnknownOperatorError(f"unknown operator {op!r}")


def parse_formula(text: str, free: Mapping[str, str] | None = None) -> Formula:
    """Parse and sort-check.

    Free variables must be declared in ``free`` (name -> sort) unless their
    name starts with ``!``, in which case the sort is inferred from use.
    """
    tokens = _tokens(text)
    sx, i = _read(tokens, 0)
    if i != len(tokens):
        raise ParseError("trailing input after formula")
    f = _build(sx)
    sort_check(f, free)
    return f


# ---------------------------------------------------------------------------
# sorts, free variables, rank


def _transform_scope(f: Interpreted, env: dict[str, str], sortof) -> dict[str, str]:
    from ..checker.transforms import inner_scope

    return inner_scope(f.transform, f.args, env, sortof)


def sort_check(f: Formula, free: Mapping[str, str] | None = None, infer: bool = False) -> dict[str, str]:
    """Check well-sortedness; return the sorts of the free variables.

    With ``infer`` every undeclared free variable is treated like a ``!`` name.
    """
    declared = dict(free or {})
    inferred: dict[str, str] = {}

    def sortof(name: str, env: dict[str, str], want: str | None = None) -> str | None:
        if name in env:
            s = env[name]
        elif name in declared:
            s = declared[name]
        elif name.startswith("!") or infer:
            s = inferred.get(name)
            if s is None and want is not None:
                inferred[name] = want
                s = want
        else:
            raise UnboundVariableError(f"unbound variable {name!r}")
        if want is not None and s is not None and s != want:
            raise SortError(f"variable {name!r} has sort {s}, used as {want}")
        return s

    def rec(g: Formula, env: dict[str, str]):
        if isinstance(g, Quant):
            inner = dict(env)
            inner[g.var] = g.sort
            rec(g.body, inner)
        elif isinstance(g, Interpreted):
            from ..checker.transforms import bound_by

            inner_bound = bound_by(g.transform, g.args)
            for a in g.args:
                if a not in inner_bound:
                    sortof(a, env)
            rec(g.body, _transform_scope(g, env, lambda n: sortof(n, env)))
        elif isinstance(g, Eq):
            sa = sortof(g.a, env)
            sb = sortof(g.b, env, sa)
            if sa is None:
                sortof(g.a, env, sb)
        elif isinstance(g, In):
            sx = sortof(g.x, env)
            ss = sortof(g.s, env, SET_OF.get(sx) if sx else None)
            if ss is None:
                raise SortError(f"cannot infer sort of {g.s!r}")
            if ss not in ELEMENT_OF:
                raise SortError(f"{g.s!r} is not a set variable")
            sortof(g.x, env, ELEMENT_OF[ss])
        elif isinstance(g, Inc):
            sortof(g.e, env, "e")
            sortof(g.v, env, "v")
        else:
            for c in g.children():
                rec(c, env)

    rec(f, {})
    # second pass resolves '!' variables first seen in positions with no sort hint
    rec(f, {})
    out = {}
    for name in free_variables(f):
        s = declared.get(name) or inferred.get(name)
        if s is None:
            raise SortError(f"cannot infer sort of free variable {name!r}")
        out[name] = s
    return out


def free_variables(f: Formula) -> frozenset[str]:
    if isinstance(f, Quant):
        return free_variables(f.body) - {f.var}
    if isinstance(f, Eq):
        return frozenset((f.a, f.b))
    if isinstance(f, In):
        return frozenset((f.x, f.s))
    if isinstance(f, Inc):
        return frozenset((f.e, f.v))
    if isinstance(f, Interpreted):
        from ..checker.transforms import bound_by

        bound = bound_by(f.transform, f.args)
        return (free_variables(f.body) | frozenset(f.args)) - bound
    out: frozenset[str] = frozenset()
    for c in f.children():
        out |= free_variables(c)
    return out


def bound_variables(f: Formula) -> frozenset[str]:
    out: set[str] = set()
    for g in walk(f):
        if isinstance(g, Quant):
            out.add(g.var)
    return frozenset(out)


def walk(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(g.children()))


def quantifier_rank(f: Formula, sorts: tuple[str, ...] = SORTS) -> int:
    """Maximum nesting depth of quantifiers whose sort is in ``sorts``."""
    if isinstance(f, Quant):
        return quantifier_rank(f.body, sorts) + (1 if f.sort in sorts else 0)
    return max((quantifier_rank(c, sorts) for c in f.children()), default=0)


def has_interpreted(f: Formula) -> bool:
    return any(isinstance(g, Interpreted) for g in walk(f))


def size(f: Formula) -> int:
    return sum(1 for _ in walk(f))

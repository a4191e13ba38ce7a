"""Golden construction scripts (``.gcs``): lexer, parser, checker, interpreter.

A script is a sequence of declarations ``kind NAME = expr`` and assertions
``assert NAME: relation``, one per line, ``#`` starting a comment::

    point A = (0, 0)
    point B = (1, 0)
    point C = golden_ext(A, B)
    assert bc: equal(dist(B, C), phi)

:func:`parse` only reports syntax errors.  :func:`check` resolves names,
kinds and arities without touching geometry.  :func:`execute` runs the
statements against :mod:`goldconic.euclid`, records assertion outcomes and
wraps any geometric failure with the span of the statement that caused it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Any, Union

from . import euclid
from . import exactnum as en
from .euclid import Circle, ConstructionTrace, Line, Point, Ray, Segment, Triangle
from .exactnum import ConstructibleReal

__all__ = [
    "SourceSpan",
    "GcsSyntaxError",
    "Diagnostic",
    "CheckFailed",
    "ExecutionError",
    "Num",
    "Phi",
    "Ref",
    "Neg",
    "BinOp",
    "SqrtOf",
    "Dist",
    "PointLit",
    "Call",
    "Declare",
    "Relation",
    "Assert",
    "Program",
    "AssertionResult",
    "Scene",
    "KINDS",
    "BUILTINS",
    "parse",
    "check",
    "execute",
    "load",
    "format_program",
]


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}"


class GcsSyntaxError(SyntaxError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span
        self.lineno = span.line
        self.offset = span.column

    def __str__(self) -> str:
        return f"{self.span}: {self.message}"


@dataclass(frozen=True)
class Diagnostic:
    kind: str  # UnknownIdentifier | KindMismatch | ArityMismatch | DuplicateName
    message: str
    span: SourceSpan

    def __str__(self) -> str:
        return f"{self.span}: {self.kind}: {self.message}"


class CheckFailed(Exception):
    def __init__(self, diagnostics: list[Diagnostic]):
        super().__init__("\n".join(map(str, diagnostics)))
        self.diagnostics = diagnostics


class ExecutionError(euclid.GeometryError):
    """A geometric (or arithmetic) failure while executing one statement."""

    def __init__(self, statement_index: int, span: SourceSpan, cause: Exception):
        super().__init__(f"{span}: {type(cause).__name__}: {cause}")
        self.statement_index = statement_index
        self.span = span
        self.cause = cause


# ---------------------------------------------------------------------------
# AST.  Spans are excluded from equality so reparsed output compares equal.

def _span_field():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Num:
    value: Fraction
    text: str = field(default="", compare=False)
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Phi:
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Ref:
    name: str
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Neg:
    operand: Any
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class BinOp:
    op: str
    left: Any
    right: Any
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class SqrtOf:
    operand: Any
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Dist:
    p: Ref
    q: Ref
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class PointLit:
    x: Any
    y: Any
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    span: SourceSpan | None = _span_field()


Expr = Union[Num, Phi, Ref, Neg, BinOp, SqrtOf, Dist, PointLit, Call]


@dataclass(frozen=True)
class Declare:
    kind: str
    name: str
    expr: Expr
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Relation:
    name: str  # equal | right_angle | congruent | parallel
    args: tuple
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Assert:
    name: str
    relation: Relation
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Program:
    statements: tuple = ()

    def __len__(self) -> int:
        return len(self.statements)


# ---------------------------------------------------------------------------
# lexer

KINDS = ("point", "line", "circle", "segment", "scalar", "ray", "triangle")
RESERVED = frozenset(KINDS) | {"assert", "phi", "sqrt", "dist"}
# reserved words that never start a call
_SCALAR_WORDS = frozenset({"assert", "phi", "sqrt", "dist"})
RELATIONS = {"equal": 2, "right_angle": 3, "congruent": 2, "parallel": 2}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\f\v]+)
  | (?P<comment>\#[^\r\n]*)
  | (?P<newline>\r\n|\n|\r)
  | (?P<number>\d+(?:\.\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[()=,:+\-*/])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # number | ident | punct | newline | eof
    text: str
    span: SourceSpan


def _lex(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            raise GcsSyntaxError(f"unexpected character {source[pos]!r}", SourceSpan(line, col, 1))
        kind, text = m.lastgroup, m.group()
        if kind == "newline":
            tokens.append(_Token("newline", "\n", SourceSpan(line, col, len(text))))
            line, line_start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(_Token(kind, text, SourceSpan(line, col, len(text))))
        pos = m.end()
    tokens.append(_Token("eof", "", SourceSpan(line, pos - line_start + 1, 0)))
    return tokens


# ---------------------------------------------------------------------------
# parser

def _describe(tok: _Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    if tok.kind == "newline":
        return "end of line"
    return repr(tok.text)


def _join(a: SourceSpan, b: SourceSpan) -> SourceSpan:
    if a.line != b.line:
        return a
    return SourceSpan(a.line, a.column, b.column + b.length - a.column)


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self) -> _Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind == "punct" and self.tok.text == text

    def expect(self, text: str, what: str | None = None) -> _Token:
        if not self.at(text):
            self.fail(f"expected {what or repr(text)}, found {_describe(self.tok)}")
        return self.advance()

    def fail(self, message: str, tok: _Token | None = None):
        tok = tok or self.tok
        raise GcsSyntaxError(message, tok.span)

    def ident(self, what: str = "identifier") -> _Token:
        if self.tok.kind != "ident":
            self.fail(f"expected {what}, found {_describe(self.tok)}")
        return self.advance()

    def new_name(self) -> _Token:
        t = self.ident("a name")
        if t.text in RESERVED:
            self.fail(f"{t.text!r} is a reserved word", t)
        return t

    # -- statements -----------------------------------------------------
    def program(self) -> Program:
        stmts = []
        while True:
            while self.tok.kind == "newline":
                self.advance()
            if self.tok.kind == "eof":
                return Program(tuple(stmts))
            stmts.append(self.statement())
            if self.tok.kind not in ("newline", "eof"):
                self.fail(f"expected end of line, found {_describe(self.tok)}")

    def statement(self):
        first = self.tok
        if first.kind == "ident" and first.text == "assert":
            self.advance()
            name = self.new_name()
            self.expect(":")
            rel = self.relation()
            return Assert(name.text, rel, _join(first.span, rel.span))
        if first.kind == "ident" and first.text in KINDS:
            self.advance()
            name = self.new_name()
            self.expect("=")
            expr = self.expr()
            return Declare(first.text, name.text, expr, _join(first.span, expr.span))
        self.fail(f"expected a declaration ({', '.join(KINDS)}) or 'assert', found {_describe(first)}")

    def relation(self) -> Relation:
        head = self.ident("a relation")
        if head.text not in RELATIONS:
            self.fail(f"unknown relation {head.text!r}; expected one of {', '.join(RELATIONS)}", head)
        self.expect("(")
        if head.text == "equal":
            args = [self.scalar()]
            self.expect(",")
            args.append(self.scalar())
        else:
            args = [self.ref()]
            while self.at(","):
                self.advance()
                args.append(self.ref())
        end = self.expect(")")
        return Relation(head.text, tuple(args), _join(head.span, end.span))

    def ref(self) -> Ref:
        t = self.ident()
        if t.text in RESERVED:
            self.fail(f"{t.text!r} is a reserved word", t)
        return Ref(t.text, t.span)

    # -- expressions ----------------------------------------------------
    def expr(self):
        t = self.tok
        if t.kind == "ident" and t.text not in _SCALAR_WORDS and self._call_ahead():
            return self.call()
        if self.at("("):
            open_ = self.advance()
            inner = self.scalar()
            if self.at(","):
                self.advance()
                y = self.scalar()
                end = self.expect(")")
                return PointLit(inner, y, _join(open_.span, end.span))
            end = self.expect(")", "',' or ')'")
            first = self._continue_term(inner)
            return self._continue_sum(first)
        return self.scalar()

    def _call_ahead(self) -> bool:
        nxt = self.peek()
        return nxt.kind == "punct" and nxt.text == "("

    def call(self) -> Call:
        head = self.advance()
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.expr())
            while self.at(","):
                self.advance()
                args.append(self.expr())
        end = self.expect(")", "',' or ')'")
        return Call(head.text, tuple(args), _join(head.span, end.span))

    def scalar(self):
        return self._continue_sum(self.term())

    def _continue_sum(self, left):
        while self.at("+") or self.at("-"):
            op = self.advance().text
            right = self.term()
            left = BinOp(op, left, right, _join(left.span, right.span))
        return left

    def term(self):
        return self._continue_term(self.factor())

    def _continue_term(self, left):
        while self.at("*") or self.at("/"):
            op = self.advance().text
            right = self.factor()
            left = BinOp(op, left, right, _join(left.span, right.span))
        return left

    def factor(self):
        t = self.tok
        if t.kind == "number":
            self.advance()
            return Num(Fraction(Decimal(t.text)), t.text, t.span)
        if self.at("-"):
            self.advance()
            operand = self.factor()
            return Neg(operand, _join(t.span, operand.span))
        if self.at("("):
            self.advance()
            inner = self.scalar()
            self.expect(")")
            return inner
        if t.kind == "ident":
            if t.text == "phi":
                self.advance()
                return Phi(t.span)
            if t.text == "sqrt":
                self.advance()
                self.expect("(")
                inner = self.scalar()
                end = self.expect(")")
                return SqrtOf(inner, _join(t.span, end.span))
            if t.text == "dist":
                self.advance()
                self.expect("(")
                p = self.ref()
                self.expect(",")
                q = self.ref()
                end = self.expect(")")
                return Dist(p, q, _join(t.span, end.span))
            if self._call_ahead():
                self.fail(f"call {t.text!r}(...) cannot appear inside a scalar expression")
            if t.text in RESERVED:
                self.fail(f"{t.text!r} is a reserved word")
            self.advance()
            return Ref(t.text, t.span)
        self.fail(f"expected a value, found {_describe(t)}")


def parse(source: str) -> Program:
    """Parse ``.gcs`` source text; raises :class:`GcsSyntaxError`."""
    if source.startswith("﻿"):
        source = source[1:]
    return _Parser(_lex(source)).program()


# ---------------------------------------------------------------------------
# static checking

LINEAR = ("line", "segment", "ray")
CURVE = LINEAR + ("circle",)
_ANY_POINT = ("point",)
_INDEX = "index"

# name -> (parameter kinds, result kind); a tuple of kinds accepts any of them
BUILTINS: dict[str, tuple[tuple, str]] = {
    "line": ((_ANY_POINT, _ANY_POINT), "line"),
    "segment": ((_ANY_POINT, _ANY_POINT), "segment"),
    "ray": ((_ANY_POINT, _ANY_POINT), "ray"),
    "circle": ((_ANY_POINT, ("scalar",)), "circle"),
    "circle_through": ((_ANY_POINT, _ANY_POINT), "circle"),
    "midpoint": ((_ANY_POINT, _ANY_POINT), "point"),
    "foot": ((_ANY_POINT, LINEAR), "point"),
    "perp_at": ((_ANY_POINT, LINEAR), "line"),
    "intersect": ((CURVE, CURVE, (_INDEX,)), "point"),
    "point_on": ((("ray",), ("scalar",)), "point"),
    "square_on_1": ((_ANY_POINT, _ANY_POINT, _ANY_POINT), "point"),
    "square_on_2": ((_ANY_POINT, _ANY_POINT, _ANY_POINT), "point"),
    "golden_ext": ((_ANY_POINT, _ANY_POINT), "point"),
    "kepler": ((_ANY_POINT, _ANY_POINT), "point"),
    "triangle": ((_ANY_POINT, _ANY_POINT, _ANY_POINT), "triangle"),
}

_RELATION_KINDS = {
    "right_angle": (_ANY_POINT,) * 3,
    "congruent": (("triangle",),) * 2,
    "parallel": (LINEAR,) * 2,
}


class _Checker:
    def __init__(self):
        self.kinds: dict[str, str] = {}
        self.diags: list[Diagnostic] = []

    def report(self, kind: str, message: str, span):
        self.diags.append(Diagnostic(kind, message, span))

    def kind_of(self, e) -> str | None:
        """Kind of ``e`` or None when an error was already reported."""
        if isinstance(e, (Num, Phi)):
            return "scalar"
        if isinstance(e, Ref):
            k = self.kinds.get(e.name)
            if k is None:
                self.report("UnknownIdentifier", f"{e.name!r} is not declared before use", e.span)
            return k
        if isinstance(e, Neg):
            self.need(e.operand, ("scalar",), "operand of '-'")
            return "scalar"
        if isinstance(e, BinOp):
            self.need(e.left, ("scalar",), f"operand of {e.op!r}")
            self.need(e.right, ("scalar",), f"operand of {e.op!r}")
            return "scalar"
        if isinstance(e, SqrtOf):
            self.need(e.operand, ("scalar",), "argument of sqrt")
            return "scalar"
        if isinstance(e, Dist):
            self.need(e.p, _ANY_POINT, "argument of dist")
            self.need(e.q, _ANY_POINT, "argument of dist")
            return "scalar"
        if isinstance(e, PointLit):
            self.need(e.x, ("scalar",), "x coordinate")
            self.need(e.y, ("scalar",), "y coordinate")
            return "point"
        if isinstance(e, Call):
            sig = BUILTINS.get(e.name)
            if sig is None:
                self.report("UnknownIdentifier", f"unknown function {e.name!r}", e.span)
                for a in e.args:
                    self.kind_of(a)
                return None
            params, result = sig
            if len(e.args) != len(params):
                self.report(
                    "ArityMismatch",
                    f"{e.name} takes {len(params)} argument(s), got {len(e.args)}",
                    e.span,
                )
                for a in e.args:
                    self.kind_of(a)
                return result
            for n, (a, want) in enumerate(zip(e.args, params), 1):
                if want == (_INDEX,):
                    if not (isinstance(a, Num) and a.value in (1, 2)):
                        self.report("KindMismatch", f"argument {n} of {e.name} must be the literal 1 or 2", a.span)
                else:
                    self.need(a, want, f"argument {n} of {e.name}")
            return result
        raise TypeError(f"not an expression: {e!r}")

    def need(self, e, kinds: tuple, what: str):
        k = self.kind_of(e)
        if k is not None and k not in kinds:
            self.report("KindMismatch", f"{what} must be {' or '.join(kinds)}, got {k}", e.span)

    def run(self, program: Program) -> list[Diagnostic]:
        asserted: set[str] = set()
        for st in program.statements:
            if isinstance(st, Declare):
                k = self.kind_of(st.expr)
                if k is not None and k != st.kind:
                    self.report("KindMismatch", f"{st.name!r} is declared {st.kind} but the value is {k}", st.expr.span)
                if st.name in self.kinds:
                    self.report("DuplicateName", f"{st.name!r} is already declared", st.span)
                else:
                    self.kinds[st.name] = st.kind
            else:
                if st.name in asserted:
                    self.report("DuplicateName", f"assertion {st.name!r} is already declared", st.span)
                asserted.add(st.name)
                rel = st.relation
                if rel.name == "equal":
                    for a in rel.args:
                        self.need(a, ("scalar",), "argument of equal")
                    continue
                want = _RELATION_KINDS[rel.name]
                if len(rel.args) != len(want):
                    self.report("ArityMismatch", f"{rel.name} takes {len(want)} arguments, got {len(rel.args)}", rel.span)
                    continue
                for n, (a, kinds) in enumerate(zip(rel.args, want), 1):
                    self.need(a, kinds, f"argument {n} of {rel.name}")
        return self.diags


def check(program: Program) -> list[Diagnostic]:
    """Name, kind and arity diagnostics; empty for a well-formed program."""
    return _Checker().run(program)


def load(source: str) -> Program:
    """Parse and check; raises :class:`GcsSyntaxError` or :class:`CheckFailed`."""
    program = parse(source)
    diags = check(program)
    if diags:
        raise CheckFailed(diags)
    return program


# ---------------------------------------------------------------------------
# interpreter

@dataclass(frozen=True)
class AssertionResult:
    name: str
    relation: str
    passed: bool
    span: SourceSpan | None = None


@dataclass
class Scene:
    objects: dict[str, Any]
    kinds: dict[str, str]
    trace: ConstructionTrace
    assertions: list[AssertionResult]

    @property
    def all_passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def serialize(self) -> str:
        """Exact text form of every object and assertion, in declaration order."""
        lines = [f"{name}: {euclid.serialize_object(obj)}" for name, obj in self.objects.items()]
        lines += [f"assert {a.name}: {a.passed}" for a in self.assertions]
        return "\n".join(lines)


def _square_vertex(which: int):
    def build(a, b, away):
        return euclid.square_on_segment(a, b, away)[which]

    build.__name__ = f"square_on_{which + 1}"
    return build


def _kepler_apex(b, c):
    return euclid.kepler_triangle(b, c).a


def _intersect_nth(a, b, index: int):
    pts = euclid.intersect(a, b)
    if index > len(pts):
        raise euclid.NoIntersection(f"intersection {index} requested but only {len(pts)} point(s) exist")
    return pts[index - 1]


def _point_on(r: Ray, d):
    return euclid.point_on_ray_at_distance(r.p, r.q, d)


def _triangle(p, q, r, names=("P", "Q", "R")):
    return Triangle(p, q, r, names)


_IMPL = {
    "line": Line,
    "segment": Segment,
    "ray": Ray,
    "circle": Circle,
    "circle_through": lambda c, p: Circle(c, euclid.distance(c, p)),
    "midpoint": euclid.midpoint,
    "foot": euclid.foot,
    "perp_at": euclid.perpendicular_at,
    "intersect": _intersect_nth,
    "point_on": _point_on,
    "square_on_1": _square_vertex(0),
    "square_on_2": _square_vertex(1),
    "golden_ext": euclid.golden_extension_point,
    "kepler": _kepler_apex,
    "triangle": _triangle,
}


class _Interpreter:
    def __init__(self):
        self.env: dict[str, Any] = {}
        self.trace = ConstructionTrace()

    def scalar(self, e) -> ConstructibleReal:
        if isinstance(e, Num):
            return en.const_rational(e.value)
        if isinstance(e, Phi):
            return en.phi()
        if isinstance(e, Ref):
            return self.env[e.name]
        if isinstance(e, Neg):
            return -self.scalar(e.operand)
        if isinstance(e, BinOp):
            l, r = self.scalar(e.left), self.scalar(e.right)
            return {"+": en.add, "-": en.sub, "*": en.mul, "/": en.div}[e.op](l, r)
        if isinstance(e, SqrtOf):
            return en.sqrt(self.scalar(e.operand))
        if isinstance(e, Dist):
            return self.trace.call(euclid.distance, self.env[e.p.name], self.env[e.q.name])
        raise TypeError(f"not a scalar expression: {e!r}")

    def value(self, e):
        if isinstance(e, PointLit):
            return Point(self.scalar(e.x), self.scalar(e.y))
        if isinstance(e, Call):
            if e.name == "intersect":
                a, b = self.value(e.args[0]), self.value(e.args[1])
                return self.trace.call(_intersect_nth, a, b, int(e.args[2].value))
            args = [self.value(a) for a in e.args]
            if e.name == "triangle":
                names = tuple(a.name if isinstance(a, Ref) else "PQR"[k] for k, a in enumerate(e.args))
                return self.trace.call(_triangle, *args, names)
            return self.trace.call(_IMPL[e.name], *args)
        if isinstance(e, Ref):
            return self.env[e.name]
        return self.scalar(e)

    def relation(self, rel: Relation) -> bool:
        if rel.name == "equal":
            return en.equals(self.scalar(rel.args[0]), self.scalar(rel.args[1]))
        objs = [self.env[a.name] for a in rel.args]
        if rel.name == "right_angle":
            return euclid.right_angle_at(*objs)
        if rel.name == "congruent":
            return euclid.congruent(*objs)
        return euclid.are_parallel(*objs)


def execute(program: Program) -> Scene:
    """Run a checked program; raises :class:`ExecutionError` on degeneracy."""
    diags = check(program)
    if diags:
        raise CheckFailed(diags)
    it = _Interpreter()
    kinds: dict[str, str] = {}
    results: list[AssertionResult] = []
    for n, st in enumerate(program.statements):
        label = f"{n + 1}: {st.name}"
        try:
            with it.trace.step(label, _format_statement(st)):
                if isinstance(st, Declare):
                    obj = it.value(st.expr)
                    it.env[st.name] = obj
                    kinds[st.name] = st.kind
                    it.trace.name(st.name, obj)
                else:
                    passed = it.relation(st.relation)
                    results.append(AssertionResult(st.name, _format_relation(st.relation), passed, st.span))
        except (euclid.GeometryError, en.ExactArithmeticError) as exc:
            raise ExecutionError(n, st.span, exc) from exc
    return Scene(dict(it.env), kinds, it.trace, results)


# ---------------------------------------------------------------------------
# pretty printing

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _fmt(e, prec: int = 0) -> str:
    if isinstance(e, Num):
        return e.text or _fraction_text(e.value)
    if isinstance(e, Phi):
        return "phi"
    if isinstance(e, Ref):
        return e.name
    if isinstance(e, Neg):
        return "-" + _fmt(e.operand, 3)
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        # left-associative: an equal-precedence right operand needs parentheses
        text = f"{_fmt(e.left, p)} {e.op} {_fmt(e.right, p + 1)}"
        return f"({text})" if p < prec else text
    if isinstance(e, SqrtOf):
        return f"sqrt({_fmt(e.operand)})"
    if isinstance(e, Dist):
        return f"dist({e.p.name}, {e.q.name})"
    if isinstance(e, PointLit):
        return f"({_fmt(e.x)}, {_fmt(e.y)})"
    if isinstance(e, Call):
        return f"{e.name}({', '.join(_fmt(a) for a in e.args)})"
    raise TypeError(f"not an expression: {e!r}")


def _fraction_text(q: Fraction) -> str:
    if q < 0:
        raise ValueError("negative literals are written with unary minus")
    if q.denominator == 1:
        return str(q.numerator)
    d = Decimal(q.numerator) / Decimal(q.denominator)
    if Fraction(d) == q:
        return format(d, "f")
    raise ValueError(f"{q} has no finite decimal expansion; build it with '/'")


def _format_relation(rel: Relation) -> str:
    return f"{rel.name}({', '.join(_fmt(a) for a in rel.args)})"


def _format_statement(st) -> str:
    if isinstance(st, Declare):
        return f"{st.kind} {st.name} = {_fmt(st.expr)}"
    return f"assert {st.name}: {_format_relation(st.relation)}"


def format_program(program: Program) -> str:
    """Canonical source text; ``parse(format_program(p)) == p``."""
    return "".join(_format_statement(st) + "\n" for st in program.statements)

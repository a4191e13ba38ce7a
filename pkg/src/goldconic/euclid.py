"""Straightedge-and-compass construction engine over exact coordinates.

Every primitive returns exact objects.  Multi-point intersections are
ordered lexicographically by ``(x, y)`` so index 1/2 is deterministic.
Composite constructions take an optional :class:`ConstructionTrace` and log
each primitive they invoke; the trace can be replayed to reproduce every
intermediate object.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, field
from typing import Any, Callable

from . import exactnum as en
from .exactnum import ConstructibleReal

__all__ = [
    "GeometryError",
    "CoincidentPoints",
    "ParallelLines",
    "NoIntersection",
    "NonpositiveDistance",
    "ReferenceOnLine",
    "UnitLengthRequired",
    "DegenerateTriangle",
    "Point",
    "Line",
    "Ray",
    "Segment",
    "Circle",
    "Triangle",
    "PrimitiveCall",
    "TraceStep",
    "ConstructionTrace",
    "point",
    "line_through",
    "midpoint",
    "distance",
    "intersect_line_line",
    "intersect_line_circle",
    "intersect_circle_circle",
    "intersect",
    "perpendicular_at",
    "foot",
    "point_on_ray_at_distance",
    "square_on_segment",
    "golden_extension_point",
    "kepler_triangle",
    "construct_T2_via_kepler",
    "construct_T2_via_thales",
    "is_right_triangle",
    "congruent",
    "right_angle_at",
    "are_parallel",
    "serialize_object",
]


class GeometryError(Exception):
    """Base class for degenerate or impossible construction steps."""


class CoincidentPoints(GeometryError):
    pass


class ParallelLines(GeometryError):
    pass


class NoIntersection(GeometryError):
    pass


class NonpositiveDistance(GeometryError):
    pass


class ReferenceOnLine(GeometryError):
    pass


class UnitLengthRequired(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


def _zero(v: ConstructibleReal) -> bool:
    return v.is_rational and v.value == 0


@dataclass(frozen=True, eq=False)
class Point:
    x: ConstructibleReal
    y: ConstructibleReal

    def __post_init__(self):
        object.__setattr__(self, "x", en.const_rational(self.x))
        object.__setattr__(self, "y", en.const_rational(self.y))

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return en.equals(self.x, other.x) and en.equals(self.y, other.y)

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: Point) -> Point:
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point) -> Point:
        return Point(self.x - other.x, self.y - other.y)

    def scale(self, k) -> Point:
        return Point(self.x * k, self.y * k)

    def dot(self, other: Point) -> ConstructibleReal:
        return self.x * other.x + self.y * other.y

    def cross(self, other: Point) -> ConstructibleReal:
        return self.x * other.y - self.y * other.x

    def norm2(self) -> ConstructibleReal:
        return en.square(self.x) + en.square(self.y)

    def rot90(self) -> Point:
        return Point(-self.y, self.x)

    def to_float(self) -> tuple[float, float]:
        return float(self.x), float(self.y)

    def __repr__(self) -> str:
        return f"Point({float(self.x):.6g}, {float(self.y):.6g})"


def point(x, y) -> Point:
    return Point(en.const_rational(x), en.const_rational(y))


def _lex_less(p: Point, q: Point) -> bool:
    s = en.sign(p.x - q.x)
    if s:
        return s < 0
    return en.sign(p.y - q.y) < 0


@dataclass(frozen=True, eq=False)
class Line:
    p: Point
    q: Point

    def __post_init__(self):
        if self.p == self.q:
            raise CoincidentPoints("a line needs two distinct points")

    @property
    def direction(self) -> Point:
        return self.q - self.p

    @property
    def implicit(self) -> tuple[ConstructibleReal, ConstructibleReal, ConstructibleReal]:
        """``(alpha, beta, gamma)`` with ``alpha*x + beta*y + gamma == 0``."""
        p, q = self.p, self.q
        return p.y - q.y, q.x - p.x, p.x * q.y - q.x * p.y

    @classmethod
    def from_implicit(cls, alpha, beta, gamma) -> Line:
        n2 = en.square(alpha) + en.square(beta)
        if en.sign(n2) == 0:
            raise GeometryError("implicit line form is identically zero")
        p0 = Point(-alpha * gamma / n2, -beta * gamma / n2)
        return cls(p0, p0 + Point(-beta, alpha))

    def contains(self, pt: Point) -> bool:
        return en.sign(self.direction.cross(pt - self.p)) == 0

    def side(self, pt: Point) -> int:
        """+1 left of p->q, -1 right, 0 on the line."""
        return en.sign(self.direction.cross(pt - self.p))

    def carries(self, pt: Point) -> bool:
        return self.contains(pt)

    def __eq__(self, other):
        if not isinstance(other, Line) or type(other) is not type(self):
            return NotImplemented
        return self.contains(other.p) and self.contains(other.q)

    __hash__ = None  # type: ignore[assignment]


class Ray(Line):
    """Half-line from ``p`` through ``q``."""

    def carries(self, pt: Point) -> bool:
        return self.contains(pt) and en.sign(self.direction.dot(pt - self.p)) >= 0


class Segment(Line):
    def carries(self, pt: Point) -> bool:
        if not self.contains(pt):
            return False
        t = self.direction.dot(pt - self.p)
        return en.sign(t) >= 0 and en.sign(self.direction.norm2() - t) >= 0

    @property
    def length(self) -> ConstructibleReal:
        return distance(self.p, self.q)


@dataclass(frozen=True, eq=False)
class Circle:
    center: Point
    radius: ConstructibleReal

    def __post_init__(self):
        object.__setattr__(self, "radius", en.const_rational(self.radius))
        if en.sign(self.radius) <= 0:
            raise NonpositiveDistance("circle radius must be positive")

    def contains(self, pt: Point) -> bool:
        return en.equals((pt - self.center).norm2(), en.square(self.radius))

    def __eq__(self, other):
        if not isinstance(other, Circle):
            return NotImplemented
        return self.center == other.center and en.equals(self.radius, other.radius)

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class Triangle:
    a: Point
    b: Point
    c: Point
    names: tuple[str, str, str] = ("A", "B", "C")

    def __post_init__(self):
        if en.sign((self.b - self.a).cross(self.c - self.a)) == 0:
            raise DegenerateTriangle("triangle vertices are collinear")

    @property
    def vertices(self) -> tuple[Point, Point, Point]:
        return self.a, self.b, self.c

    def side_lengths(self) -> tuple[ConstructibleReal, ConstructibleReal, ConstructibleReal]:
        """Lengths of ``ab``, ``bc``, ``ca``."""
        return distance(self.a, self.b), distance(self.b, self.c), distance(self.c, self.a)

    def sorted_sides(self) -> list[ConstructibleReal]:
        return _sort_exact(self.side_lengths())

    def area(self) -> ConstructibleReal:
        return abs((self.b - self.a).cross(self.c - self.a)) / 2

    def __eq__(self, other):
        if not isinstance(other, Triangle):
            return NotImplemented
        return all(p == q for p, q in zip(self.vertices, other.vertices))

    __hash__ = None  # type: ignore[assignment]


def _sort_exact(values) -> list[ConstructibleReal]:
    out: list[ConstructibleReal] = []
    for v in values:
        i = len(out)
        while i > 0 and en.less_than(v, out[i - 1]):
            i -= 1
        out.insert(i, v)
    return out


# ---------------------------------------------------------------------------
# primitives


def line_through(p: Point, q: Point) -> Line:
    return Line(p, q)


def midpoint(p: Point, q: Point) -> Point:
    return Point((p.x + q.x) / 2, (p.y + q.y) / 2)


def distance(p: Point, q: Point) -> ConstructibleReal:
    dx, dy = q.x - p.x, q.y - p.y
    # axis-aligned pairs skip the radical entirely
    if _zero(dy):
        return abs(dx)
    if _zero(dx):
        return abs(dy)
    return en.sqrt(en.square(dx) + en.square(dy))


def intersect_line_line(l: Line, m: Line) -> Point:
    d1, d2 = l.direction, m.direction
    den = d1.cross(d2)
    if en.sign(den) == 0:
        raise ParallelLines("lines are parallel")
    t = (m.p - l.p).cross(d2) / den
    pt = l.p + d1.scale(t)
    if not (l.carries(pt) and m.carries(pt)):
        raise NoIntersection("intersection lies outside the ray/segment")
    return pt


def intersect_line_circle(l: Line, c: Circle) -> list[Point]:
    d = l.direction
    f = l.p - c.center
    a = d.norm2()
    b = d.dot(f)
    disc = en.square(b) - a * (f.norm2() - en.square(c.radius))
    s = en.sign(disc)
    if s < 0:
        raise NoIntersection("line misses the circle")
    if s == 0:
        pts = [l.p + d.scale(-b / a)]
    else:
        root = en.sqrt(disc)
        lo = l.p + d.scale((-b - root) / a)
        hi = l.p + d.scale((-b + root) / a)
        pts = [lo, hi] if not _lex_less(hi, lo) else [hi, lo]
    pts = [p for p in pts if l.carries(p)]
    if not pts:
        raise NoIntersection("intersection lies outside the ray/segment")
    return pts


def intersect_circle_circle(c1: Circle, c2: Circle) -> list[Point]:
    delta = c2.center - c1.center
    if en.sign(delta.norm2()) == 0:
        raise NoIntersection("concentric circles have no isolated intersection")
    # radical axis: 2 delta . X = r1^2 - r2^2 + |c2|^2 - |c1|^2
    rhs = (
        en.square(c1.radius)
        - en.square(c2.radius)
        + c2.center.norm2()
        - c1.center.norm2()
    )
    axis = Line.from_implicit(2 * delta.x, 2 * delta.y, -rhs)
    return intersect_line_circle(axis, c1)


def intersect(a, b) -> list[Point]:
    """Dispatch on object kinds; always returns a lexicographically sorted list."""
    if isinstance(a, Circle) and isinstance(b, Line):
        a, b = b, a
    if isinstance(a, Line) and isinstance(b, Line):
        return [intersect_line_line(a, b)]
    if isinstance(a, Line) and isinstance(b, Circle):
        return intersect_line_circle(a, b)
    if isinstance(a, Circle) and isinstance(b, Circle):
        return intersect_circle_circle(a, b)
    raise TypeError(f"cannot intersect {type(a).__name__} with {type(b).__name__}")


def perpendicular_at(p: Point, l: Line) -> Line:
    return Line(p, p + l.direction.rot90())


def foot(p: Point, l: Line) -> Point:
    return intersect_line_line(Line(l.p, l.q), perpendicular_at(p, l))


def point_on_ray_at_distance(origin: Point, toward: Point, d) -> Point:
    d = en.const_rational(d)
    if en.sign(d) <= 0:
        raise NonpositiveDistance("distance along a ray must be positive")
    if origin == toward:
        raise CoincidentPoints("ray needs two distinct points")
    u = toward - origin
    return origin + u.scale(d / distance(origin, toward))


def right_angle_at(p: Point, vertex: Point, q: Point) -> bool:
    return en.sign((p - vertex).dot(q - vertex)) == 0


def are_parallel(l: Line, m: Line) -> bool:
    return en.sign(l.direction.cross(m.direction)) == 0


def is_right_triangle(t: Triangle) -> bool:
    s1, s2, s3 = t.sorted_sides()
    return en.equals(en.square(s1) + en.square(s2), en.square(s3))


def congruent(t1: Triangle, t2: Triangle) -> bool:
    return all(en.equals(a, b) for a, b in zip(t1.sorted_sides(), t2.sorted_sides()))


# ---------------------------------------------------------------------------
# tracing


@dataclass
class PrimitiveCall:
    primitive: str
    fn: Callable[..., Any]
    args: tuple
    result: Any


@dataclass
class TraceStep:
    label: str
    description: str
    calls: list[PrimitiveCall] = field(default_factory=list)
    created: dict[str, Any] = field(default_factory=dict)


class ConstructionTrace:
    """Ordered record of labelled steps and the primitives each one ran."""

    def __init__(self):
        self.steps: list[TraceStep] = []
        self._current: TraceStep | None = None

    @contextlib.contextmanager
    def step(self, label: str, description: str = ""):
        outer = self._current
        st = TraceStep(label, description)
        self.steps.append(st)
        self._current = st
        try:
            yield st
        finally:
            self._current = outer

    def call(self, fn: Callable[..., Any], *args):
        result = fn(*args)
        if self._current is None:
            self.steps.append(TraceStep(fn.__name__, ""))
            self._current_or_last().calls.append(PrimitiveCall(fn.__name__, fn, args, result))
        else:
            self._current.calls.append(PrimitiveCall(fn.__name__, fn, args, result))
        return result

    def _current_or_last(self) -> TraceStep:
        return self._current or self.steps[-1]

    def name(self, name: str, obj):
        self._current_or_last().created[name] = obj
        return obj

    def objects(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        for st in self.steps:
            out.update(st.created)
        return out

    def replay(self) -> bool:
        """Re-run every primitive and check the results serialize identically."""
        for st in self.steps:
            for call in st.calls:
                again = call.fn(*call.args)
                if serialize_object(again) != serialize_object(call.result):
                    return False
        return True

    def __len__(self) -> int:
        return len(self.steps)


def _run(trace: ConstructionTrace | None, fn, *args):
    return trace.call(fn, *args) if trace is not None else fn(*args)


def _name(trace: ConstructionTrace | None, name: str, obj):
    if trace is not None:
        trace.name(name, obj)
    return obj


def serialize_object(obj) -> str:
    """Exact, sharing-aware text form of a geometric object (or list of them)."""
    if isinstance(obj, (list, tuple)):
        return "[" + "; ".join(serialize_object(o) for o in obj) + "]"
    if isinstance(obj, Point):
        return "Point " + en.serialize(obj.x, obj.y)
    if isinstance(obj, Line):
        return type(obj).__name__ + " " + en.serialize(obj.p.x, obj.p.y, obj.q.x, obj.q.y)
    if isinstance(obj, Circle):
        return "Circle " + en.serialize(obj.center.x, obj.center.y, obj.radius)
    if isinstance(obj, Triangle):
        return "Triangle " + en.serialize(*(c for v in obj.vertices for c in (v.x, v.y)))
    if isinstance(obj, ConstructibleReal):
        return "Scalar " + en.serialize(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# ---------------------------------------------------------------------------
# composite constructions


def _beyond(candidates: list[Point], base: Point, direction: Point) -> Point:
    """The candidate ``p`` with ``(p - base) . direction > 0``."""
    for p in candidates:
        if en.sign((p - base).dot(direction)) > 0:
            return p
    raise NoIntersection("no intersection on the requested side")


def _left_of(candidates: list[Point], origin: Point, toward: Point, want: int = 1) -> Point:
    d = toward - origin
    for p in candidates:
        if en.sign(d.cross(p - origin)) == want:
            return p
    raise NoIntersection("no intersection on the requested side")


def square_on_segment(
    a: Point, b: Point, away_from: Point, trace: ConstructionTrace | None = None
) -> tuple[Point, Point]:
    """Erect square ``A B D E`` on ``AB`` in the half-plane not containing ``away_from``.

    Returns ``(D, E)``: ``D`` adjacent to ``B``, ``E`` adjacent to ``A``.
    """
    if a == b:
        raise CoincidentPoints("square side needs two distinct points")
    ab = _run(trace, line_through, a, b)
    ref_side = ab.side(away_from)
    if ref_side == 0:
        raise ReferenceOnLine("reference point lies on line AB")
    side = _run(trace, distance, a, b)
    at_b = _run(trace, perpendicular_at, b, ab)
    at_a = _run(trace, perpendicular_at, a, ab)
    d = _left_of(_run(trace, intersect_line_circle, at_b, Circle(b, side)), a, b, -ref_side)
    e = _left_of(_run(trace, intersect_line_circle, at_a, Circle(a, side)), a, b, -ref_side)
    return d, e


def golden_extension_point(a: Point, b: Point, trace: ConstructionTrace | None = None) -> Point:
    """Point ``C`` on ray ``A->B`` beyond ``B`` with ``BC = phi * AB``.

    Copy ``AB`` past ``B`` to ``B'``, erect ``BG = AB`` perpendicular at
    ``B``; the circle about the midpoint ``M`` of ``BB'`` through ``G``
    meets the line at ``C`` (``MC = sqrt(5)/2 * AB``).
    """
    if a == b:
        raise CoincidentPoints("golden extension needs two distinct points")
    ab = _run(trace, line_through, a, b)
    s = _run(trace, distance, a, b)
    unit_circle = Circle(b, s)
    b2 = _beyond(_run(trace, intersect_line_circle, ab, unit_circle), b, b - a)
    m = _run(trace, midpoint, b, b2)
    perp = _run(trace, perpendicular_at, b, ab)
    g = _run(trace, intersect_line_circle, perp, unit_circle)[0]
    r = _run(trace, distance, m, g)
    c = _beyond(_run(trace, intersect_line_circle, ab, Circle(m, r)), b, b - a)
    return c


def kepler_triangle(b: Point, c: Point, trace: ConstructionTrace | None = None) -> Triangle:
    """Right triangle ``ABC`` (right angle at ``B``) with ``BC = 1``, ``AB = sqrt(phi)``.

    ``sqrt(phi)`` is the altitude at ``B`` in the Thales semicircle over a
    segment split into ``1`` and ``phi`` at ``B``.  ``A`` lies left of ``B->C``.
    """
    if not en.equals(distance(b, c), 1):
        raise UnitLengthRequired("kepler triangle needs |BC| = 1")
    y = _name(trace, "Y", golden_extension_point(c, b, trace))
    o = _name(trace, "O_k", _run(trace, midpoint, c, y))
    semicircle = _name(trace, "k", Circle(o, _run(trace, distance, o, c)))
    perp = _run(trace, perpendicular_at, b, _run(trace, line_through, b, c))
    a = _left_of(_run(trace, intersect_line_circle, perp, semicircle), b, c, 1)
    return Triangle(a, b, c, ("A", "B", "C"))


def construct_T2_via_kepler() -> tuple[Triangle, ConstructionTrace]:
    """Kepler triangle, external square on ``AB``, arc ``BE`` onto ray ``BA``."""
    trace = ConstructionTrace()
    b, c = point(0, 0), point(1, 0)
    with trace.step("(1)", "Kepler triangle ABC with BC = 1, AB = sqrt(phi)"):
        trace.name("B", b)
        trace.name("C", c)
        kt = kepler_triangle(b, c, trace)
        a = trace.name("A", kt.a)
    with trace.step("(2)", "square ABDE externally on AB"):
        d, e = square_on_segment(a, b, c, trace)
        trace.name("D", d)
        trace.name("E", e)
    with trace.step("(3)", "arc about B with radius BE cuts ray BA at F"):
        arc = trace.name("arc", Circle(b, trace.call(distance, b, e)))
        ba = trace.call(line_through, b, a)
        f = trace.name("F", _beyond(trace.call(intersect_line_circle, ba, arc), b, a - b))
        tri = trace.name("T2", Triangle(f, b, c, ("F", "B", "C")))
    return tri, trace


def construct_T2_via_thales() -> tuple[Triangle, ConstructionTrace]:
    """Golden extension to ``C``, ``CD = BC``, semicircle on ``AD``, perpendicular at ``B``."""
    trace = ConstructionTrace()
    a, b = point(0, 0), point(1, 0)
    with trace.step("(1)", "C on AB extended with BC/BA = phi, D with CD = BC"):
        trace.name("A", a)
        trace.name("B", b)
        c = trace.name("C", golden_extension_point(a, b, trace))
        ab = trace.call(line_through, a, b)
        bc = trace.call(distance, b, c)
        d = trace.name("D", _beyond(trace.call(intersect_line_circle, ab, Circle(c, bc)), c, c - b))
    with trace.step("(2)", "semicircle on AD about its midpoint O"):
        o = trace.name("O", trace.call(midpoint, a, d))
        semi = trace.name("semicircle", Circle(o, trace.call(distance, o, a)))
    with trace.step("(3)", "perpendicular to AB at B meets the semicircle at E"):
        perp = trace.call(perpendicular_at, b, ab)
        e = trace.name("E", _left_of(trace.call(intersect_line_circle, perp, semi), a, d, 1))
        tri = trace.name("T2", Triangle(a, b, e, ("A", "B", "E")))
    return tri, trace

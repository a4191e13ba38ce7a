"""The coupled ellipse/hyperbola system and the golden-ratio problem on it.

The ellipse ``x^2/a^2 + y^2/b^2 = 1`` and the hyperbola
``x^2/c^2 - y^2/b^2 = 1`` share ``b``; with ``a^2 = b^2 + c^2`` the foci of
the ellipse are the vertices of the hyperbola and ``e1 * e2 = 1``.  Lengths
are normalised by ``c = 1``.

Everything here is exact except :func:`min_perimeter_isosceles_circumscribing_semicircle`,
which is a numerical optimisation check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import exactnum as en
from . import euclid
from .euclid import Point, Triangle
from .exactnum import ConstructibleReal
from .poly import RationalPolynomial, rational_roots, solve_biquadratic

__all__ = [
    "InvalidSemiMajorAxis",
    "InvalidRadius",
    "NoConvergence",
    "CoupledConicSystem",
    "SceneLayout",
    "RejectedRoot",
    "ProblemSolution",
    "LatusRectumRectangle",
    "MinPerimeterResult",
    "intersect_coupled",
    "scene_layout",
    "parallel_condition_polynomial",
    "verify_parallel_condition",
    "solve_problem",
    "latus_rectum_rectangle",
    "decomposition_triangles",
    "kepler_decomposition_check",
    "tangent_height",
    "circumscribed_perimeter",
    "min_perimeter_isosceles_circumscribing_semicircle",
]


class InvalidSemiMajorAxis(ValueError):
    pass


class InvalidRadius(ValueError):
    pass


class NoConvergence(ArithmeticError):
    pass


C = en.const_rational(1)


@dataclass(frozen=True, eq=False)
class CoupledConicSystem:
    a: ConstructibleReal
    b: ConstructibleReal
    c: ConstructibleReal

    @classmethod
    def from_semi_major(cls, a) -> CoupledConicSystem:
        a = en.const_rational(a)
        if not en.less_than(C, a):
            raise InvalidSemiMajorAxis("the semi-major axis must exceed c = 1")
        return cls(a, en.sqrt(en.square(a) - en.square(C)), C)

    @property
    def e1(self) -> ConstructibleReal:
        return self.c / self.a

    @property
    def e2(self) -> ConstructibleReal:
        return en.sqrt(en.square(self.c) + en.square(self.b)) / self.c

    @property
    def focal_distance(self) -> ConstructibleReal:
        """``OF2`` of the ellipse, ``sqrt(a^2 - b^2)``."""
        return en.sqrt(en.square(self.a) - en.square(self.b))

    def on_ellipse(self, p: Point) -> bool:
        return en.equals(en.square(p.x) / en.square(self.a) + en.square(p.y) / en.square(self.b), 1)

    def on_hyperbola(self, p: Point) -> bool:
        return en.equals(en.square(p.x) / en.square(self.c) - en.square(p.y) / en.square(self.b), 1)


def intersect_coupled(sys: CoupledConicSystem) -> tuple[ConstructibleReal, ConstructibleReal]:
    """Top-right common point ``P`` of the two curves.

    Adding the two equations eliminates ``y``:
    ``x^2 (1/a^2 + 1/c^2) = 2``.
    """
    a2, b2, c2 = en.square(sys.a), en.square(sys.b), en.square(sys.c)
    x2 = 2 * a2 * c2 / (a2 + c2)
    y2 = b2 * (x2 / c2 - 1)
    return en.sqrt(x2), en.sqrt(y2)


@dataclass(frozen=True, eq=False)
class SceneLayout:
    O: Point
    F1: Point
    F2: Point
    K: Point
    L: Point
    M: Point
    N: Point
    P: Point
    Q: Point
    H: Point

    def points(self) -> dict[str, Point]:
        return {name: getattr(self, name) for name in ("O", "F1", "F2", "K", "L", "M", "N", "P", "Q", "H")}


def scene_layout(sys: CoupledConicSystem) -> SceneLayout:
    zero = en.const_rational(0)
    xp, yp = intersect_coupled(sys)
    f = sys.focal_distance
    return SceneLayout(
        O=Point(zero, zero),
        F1=Point(-f, zero),
        F2=Point(f, zero),
        K=Point(zero, sys.b),
        L=Point(zero, -sys.b),
        M=Point(-sys.a, zero),
        N=Point(sys.a, zero),
        P=Point(xp, yp),
        Q=Point(xp, zero),
        # right directrix of the hyperbola, x = c^2 / a
        H=Point(en.square(sys.c) / sys.a, zero),
    )


# ---------------------------------------------------------------------------
# eliminating the radical from the parallel condition


class _RatFunc:
    """Reduced quotient of two polynomials in ``a``."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, RationalPolynomial) else RationalPolynomial([num])
        den = RationalPolynomial([1]) if den is None else den
        g = num.gcd(den) if num else den
        num, den = num // g, den // g
        lead = den.leading
        self.num, self.den = num * (1 / lead), den * (1 / lead)

    def __add__(self, o):
        return _RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return _RatFunc(self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, o):
        return _RatFunc(self.num * o.num, self.den * o.den)

    def __truediv__(self, o):
        return _RatFunc(self.num * o.den, self.den * o.num)


def parallel_condition_polynomial() -> RationalPolynomial:
    """Polynomial in ``a`` whose roots contain every solution of ``PN || KF2``.

    ``PN || KF2`` means ``PQ/QN = KO/OF2``, i.e. ``y_P = (a - x_P) b``.
    Squaring and dividing by ``b^2 = a^2 - 1`` (nonzero as ``a > 1``) gives
    ``L = A - B s`` with ``s = x_P`` and ``s^2`` rational in ``a``; squaring
    ``A - L = B s`` again removes ``s``.  The numerator of
    ``(A - L)^2 - B^2 s^2``, made monic, is the result.
    """
    a = _RatFunc(RationalPolynomial([0, 1]))
    one = _RatFunc(1)
    a2 = a * a
    b2 = a2 - one
    s2 = _RatFunc(2) * a2 / (a2 + one)  # x_P^2 with c = 1
    lhs = (b2 * (s2 - one)) / b2  # y_P^2 / b^2
    big_a = a2 + s2  # (a - s)^2 = a^2 + s^2 - 2 a s
    big_b = _RatFunc(2) * a
    residual = (big_a - lhs) * (big_a - lhs) - big_b * big_b * s2
    return residual.num.monic()


def _parallel_sides(a: ConstructibleReal) -> tuple[CoupledConicSystem, ConstructibleReal, ConstructibleReal, ConstructibleReal]:
    sys = CoupledConicSystem.from_semi_major(a)
    xp, yp = intersect_coupled(sys)
    return sys, xp, yp, (sys.a - xp) * sys.b


def verify_parallel_condition(a) -> bool:
    """Exact check of ``y_P = (a - x_P) b`` together with ``a > x_P``."""
    sys, xp, lhs, rhs = _parallel_sides(en.const_rational(a))
    return en.less_than(xp, sys.a) and en.equals(lhs, rhs)


@dataclass(frozen=True)
class RejectedRoot:
    value: str
    reason: str


@dataclass(frozen=True, eq=False)
class ProblemSolution:
    a: ConstructibleReal
    e1: ConstructibleReal
    e2: ConstructibleReal
    x_P: ConstructibleReal
    y_P: ConstructibleReal
    ratio_ON_OQ: ConstructibleReal
    ratio_OQ_HQ: ConstructibleReal
    OQ: ConstructibleReal
    OH: ConstructibleReal
    HQ: ConstructibleReal
    QN: ConstructibleReal
    q_is_midpoint_of_HN: bool
    system: CoupledConicSystem
    layout: SceneLayout
    polynomial: RationalPolynomial
    rejected_roots: tuple[RejectedRoot, ...]


def solve_problem() -> ProblemSolution:
    """Solve ``PN || KF2`` for ``a`` and derive every quantity of the scene."""
    p = parallel_condition_polynomial()
    rejected: list[RejectedRoot] = []
    rest = p
    for r in rational_roots(p):
        while not rest % RationalPolynomial([-r, 1]):
            rest = rest // RationalPolynomial([-r, 1])
        if r <= 1:
            rejected.append(RejectedRoot(str(r), "rejected: a > c required"))
        elif not verify_parallel_condition(r):
            rejected.append(RejectedRoot(str(r), "rejected: spurious root of the squared condition"))
    candidates = []
    for r in solve_biquadratic(rest):
        if not en.less_than(C, r):
            rejected.append(RejectedRoot(en.to_decimal(r, 12), "rejected: a > c required"))
        elif verify_parallel_condition(r):
            candidates.append(r)
        else:
            rejected.append(RejectedRoot(en.to_decimal(r, 12), "rejected: spurious root of the squared condition"))
    if len(candidates) != 1:
        raise ArithmeticError(f"expected one admissible root, found {len(candidates)}")
    sys = CoupledConicSystem.from_semi_major(candidates[0])
    layout = scene_layout(sys)
    on = euclid.distance(layout.O, layout.N)
    oq = euclid.distance(layout.O, layout.Q)
    oh = euclid.distance(layout.O, layout.H)
    hq = euclid.distance(layout.H, layout.Q)
    qn = euclid.distance(layout.Q, layout.N)
    return ProblemSolution(
        a=sys.a,
        e1=sys.e1,
        e2=sys.e2,
        x_P=layout.P.x,
        y_P=layout.P.y,
        ratio_ON_OQ=on / oq,
        ratio_OQ_HQ=oq / hq,
        OQ=oq,
        OH=oh,
        HQ=hq,
        QN=qn,
        q_is_midpoint_of_HN=euclid.midpoint(layout.H, layout.N) == layout.Q,
        system=sys,
        layout=layout,
        polynomial=p,
        rejected_roots=tuple(rejected),
    )


# ---------------------------------------------------------------------------
# latus rectum rectangle


@dataclass(frozen=True, eq=False)
class LatusRectumRectangle:
    A: Point
    B: Point
    C: Point
    D: Point
    F1: Point
    F2: Point
    semi_latus: ConstructibleReal

    @classmethod
    def from_semi_latus(cls, s, focus=1) -> LatusRectumRectangle:
        s, f = en.const_rational(s), en.const_rational(focus)
        zero = en.const_rational(0)
        return cls(
            A=Point(-f, s), B=Point(f, s), C=Point(-f, -s), D=Point(f, -s),
            F1=Point(-f, zero), F2=Point(f, zero), semi_latus=s,
        )

    @property
    def area(self) -> ConstructibleReal:
        return euclid.distance(self.A, self.B) * euclid.distance(self.A, self.C)


def latus_rectum_rectangle(sol: ProblemSolution) -> LatusRectumRectangle:
    sys = sol.system
    return LatusRectumRectangle.from_semi_latus(en.square(sys.b) / sys.a, sys.focal_distance)


def decomposition_triangles(rect: LatusRectumRectangle) -> list[Triangle]:
    """``ABF2``, ``CDF2``, ``AF1F2``, ``CF1F2``; raises on degenerate input."""
    r = rect
    return [
        Triangle(r.A, r.B, r.F2, ("A", "B", "F2")),
        Triangle(r.C, r.D, r.F2, ("C", "D", "F2")),
        Triangle(r.A, r.F1, r.F2, ("A", "F1", "F2")),
        Triangle(r.C, r.F1, r.F2, ("C", "F1", "F2")),
    ]


def _kepler_shaped(t: Triangle) -> bool:
    s1, s2, s3 = t.sorted_sides()
    return en.equals(s2, s1 * en.sqrt_phi()) and en.equals(s3, s1 * en.phi())


def kepler_decomposition_check(rect: LatusRectumRectangle) -> bool:
    """Do the four focal triangles tile ``ACDB``, congruent and Kepler-shaped?"""
    if en.sign(rect.semi_latus) <= 0:
        return False
    try:
        tris = decomposition_triangles(rect)
    except euclid.DegenerateTriangle:
        return False
    total = en.const_rational(0)
    for t in tris:
        total = total + t.area()
    if not en.equals(total, rect.area):
        return False
    if not all(euclid.congruent(tris[0], t) for t in tris[1:]):
        return False
    return all(_kepler_shaped(t) for t in tris)


# ---------------------------------------------------------------------------
# smallest isosceles triangle around a semicircle (numerical)
#
# Base 2h on the diameter line, apex at height d.  Tangency of the equal
# sides to the arc of radius r reads d h = r sqrt(d^2 + h^2), so
# d = r h / sqrt(h^2 - r^2) and each equal side is h^2 / sqrt(h^2 - r^2).

_WORK_DPS = 50
_INVPHI = (mpmath.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class MinPerimeterResult:
    half_base: float
    height: float
    perimeter: float
    iterations: int

    def __iter__(self):
        return iter((self.half_base, self.height, self.perimeter))


def tangent_height(r, h):
    """Apex height ``d`` making the legs tangent to the arc, for ``h > r``."""
    with mpmath.workdps(_WORK_DPS):
        r, h = mpmath.mpf(r), mpmath.mpf(h)
        return r * h / mpmath.sqrt(h * h - r * r)


def circumscribed_perimeter(r, h):
    with mpmath.workdps(_WORK_DPS):
        r, h = mpmath.mpf(r), mpmath.mpf(h)
        return 2 * h + 2 * h * h / mpmath.sqrt(h * h - r * r)


def min_perimeter_isosceles_circumscribing_semicircle(
    r, tol=1e-10, max_iterations: int = 10_000
) -> MinPerimeterResult:
    """Minimise the perimeter over ``h`` in ``[r + tol, 100 r]`` by golden sections.

    Runs in 50-digit binary floating point so the bracket can shrink well
    below ``tol`` even though the perimeter is flat near its minimum.
    """
    if not r > 0:
        raise InvalidRadius("radius must be positive")
    if not tol > 0:
        raise ValueError("tol must be positive")
    with mpmath.workdps(_WORK_DPS):
        r, tol_m = mpmath.mpf(r), mpmath.mpf(tol)
        lo, hi = r + tol_m, 100 * r
        x1 = hi - _INVPHI * (hi - lo)
        x2 = lo + _INVPHI * (hi - lo)
        f1, f2 = circumscribed_perimeter(r, x1), circumscribed_perimeter(r, x2)
        target = tol_m / 100
        it = 0
        while hi - lo > target:
            it += 1
            if it > max_iterations:
                raise NoConvergence(f"bracket still {mpmath.nstr(hi - lo, 5)} wide")
            if f1 <= f2:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - _INVPHI * (hi - lo)
                f1 = circumscribed_perimeter(r, x1)
            else:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + _INVPHI * (hi - lo)
                f2 = circumscribed_perimeter(r, x2)
        h = (lo + hi) / 2
        return MinPerimeterResult(
            float(h), float(tangent_height(r, h)), float(circumscribed_perimeter(r, h)), it
        )

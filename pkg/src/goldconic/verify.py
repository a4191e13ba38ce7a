"""Exact identity suite behind ``goldconic verify``.

The claimed values live in :class:`GoldenClaims`.  Every quantity compared
against them is derived independently (``a`` from eliminating the radical,
lengths from the constructions), so editing any single claimed constant
makes at least one identity fail.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import conics, euclid
from . import exactnum as en
from .exactnum import ConstructibleReal
from .poly import RationalPolynomial

__all__ = ["GoldenClaims", "CLAIMS", "IdentityResult", "run_verification"]


@dataclass(frozen=True)
class GoldenClaims:
    # phi = (1 + sqrt(phi_radicand)) / 2
    phi_radicand: int = 5
    # parallel polynomial as  discarded_factor * quartic, coefficients lowest first
    discarded_factor: tuple[int, ...] = (-1, 0, 1)
    quartic: tuple[int, ...] = (-1, 0, -4, 0, 1)
    c: int = 1
    f1f2: int = 2
    # AF1 = af1_numerator / sqrt(phi)
    af1_numerator: int = 2
    # a = phi ** (a_phi_half_exponent / 2)
    a_phi_half_exponent: int = 3
    # squared sides of T2 as p + q*phi
    t2_side_squares: tuple[tuple[int, int], ...] = field(default=((1, 0), (0, 2), (1, 2)))

    def phi(self) -> ConstructibleReal:
        return (1 + en.sqrt(self.phi_radicand)) / 2

    def phi_half_power(self, k: int) -> ConstructibleReal:
        phi = self.phi()
        root = en.sqrt(phi)
        out = phi ** (abs(k) // 2) * (root if k % 2 else 1)
        return out if k >= 0 else 1 / out


CLAIMS = GoldenClaims()


@dataclass(frozen=True)
class IdentityResult:
    name: str
    passed: bool
    detail: str = ""


def _checks(claims: GoldenClaims) -> list[tuple[str, Callable[[], bool]]]:
    state: dict = {}

    def sol() -> conics.ProblemSolution:
        if "sol" not in state:
            state["sol"] = conics.solve_problem()
        return state["sol"]

    def t2(which: str) -> euclid.Triangle:
        if which not in state:
            build = euclid.construct_T2_via_kepler if which == "kepler" else euclid.construct_T2_via_thales
            state[which] = build()[0]
        return state[which]

    def rect() -> conics.LatusRectumRectangle:
        if "rect" not in state:
            state["rect"] = conics.latus_rectum_rectangle(sol())
        return state["rect"]

    phi = claims.phi()
    sqrt_phi = en.sqrt(phi)
    a_claim = claims.phi_half_power(claims.a_phi_half_exponent)
    t2_sides = [en.sqrt(p + q * phi) for p, q in claims.t2_side_squares]

    def eq(x, y) -> bool:
        return en.equals(x, y)

    def sides_match(t: euclid.Triangle) -> bool:
        return all(eq(s, c) for s, c in zip(t.sorted_sides(), euclid._sort_exact(t2_sides)))

    def kof2() -> euclid.Triangle:
        lay = sol().layout
        return euclid.Triangle(lay.K, lay.O, lay.F2, ("K", "O", "F2"))

    claimed_eq2 = RationalPolynomial(claims.discarded_factor) * RationalPolynomial(claims.quartic)

    return [
        ("phi^2 == phi + 1", lambda: eq(phi * phi, phi + 1)),
        ("phi^3 == 2*phi + 1 == 2 + sqrt(5)", lambda: eq(phi**3, 2 * phi + 1) and eq(phi**3, 2 + en.sqrt(5))),
        ("1/phi == phi - 1", lambda: eq(1 / phi, phi - 1)),
        ("parallel polynomial == (a^2-1)(a^4-4a^2-1)", lambda: conics.parallel_condition_polynomial() == claimed_eq2),
        ("quartic(a) == 0 at the solved a", lambda: eq(RationalPolynomial(claims.quartic).eval(sol().a), 0)),
        ("a == phi*sqrt(phi)", lambda: eq(sol().a, a_claim)),
        ("PQ/QN == KO/OF2 holds at a", lambda: conics.verify_parallel_condition(sol().a)),
        ("PQ/QN == KO/OF2 fails at a = sqrt(2) and a = 2", lambda: not conics.verify_parallel_condition(en.sqrt(2))
         and not conics.verify_parallel_condition(2)),
        ("c == OF2 == 1", lambda: eq(sol().system.focal_distance, claims.c)
         and eq(euclid.distance(sol().layout.O, sol().layout.F2), claims.c)),
        ("P on ellipse and hyperbola", lambda: sol().system.on_ellipse(sol().layout.P)
         and sol().system.on_hyperbola(sol().layout.P)),
        ("P in the open first quadrant", lambda: en.sign(sol().x_P) > 0 and en.sign(sol().y_P) > 0),
        ("e1 == 1/(phi*sqrt(phi))", lambda: eq(sol().e1, 1 / a_claim)),
        ("e2 == phi*sqrt(phi)", lambda: eq(sol().e2, a_claim)),
        ("e1*e2 == 1", lambda: eq(sol().e1 * sol().e2, 1)),
        ("OQ == sqrt(phi)", lambda: eq(sol().OQ, sqrt_phi)),
        ("OH == 1/(phi*sqrt(phi))", lambda: eq(sol().OH, 1 / a_claim)),
        ("ON/OQ == phi", lambda: eq(sol().ratio_ON_OQ, phi)),
        ("OQ/HQ == phi", lambda: eq(sol().ratio_OQ_HQ, phi)),
        ("HQ == QN == 1/sqrt(phi)", lambda: eq(sol().HQ, sol().QN) and eq(sol().QN, 1 / sqrt_phi)),
        ("Q is the midpoint of HN", lambda: sol().q_is_midpoint_of_HN),
        ("F1F2 == 2", lambda: eq(euclid.distance(rect().F1, rect().F2), claims.f1f2)),
        ("AF1 == 2/sqrt(phi)", lambda: eq(euclid.distance(rect().A, rect().F1), claims.af1_numerator / sqrt_phi)),
        ("F1F2/AF1 == sqrt(phi)", lambda: eq(euclid.distance(rect().F1, rect().F2)
                                             / euclid.distance(rect().A, rect().F1), sqrt_phi)),
        ("ACDB = 4 congruent Kepler triangles", lambda: conics.kepler_decomposition_check(rect())),
        ("T2 Pythagoras: 1 + 2*phi == phi^3", lambda: eq(1 + 2 * phi, phi**3)
         and eq(en.square(t2_sides[0]) + en.square(t2_sides[1]), en.square(t2_sides[2]))),
        ("Kepler-square construction gives T2", lambda: sides_match(t2("kepler")) and euclid.is_right_triangle(t2("kepler"))),
        ("Thales construction gives T2", lambda: sides_match(t2("thales")) and euclid.is_right_triangle(t2("thales"))),
        ("both T2 constructions congruent", lambda: euclid.congruent(t2("kepler"), t2("thales"))),
        ("KOF2 == T2", lambda: sides_match(kof2()) and euclid.congruent(kof2(), t2("kepler"))),
    ]


def run_verification(claims: GoldenClaims | None = None, bits: int | None = None) -> list[IdentityResult]:
    """Evaluate every identity; exceptions count as failures."""
    claims = CLAIMS if claims is None else claims
    results = []

    def go():
        for name, check in _checks(claims):
            try:
                results.append(IdentityResult(name, bool(check())))
            except (ArithmeticError, ValueError, euclid.GeometryError) as exc:
                results.append(IdentityResult(name, False, f"{type(exc).__name__}: {exc}"))

    if bits is None:
        go()
    else:
        with en.start_precision(bits):
            go()
    return results

"""Dense univariate polynomials over Q with Sturm-sequence root isolation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import exactnum as en
from .exactnum import ConstructibleReal

__all__ = [
    "RationalPolynomial",
    "RootIsolation",
    "ZeroPolynomial",
    "NotBiquadratic",
    "isolate_real_roots",
    "solve_biquadratic",
    "rational_roots",
]


class ZeroPolynomial(ValueError):
    pass


class NotBiquadratic(ValueError):
    pass


def _trim(coeffs: Iterable) -> tuple[Fraction, ...]:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class RationalPolynomial:
    """Coefficients lowest degree first; the zero polynomial has none."""

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable = ()):
        object.__setattr__(self, "coefficients", _trim(coefficients))

    @classmethod
    def from_highest_first(cls, coeffs: Sequence) -> RationalPolynomial:
        return cls(list(coeffs)[::-1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> RationalPolynomial:
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> RationalPolynomial:
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else Fraction(0)

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self), len(other))
        return RationalPolynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coefficients)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self or not other:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = RationalPolynomial([1])
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other):
        other = _as_poly(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        quot = [Fraction(0)] * max(len(rem) - len(other) + 1, 0)
        lead = other.leading
        for k in range(len(quot) - 1, -1, -1):
            c = rem[k + other.degree] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coefficients):
                    rem[k + j] -= c * b
        return RationalPolynomial(quot), RationalPolynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> RationalPolynomial:
        if not self:
            return self
        lead = self.leading
        return RationalPolynomial(c / lead for c in self.coefficients)

    def derivative(self) -> RationalPolynomial:
        return RationalPolynomial(k * c for k, c in enumerate(self.coefficients) if k)

    def gcd(self, other) -> RationalPolynomial:
        a, b = self, _as_poly(other)
        while b:
            a, b = b, a % b
        return a.monic()

    def square_free(self) -> RationalPolynomial:
        """The product of the distinct irreducible factors (monic)."""
        if self.degree < 1:
            return self.monic()
        return (self // self.gcd(self.derivative())).monic()

    # -- evaluation ---------------------------------------------------------
    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        """Horner evaluation at a rational or a :class:`ConstructibleReal`."""
        if isinstance(x, ConstructibleReal):
            acc = en.const_rational(0)
            for c in reversed(self.coefficients):
                acc = acc * x + en.const_rational(c)
            return acc
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def sign_at(self, x) -> int:
        v = self.eval(Fraction(x))
        return (v > 0) - (v < 0)

    # -- root machinery -----------------------------------------------------
    def sturm_sequence(self) -> list[RationalPolynomial]:
        seq = [self, self.derivative()]
        while seq[-1]:
            r = -(seq[-2] % seq[-1])
            if not r:
                break
            seq.append(r)
        return [p for p in seq if p]

    def root_bound(self) -> Fraction:
        """Cauchy bound: every real root lies strictly inside (-B, B)."""
        lead = abs(self.leading)
        return 1 + max((abs(c) / lead for c in self.coefficients[:-1]), default=Fraction(0))

    def format(self, var: str = "x") -> str:
        if not self:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                pw = var if k == 1 else f"{var}^{k}"
                coef = str(mag) if mag.denominator == 1 else f"({mag})"
                body = pw if mag == 1 else f"{coef}{pw}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.format()

    def highest_first(self) -> list[Fraction]:
        return list(reversed(self.coefficients))


def _as_poly(x) -> RationalPolynomial:
    if isinstance(x, RationalPolynomial):
        return x
    return RationalPolynomial([x])


def _sign_changes(seq: Sequence[RationalPolynomial], x: Fraction) -> int:
    signs = [s for s in (p.sign_at(x) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@dataclass(frozen=True)
class RootIsolation:
    """Sorted, disjoint open intervals ``(lo, hi)`` each holding one root.

    Endpoints are never roots.  ``multiplicity_free`` records whether the
    input polynomial was already square-free.
    """

    intervals: tuple[tuple[Fraction, Fraction], ...]
    multiplicity_free: bool
    square_free_part: RationalPolynomial

    def __len__(self) -> int:
        return len(self.intervals)

    def refine(self, index: int, width) -> tuple[Fraction, Fraction]:
        """Bisect interval ``index`` until it is narrower than ``width``."""
        p = self.square_free_part
        lo, hi = self.intervals[index]
        s_lo = p.sign_at(lo)
        width = Fraction(width)
        while hi - lo >= width:
            mid = (lo + hi) / 2
            s = p.sign_at(mid)
            if s == 0:
                return mid, mid
            if s == s_lo:
                lo = mid
            else:
                hi = mid
        return lo, hi

    def approximations(self, digits: int = 12) -> list[str]:
        """Each root rounded to ``digits`` decimals (root interval midpoints)."""
        out = []
        tiny = Fraction(1, 10 ** (digits + 4))
        for i in range(len(self.intervals)):
            lo, hi = self.refine(i, tiny)
            out.append(en.to_decimal(en.const_rational((lo + hi) / 2), digits))
        return out


def _split_point(p: RationalPolynomial, lo: Fraction, hi: Fraction) -> Fraction:
    # avoid landing exactly on a root so endpoints stay root-free
    for k in range(1, 64):
        t = lo + (hi - lo) * Fraction(2**k - 1, 2 ** (k + 1)) if k > 1 else (lo + hi) / 2
        if p.sign_at(t):
            return t
    raise AssertionError("no root-free split point found")  # pragma: no cover


def isolate_real_roots(p: RationalPolynomial) -> RootIsolation:
    """Isolate every distinct real root of ``p`` with Sturm sequences."""
    if not p:
        raise ZeroPolynomial("cannot isolate the roots of the zero polynomial")
    sf = p.square_free()
    if sf.degree < 1:
        return RootIsolation((), sf.degree == p.degree, sf)
    seq = sf.sturm_sequence()
    bound = sf.root_bound()
    found: list[tuple[Fraction, Fraction]] = []
    work = [(-bound, bound, _sign_changes(seq, -bound) - _sign_changes(seq, bound))]
    while work:
        lo, hi, count = work.pop()
        if count == 0:
            continue
        if count == 1:
            found.append((lo, hi))
            continue
        mid = _split_point(sf, lo, hi)
        v_mid = _sign_changes(seq, mid)
        work.append((lo, mid, _sign_changes(seq, lo) - v_mid))
        work.append((mid, hi, v_mid - _sign_changes(seq, hi)))
    found.sort()
    return RootIsolation(tuple(found), sf.degree == p.degree, sf)


def rational_roots(p: RationalPolynomial) -> list[Fraction]:
    """Distinct rational roots, by the rational root theorem."""
    if not p:
        raise ZeroPolynomial("the zero polynomial has every rational as a root")
    lcm = 1
    for c in p.coefficients:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in p.coefficients]
    roots = set()
    if ints[0] == 0:
        roots.add(Fraction(0))
        while ints and ints[0] == 0:
            ints.pop(0)
    if len(ints) > 1:
        for num in _divisors(abs(ints[0])):
            for den in _divisors(abs(ints[-1])):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if p.eval(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def solve_biquadratic(p: RationalPolynomial) -> list[ConstructibleReal]:
    """Exact real roots of ``c4 x^4 + c2 x^2 + c0``, ascending and distinct."""
    if p.degree != 4 or p[1] or p[3]:
        raise NotBiquadratic(f"not of the form c4 x^4 + c2 x^2 + c0: {p}")
    c4, c2, c0 = p[4], p[2], p[0]
    disc = c2 * c2 - 4 * c4 * c0
    if disc < 0:
        return []
    root_disc = en.sqrt(en.const_rational(disc))
    squares = []
    for t in ((-c2 - root_disc) / (2 * c4), (-c2 + root_disc) / (2 * c4)):
        s = en.sign(t)
        if s >= 0 and not any(en.equals(t, u) for u in squares):
            squares.append(t)
    roots = []
    for t in squares:
        r = en.sqrt(t)
        roots.append(r)
        if en.sign(r):
            roots.append(-r)
    return sorted(roots, key=_ExactKey)


class _ExactKey:
    """Sort key comparing ConstructibleReals exactly."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return en.less_than(self.v, other.v)

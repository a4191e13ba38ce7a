from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from goldconic import exactnum as en
from goldconic.poly import (
    NotBiquadratic,
    RationalPolynomial,
    ZeroPolynomial,
    isolate_real_roots,
    rational_roots,
    solve_biquadratic,
)

P = RationalPolynomial
QUARTIC = P([-1, 0, -4, 0, 1])
SEXTIC = P([1, 0, 3, 0, -5, 0, 1])
# real roots of the sextic from sympy.nroots at 30 digits
SEXTIC_ROOTS = ["-2.05817102727149225032198104758", "-1", "1", "2.05817102727149225032198104758"]


def test_canonical_form():
    assert P([1, 2, 0, 0]).coefficients == (1, 2)
    assert P([0, 0]).coefficients == ()
    assert P([]).degree == -1
    assert P([3, 0, 1]).degree == 2


def test_eval_examples():
    assert P([-1, 0, 1]).eval(1) == 0
    assert QUARTIC.eval(1) == -4
    assert en.equals(QUARTIC.eval(en.phi_sqrt_phi()), 0)


def test_multiply_and_derivative_examples():
    assert P([-1, 0, 1]) * QUARTIC == SEXTIC
    assert SEXTIC * P([1]) == SEXTIC
    assert QUARTIC.derivative() == P([0, -8, 0, 4])


def test_product_matches_sympy_expansion():
    a = sp.symbols("a")
    expanded = sp.Poly(sp.expand((a**2 - 1) * (a**4 - 4 * a**2 - 1)), a)
    assert [Fraction(int(c)) for c in reversed(expanded.all_coeffs())] == list(SEXTIC.coefficients)


def test_from_highest_first_and_format():
    p = P.from_highest_first([1, 0, -5, 0, 3, 0, 1])
    assert p == SEXTIC
    assert p.highest_first()[0] == 1
    assert "a^6" in p.format("a")


def test_divmod_and_gcd():
    q, r = divmod(SEXTIC, P([-1, 0, 1]))
    assert q == QUARTIC and not r
    assert SEXTIC.gcd(QUARTIC) == QUARTIC.monic()


def test_isolate_x_squared_minus_one():
    iso = isolate_real_roots(P([-1, 0, 1]))
    assert len(iso) == 2
    (lo1, hi1), (lo2, hi2) = iso.intervals
    assert lo1 < -1 < hi1 <= lo2 < 1 < hi2


def test_isolate_sextic():
    iso = isolate_real_roots(SEXTIC)
    assert len(iso) == 4
    for (lo, hi), root in zip(iso.intervals, SEXTIC_ROOTS):
        assert lo < Fraction(root) < hi
    assert iso.approximations(12) == ["-2.058171027271", "-1.000000000000", "1.000000000000", "2.058171027271"]


def test_isolate_quartic_two_roots():
    iso = isolate_real_roots(QUARTIC)
    assert iso.approximations(7) == ["-2.0581710", "2.0581710"]


def test_isolate_zero_polynomial():
    with pytest.raises(ZeroPolynomial):
        isolate_real_roots(P([]))


def test_isolate_constant_has_no_roots():
    assert len(isolate_real_roots(P([5]))) == 0


def test_repeated_roots_use_square_free_part():
    iso = isolate_real_roots(P.from_roots([2, 2, 2, -1]))
    assert len(iso) == 2 and not iso.multiplicity_free


def test_rational_roots():
    assert rational_roots(SEXTIC) == [-1, 1]
    assert rational_roots(P.from_roots([Fraction(1, 3), 0, -2])) == [-2, 0, Fraction(1, 3)]


def test_solve_biquadratic_examples():
    r = solve_biquadratic(QUARTIC)
    assert len(r) == 2
    assert en.equals(r[1], en.phi_sqrt_phi()) and en.equals(r[0], -en.phi_sqrt_phi())
    assert [x.value for x in solve_biquadratic(P([1, 0, -2, 0, 1]))] == [-1, 1]
    assert solve_biquadratic(P([1, 0, 0, 0, 1])) == []


def test_solve_biquadratic_rejects_odd_terms():
    with pytest.raises(NotBiquadratic):
        solve_biquadratic(P([1, 1, 0, 0, 1]))
    with pytest.raises(NotBiquadratic):
        solve_biquadratic(P([1, 0, 1]))


def test_unique_root_above_one_is_phi_sqrt_phi():
    iso = isolate_real_roots(SEXTIC)
    above = [iv for iv in iso.intervals if iv[0] >= 1]
    assert len(above) == 1
    lo, hi = above[0]
    target = en.phi_sqrt_phi()
    assert en.less_than(lo, target) and en.less_than(target, hi)
    assert en.equals(SEXTIC.eval(target), 0)


# -- properties ------------------------------------------------------------------

small_q = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@settings(max_examples=60, deadline=None)
@given(st.lists(small_q, min_size=1, max_size=5), st.lists(st.tuples(small_q, st.fractions(1, 10, max_denominator=4)), max_size=2))
def test_isolation_recovers_chosen_roots(roots, quad_factors):
    # real roots from linear factors; quadratic factors (x - m)^2 + k have none
    p = P.from_roots(roots)
    for m, k in quad_factors:
        p = p * P([m * m + k, -2 * m, 1])
    iso = isolate_real_roots(p)
    distinct = sorted(set(roots))
    assert len(iso) == len(distinct)
    for (lo, hi), r in zip(iso.intervals, distinct):
        assert lo < r < hi
    for (_, hi), (lo, _) in zip(iso.intervals, iso.intervals[1:]):
        assert hi <= lo


@settings(max_examples=60, deadline=None)
@given(st.lists(small_q, min_size=1, max_size=6))
def test_isolating_intervals_have_sign_change(roots):
    iso = isolate_real_roots(P.from_roots(roots))
    sf = iso.square_free_part
    for lo, hi in iso.intervals:
        assert sf.sign_at(lo) * sf.sign_at(hi) == -1


@settings(max_examples=40, deadline=None)
@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(1, 5))
def test_biquadratic_roots_are_exact_zeros(c2, c0, c4):
    p = P([c0, 0, c2, 0, c4])
    for r in solve_biquadratic(p):
        assert en.equals(p.eval(r), 0)
    count = len(isolate_real_roots(p)) if p.square_free().degree > 0 else 0
    assert len(solve_biquadratic(p)) == count


@settings(max_examples=60, deadline=None)
@given(st.lists(small_q, max_size=6), st.lists(small_q, max_size=6))
def test_arithmetic_matches_sympy(c1, c2):
    x = sp.symbols("x")
    p, q = P(c1), P(c2)
    sp_p = sum(sp.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(c1))
    sp_q = sum(sp.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(c2))
    prod = sp.Poly(sp.expand(sp_p * sp_q), x)
    got = p * q
    want = [Fraction(int(c.p), int(c.q)) for c in reversed(prod.all_coeffs())] if prod.as_expr() != 0 else []
    assert list(got.coefficients) == want

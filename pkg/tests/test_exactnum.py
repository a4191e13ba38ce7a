import threading
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldconic import exactnum as en
from oracles import DagGenerator, iv_bounds, iv_value, oracle_sign, round_half_even

# Frozen from a 60-digit mpmath evaluation (see oracles.py for the method).
PHI_60 = "1.61803398874989484820458683437"
PHI_SQRT_PHI_60 = "2.05817102727149225032198104758"
SQRT_TWO_PHI_60 = "1.79890743994786727226122758362"


def _near(frozen: str, enc) -> bool:
    # the frozen value is itself rounded to 29 decimals
    ref, slack = Fraction(frozen), Fraction(1, 10**29)
    return enc.lo <= ref + slack and ref - slack <= enc.hi


def phi():
    return en.phi()


# -- builders ------------------------------------------------------------------

def test_const_rational_values():
    assert en.sign(en.const_rational(0)) == 0
    assert en.const_rational(Fraction(1)).value == 1
    assert en.const_rational(2).value == 2
    assert en.const_rational("3/6").value == Fraction(1, 2)


def test_const_rational_rejects_float():
    with pytest.raises(TypeError):
        en.const_rational(0.5)


def test_named_constants_decimals():
    assert en.to_decimal(en.phi(), 7) == "1.6180340"
    assert en.to_decimal(en.phi_sqrt_phi(), 7) == "2.0581710"
    assert en.to_decimal(en.sqrt_two_phi(), 7) == "1.7989074"


def test_named_constants_match_oracle_to_28_digits():
    for x, frozen in [(en.phi(), PHI_60), (en.phi_sqrt_phi(), PHI_SQRT_PHI_60), (en.sqrt_two_phi(), SQRT_TWO_PHI_60)]:
        with localcontext() as ctx:
            ctx.prec = 60
            expect = format(Decimal(frozen).quantize(Decimal("1e-28"), ROUND_HALF_EVEN), "f")
        assert en.to_decimal(x, 28) == expect


def test_named_constants_are_shared_nodes():
    assert en.phi() is en.phi()
    assert en.sqrt_two_phi() is en.sqrt_two_phi()


def test_phi_sqrt_phi_is_sqrt_two_plus_sqrt5():
    assert en.phi_sqrt_phi() == en.sqrt(2 + en.sqrt(5))


def test_div_self_is_one():
    x = en.sqrt(7) - en.sqrt(3)
    assert en.div(x, x) == 1
    with en.raw_arithmetic():
        y = en.sub(en.sqrt(7), en.sqrt(3))
        z = en.sub(en.sqrt(7), en.sqrt(3))
        assert en.div(y, z) == 1


def test_division_by_zero():
    with pytest.raises(en.DivisionByZero):
        en.div(1, phi() * phi() - phi() - 1)


def test_negative_radicand():
    with pytest.raises(en.NegativeRadicand):
        en.sqrt(phi() - 2)


def test_sqrt_zero_is_zero():
    assert en.sign(en.sqrt(phi() * phi() - phi() - 1)) == 0


def test_floats_rejected_in_arithmetic():
    with pytest.raises(TypeError):
        phi() + 0.5


# -- refine ------------------------------------------------------------------------

def test_refine_phi_10_bits():
    enc = en.refine(phi(), 10)
    assert enc.width <= Fraction(1, 2**10)
    assert _near(PHI_60, enc)


def test_refine_rational_is_exact():
    for k in (1, 5, 200):
        enc = en.refine(en.const_rational(1), k)
        assert enc.lo == enc.hi == 1


def test_refine_phi_sqrt_phi_64_bits():
    enc = en.refine(en.phi_sqrt_phi(), 64)
    assert _near(PHI_SQRT_PHI_60, enc)
    assert enc.width <= Fraction(1, 2**64)


def test_refine_rejects_nonpositive_bits():
    with pytest.raises(ValueError):
        en.refine(phi(), 0)


def test_refine_monotone_and_cache_never_widens():
    x = en.sqrt(11) + en.sqrt(phi())
    prev = en.refine(x, 4)
    for b in (8, 16, 40, 100, 7, 300):
        cur = en.refine(x, b)
        if b >= prev.precision_bits:
            assert cur.issubset(prev)
        prev = cur if b >= prev.precision_bits else prev
    cached = x._enc
    en.refine(x, 3)
    assert x._enc.issubset(cached)


# -- sign / equality -----------------------------------------------------------------

def test_sign_examples():
    p = phi()
    assert en.sign(p * p - p - 1) == 0
    assert en.sign(p**3 - (2 + en.sqrt(5))) == 0
    assert en.sign(en.sqrt_two_phi() - p) == 1


def test_equality_examples():
    a = en.phi_sqrt_phi()
    assert en.equals(a * a, 2 + en.sqrt(5))
    assert not en.equals(1, 2)
    assert en.less_than(1 / a, 1)


def test_golden_identities():
    p = phi()
    assert p * p == p + 1
    assert p**3 == 2 * p + 1
    assert 1 / p == p - 1
    assert en.square(en.phi_sqrt_phi()) == 2 + en.sqrt(5)


def test_golden_identities_in_raw_mode():
    with en.raw_arithmetic():
        p = en.div(en.add(1, en.sqrt(5)), 2)
        assert en.sign(en.sub(en.mul(p, p), en.add(p, 1))) == 0
        assert en.sign(en.sub(en.div(1, p), en.sub(p, 1))) == 0


def test_sign_with_start_precision_context():
    with en.start_precision(8):
        assert en.sign(en.sqrt(2) - Fraction(141421356, 10**8)) == 1
    with pytest.raises(ValueError):
        with en.start_precision(0):
            pass


def test_values_are_unhashable():
    with pytest.raises(TypeError):
        hash(phi())


def test_comparison_operators():
    p = phi()
    assert p > 1 and p >= 1 and 2 > p and p <= 2 and p != 2
    assert abs(1 - p) == p - 1
    assert float(p) == pytest.approx(1.618033988749895)


def test_str_and_serialize_are_deterministic():
    assert str(phi()) == str(phi())
    s = en.serialize(en.phi_sqrt_phi(), en.phi())
    assert s.splitlines()[-1].startswith("return %")


def test_separation_bits_positive():
    assert en.separation_bits(phi()) > 0


def test_normal_forms_share_nodes_across_routes():
    # different construction routes to the same radical expression collapse
    a = (en.sqrt(2) + 1) * (en.sqrt(2) - 1)
    assert a.is_rational and a.value == 1
    x = en.sqrt(3 + 2 * en.sqrt(2))  # denests to 1 + sqrt(2)
    assert x is en.add(1, en.sqrt(2))


def test_concurrent_sign_on_shared_values():
    values = [en.sqrt(n) + en.sqrt(n + 1) for n in range(2, 30)]
    errors = []

    def worker():
        try:
            for v in values:
                en.refine(v, 200)
                assert en.sign(v) == 1
        except Exception as exc:  # pragma: no cover
            errors.append(exc)

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors


# -- to_decimal --------------------------------------------------------------------

def test_to_decimal_examples():
    assert en.to_decimal(en.const_rational(Fraction(1, 2)), 3) == "0.500"
    assert en.to_decimal(phi(), 10) == "1.6180339887"
    assert en.to_decimal(en.phi_sqrt_phi(), 7) == "2.0581710"


def test_to_decimal_half_even_ties():
    assert en.to_decimal(en.const_rational(Fraction(1, 8)), 2) == "0.12"
    assert en.to_decimal(en.const_rational(Fraction(3, 8)), 2) == "0.38"
    assert en.to_decimal(en.const_rational(Fraction(-5, 2)), 0) == "-2"
    # an irrational expression whose value is exactly the tie 0.125
    tie = (en.sqrt(2) + Fraction(1, 8)) - en.sqrt(2)
    with en.raw_arithmetic():
        tie_raw = en.sub(en.add(en.sqrt(2), Fraction(1, 8)), en.sqrt(2))
    assert en.to_decimal(tie, 2) == "0.12"
    assert en.to_decimal(tie_raw, 2) == "0.12"


def test_to_decimal_digit_bounds():
    with pytest.raises(ValueError):
        en.to_decimal(phi(), 10001)


def test_to_decimal_negative():
    assert en.to_decimal(-phi(), 3) == "-1.618"
    assert en.to_decimal(en.sqrt(2) - Fraction(14142, 10**4), 2) == "0.00"


# -- randomized properties ------------------------------------------------------------

@pytest.mark.parametrize("seed", range(4))
def test_random_dag_refine_contains_oracle_value(seed):
    gen = DagGenerator(1000 + seed)
    for _ in range(25):
        s = gen.gen(8)
        ref_lo, ref_hi = iv_bounds(iv_value(s.node, 512))
        for bits in (1, 20, 64):
            enc = en.refine(s.node, bits)
            assert enc.width <= Fraction(1, 2**bits)
            assert enc.lo <= ref_hi and ref_lo <= enc.hi


@pytest.mark.parametrize("seed", range(4))
def test_random_sign_antisymmetry_and_transitivity(seed):
    gen = DagGenerator(2000 + seed)
    for _ in range(25):
        a, b, c = gen.gen(5).node, gen.gen(5).node, gen.gen(5).node
        assert en.sign(a - b) == -en.sign(b - a)
        if en.less_than(a, b) and en.less_than(b, c):
            assert en.less_than(a, c)


def test_sqrt_squared_on_100_random_nonnegative_expressions():
    gen = DagGenerator(3000, max_radicals=3)
    for _ in range(100):
        x = gen.nonneg(gen.gen(6))
        with en.raw_arithmetic():
            s1, s2 = en.sqrt(x.node), en.sqrt(x.node)
            assert en.equals(en.mul(s1, s2), x.node)


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=-50, max_value=50, max_denominator=40), st.integers(0, 30))
def test_to_decimal_of_rationals_matches_decimal_module(q, digits):
    from decimal import ROUND_HALF_EVEN, Decimal, localcontext

    with localcontext() as ctx:
        ctx.prec = 200
        expect = (Decimal(q.numerator) / Decimal(q.denominator)).quantize(Decimal(1).scaleb(-digits), ROUND_HALF_EVEN)
    text = format(expect, "f")
    if Decimal(text) == 0:
        text = text.lstrip("-")
    assert en.to_decimal(en.const_rational(q), digits) == text


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 500), st.integers(2, 500))
def test_sqrt_product_rule(m, n):
    assert en.sqrt(m) * en.sqrt(n) == en.sqrt(m * n)
    with en.raw_arithmetic():
        assert en.equals(en.mul(en.sqrt(m), en.sqrt(n)), en.sqrt(m * n))


def test_to_decimal_50_digits_random():
    gen = DagGenerator(4000)
    for _ in range(40):
        s = gen.gen(6)
        try:
            expect = round_half_even(s.node, 50)
        except ValueError:
            continue
        assert en.to_decimal(s.node, 50) == expect


def test_oracle_sign_agrees_on_sample():
    gen = DagGenerator(5000)
    for _ in range(60):
        s = gen.gen(8)
        assert en.sign(s.node) == oracle_sign(s)

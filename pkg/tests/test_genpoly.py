import math

import pytest
from hypothesis import given, strategies as st

from bondtaylor import genpoly as gp
from bondtaylor.errors import DomainError, TermLimitError
from bondtaylor.genpoly import GenPoly

ALPHA, BETA = 0.00315, -0.0555


def test_canonicalize_merges_duplicate_exponents():
    assert gp.canonicalize([(1.0, 0.0), (2.0, 0.0)]) == gp.const(3.0)


def test_canonicalize_drops_cancellations():
    assert gp.canonicalize([(1.0, 1.0), (-1.0, 1.0)]) == GenPoly()


def test_canonicalize_keeps_cir_drift_as_is():
    drift = gp.canonicalize([(ALPHA, 0.0), (BETA, 1.0)])
    assert drift.terms == ((ALPHA, 0.0), (BETA, 1.0))


def test_canonicalize_sorts_by_exponent():
    p = gp.canonicalize([(2.0, 3.0), (1.0, -1.0), (4.0, 0.5)])
    assert [e for _, e in p.terms] == [-1.0, 0.5, 3.0]


def test_canonicalize_merge_tolerance():
    # exponents closer than 1e-12 collapse onto the first of the run
    p = gp.canonicalize([(1.0, 1.0), (1.0, 1.0 + 1e-13)])
    assert p.terms == ((2.0, 1.0),)


@pytest.mark.parametrize("bad", [(math.nan, 1.0), (1.0, math.inf), (-math.inf, 0.0)])
def test_canonicalize_rejects_non_finite(bad):
    with pytest.raises(DomainError):
        gp.canonicalize([bad])


def test_canonicalize_term_budget():
    with pytest.raises(TermLimitError):
        gp.canonicalize([(1.0, float(k)) for k in range(gp.MAX_TERMS + 1)])


def test_add_examples():
    one_plus_r = gp.canonicalize([(1.0, 0.0), (1.0, 1.0)])
    assert gp.add(one_plus_r, gp.term(-1.0, 1.0)) == gp.const(1.0)
    p = gp.canonicalize([(0.5, 0.0), (2.0, 2.5)])
    assert gp.add(p, GenPoly()) == p


def test_add_gives_twice_cir_price_c2():
    # r^2 + (-alpha - beta r), one recursion step by hand
    minus_drift = gp.canonicalize([(-ALPHA, 0.0), (-BETA, 1.0)])
    out = gp.add(gp.term(1.0, 2.0), minus_drift)
    assert out.terms == ((-ALPHA, 0.0), (-BETA, 1.0), (1.0, 2.0))


def test_mul_examples():
    r = gp.term(1.0, 1.0)
    assert gp.mul(r, r) == gp.term(1.0, 2.0)
    ckls_vol2 = gp.term(0.01, 1.5)
    assert gp.mul(ckls_vol2, gp.const(1.0)) == ckls_vol2
    p = gp.canonicalize([(-0.005, 0.0), (2.0, 1.0)])
    assert gp.mul(p, gp.const(0.5)) == gp.canonicalize([(-0.0025, 0.0), (1.0, 1.0)])


def test_mul_raw_pair_budget():
    big = gp.canonicalize([(1.0, float(k)) for k in range(1001)])
    with pytest.raises(TermLimitError):
        gp.mul(big, big)


def test_scale_examples():
    p = gp.canonicalize([(1.0, 0.5), (2.0, 2.0)])
    assert gp.scale(p, 1.0) == p
    assert gp.scale(p, 0.0) == GenPoly()
    # Dothan price c2 = (r^2 - mu r)/2
    mu = 0.005
    base = gp.canonicalize([(1.0, 2.0), (-mu, 1.0)])
    assert gp.scale(base, 0.5).terms == ((-mu / 2.0, 1.0), (0.5, 2.0))


def test_derivative_examples():
    assert gp.derivative(gp.term(1.0, 2.0)) == gp.term(2.0, 1.0)
    assert gp.derivative(gp.const(7.0)) == GenPoly()
    half_c2 = gp.canonicalize([(-ALPHA / 2, 0.0), (-BETA / 2, 1.0), (0.5, 2.0)])
    assert gp.derivative(half_c2) == gp.canonicalize([(-BETA / 2, 0.0), (1.0, 1.0)])


def test_evaluate_examples():
    assert gp.evaluate(gp.term(-1.0, 1.0), 0.05) == -0.05
    cir_c2 = gp.canonicalize([(-ALPHA / 2, 0.0), (-BETA / 2, 1.0), (0.5, 2.0)])
    assert gp.evaluate(cir_c2, 0.05) == pytest.approx(0.0010625, abs=1e-12)
    assert gp.evaluate(gp.term(1.0, 0.5), 0.25) == pytest.approx(0.5, abs=1e-15)


def test_evaluate_integer_exponents_at_zero():
    p = gp.canonicalize([(3.0, 0.0), (2.0, 1.0)])
    assert gp.evaluate(p, 0.0) == 3.0


@pytest.mark.parametrize("r", [0.0, -0.1])
def test_evaluate_rejects_fractional_exponent_at_nonpositive_r(r):
    with pytest.raises(DomainError):
        gp.evaluate(gp.term(1.0, 0.5), r)


def test_evaluate_rejects_negative_exponent_at_zero():
    with pytest.raises(DomainError):
        gp.evaluate(gp.term(1.0, -1.0), 0.0)


def test_approx_equal_examples():
    p = gp.canonicalize([(1.0, 0.0), (-2.0, 1.5)])
    assert gp.approx_equal(p, p, 0.0)
    shifted = gp.add(p, gp.const(1e-6))
    assert not gp.approx_equal(p, shifted, 1e-9)
    assert gp.approx_equal(p, shifted, 1e-5)


def test_text_round_trip():
    p = gp.from_text("0.00315:0, -0.0555:1")
    assert p.terms == ((0.00315, 0.0), (-0.0555, 1.0))
    assert gp.to_text(p) == "0.00315:0, -0.0555:1"
    assert gp.to_text(GenPoly()) == "0"
    assert gp.from_text("0") == GenPoly()
    assert gp.from_text("") == GenPoly()
    assert gp.from_text(gp.to_text(gp.term(2.5, -0.75))) == gp.term(2.5, -0.75)


@pytest.mark.parametrize("text", ["1:", "1:2:3", "a:1", "1;2"])
def test_from_text_rejects_malformed(text):
    with pytest.raises(DomainError):
        gp.from_text(text)


# Random instances on a dyadic exponent lattice: merges are exact, so the
# ring identities hold to float accuracy rather than depending on knife-edge
# exponent comparisons.
exponents = st.integers(min_value=-128, max_value=256).map(lambda n: n / 64.0)
coeffs = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)
polys = st.lists(st.tuples(coeffs, exponents), max_size=8).map(gp.canonicalize)


@given(polys, polys)
def test_add_commutative(a, b):
    assert gp.approx_equal(gp.add(a, b), gp.add(b, a), 1e-9)


@given(polys, polys, polys)
def test_add_associative(a, b, c):
    assert gp.approx_equal(gp.add(gp.add(a, b), c), gp.add(a, gp.add(b, c)), 1e-9)


@given(polys, polys)
def test_mul_commutative(a, b):
    assert gp.approx_equal(gp.mul(a, b), gp.mul(b, a), 1e-9)


@given(polys, polys, polys)
def test_mul_associative(a, b, c):
    assert gp.approx_equal(gp.mul(gp.mul(a, b), c), gp.mul(a, gp.mul(b, c)), 1e-9)


@given(polys, polys, polys)
def test_distributive(a, b, c):
    lhs = gp.mul(a, gp.add(b, c))
    rhs = gp.add(gp.mul(a, b), gp.mul(a, c))
    assert gp.approx_equal(lhs, rhs, 1e-9)


@given(polys)
def test_identities(a):
    assert gp.approx_equal(gp.add(a, GenPoly()), a, 0.0)
    assert gp.approx_equal(gp.mul(a, gp.const(1.0)), a, 1e-12)


@given(polys, polys)
def test_product_rule(a, b):
    lhs = gp.derivative(gp.mul(a, b))
    rhs = gp.add(gp.mul(gp.derivative(a), b), gp.mul(a, gp.derivative(b)))
    assert gp.approx_equal(lhs, rhs, 1e-9)


@given(polys, polys)
def test_evaluate_is_ring_homomorphism(a, b):
    r = 0.7
    prod = gp.evaluate(gp.mul(a, b), r)
    assert math.isclose(prod, gp.evaluate(a, r) * gp.evaluate(b, r),
                        rel_tol=1e-9, abs_tol=1e-9)


@given(polys)
def test_canonicalize_idempotent(a):
    assert gp.canonicalize(a.terms) == a

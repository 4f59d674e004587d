import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from quandle_hilbert.catalog import NAMES
from quandle_hilbert.errors import DegreeMismatch, InconsistentFit, InsufficientData, NoStablePolynomial
from quandle_hilbert.invariants import dim_q, pi0, subquandles
from quandle_hilbert.polyfit import (
    IntValuedPoly,
    RationalGenFunc,
    fit_hilbert,
    gbinom,
    genfunc,
    pole_order,
    series_product,
    threshold,
)
from quandle_hilbert.series import dominant_series, graded_series

D3_SERIES = (1, 3, 5, 6, 6, 6, 6)
D4_SERIES = (1, 4, 8, 12, 16, 20, 24)


def lagrange(points: list[tuple[int, int]], x: int) -> Fraction:
    """Exact Lagrange interpolation, independent of the binomial basis."""
    total = Fraction(0)
    for i, (xi, yi) in enumerate(points):
        term = Fraction(yi)
        for j, (xj, _) in enumerate(points):
            if j != i:
                term *= Fraction(x - xj, xi - xj)
        total += term
    return total


class TestBasis:
    def test_gbinom_negative_top(self):
        assert gbinom(-1, 3) == -1
        assert gbinom(-2, 2) == 3
        assert gbinom(5, 7) == 0
        assert gbinom(4, -1) == 0

    @given(st.integers(-30, 30), st.integers(0, 12))
    def test_gbinom_falling_factorial(self, m, j):
        num = 1
        for i in range(j):
            num *= m - i
        assert gbinom(m, j) == num // math.factorial(j)

    def test_evaluation(self):
        # 4x in the basis: b_2(x) = x + 1, so 4x = 4 b_2 - 4 b_1
        p = IntValuedPoly((-4, 4))
        assert [p(x) for x in range(-2, 4)] == [-8, -4, 0, 4, 8, 12]
        assert p.degree == 1
        assert IntValuedPoly(()).degree == -1
        assert IntValuedPoly((3, 0, 0)).coeffs == (3,)

    @given(st.lists(st.integers(-50, 50), max_size=6), st.integers(-5, 5))
    def test_values_round_trip(self, coeffs, start):
        p = IntValuedPoly(tuple(coeffs))
        window = [p(start + i) for i in range(len(coeffs))]
        assert IntValuedPoly.from_values(start, window) == p

    @given(st.lists(st.integers(-20, 20), max_size=6))
    def test_monomial_round_trip(self, coeffs):
        p = IntValuedPoly(tuple(coeffs))
        mono = p.to_monomial()
        for x in range(-3, 6):
            assert sum(c * x**i for i, c in enumerate(mono)) == p(x)
        assert IntValuedPoly.from_monomial(mono) == p

    def test_from_monomial_rejects_non_integer_valued(self):
        with pytest.raises(ValueError):
            IntValuedPoly.from_monomial([0, Fraction(1, 3)])

    def test_monomial_over_denominator(self):
        # x(x+1)/2
        p = IntValuedPoly.from_monomial([0, Fraction(1, 2), Fraction(1, 2)])
        assert p.monomial_over_denominator() == ((0, 1, 1), 2)
        assert [p(x) for x in range(5)] == [0, 1, 3, 6, 10]

    def test_arithmetic(self):
        a, b = IntValuedPoly((1, 2)), IntValuedPoly((0, -2, 5))
        assert all((a + b)(x) == a(x) + b(x) and (a - b)(x) == a(x) - b(x) for x in range(-3, 4))
        assert (a - a) == IntValuedPoly(())


class TestFitHilbert:
    def test_d4(self):
        p, cert = fit_hilbert(D4_SERIES)
        assert [p(x) for x in range(5)] == [0, 4, 8, 12, 16]
        assert cert.threshold == 1 and cert.first_equality == 1

    def test_d3(self):
        p, cert = fit_hilbert(D3_SERIES)
        assert p == IntValuedPoly((6,))
        assert cert.threshold == 3 and cert.surplus == 3 and cert.certified

    def test_zero(self):
        p, cert = fit_hilbert([0] * 6)
        assert p.degree == -1 and cert.threshold == 0

    def test_certificate_dict(self):
        _, cert = fit_hilbert(D3_SERIES, expected_degree=0)
        assert cert.to_dict() == {"n0": 3, "surplus": 3, "dim_check": True, "first_equality": 3, "certified": True}

    def test_uncertified_below_surplus(self):
        _, cert = fit_hilbert(D3_SERIES, min_surplus=1)
        assert cert.surplus == 3
        _, cert = fit_hilbert(D3_SERIES[:5], min_surplus=1)
        assert cert.surplus == 1 and cert.certified

    def test_insufficient(self):
        with pytest.raises(InsufficientData):
            fit_hilbert(D3_SERIES[:4], expected_degree=1)
        with pytest.raises(InsufficientData):
            fit_hilbert([1, 2])

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch) as info:
            fit_hilbert(D4_SERIES, expected_degree=0)
        assert (info.value.detected, info.value.expected) == (1, 0)

    def test_no_stable_polynomial(self):
        with pytest.raises(NoStablePolynomial):
            fit_hilbert([2**n for n in range(8)])

    @settings(max_examples=150, deadline=None)
    @given(
        st.lists(st.integers(-30, 30), min_size=0, max_size=4),
        st.lists(st.integers(-100, 100), max_size=4),
        st.integers(3, 5),
    )
    def test_recovers_planted_polynomial(self, coeffs, prefix, extra):
        p = IntValuedPoly(tuple(coeffs))
        n0 = len(prefix)
        length = n0 + max(p.degree, 0) + 1 + extra
        values = [prefix[n] if n < n0 else p(n) for n in range(length)]
        fit, cert = fit_hilbert(values)
        # any fit of no larger degree that agrees past the window must be p itself
        assert fit.degree <= p.degree
        assert cert.threshold <= n0
        window = [(n, values[n]) for n in range(cert.threshold, cert.threshold + fit.degree + 1)]
        for n in range(cert.threshold, length):
            assert fit(n) == values[n]
            if window:
                assert lagrange(window, n) == fit(n)
        # both agree on at least deg + 4 points from n0 on
        assert fit == p


class TestGenFunc:
    def test_d3(self):
        p, cert = fit_hilbert(D3_SERIES)
        g = genfunc(D3_SERIES, p, cert.threshold)
        assert g == RationalGenFunc((1, 2, 2, 1), 1)
        assert str(g) == "(1 + 2t + 2t^2 + t^3)/(1 - t)"

    def test_trivial_two(self):
        values = tuple(n + 1 for n in range(8))
        p, cert = fit_hilbert(values)
        assert genfunc(values, p, cert.threshold) == RationalGenFunc((1,), 2)

    def test_empty_quandle(self):
        values = (1, 0, 0, 0, 0)
        p, cert = fit_hilbert(values)
        assert genfunc(values, p, cert.threshold) == RationalGenFunc((1,), 0)

    def test_inconsistent(self):
        with pytest.raises(InconsistentFit):
            genfunc(D3_SERIES, IntValuedPoly((5,)), 3)

    def test_normalization(self):
        assert RationalGenFunc((1, -1), 3) == RationalGenFunc((1,), 2)
        assert RationalGenFunc((1,), -2) == RationalGenFunc((1, -2, 1), 0)
        assert RationalGenFunc((0, 0), 4) == RationalGenFunc((), 0)
        assert RationalGenFunc((2, -3, 1), 1) == RationalGenFunc((2, -1), 0)

    def test_expand(self):
        assert RationalGenFunc((1,), 3).expand(5) == (1, 3, 6, 10, 15)
        assert RationalGenFunc((1, 1), 1).expand(4) == (1, 2, 2, 2)

    @settings(max_examples=150, deadline=None)
    @given(st.lists(st.integers(-30, 30), max_size=4), st.lists(st.integers(-50, 50), max_size=4))
    def test_round_trip(self, coeffs, prefix):
        p = IntValuedPoly(tuple(coeffs))
        n0 = len(prefix)
        length = n0 + max(p.degree, 0) + 1 + 4
        values = [prefix[n] if n < n0 else p(n) for n in range(length)]
        fit, cert = fit_hilbert(values)
        g = genfunc(values, fit, cert.threshold)
        assert list(g.expand(length + 5)[:length]) == values
        tail = g.expand(length + 5)[length:]
        assert list(tail) == [fit(n) for n in range(length, length + 5)]
        assert pole_order(g) == fit.degree + 1
        # every index past the threshold follows the polynomial
        assert all(values[n] == fit(n) for n in range(max(threshold(g) + 1, 0), length))


class TestPoleAndThreshold:
    def test_pole_order(self):
        assert pole_order(RationalGenFunc((1, 2, 2, 1), 1)) == 1
        assert pole_order(RationalGenFunc((1,), 4)) == 4
        assert pole_order(RationalGenFunc((1,), 0)) == 0

    def test_threshold(self):
        assert threshold(RationalGenFunc((1, 2, 2, 1), 1)) == 2
        for a in range(1, 6):
            assert threshold(RationalGenFunc((1,), a)) == -a
        assert threshold(RationalGenFunc((1, 2, 1), 2)) == 0

    def test_products(self):
        j = RationalGenFunc((1,), 2)
        t1 = RationalGenFunc((1,), 1)
        j_plus = series_product(RationalGenFunc((1, 1), 2), t1)
        assert j_plus == RationalGenFunc((1, 1), 3)
        assert series_product(j, RationalGenFunc((1,), 0)) == j
        d3 = RationalGenFunc((1, 2, 2, 1), 1)
        assert series_product(d3, t1) == RationalGenFunc((1, 2, 2, 1), 2)

    @given(
        st.lists(st.integers(-9, 9), min_size=1, max_size=4),
        st.integers(0, 4),
        st.lists(st.integers(-9, 9), min_size=1, max_size=4),
        st.integers(0, 4),
    )
    def test_valuation_additive(self, n1, d1, n2, d2):
        assume(sum(n1) != 0 and sum(n2) != 0)
        g1, g2 = RationalGenFunc(tuple(n1), d1), RationalGenFunc(tuple(n2), d2)
        assert pole_order(series_product(g1, g2)) == d1 + d2
        a, b = g1.expand(8), g2.expand(8)
        assert series_product(g1, g2).expand(8) == tuple(sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(8))


@pytest.mark.parametrize("name", NAMES)
def test_degrees_follow_dimension_and_components(catalog_quandles, name):
    q = catalog_quandles[name]
    top = 10 if q.size <= 3 else 8
    p, cert = fit_hilbert(graded_series(q, top), expected_degree=dim_q(q) - 1)
    assert cert.certified
    pd, cert_d = fit_hilbert(dominant_series(q, top), expected_degree=len(pi0(q)) - 1)
    assert cert_d.certified
    g = genfunc(graded_series(q, top), p, cert.threshold)
    assert pole_order(g) == dim_q(q)


@pytest.mark.parametrize("name", NAMES)
def test_sum_rule_over_subquandles(catalog_quandles, name):
    q = catalog_quandles[name]
    top = 9 if q.size <= 3 else 8
    p, _ = fit_hilbert(graded_series(q, top))
    lattice = subquandles(q)
    total = IntValuedPoly(())
    for mask in lattice:
        sub = lattice.as_quandle(mask)
        total = total + fit_hilbert(dominant_series(sub, top))[0]
    assert total == p

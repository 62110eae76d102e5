import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localcolor.bounds import (
    aberrance_lower_bound,
    delta_concentration_test,
    exceptional_prob_bound,
    ky_bound,
    minor_constants_check,
    pairs_trips_lower_bound,
    savings_gap_certificate,
    structure_rhs,
    talagrand_median_tail,
    talagrand_tail,
    unact_expectation,
)
from localcolor.procedure import default_rho, keep_constant

RHO = float(default_rho(Fraction(1, 50)))


class TestAberranceBound:
    def test_no_contributors(self):
        assert aberrance_lower_bound(0.4, 1 / 50, 1 / 50, 3, 5, 0, 0) == 0

    def test_lordlier_only(self):
        assert aberrance_lower_bound(1.0, 1.0, 0.0, 0, 4, 2, 0) == pytest.approx(1.0)

    def test_beta_zero_kills_weak_term(self):
        assert aberrance_lower_bound(0.5, 1 / 50, 0.0, 10, 20, 0, 7) == 0

    def test_weak_term(self):
        val = aberrance_lower_bound(0.5, 1 / 50, 1 / 50, 10, 20, 0, 5)
        bg = (1 / 50) * 10
        expect = 0.5 * (bg / (20 + bg)) * 5
        assert val == pytest.approx(expect)


class TestPairsTripsBound:
    def test_zero_edges(self):
        assert pairs_trips_lower_bound(0.4, 1 / 50, 5, 0, 0) == 0

    def test_spec_arithmetic(self):
        val = pairs_trips_lower_bound(1.0, 0.0, 10, 10, 10)
        assert val == pytest.approx(1 - math.sqrt(20) / 30, abs=1e-9)

    def test_upper_cap(self):
        k, a, ls, e1, e2 = 0.5, 1 / 50, 12, 9, 30
        assert pairs_trips_lower_bound(k, a, ls, e1, e2) <= k**2 * e2 / ls + 1e-12


class TestStructureRhs:
    def test_eps_zero_simple(self):
        assert structure_rhs(0, 1 / 50, 1 / 50, 3, 8, 0, 0) == pytest.approx(3 * 8 / 4)

    def test_balanced_cancellation(self):
        d = 8
        assert structure_rhs(0, 1 / 50, 1 / 50, d, d, d // 2, 0) == pytest.approx(0.0)

    def test_high_precision_agreement(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            e = rng.uniform(0, 0.2)
            a, b = rng.uniform(0.001, 1, 2)
            gap, d = rng.integers(0, 50), rng.integers(1, 80)
            nn, nw = rng.integers(0, 30), rng.integers(0, 30)
            got = structure_rhs(
                Fraction(e).limit_denominator(10**6), a, b, int(gap), int(d), int(nn), int(nw)
            )
            ef = mpmath.mpf(float(Fraction(e).limit_denominator(10**6)))
            am, bm = mpmath.mpf(a), mpmath.mpf(b)
            c1 = mpmath.mpf(1) / 4 - ef * (4 + bm + 2 * am) / (2 * (1 - ef))
            c2 = mpmath.mpf(1) / 2 - ef * (1 + bm) / (2 * (1 - ef))
            c3 = mpmath.mpf(1) / 4 - ef * (2 + bm) / (2 * (1 - ef))
            want = c1 * int(gap) * int(d) - c2 * int(d) * int(nn) - c3 * int(gap) * int(nw)
            assert got == pytest.approx(float(want), rel=1e-12, abs=1e-12)


class TestCertificate:
    def test_default_constants_hold(self):
        rep = savings_gap_certificate(1 / 50, 1 / 50, 1 / 330, RHO)
        assert rep.holds

    def test_eps_zero_holds(self):
        assert savings_gap_certificate(1 / 50, 1 / 50, 0, RHO).holds

    def test_large_eps_fails(self):
        assert not savings_gap_certificate(1 / 50, 1 / 50, 0.4, RHO).holds

    def test_localizes_constant(self):
        # raising eps to 1/250 with other defaults fixed breaks the certificate
        assert not savings_gap_certificate(1 / 50, 1 / 50, 1 / 250, RHO).holds

    def test_high_precision_agreement(self):
        rep = savings_gap_certificate(1 / 50, 1 / 50, 1 / 330, RHO)
        a = mpmath.mpf(1) / 50
        e = mpmath.mpf(1) / 330
        rho = mpmath.mpf(RHO)
        k = mpmath.mpf("0.999") * rho * mpmath.exp(-rho / (1 - e))
        c1 = mpmath.mpf(1) / 4 - e * (4 + a + 2 * a) / (2 * (1 - e))
        c2 = mpmath.mpf(1) / 2 - e * (1 + a) / (2 * (1 - e))
        sp1 = c1 - mpmath.mpf("1.01") * e * (1 + a) / (a * k) * c2
        val1 = k * (k / (1 + a) ** 2 - mpmath.sqrt(2 * sp1) / (3 * (1 - e))) * sp1
        val2 = k * (k / (1 + a) ** 2 - mpmath.sqrt(1) / (3 * (1 - e))) / 2
        assert rep.lhs == pytest.approx(float(min(val1, val2)), rel=1e-12)


class TestTalagrand:
    def test_large_t_vanishes(self):
        rep = talagrand_tail(1e9, 1, 1.0, 100.0, 0.0, 1000.0)
        assert rep.lhs == pytest.approx(0.0, abs=1e-12) and rep.holds

    def test_below_threshold_flagged(self):
        rep = talagrand_tail(1.0, 1, 1.0, 100.0, 0.0, 1000.0)
        assert not rep.holds and rep.lhs > 0

    def test_spec_arithmetic(self):
        rep = talagrand_tail(1200.0, 1, 1.0, 100.0, 0.0, 0.0)
        assert rep.holds
        assert rep.lhs == pytest.approx(4 * math.exp(-(1200**2) / (8 * (400 + 1200))), rel=1e-12)

    def test_median_form(self):
        assert talagrand_median_tail(10.0, 1, 1.0, 0.0, 0.0) == pytest.approx(
            4 * math.exp(-100 / 40), rel=1e-12
        )

    def test_median_vacuous_cases(self):
        assert talagrand_median_tail(0.0, 1, 1.0, 5.0, 0.0) >= 4
        assert talagrand_median_tail(3.0, 1, 1.0, 5.0, 1.0) >= 4


class TestExceptional:
    def test_base_one(self):
        delta = math.exp(math.e)
        assert exceptional_prob_bound(delta, 0, 0) == pytest.approx(delta**4, rel=1e-9)

    def test_core_factor_decreasing_in_delta(self):
        # the (e / ln d)^(ln d) factor decays; the d^4 prefactor only loses
        # to it for astronomically large d, so compare the factor directly
        f3 = exceptional_prob_bound(1e3, 0, 0) / (1e3) ** 4
        f6 = exceptional_prob_bound(1e6, 0, 0) / (1e6) ** 4
        assert f6 < f3

    def test_sigma_near_one_blows_up(self):
        assert exceptional_prob_bound(100, 0.999, 0) > exceptional_prob_bound(100, 0, 0)

    def test_domain(self):
        with pytest.raises(ValueError):
            exceptional_prob_bound(1, 0, 0)


class TestDeltaConcentration:
    def test_constant_rv(self):
        rep = delta_concentration_test(np.full(10**4, 3.0), 8)
        assert rep.lhs == 0 and rep.holds

    def test_too_few_samples(self):
        with pytest.raises(ValueError):
            delta_concentration_test(np.zeros(100), 8)

    def test_unact_star_diagnostic(self):
        rng = np.random.default_rng(0)
        samples = rng.binomial(8, 0.5, size=10**5).astype(float)
        rep = delta_concentration_test(samples, 8)
        assert 0 <= rep.lhs <= 1  # diagnostic only at this scale


class TestKyBound:
    def test_k4(self):
        assert ky_bound(4, 4) == 6

    def test_k5(self):
        assert ky_bound(5, 5) == 10

    def test_k4_n7(self):
        assert ky_bound(4, 7) == 11

    def test_domain(self):
        with pytest.raises(ValueError):
            ky_bound(3, 5)
        with pytest.raises(ValueError):
            ky_bound(4, 3)

    @given(st.integers(4, 12), st.integers(0, 30))
    @settings(max_examples=50, deadline=None)
    def test_matches_exact_rational_ceiling(self, k, extra):
        n = k + extra
        want = math.ceil(Fraction((k + 1) * (k - 2) * n - k * (k - 3), 2 * (k - 1)))
        assert ky_bound(k, n) == want


class TestMinorConstants:
    def test_default_values(self):
        rep = minor_constants_check(Fraction(499, 1000), Fraction(99982, 100000))
        assert rep.holds
        eps = Fraction(499, 1000) ** 2 / 1350
        assert abs(float(eps) - 1.84446e-4) < 1e-8

    def test_small_alpha_fails(self):
        assert not minor_constants_check(Fraction(1, 10), Fraction(99982, 100000)).holds

    def test_factor_one_always_holds(self):
        assert minor_constants_check(Fraction(499, 1000), Fraction(1)).holds


class TestUnactExpectation:
    def test_exact(self):
        assert unact_expectation(0.5, 3) == 1.5
        assert unact_expectation(1.0, 10) == 0.0

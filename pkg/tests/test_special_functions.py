import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetacycle.errors import AccuracyLoss, DomainError, NoConvergence, NumericError, PhasePrecisionLoss
from zetacycle.special_functions import (
    CONTINUED_FRACTION_MAX,
    EULER_GAMMA,
    POWER_SERIES_MAX,
    Method,
    ei,
    ei_asymptotic,
    ei_continued_fraction,
    ei_power_series,
    li_complex_power,
    li_complex_power_eval,
    regime,
)

from .conftest import overlap_grid

mpmath.mp.dps = 30

# frozen mpmath values (dps 30), recomputed live in TestOracle below
EI_1 = 1.8951178163559368
LI_2 = 1.0451637801174928
EI_2_3I = complex(-0.361551944599640, 5.27054843581369)
EI_10_10I = complex(-1576.15042657685, 436.919231701133)
EI_100I = complex(-0.00514882514261049, 3.13302179368395)
LI_12_RHO1 = complex(-0.0534174027027445, 3.22440339082587)
GAMMA_1 = 14.1347251417


def mp_ei(z):
    return complex(mpmath.ei(mpmath.mpc(z.real, z.imag)))


def all_methods(z):
    """Every method that returns a value at ``z``."""
    out = {}
    for fn in (ei_power_series, ei_continued_fraction, ei_asymptotic):
        try:
            ev = fn(z)
        except NumericError:
            continue
        out[ev.method] = ev
    return out


class TestOracle:
    def test_frozen_values_match_mpmath(self):
        assert abs(mp_ei(1 + 0j) - EI_1) < 1e-15
        assert abs(complex(mpmath.li(2)) - LI_2) < 1e-15
        for z, v in [(2 + 3j, EI_2_3I), (10 + 10j, EI_10_10I), (100j, EI_100I)]:
            assert abs(mp_ei(z) - v) <= 1e-13 * abs(v)

    def test_euler_gamma(self):
        assert EULER_GAMMA == float(mpmath.euler)


class TestPowerSeries:
    def test_small_argument_limit(self):
        ev = ei_power_series(1e-8 + 0j, 1e-14)
        expected = EULER_GAMMA + math.log(1e-8) + 1e-8
        assert abs(ev.value - expected) <= 1e-16 * abs(expected) + 4e-16
        assert abs(ev.value.real - float(mpmath.ei(mpmath.mpf("1e-8")))) < 1e-14

    def test_ei_one(self):
        ev = ei_power_series(1 + 0j, 1e-14)
        assert ev.value.imag == 0.0
        assert abs(ev.value.real - 1.895117816355937) < 1e-12
        assert abs(ev.value.real - EI_1) <= ev.abs_error_estimate
        assert ev.method is Method.POWER_SERIES

    def test_agrees_with_continued_fraction(self):
        a = ei_power_series(2 + 3j, 1e-14).value
        b = ei_continued_fraction(2 + 3j, 1e-14).value
        assert abs(a - b) <= 1e-11 * abs(b)
        assert abs(a - EI_2_3I) <= 1e-13 * abs(EI_2_3I)

    def test_misrouted_large_argument(self):
        with pytest.raises(NoConvergence):
            ei_power_series(5000j)


class TestContinuedFraction:
    def test_against_asymptotic(self):
        cf = ei_continued_fraction(10 + 10j, 1e-13)
        # |z| = 14 is too small for 1e-13 from the asymptotic series; it
        # still returns at its smallest term under a looser tolerance
        asy = ei_asymptotic(10 + 10j, 1e-3)
        assert abs(cf.value - asy.value) <= cf.abs_error_estimate + asy.abs_error_estimate
        assert abs(cf.value - EI_10_10I) <= 1e-12 * abs(EI_10_10I)

    def test_conjugation_flips_imaginary_part(self):
        z = 1.5 + 20j
        up = ei_continued_fraction(z, 1e-13).value
        down = ei_continued_fraction(z.conjugate(), 1e-13).value
        assert up.imag == pytest.approx(-down.imag, rel=1e-14)
        assert up.real == pytest.approx(down.real, rel=1e-14)

    def test_first_spiral_point(self):
        z = complex(0.5, GAMMA_1) * math.log(12)
        ev = ei_continued_fraction(z, 1e-13)
        assert abs(ev.value - LI_12_RHO1) < 1e-13
        assert abs(ev.value - mp_ei(z)) <= ev.abs_error_estimate

    def test_iteration_budget(self):
        with pytest.raises(NoConvergence):
            ei_continued_fraction(0.01 + 0.01j, 1e-14, max_iter=3)


class TestAsymptotic:
    def test_against_continued_fraction_on_imaginary_axis(self):
        a = ei_asymptotic(100j).value
        b = ei_continued_fraction(100j, 1e-13).value
        assert abs(a - b) <= 1e-11
        assert abs(a - EI_100I) <= 1e-13

    def test_too_small_argument(self):
        with pytest.raises(AccuracyLoss):
            ei_asymptotic(3 + 3j)

    def test_error_estimate_is_first_omitted_term_scale(self):
        z = 60 + 200j
        ev = ei_asymptotic(z)
        exact = mp_ei(z)
        assert abs(ev.value - exact) <= ev.abs_error_estimate
        assert ev.abs_error_estimate <= 1e-13 * abs(exact)

    @pytest.mark.parametrize("gamma", [14.0, 21.02, 100.0, 1e3, 1e4, 7.4e4])
    def test_spiral_bound(self, gamma):
        z = complex(0.5, gamma) * math.log(12)
        ev = ei_asymptotic(z, 1e-6) if abs(z) > CONTINUED_FRACTION_MAX else ei(z)
        assert abs(ev.value - 1j * math.pi) <= math.sqrt(12) / (gamma * math.log(12)) * (1 + 2 / abs(z))

    def test_spiral_shrinks_along_zeros(self, catalog_4k):
        gammas = catalog_4k.gammas[:20]
        dist = [abs(li_complex_power(12, complex(0.5, g)) - 1j * math.pi) for g in gammas]
        # decay holds for the envelope, not pointwise; compare the last
        # five points against the first two
        assert max(dist[15:]) < min(dist[:2])


class TestEi:
    def test_ei_one(self):
        ev = ei(1)
        assert abs(ev.value - EI_1) < 1e-12
        assert ev.value.imag == 0.0

    @pytest.mark.parametrize("x", np.geomspace(0.1, 700, 60).tolist())
    def test_real_axis_is_real(self, x):
        ev = ei(x)
        assert ev.value.imag == 0.0
        exact = float(mpmath.ei(x))
        assert abs(ev.value.real - exact) <= max(ev.abs_error_estimate, 1e-14 * abs(exact))

    def test_dispatch_thresholds(self):
        assert regime(POWER_SERIES_MAX) is Method.POWER_SERIES
        assert regime(POWER_SERIES_MAX * 1.0001j) is Method.CONTINUED_FRACTION
        assert regime(CONTINUED_FRACTION_MAX) is Method.CONTINUED_FRACTION
        assert regime(CONTINUED_FRACTION_MAX * 1.0001j) is Method.ASYMPTOTIC
        assert ei(3 + 3j).method is Method.POWER_SERIES
        assert ei(10 + 20j).method is Method.CONTINUED_FRACTION
        assert ei(10 + 200j).method is Method.ASYMPTOTIC

    def test_schwarz_reflection_example(self):
        z = 1.2425 + 35.124j
        assert ei(z.conjugate()).value == pytest.approx(ei(z).value.conjugate(), rel=1e-12)

    def test_spiral_first_zero(self):
        z = complex(0.5 * math.log(12), 14.134725 * math.log(12))
        ev = ei(z)
        assert abs(ev.value - mp_ei(z)) <= ev.abs_error_estimate
        assert abs(ev.value - 1j * math.pi) <= math.exp(0.5 * math.log(12)) / abs(z) * 1.2

    @pytest.mark.parametrize("bad", [0, 0j, -1, -3.5 + 0j, complex("nan"), complex(1, math.inf)])
    def test_domain_errors(self, bad):
        with pytest.raises(DomainError):
            ei(bad)

    def test_regime_fallback_error_types(self):
        with pytest.raises(PhasePrecisionLoss):
            ei(complex(0.5, 2e12))
        with pytest.raises(DomainError):
            ei(800 + 1j)

    def test_error_estimates_bound_true_error(self):
        rng = np.random.default_rng(20260101)
        r = np.exp(rng.uniform(math.log(0.1), math.log(1e4), 300))
        t = rng.uniform(0.001, math.pi - 0.001, 300)
        for z in r * np.exp(1j * t):
            z = complex(z)
            if z.real > 700:
                continue
            ev = ei(z)
            assert abs(ev.value - mp_ei(z)) <= ev.abs_error_estimate, z


class TestProperties:
    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.1, 1e4), st.floats(1e-3, math.pi - 1e-3))
    def test_conjugate_symmetry(self, r, theta):
        z = cmath.rect(r, theta)
        if z.real > 700:
            z = complex(700, z.imag)
        up, down = ei(z).value, ei(z.conjugate()).value
        assert abs(down - up.conjugate()) <= 1e-12 * abs(up)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(50, 1e4), st.floats(1e-3, math.pi - 1e-3))
    def test_asymptotic_limit(self, r, theta):
        z = cmath.rect(r, theta)
        if z.real > 700:
            return
        v = ei(z).value
        assert abs(v - 1j * math.pi) <= 2 * math.exp(z.real) / abs(z)

    def test_cross_method_agreement_grid(self):
        bad = []
        pairs = 0
        for z in overlap_grid():
            methods = list(all_methods(z).values())
            for i in range(len(methods)):
                for j in range(i + 1, len(methods)):
                    a, b = methods[i], methods[j]
                    pairs += 1
                    if abs(a.value - b.value) > a.abs_error_estimate + b.abs_error_estimate:
                        bad.append((z, a.method, b.method))
        assert pairs > 500
        assert not bad, bad[:5]


class TestLiComplexPower:
    def test_li_two(self):
        v = li_complex_power(2, 1 + 0j)
        assert v.imag == 0.0
        assert abs(v.real - 1.045163780117) < 1e-10
        assert abs(v.real - LI_2) < 1e-14

    @pytest.mark.parametrize("n", [3, 10, 12, 1295, 10**6])
    def test_real_rho_is_li(self, n):
        v = li_complex_power(n, 1)
        assert abs(v.imag) <= 1e-14
        assert v.real == pytest.approx(float(mpmath.li(n)), rel=1e-13)

    def test_conjugate_rho(self):
        rho = complex(0.5, GAMMA_1)
        assert li_complex_power(12, rho.conjugate()).imag == pytest.approx(-li_complex_power(12, rho).imag,
                                                                              rel=1e-14)

    def test_first_twenty_in_annulus(self, catalog_4k):
        for g in catalog_4k.gammas[:20]:
            v = li_complex_power(12, complex(0.5, g))
            assert abs(v - 1j * math.pi) <= math.sqrt(12) / (g * math.log(12)) * 1.2

    def test_envelope_first_4000(self, catalog_4k):
        g = catalog_4k.gammas
        re = np.array([li_complex_power(12, complex(0.5, x)).real for x in g])
        assert np.all(np.abs(re) <= math.sqrt(12) / (g * math.log(12)) * 1.2)

    def test_eval_reports_method(self):
        ev = li_complex_power_eval(12, complex(0.5, GAMMA_1))
        assert ev.method in (Method.CONTINUED_FRACTION, Method.ASYMPTOTIC)

    @pytest.mark.parametrize("n", [1, 0, -5, 2.5])
    def test_bad_n(self, n):
        with pytest.raises(DomainError):
            li_complex_power(n, 0.5 + 14j)

    def test_zero_rho(self):
        with pytest.raises(DomainError):
            li_complex_power(12, 0)

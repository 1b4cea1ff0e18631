"""Special-function kernel tests.

Expected values come from the independent oracles named next to each
assertion (truncated series, reflection formula, closed forms, the K
integral representation), never from the implementation under test.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkcs.quadrature import integrate_finite
from gkcs.specfun import (
    GammaPoleError,
    SingularParameterError,
    bessel_i,
    bessel_k,
    bessel_k_log,
    gamma,
    gegenbauer_c,
    jacobi_p,
    ln_gamma,
    pochhammer,
)
from gkcs.specfun import _bessel_i_asymptotic_scaled, _bessel_i_series_log


class TestLnGamma:
    def test_at_one(self):
        assert ln_gamma(1.0) == 0.0

    def test_at_five_by_recurrence(self):
        # Gamma(5) = 4! by the recurrence from Gamma(1) = 1
        assert ln_gamma(5.0).real == pytest.approx(math.log(24.0), rel=1e-14)
        assert ln_gamma(5.0).imag == 0.0

    def test_half_by_reflection_oracle(self):
        # Gamma(z) Gamma(1-z) = pi / sin(pi z) at z = 1/2 gives Gamma(1/2)^2 = pi
        assert ln_gamma(0.5).real == pytest.approx(0.5 * math.log(math.pi), rel=1e-13)

    def test_matches_lgamma_on_positive_axis(self):
        for x in (0.1, 0.7, 1.0, 3.7, 12.0, 41.5):
            assert ln_gamma(x).real == pytest.approx(math.lgamma(x), rel=1e-13, abs=1e-14)

    def test_pole_rejected(self):
        for z in (0.0, -1.0, -7.0):
            with pytest.raises(GammaPoleError):
                ln_gamma(z)

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            ln_gamma(complex(math.nan, 0.0))

    @settings(max_examples=100, deadline=None)
    @given(
        re=st.floats(min_value=0.1, max_value=20.0),
        im=st.floats(min_value=-20.0, max_value=20.0),
    )
    def test_recurrence_on_strip(self, re, im):
        z = complex(re, im)
        lhs = gamma(z + 1.0)
        assert abs(lhs - z * gamma(z)) / abs(lhs) <= 1e-12

    def test_reflection_left_half_plane(self):
        z = complex(-2.3, 1.1)
        lhs = gamma(z) * gamma(1.0 - z)
        rhs = math.pi / complex(math.sin(math.pi * z.real) * math.cosh(math.pi * z.imag),
                                math.cos(math.pi * z.real) * math.sinh(math.pi * z.imag))
        assert lhs == pytest.approx(rhs, rel=1e-12)


class TestPochhammer:
    def test_empty_product(self):
        assert pochhammer(3.7 + 2.0j, 0) == 1.0

    def test_factorial(self):
        # (1)_4 = 4! by direct product
        assert pochhammer(1.0, 4) == 24.0

    def test_integer_termination_exact_zero(self):
        assert pochhammer(-3.0, 5) == 0.0

    def test_rejects_negative_order(self):
        with pytest.raises(ValueError):
            pochhammer(1.0, -1)

    @settings(max_examples=60, deadline=None)
    @given(
        re=st.floats(min_value=-5.0, max_value=5.0),
        im=st.floats(min_value=-5.0, max_value=5.0),
        k=st.integers(min_value=0, max_value=12),
    )
    def test_recurrence(self, re, im, k):
        z = complex(re, im)
        lhs = pochhammer(z, k + 1)
        rhs = pochhammer(z, k) * (z + k)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def _i_series_oracle(m: int, x: float, terms: int) -> float:
    # ascending series sum_k (x/2)^{m+2k} / (k! (m+k)!), truncated
    return sum(
        (0.5 * x) ** (m + 2 * k) / (math.factorial(k) * math.factorial(m + k))
        for k in range(terms)
    )


class TestBesselI:
    def test_zero_argument(self):
        assert bessel_i(0.0, 0.0) == 1.0
        assert bessel_i(2.0, 0.0) == 0.0

    def test_small_argument_series_oracle(self):
        # 5-term truncated series oracle: I_2(0.2) = 0.005016687513894678
        oracle = _i_series_oracle(2, 0.2, 5)
        assert oracle == pytest.approx(0.005016687513894678, rel=1e-15)
        assert bessel_i(2.0, 0.2) == pytest.approx(oracle, rel=1e-13)

    def test_moderate_argument_series_oracle(self):
        # 25-term series oracle: I_2(2) = 0.6889484476987382
        oracle = _i_series_oracle(2, 2.0, 25)
        assert oracle == pytest.approx(0.6889484476987382, rel=1e-15)
        assert bessel_i(2.0, 2.0) == pytest.approx(oracle, rel=1e-13)

    def test_series_asymptotic_crossover_consistency(self):
        # both branches must agree where they overlap
        for m in (0.0, 1.5, 3.0, 8.0):
            for x in (50.0, 80.0):
                series = math.exp(_bessel_i_series_log(m, x) - x)
                asym = _bessel_i_asymptotic_scaled(m, x)
                assert asym == pytest.approx(series, rel=1e-12)

    def test_scaled_variant(self):
        assert bessel_i(1.0, 20.0, scaled=True) * math.exp(20.0) == pytest.approx(
            bessel_i(1.0, 20.0), rel=1e-14
        )
        # overflow region is only reachable through the scaled form
        scaled = bessel_i(0.0, 800.0, scaled=True)
        assert 0.0 < scaled < 1.0

    def test_overflow_signaled(self):
        with pytest.raises(OverflowError):
            bessel_i(0.0, 800.0)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            bessel_i(-1.0, 1.0)
        with pytest.raises(ValueError):
            bessel_i(1.0, -1.0)


class TestBesselK:
    def test_half_integer_closed_form(self):
        # K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}
        want = math.sqrt(math.pi / 2.0) * math.exp(-1.0)
        assert bessel_k(0.5, 1.0) == pytest.approx(want, rel=1e-12)

    def test_integral_oracle(self):
        # independent quadrature of the defining integral for K_2(1)
        oracle = integrate_finite(
            lambda t: np.exp(-np.cosh(t)) * np.cosh(2.0 * t), 0.0, 25.0, tol=1e-13
        ).value
        assert bessel_k(2.0, 1.0) == pytest.approx(float(oracle), rel=1e-10)

    def test_order_continuity_at_integers(self):
        # limit-stability: epsilon-shifted orders straddle the integer value
        for x in (0.4, 2.0, 9.0):
            mid = 0.5 * (bessel_k(2.0 - 1e-6, x) + bessel_k(2.0 + 1e-6, x))
            assert mid == pytest.approx(bessel_k(2.0, x), rel=1e-9)

    def test_i_difference_formula_noninteger(self):
        # pi/2 (I_{-m} - I_m)/sin(m pi), evaluated by ascending series
        for m in (0.5, 1.25, 3.3):
            for x in (0.3, 1.0, 4.0):
                i_neg = sum(
                    (0.5 * x) ** (2 * k - m) / (math.factorial(k) * math.gamma(k + 1.0 - m))
                    for k in range(60)
                )
                formula = 0.5 * math.pi * (i_neg - bessel_i(m, x)) / math.sin(m * math.pi)
                assert bessel_k(m, x) == pytest.approx(formula, rel=1e-10)

    def test_positive(self):
        for m in (0.0, 1.0, 4.5):
            for x in (0.01, 1.0, 40.0):
                assert bessel_k(m, x) > 0.0

    def test_domain_error(self):
        with pytest.raises(ValueError):
            bessel_k(1.0, 0.0)
        with pytest.raises(ValueError):
            bessel_k(1.0, -2.0)

    def test_log_variant_consistency(self):
        for m, x in ((0.0, 0.7), (2.0, 5.0), (6.0, 30.0)):
            assert math.exp(bessel_k_log(m, x)) == pytest.approx(bessel_k(m, x), rel=1e-13)

    def test_log_variant_extreme_arguments(self):
        # where K itself overflows, the log stays finite: small-x limit
        # K_m(x) ~ Gamma(m)/2 (2/x)^m
        got = bessel_k_log(7.0, 1e-12)
        want = math.lgamma(7.0) - math.log(2.0) + 7.0 * math.log(2e12)
        assert got == pytest.approx(want, rel=1e-12)

    def test_scaled(self):
        assert bessel_k(1.0, 3.0, scaled=True) == pytest.approx(
            math.exp(3.0) * bessel_k(1.0, 3.0), rel=1e-13
        )


@pytest.mark.parametrize("m", [0.0, 0.5, 2.0, 6.6])
def test_wronskian_identity(m):
    # I_m(x) K_{m+1}(x) + I_{m+1}(x) K_m(x) = 1/x  (6.6 = 2 nu + 2 at nu = 2.3)
    for x in np.linspace(0.1, 30.0, 30):
        w = bessel_i(m, x) * bessel_k(m + 1.0, x) + bessel_i(m + 1.0, x) * bessel_k(m, x)
        assert abs(w * x - 1.0) <= 1e-10


class TestJacobi:
    def test_degree_zero(self):
        assert jacobi_p(0, 1.0 + 2.0j, 0.5, 3.0 - 1.0j) == 1.0

    def test_degree_one_closed_form(self):
        a, b, z = 0.3 + 0.2j, -0.1 - 0.2j, 0.7j
        want = (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0
        assert jacobi_p(1, a, b, z) == pytest.approx(want, rel=1e-14)

    def test_legendre_endpoint(self):
        # a = b = 0 is Legendre; P_n(1) = 1
        assert jacobi_p(2, 0.0, 0.0, 1.0) == pytest.approx(1.0, rel=1e-14)

    def test_singular_parameter(self):
        with pytest.raises(SingularParameterError):
            jacobi_p(3, -2.0, 0.0, 0.5)

    def test_array_argument(self):
        z = np.array([0.1j, 0.5j, 2.0j])
        vals = jacobi_p(3, -4.0 + 1.0j, -4.0 - 1.0j, z)
        singles = [jacobi_p(3, -4.0 + 1.0j, -4.0 - 1.0j, v) for v in z]
        assert np.allclose(vals, singles, rtol=1e-14)

    @pytest.mark.parametrize("n", [10, 25, 40])
    def test_three_term_recurrence_oracle(self, n):
        # independent route for high degree: the classical three-term
        # recurrence, run with the same complex parameter pair
        a = complex(-(n + 1.5), 0.4)
        b = np.conj(a)
        z = 0.9j
        p_prev, p_cur = 1.0 + 0.0j, (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0
        for k in range(2, n + 1):
            c1 = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0)
            c2 = (2.0 * k + a + b - 1.0) * (
                (2.0 * k + a + b) * (2.0 * k + a + b - 2.0) * z + a * a - b * b
            )
            c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b)
            p_prev, p_cur = p_cur, (c2 * p_cur - c3 * p_prev) / c1
        direct = jacobi_p(n, a, b, z)
        assert abs(direct - p_cur) <= 1e-11 * abs(p_cur)

    @settings(max_examples=60, deadline=None)
    @given(
        are=st.floats(min_value=-8.0, max_value=2.0),
        aim=st.floats(min_value=-3.0, max_value=3.0),
        t=st.floats(min_value=-5.0, max_value=5.0),
        n=st.integers(min_value=0, max_value=8),
    )
    def test_conjugation_symmetry(self, are, aim, t, n):
        # with b = conj(a) and purely imaginary argument:
        # conj(P^{(a,b)}(z)) = P^{(b,a)}(-z)
        a = complex(are, aim)
        if any(a + 1.0 + k == 0 for k in range(n)):
            return
        z = complex(0.0, t)
        lhs = np.conj(jacobi_p(n, a, np.conj(a), z))
        rhs = jacobi_p(n, np.conj(a), a, -z)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


class TestGegenbauer:
    def test_degree_zero(self):
        assert gegenbauer_c(0, 1.3, 0.4) == 1.0

    def test_degree_one(self):
        # C_1^lam(x) = 2 lam x
        assert gegenbauer_c(1, 2.0, 0.5) == pytest.approx(2.0, rel=1e-15)

    def test_degree_two_at_one(self):
        # recurrence gives 4x^2 - 1 at lam = 1
        assert gegenbauer_c(2, 1.0, 1.0) == pytest.approx(3.0, rel=1e-15)

    @pytest.mark.parametrize("lam", [0.7, 1.0, 3.3])
    def test_endpoint_pochhammer_identity(self, lam):
        # C_n^lam(1) = (2 lam)_n / n!
        for n in range(16):
            want = pochhammer(2.0 * lam, n).real / math.factorial(n)
            assert gegenbauer_c(n, lam, 1.0) == pytest.approx(want, rel=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            gegenbauer_c(2, 0.0, 0.5)
        with pytest.raises(ValueError):
            gegenbauer_c(-1, 1.0, 0.5)

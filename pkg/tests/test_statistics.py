"""Number-statistics tests: series kernels against distribution sums, the
small-label expansions, and the variance formulas against the dense matrix
oracle."""

import math

import numpy as np
import pytest

from gkcs.coherent import make_state
from gkcs.spectrum import ModelParams
from gkcs.statistics import (
    delta_H,
    fano,
    g2,
    mandel_Q,
    mean_N,
    n_derivatives,
    photon_pdf,
    quadrature_variances,
    s_kernel,
    squeezing_comparison,
    variances_by_matrix,
)

WELL = ModelParams(nu=0.0)


def _pdf_oracle(p: ModelParams, x: float, n: int) -> float:
    # independent route: explicit rho product and direct series for N(x)
    rho_n = 1.0
    for k in range(1, n + 1):
        rho_n *= p.scale_s * k * (k + 2.0 * p.nu + 2.0)
    total, term = 1.0, 1.0
    m = 0
    while term > 1e-18 * total:
        term *= (x / p.scale_s) / ((m + 1.0) * (2.0 * p.nu + 3.0 + m))
        total += term
        m += 1
    return x**n / (rho_n * total)


class TestDerivatives:
    def test_positive(self):
        d = n_derivatives(ModelParams(nu=1.3, scale_s=0.5), 2.0)
        assert d.N0 > 0 and d.N1 > 0 and d.N2 > 0 and d.N3 > 0

    def test_at_zero(self):
        d = n_derivatives(WELL, 0.0)
        # N^{(r)}(0) = r!/rho_r
        assert d.N0 == pytest.approx(1.0, rel=1e-15)
        assert d.N1 == pytest.approx(1.0 / 3.0, rel=1e-14)
        assert d.N2 == pytest.approx(2.0 / 24.0, rel=1e-14)

    def test_domain(self):
        with pytest.raises(ValueError):
            n_derivatives(WELL, -1.0)
        with pytest.raises(ValueError):
            n_derivatives(ModelParams(nu=1.0, beta=1.0), 1.0)


class TestKernels:
    def test_trivial_kernel(self):
        assert s_kernel(WELL, 0, 0, 1.7) == pytest.approx(1.0, rel=1e-13)

    def test_zero_label_single_term(self):
        # m = 0 term only: 1/sqrt(rho_1) normalized by N(0) = 1
        got = s_kernel(WELL, 1, 0, 0.0, gamma=0.0)
        assert got == pytest.approx(1.0 / math.sqrt(3.0), rel=1e-13)

    def test_equal_indices_are_derivatives(self):
        # x^r S^{(r,r)} = x^r N^{(r)}/N, gamma drops out
        for r in (1, 2, 3):
            x = 2.2
            d = n_derivatives(WELL, x)
            deriv = (d.N1, d.N2, d.N3)[r - 1]
            got = s_kernel(WELL, r, r, x, gamma=1.3)
            assert got.imag == pytest.approx(0.0, abs=1e-15)
            assert got.real == pytest.approx(deriv / d.N0, rel=1e-12)

    def test_conjugate_pair(self):
        k02 = s_kernel(WELL, 0, 2, 1.5, gamma=0.8)
        k20 = s_kernel(WELL, 2, 0, 1.5, gamma=0.8)
        assert k02 == pytest.approx(np.conj(k20), rel=1e-13)


class TestDistribution:
    def test_vacuum_cases(self):
        assert photon_pdf(WELL, 0.0, 0) == 1.0
        assert photon_pdf(WELL, 0.0, 3) == 0.0
        assert photon_pdf(WELL, 1.0, 0) == pytest.approx(
            1.0 / 1.3778968953974764, rel=1e-12
        )

    def test_single_quantum_value(self):
        # oracle: (1/rho_1)/N(1) = 0.24191456882350978
        oracle = _pdf_oracle(WELL, 1.0, 1)
        assert oracle == pytest.approx(0.24191456882350978, rel=1e-12)
        assert photon_pdf(WELL, 1.0, 1) == pytest.approx(oracle, rel=1e-12)

    def test_normalized(self):
        for x in (0.5, 2.0, 10.0):
            total = sum(photon_pdf(WELL, x, n) for n in range(300))
            assert total == pytest.approx(1.0, abs=1e-12)

    def test_mean_consistency(self):
        x = 1.0
        direct = sum(n * photon_pdf(WELL, x, n) for n in range(200))
        assert mean_N(WELL, x) == pytest.approx(direct, abs=1e-10)
        # series oracle value at nu=0, s=1, x=1
        assert mean_N(WELL, 1.0) == pytest.approx(0.30878937306624, rel=1e-11)

    def test_second_moment_kernel_identity(self):
        x = 2.5
        kernel = x**2 * s_kernel(WELL, 2, 2, x).real + x * s_kernel(WELL, 1, 1, x).real
        direct = sum(n * n * photon_pdf(WELL, x, n) for n in range(300))
        assert kernel == pytest.approx(direct, abs=1e-10)


class TestMandelAndCorrelation:
    def test_q_zero_limit(self):
        assert mandel_Q(WELL, 0.0) == 0.0

    def test_q_small_label_expansion(self):
        # leading term -x/(s(2nu+3)(2nu+4)), verified to 1%
        for nu, s in ((0.0, 1.0), (1.0, 0.5), (2.3, 2.0)):
            p = ModelParams(nu=nu, scale_s=s)
            want = -1e-3 / (s * (2 * nu + 3) * (2 * nu + 4))
            assert mandel_Q(p, 1e-3) == pytest.approx(want, rel=1e-2)

    def test_q_value_at_well(self):
        assert mandel_Q(WELL, 1e-3) == pytest.approx(-8.333e-5, rel=1e-2)

    def test_fano_is_q_plus_one(self):
        assert fano(WELL, 1.7) == mandel_Q(WELL, 1.7) + 1.0

    def test_sub_poissonian_scan(self):
        for nu in (0.0, 1.0, 3.0):
            p = ModelParams(nu=nu)
            assert all(mandel_Q(p, float(x)) < 0.0 for x in np.linspace(0.25, 50.0, 100))

    def test_g2_zero_label_limit(self):
        for nu in (0.0, 1.0, 2.3):
            p = ModelParams(nu=nu)
            want = (2 * nu + 3) / (2 * nu + 4)
            assert g2(p, 1e-8) == pytest.approx(want, rel=1e-7)

    def test_g2_small_label_slope(self):
        # first-order coefficient 2/(s(2nu+3)(2nu+4)(2nu+5)), to 1%
        for nu, s in ((0.0, 1.0), (1.5, 2.0)):
            p = ModelParams(nu=nu, scale_s=s)
            limit = (2 * nu + 3) / (2 * nu + 4)
            slope = 2.0 / (s * (2 * nu + 3) * (2 * nu + 4) * (2 * nu + 5))
            got = (g2(p, 1e-3) / limit - 1.0) / 1e-3
            assert got == pytest.approx(slope, rel=1e-2)

    def test_g2_definition_consistency(self):
        x = 3.0
        mean = mean_N(WELL, x)
        second = sum(n * n * photon_pdf(WELL, x, n) for n in range(300))
        assert g2(WELL, x) * mean**2 + mean == pytest.approx(second, abs=1e-10)

    def test_gamma_invariance(self):
        # the statistics functions are built from gamma-free series; the
        # state-level distribution agrees with them for any gamma
        state = make_state(WELL, 1.3, gamma=2.1, tail_tol=1e-12)
        for n in (0, 2, 5):
            assert abs(state.coeffs[n]) ** 2 == pytest.approx(
                photon_pdf(WELL, state.x, n), rel=1e-10
            )


class TestVariances:
    def test_vacuum(self):
        state = make_state(ModelParams(nu=1.0), 0.0, 0.3)
        assert quadrature_variances(state) == (0.5, 0.5)

    def test_formula_vs_matrix_oracle(self):
        rng = np.random.default_rng(42)
        p = ModelParams(nu=1.0)
        for _ in range(10):
            z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            state = make_state(p, z, rng.uniform(0, 2), tail_tol=1e-12)
            sx, sp = quadrature_variances(state, cross_check=False)
            mx, mp_ = variances_by_matrix(state)
            assert abs(sx - mx) < 1e-8 and abs(sp - mp_) < 1e-8

    def test_cross_check_enabled_by_default(self):
        state = make_state(WELL, 1.0 + 0.5j, 0.4, tail_tol=1e-12)
        sx, sp = quadrature_variances(state)
        assert sx > 0 and sp > 0

    def test_rotation_identity(self):
        rng = np.random.default_rng(7)
        p = ModelParams(nu=0.5, scale_s=2.0)
        for _ in range(20):
            z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            g = rng.uniform(0, 3)
            sp = quadrature_variances(make_state(p, z, g), cross_check=False)[1]
            sx_rot = quadrature_variances(make_state(p, 1j * z, g), cross_check=False)[0]
            assert abs(sp - sx_rot) < 1e-12

    def test_uncertainty_bound(self):
        from gkcs.quantize import rescaled_boson

        state = make_state(WELL, 1.5 + 0.2j, 0.9, tail_tol=1e-12)
        sx, sp = quadrature_variances(state)
        dim = state.n_max + 4
        a, adag = rescaled_boson(WELL, state.gamma, dim - 1)
        comm = a.entries @ adag.entries - adag.entries @ a.entries
        c = state.coefficient_vector(dim)
        bound = 0.25 * abs(np.vdot(c, comm @ c)) ** 2
        assert sx * sp >= bound - 1e-12

    def test_squeezing_report_rederivable(self):
        state = make_state(WELL, 1.3 + 0.4j, 0.7, tail_tol=1e-12)
        rep = squeezing_comparison(state)
        sx, sp = quadrature_variances(state, cross_check=False)
        assert rep["sigma_X"] == pytest.approx(sx, rel=1e-12)
        assert rep["sigma_P"] == pytest.approx(sp, rel=1e-12)
        assert rep["Delta_H"] == pytest.approx(delta_H(state), rel=1e-12)
        dh = rep["Delta_H"]
        if rep["ordering"].startswith("X-side"):
            assert sx < dh < sp
        elif rep["ordering"].startswith("P-side"):
            assert sp < dh < sx
        else:
            assert not (sx < dh < sp) and not (sp < dh < sx)

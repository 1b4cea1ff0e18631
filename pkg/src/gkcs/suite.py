"""Full identity battery behind the ``validate`` command.

Runs every closed-form-versus-oracle check the library ships, in a fixed
order, and returns the reports.  Everything is deterministic: grids are
fixed, the one pseudo-random sample uses a hard-coded seed.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import coherent, geometry, quantize, spectrum, statistics
from .quadrature import integrate_circle, integrate_finite, integrate_semi_infinite
from .specfun import bessel_i, bessel_k, gamma, gegenbauer_c, jacobi_p, pochhammer
from .spectrum import ModelParams
from .verification import VerificationReport, check

__all__ = ["run_full_suite"]


def _specfun_checks(p: ModelParams) -> list[VerificationReport]:
    out = []
    rng = np.random.default_rng(20130712)
    worst = 0.0
    for _ in range(100):
        z = complex(rng.uniform(0.1, 20.0), rng.uniform(-20.0, 20.0))
        worst = max(worst, abs(gamma(z + 1.0) - z * gamma(z)) / abs(gamma(z + 1.0)))
    out.append(check("gamma recurrence on the sampled strip", worst, 1e-12))

    worst = 0.0
    for m in (0.0, 0.5, 2.0, 2.0 * p.nu + 2.0):
        for x in (0.1, 1.0, 5.0, 15.0, 30.0):
            w = bessel_i(m, x) * bessel_k(m + 1.0, x) + bessel_i(m + 1.0, x) * bessel_k(m, x)
            worst = max(worst, abs(w * x - 1.0))
    out.append(check("modified Bessel Wronskian I K' pairing", worst, 1e-10))

    worst = 0.0
    for m in (0.75, 1.5, 2.0 * p.nu + 2.5):
        for x in (0.3, 1.0, 3.0):
            # I-difference route, stable at these small arguments
            diff_form = 0.5 * math.pi * (_bessel_i_neg(m, x) - bessel_i(m, x)) / math.sin(m * math.pi)
            worst = max(worst, abs(diff_form / bessel_k(m, x) - 1.0))
    out.append(check("K reproduces the I-difference formula (non-integer order)", worst, 1e-10))

    # conjugation symmetry of the complex-parameter Jacobi sum
    a = complex(-3.2, 0.7)
    z = 1.9j
    lhs = np.conj(jacobi_p(4, a, np.conj(a), z))
    rhs = jacobi_p(4, np.conj(a), a, -z)
    out.append(check("Jacobi conjugation symmetry", abs(lhs - rhs) / abs(lhs), 1e-13))

    worst = 0.0
    for n in range(16):
        closed = pochhammer(2.0 * (p.nu + 1.0), n).real / math.factorial(n)
        worst = max(worst, abs(gegenbauer_c(n, p.nu + 1.0, 1.0) / closed - 1.0))
    out.append(check("Gegenbauer endpoint value (2 lam)_n / n!", worst, 1e-12))
    return out


def _bessel_i_neg(m: float, x: float) -> float:
    # ascending series of I_{-m} for the difference-formula cross-check
    term = (0.5 * x) ** (-m) / gamma(1.0 - m).real
    total = term
    for k in range(200):
        term *= 0.25 * x * x / ((k + 1.0) * (k + 1.0 - m))
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
    return total


def _quadrature_checks() -> list[VerificationReport]:
    out = []
    cases = [
        ("finite polynomial", integrate_finite(lambda x: x, 0.0, 1.0, 1e-12).value, 0.5),
        ("finite endpoint singularity", integrate_finite(lambda x: x**-0.5, 0.0, 1.0, 1e-12).value, 2.0),
        ("semi-infinite exponential", integrate_semi_infinite(lambda x: np.exp(-x), 1e-12).value, 1.0),
        ("circle harmonic", integrate_circle(lambda t: np.cos(t), 1, 1e-12).value, 0.5),
    ]
    for name, got, want in cases:
        out.append(check(f"quadrature oracle: {name}", abs(got - want) / max(1.0, abs(want)), 1e-10))
    return out


def _spectrum_checks(p: ModelParams) -> list[VerificationReport]:
    out = []
    states = [spectrum.eigenfunction(p, n) for n in range(4)]
    worst = 0.0
    for n in range(4):
        for m in range(n + 1):
            val = integrate_finite(
                lambda x, f=states[n], g=states[m]: np.conj(f(x)) * g(x),
                0.0, p.box_L, 1e-11,
            ).value
            worst = max(worst, abs(val - (1.0 if n == m else 0.0)))
    out.append(check("eigenfunction orthonormality (n, m <= 3)", worst, 1e-8))

    worst = 0.0
    for n in range(4):
        f = states[n]
        norm = integrate_finite(lambda x: np.abs(f(x)) ** 2, 0.0, p.box_L, 1e-11).value
        worst = max(worst, abs(norm - 1.0))
    out.append(check("closed-form normalization vs quadrature norm", worst, 1e-8))

    x = np.linspace(0.0, p.box_L, 2002)[1:-1]
    phi0 = spectrum.eigenfunction(p, 0).real(x)
    _, res = spectrum.apply_ladder(p, "lower", x, phi0)
    out.append(check("ground state annihilated by the lowering operator",
                     np.max(np.abs(res)) / np.max(np.abs(phi0)), 1e-5))

    phi1 = spectrum.eigenfunction(p, 1).real(x)
    xi, lowered = spectrum.apply_ladder(p, "lower", x, phi1)
    coeff = p.c0 * math.sqrt(spectrum.energy(p, 1) - spectrum.energy(p, 0))
    target = coeff * spectrum.eigenfunction(p.shifted(1), 0).real(xi)
    out.append(check("first-order ladder identity",
                     np.max(np.abs(lowered - target)) / np.max(np.abs(target)), 1e-5))

    # intertwining, restated spectrally on the laddered eigenfunction
    m = 1
    fm = spectrum.eigenfunction(p.shifted(1), m).real(x)
    xi, raised = spectrum.apply_ladder(p, "raise", x, fm)
    lhs = spectrum.energy(p, m + 1) * raised
    rhs = spectrum.energy(p.shifted(1), m) * raised
    out.append(check("intertwining relation (spectral form)",
                     np.max(np.abs(lhs - rhs)) / np.max(np.abs(lhs)), 1e-5))

    xg = np.linspace(0.0, p.box_L, 801)[1:-1]
    gap = spectrum.partner_potential(p, xg) - spectrum.potential(p.shifted(1), xg)
    out.append(check("shape invariance of the partner potential", np.max(np.abs(gap)), 1e-8))

    xs = np.linspace(0.2 * p.box_L, 0.8 * p.box_L, 20)
    h = 1e-6 * p.box_L
    f0 = spectrum.eigenfunction(p, 0)
    fd = -p.hbar * (f0.real(xs + h) - f0.real(xs - h)) / (2.0 * h) / f0.real(xs)
    out.append(check("superpotential equals -hbar phi0'/phi0",
                     np.max(np.abs(fd - spectrum.superpotential(p, xs))), 1e-8))

    worst = 0.0
    for n in range(31):
        lin = spectrum.rho(p, n)
        logv = math.exp(spectrum.log_rho(p, n))
        worst = max(worst, abs(logv / lin - 1.0))
    out.append(check("rho linear-space vs log-space agreement", worst, 1e-12))

    out.extend(spectrum.verify_operator_products(p, 1))
    out.extend(spectrum.verify_operator_products(p, 2, m=3))
    return out


def _coherent_checks(p: ModelParams, z: complex, gamma_label: float) -> list[VerificationReport]:
    out = []
    worst = 0.0
    for x in np.linspace(0.0, 25.0, 26):
        series = coherent.normalization_N(p, float(x))
        closed = coherent.normalization_N_bessel(p, float(x))
        worst = max(worst, abs(closed / series - 1.0))
    out.append(check("normalization series vs corrected Bessel form", worst, 1e-12))
    out.append(coherent.printed_form_discrepancy(p, np.linspace(0.5, 20.0, 5)))

    worst = 0.0
    for n in range(7):
        worst = max(worst, abs(coherent.moment(p, n, tol=1e-9) / spectrum.rho(p, n) - 1.0))
    out.append(check("Bessel-measure moments reproduce rho_n (n <= 6)", worst, 1e-8))
    worst = 0.0
    for n in range(7):
        worst = max(worst, abs(coherent.moment_closed_form(p, n) / spectrum.rho(p, n) - 1.0))
    out.append(check("moment Gamma-product closed form", worst, 1e-12))

    out.append(coherent.verify_resolution_of_identity(p, 0, 0))
    out.append(coherent.verify_resolution_of_identity(p, 3, 3))
    out.append(coherent.verify_resolution_of_identity(p, 2, 5))

    state = coherent.make_state(p, z, gamma_label, tail_tol=1e-12)
    out.append(check("coherent state self-overlap", abs(coherent.overlap(state, state) - 1.0), 1e-12))
    out.append(check("action identity <H> = |z|^2",
                     abs(coherent.action_identity(state) / state.x - 1.0), 1e-9))

    shifted = coherent.evolve(state, 0.37)
    ns = np.arange(state.n_max + 1)
    ex = np.array([spectrum.excitation(p, int(k)) for k in ns])
    expected = state.coeffs * np.exp(-1j * 0.37 * ex)
    exact = np.array_equal(shifted.coeffs, expected)
    out.append(check("temporal stability at the coefficient level",
                     0.0 if exact else 1.0, 0.0, detail="exact phase multiplication"))

    dists = []
    for j in range(8):
        other = coherent.make_state(p, z * (1.0 - 2.0 ** (-j - 1)), gamma_label)
        dists.append(coherent.label_distance_sq(other, state))
    monotone = all(b < a for a, b in zip(dists, dists[1:]))
    out.append(check("label continuity: monotone decay of the distance",
                     0.0 if monotone and dists[-1] < dists[0] else 1.0, 0.0,
                     detail=f"distance falls {dists[0]:.2e} -> {dists[-1]:.2e}"))
    return out


def _statistics_checks(p: ModelParams, z: complex, gamma_label: float) -> list[VerificationReport]:
    out = []
    x_small = 1e-3
    s = p.scale_s
    coef = -1.0 / (s * (2.0 * p.nu + 3.0) * (2.0 * p.nu + 4.0))
    out.append(check("Mandel Q small-label expansion",
                     statistics.mandel_Q(p, x_small) / (x_small * coef) - 1.0, 1e-2))
    g2_limit = (2.0 * p.nu + 3.0) / (2.0 * p.nu + 4.0)
    slope = 2.0 / (s * (2.0 * p.nu + 3.0) * (2.0 * p.nu + 4.0) * (2.0 * p.nu + 5.0))
    got = (statistics.g2(p, x_small) / g2_limit - 1.0) / x_small
    out.append(check("second-order correlation small-label slope", got / slope - 1.0, 1e-2))

    xq = 2.5
    pdf_sum = sum(statistics.photon_pdf(p, xq, n) for n in range(200))
    out.append(check("photon distribution normalization", pdf_sum - 1.0, 1e-12))
    direct_mean = sum(n * statistics.photon_pdf(p, xq, n) for n in range(200))
    out.append(check("mean occupation vs distribution sum",
                     statistics.mean_N(p, xq) - direct_mean, 1e-10))
    n2_kernel = xq**2 * statistics.s_kernel(p, 2, 2, xq).real + xq * statistics.s_kernel(p, 1, 1, xq).real
    n2_direct = sum(n * n * statistics.photon_pdf(p, xq, n) for n in range(200))
    out.append(check("second moment via expectation kernels", n2_kernel - n2_direct, 1e-10))
    gg = statistics.g2(p, xq)
    out.append(check("g2 definition consistency",
                     gg * direct_mean**2 + direct_mean - n2_direct, 1e-10))

    # Q, F, g2 and the distribution are built from gamma-free series by
    # construction; the coefficient-modulus comparison costs one abs() ulp
    state = coherent.make_state(p, z, gamma_label, tail_tol=1e-12)
    state2 = coherent.make_state(p, z, gamma_label + 1.3, tail_tol=1e-12)
    out.append(check("photon distribution is gamma independent",
                     float(np.max(np.abs(np.abs(state.coeffs) - np.abs(state2.coeffs)))), 5e-16,
                     detail="coefficient moduli agree to one rounding"))

    sx, sp = statistics.quadrature_variances(state)
    mx, mp_ = statistics.variances_by_matrix(state)
    out.append(check("variance formulas vs matrix oracle",
                     max(abs(sx - mx), abs(sp - mp_)), 1e-8))
    rot = coherent.make_state(p, 1j * z, gamma_label, tail_tol=1e-12)
    sx_rot, _ = statistics.quadrature_variances(rot, cross_check=False)
    out.append(check("rotation identity sigma_P(z) = sigma_X(iz)", abs(sp - sx_rot), 1e-12))

    # Robertson bound with the commutator from the matrix pair
    from .quantize import rescaled_boson

    dim = state.n_max + 4
    a, adag = rescaled_boson(p, gamma_label, dim - 1)
    comm = a.entries @ adag.entries - adag.entries @ a.entries
    cvec = state.coefficient_vector(dim)
    bound = 0.25 * abs(np.vdot(cvec, comm @ cvec)) ** 2
    out.append(check("uncertainty product respects the commutator bound",
                     max(0.0, bound - sx * sp), 1e-12,
                     detail=f"sigma_X sigma_P = {sx * sp:.6f} >= {bound:.6f}"))
    return out


def _geometry_checks(p: ModelParams) -> list[VerificationReport]:
    out = []
    w0 = geometry.fubini_metric(p, 0.0)
    expect = 1.0 / (p.scale_s * (2.0 * p.nu + 3.0))
    out.append(check("metric at the origin 1/(s(2nu+3))", w0 - expect, 1e-9))
    x_small = 1e-3
    slope = -2.0 / (p.scale_s * (2.0 * p.nu + 3.0) * (2.0 * p.nu + 4.0))
    got = (geometry.fubini_metric(p, x_small) / w0 - 1.0) / x_small
    out.append(check("metric small-label slope", got / slope - 1.0, 1e-2))

    x0, h = 1.7, 1e-5
    fd = (statistics.mean_N(p, x0 + h) - statistics.mean_N(p, x0 - h)) / (2.0 * h)
    out.append(check("metric equals d<N>/dx (finite difference)",
                     geometry.fubini_metric(p, x0) - fd, 1e-6))

    positive = all(geometry.fubini_metric(p, float(x)) > 0.0 for x in np.linspace(0.0, 50.0, 51))
    out.append(check("metric positivity on the scan range",
                     0.0 if positive else 1.0, 0.0))
    a, b = geometry.metric_components(p, x0)
    out.append(check("metric equals bundle term minus projection term",
                     a - b - geometry.fubini_metric(p, x0), 1e-10))
    return out


def _quantize_checks(p: ModelParams, z: complex, gamma_label: float,
                     n_max_radial: int) -> list[VerificationReport]:
    out = []
    ident = quantize.op_radial(p, lambda x: np.ones_like(x), n_max=n_max_radial)
    out.append(check("radial symbol 1 quantizes to the identity",
                     float(np.max(np.abs(ident.entries - np.eye(n_max_radial + 1)))), 1e-8))

    opx = quantize.op_radial(p, lambda x: x, n_max=12)
    m11 = quantize.op_monomial(p, 1, 1, 0.0, 12)
    out.append(check("radial |z|^2 equals monomial (1,1) route",
                     float(np.max(np.abs(opx.entries - m11.entries))), 1e-8))

    m10 = quantize.op_monomial(p, 1, 0, gamma_label, 16)
    az = quantize.op_z(p, gamma_label, 16)
    out.append(check("monomial (1,0) equals the amplitude ladder entrywise",
                     float(np.max(np.abs(m10.entries - az.entries))), 1e-10))
    prod = az.entries @ quantize.op_zbar(p, gamma_label, 16).entries
    out.append(check("ladder product equals radial route on the diagonal",
                     float(np.max(np.abs(np.diag(prod)[:13] - np.diag(opx.entries)))), 1e-8))

    one = quantize.op_angular(p, {0: 1.0}, gamma_label, 16)
    out.append(check("angle symbol 1 quantizes to the identity",
                     float(np.max(np.abs(one.entries - np.eye(17)))), 1e-13))
    cos_op = quantize.op_angular(p, {1: 0.5, -1: 0.5}, gamma_label, 16)
    out.append(check("real angle symbol gives a Hermitian matrix",
                     cos_op.hermiticity_defect(), 1e-10))

    d = np.exp(-1j * gamma_label * np.array([spectrum.excitation(p, n) for n in range(17)]))
    conjugated = (d[:, None] * quantize.op_z(p, 0.0, 16).entries) * np.conj(d)[None, :]
    exact = np.array_equal(conjugated, az.entries)
    out.append(check("gamma covariance by diagonal phase conjugation",
                     0.0 if exact else float(np.max(np.abs(conjugated - az.entries))), 0.0,
                     detail="bitwise equal by construction"))

    out.extend(quantize.verify_quantize_expectations(p, z, gamma_label))
    return out


def run_full_suite(p: ModelParams, z: complex = 1.3 + 0.4j, gamma_label: float = 0.4,
                   n_max_radial: int = 32) -> list[VerificationReport]:
    """Run every identity check; returns the reports in a fixed order.

    Spectrum checks honor the beta of ``p``; the coherent-state sections run
    at beta = 0 (their defining regime).
    """
    p_fock = dataclasses.replace(p, beta=0.0)
    reports = []
    for name, batch in (
        ("specfun", _specfun_checks(p)),
        ("quadrature", _quadrature_checks()),
        ("spectrum", _spectrum_checks(p)),
        ("coherent", _coherent_checks(p_fock, z, gamma_label)),
        ("statistics", _statistics_checks(p_fock, z, gamma_label)),
        ("geometry", _geometry_checks(p_fock)),
        ("quantize", _quantize_checks(p_fock, z, gamma_label, n_max_radial)),
    ):
        for rep in batch:
            reports.append(dataclasses.replace(rep, identity=f"{name}: {rep.identity}"))
    return reports

"""Poschl-Teller spectra, Gazeau-Klauder coherent states, and quantization.

A numpy-based library covering the trigonometric Poschl-Teller model on a
finite box: exact spectra and eigenfunctions, the supersymmetric ladder
structure, Gazeau-Klauder coherent states with their Bessel-measure
resolution of the identity, photon statistics and Fubini-Study geometry of
the state manifold, and coherent-state (anti-Wick) quantization of phase
space symbols on a truncated Fock basis.

Every closed-form identity ships with an independent series, quadrature,
finite-difference, or matrix oracle; ``gkcs.suite.run_full_suite`` (or the
``gkcs validate`` command line) runs the whole battery and reports
residuals.
"""

from .spectrum import (
    ModelParams,
    SpectralPoint,
    Eigenfunction,
    energy,
    excitation,
    rho,
    normalization_K,
    eigenfunction,
    fock_state,
    superpotential,
    apply_ladder,
    product_M,
    product_T,
)
from .coherent import (
    CoherentState,
    MeasureDensity,
    normalization_N,
    make_state,
    overlap,
    measure_density,
    moment,
    verify_resolution_of_identity,
    evolve,
    action_identity,
)
from .statistics import (
    mean_N,
    photon_pdf,
    mandel_Q,
    fano,
    g2,
    quadrature_variances,
)
from .geometry import fubini_metric
from .quantize import (
    OperatorMatrix,
    op_radial,
    op_angular,
    op_monomial,
    op_z,
    op_zbar,
    rescaled_boson,
)
from .quadrature import (
    QuadratureResult,
    BudgetExceededError,
    integrate_finite,
    integrate_semi_infinite,
    integrate_circle,
)
from .verification import VerificationReport

__version__ = "0.1.0"

__all__ = [
    "ModelParams",
    "SpectralPoint",
    "Eigenfunction",
    "energy",
    "excitation",
    "rho",
    "normalization_K",
    "eigenfunction",
    "fock_state",
    "superpotential",
    "apply_ladder",
    "product_M",
    "product_T",
    "CoherentState",
    "MeasureDensity",
    "normalization_N",
    "make_state",
    "overlap",
    "measure_density",
    "moment",
    "verify_resolution_of_identity",
    "evolve",
    "action_identity",
    "mean_N",
    "photon_pdf",
    "mandel_Q",
    "fano",
    "g2",
    "quadrature_variances",
    "fubini_metric",
    "OperatorMatrix",
    "op_radial",
    "op_angular",
    "op_monomial",
    "op_z",
    "op_zbar",
    "rescaled_boson",
    "QuadratureResult",
    "BudgetExceededError",
    "integrate_finite",
    "integrate_semi_infinite",
    "integrate_circle",
    "VerificationReport",
    "__version__",
]

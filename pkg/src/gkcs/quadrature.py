"""Deterministic adaptive quadrature built on variable transformations.

These integrators are the independent oracle for orthonormality integrals,
Bessel-measure moments, operator matrix elements and the resolution of the
identity, so they are deliberately self-contained:

* ``integrate_finite``  - tanh-sinh (double-exponential) rule on [a, b];
  node spacing clusters at the endpoints, so algebraic endpoint behavior
  (the eigenfunctions vanish like sin^{nu+1}) costs nothing.
* ``integrate_semi_infinite`` - the exp-sinh map x = exp(pi sinh t) on
  (0, inf); integrands decaying at least like exp(-c sqrt(x)) converge
  double-exponentially.
* ``integrate_circle`` - trapezoid Fourier coefficient of a periodic
  function, spectrally accurate for smooth input.

Integrands are called with one ndarray argument and must return an ndarray
(vectorized contract).  Refinement doubles the node count per level and
reuses nothing stochastic: results are bit-reproducible.  Evaluation counts
are budgeted so a divergent request fails loudly instead of hanging.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

__all__ = [
    "QuadratureResult",
    "BudgetExceededError",
    "integrate_finite",
    "integrate_semi_infinite",
    "integrate_circle",
    "DEFAULT_TOL",
    "DEFAULT_BUDGET",
    "resolve_budget",
]

DEFAULT_TOL = 1e-10
DEFAULT_BUDGET = 10**6

_MAX_LEVEL = 12


def resolve_budget(budget: int | None) -> int:
    """Explicit budget, else the GKCS_EVAL_BUDGET env override, else 10^6."""
    if budget is not None:
        return int(budget)
    env = os.environ.get("GKCS_EVAL_BUDGET")
    return int(env) if env else DEFAULT_BUDGET
_T_MAX_FINITE = 6.1
# the exp-sinh map is clamped at x = e^{+-200}: integrands obeying the
# exp(-c sqrt(x)) decay precondition are identically negligible beyond it,
# and polynomial prefactors stay representable
_T_MAX_SEMI = 4.85
_SEMI_ARG_CAP = 200.0


@dataclass(frozen=True)
class QuadratureResult:
    """Value, conservative absolute error estimate, and evaluation count.

    On success the estimate satisfies
    ``error_estimate <= max(tol * |value|, tol)``.
    """

    value: complex | float
    error_estimate: float
    evaluations: int


class BudgetExceededError(RuntimeError):
    """Raised when refinement hits the evaluation budget or level cap.

    The best estimate so far is attached as ``.best``.
    """

    def __init__(self, message: str, best: QuadratureResult):
        super().__init__(message)
        self.best = best


def _maybe_real(value: complex):
    return value.real if value.imag == 0.0 else value


def _tanh_sinh_nodes(level: int, t_max: float):
    """Abscissa parameters new at this refinement level (t >= 0 half)."""
    h = 0.5**level
    if level == 0:
        return h, np.arange(0.0, t_max, h)
    return h, np.arange(h, t_max, 2.0 * h)


def _de_refine(eval_level, tol: float, budget: int, name: str, min_level: int = 2):
    """Shared level-doubling driver for the double-exponential rules.

    ``eval_level(level) -> (partial_sum, n_eval)`` returns the h-weighted sum
    over the nodes new at that level.  Convergence is not accepted before
    ``min_level``: narrowly peaked integrands can fool the two-level
    agreement test on grids too coarse to see the peak at all.
    """
    total = 0.0 + 0.0j
    evaluations = 0
    previous = None
    for level in range(_MAX_LEVEL + 1):
        partial, used = eval_level(level)
        evaluations += used
        total = (0.5 * total if level > 0 else 0.0) + partial
        if previous is not None and level >= min_level:
            err = abs(total - previous)
            if err <= max(tol * abs(total), tol):
                return QuadratureResult(_maybe_real(total), err, evaluations)
        previous = total
        if evaluations > budget:
            best = QuadratureResult(
                _maybe_real(total),
                abs(total - previous) if previous is not total else math.inf,
                evaluations,
            )
            raise BudgetExceededError(f"{name}: evaluation budget {budget} exceeded", best)
    err = abs(total - previous)
    best = QuadratureResult(_maybe_real(total), err, evaluations)
    raise BudgetExceededError(f"{name}: no convergence within level cap", best)


def integrate_finite(f, a: float, b: float, tol: float = DEFAULT_TOL,
                     budget: int | None = None, min_level: int = 3) -> QuadratureResult:
    """Integrate f over [a, b] with the tanh-sinh rule.

    Stops once successive refinements agree to ``max(tol*|I|, tol)``; raises
    :class:`BudgetExceededError` (carrying the best estimate) otherwise.
    Endpoints are never evaluated exactly, so integrable endpoint
    singularities such as x^{-1/2} are fine.
    """
    if not (a < b):
        raise ValueError("integrate_finite requires a < b")
    half = 0.5 * (b - a)

    def eval_level(level):
        h, ts = _tanh_sinh_nodes(level, _T_MAX_FINITE)
        w = 0.5 * math.pi * np.sinh(ts)
        e2 = np.exp(-2.0 * w)
        dist = 2.0 * e2 / (1.0 + e2)          # 1 - tanh(w), endpoint offset
        weight = half * 0.5 * math.pi * np.cosh(ts) * 4.0 * e2 / (1.0 + e2) ** 2
        keep = (half * dist > 0.0) & (weight > 0.0)
        ts, dist, weight = ts[keep], dist[keep], weight[keep]
        offset = half * dist
        # drop nodes whose offset would round onto a nonzero endpoint
        # (the integrand could not resolve the distance anyway)
        eps = np.finfo(float).eps
        keep_lo = offset > 8.0 * eps * abs(a)
        keep_hi = offset > 8.0 * eps * abs(b)
        x_lo = a + offset[keep_lo]
        x_hi = b - offset[keep_hi]
        if x_lo.size == 0 and x_hi.size == 0:
            return 0.0, 0
        first_is_center = level == 0 and ts.size > 0 and ts[0] == 0.0
        vals_hi = np.asarray(f(x_hi), dtype=complex)
        partial = np.sum(vals_hi * weight[keep_hi])
        used = x_hi.size
        if first_is_center:
            # t = 0 maps both sides to the midpoint; count it once
            sel = keep_lo.copy()
            sel[0] = False
            vals_lo = np.asarray(f(a + offset[sel]), dtype=complex)
            partial += np.sum(vals_lo * weight[sel])
            used += int(np.count_nonzero(sel))
        else:
            vals_lo = np.asarray(f(x_lo), dtype=complex)
            partial += np.sum(vals_lo * weight[keep_lo])
            used += x_lo.size
        return h * partial, used

    return _de_refine(eval_level, tol, resolve_budget(budget), "integrate_finite", min_level)


def integrate_semi_infinite(f, tol: float = DEFAULT_TOL,
                            budget: int | None = None, min_level: int = 5) -> QuadratureResult:
    """Integrate f over (0, inf) via x = exp(pi sinh t).

    Requires decay at least like exp(-c sqrt(x)) at infinity (the Bessel-K
    measure guarantees this) and at worst an integrable algebraic
    singularity at 0.
    """

    def eval_level(level):
        h, ts_pos = _tanh_sinh_nodes(level, _T_MAX_SEMI)
        if level == 0:
            ts = np.concatenate([-ts_pos[:0:-1], ts_pos])
        else:
            ts = np.concatenate([-ts_pos[::-1], ts_pos])
        arg = math.pi * np.sinh(ts)
        keep = np.abs(arg) < _SEMI_ARG_CAP
        ts, arg = ts[keep], arg[keep]
        x = np.exp(arg)
        weight = math.pi * np.cosh(ts) * x
        vals = np.asarray(f(x), dtype=complex)
        return h * np.sum(vals * weight), x.size

    return _de_refine(eval_level, tol, resolve_budget(budget), "integrate_semi_infinite", min_level)


def integrate_circle(f, n: int = 0, tol: float = DEFAULT_TOL,
                     budget: int | None = None) -> QuadratureResult:
    """Fourier coefficient (1/2pi) * integral of e^{-i n theta} f(theta).

    Trapezoid rule with doubling node count; spectrally accurate for smooth
    periodic f.  The initial grid resolves the requested harmonic.
    """
    if n != int(n):
        raise ValueError("harmonic index must be an integer")
    n = int(n)
    budget = resolve_budget(budget)
    size = 16
    while size < 4 * (abs(n) + 1):
        size *= 2

    total = None
    evaluations = 0
    while size <= 2**21:
        theta = 2.0 * math.pi * np.arange(size) / size
        vals = np.asarray(f(theta), dtype=complex)
        estimate = np.sum(vals * np.exp(-1j * n * theta)) / size
        evaluations += size
        if total is not None:
            err = abs(estimate - total)
            if err <= max(tol * abs(estimate), tol):
                return QuadratureResult(_maybe_real(estimate), err, evaluations)
        if evaluations > budget:
            best = QuadratureResult(_maybe_real(estimate), math.inf, evaluations)
            raise BudgetExceededError(f"integrate_circle: budget {budget} exceeded", best)
        total = estimate
        size *= 2
    best = QuadratureResult(_maybe_real(total), math.inf, evaluations)
    raise BudgetExceededError("integrate_circle: node cap reached", best)

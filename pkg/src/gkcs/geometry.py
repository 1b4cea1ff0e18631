"""Fubini-Study geometry of the coherent-state manifold.

The map z -> |z, gamma> embeds the complex plane into the unit sphere of
the Hilbert space; the induced line element is

    d sigma^2 = W(x) dzbar dz,   x = |z|^2,

reported in exactly this dzbar dz convention (no real-coordinate factor 2).
W is the derivative of the mean occupation,

    W(x) = (x N'(x)/N(x))' = (N' + x N'')/N - x (N'/N)^2 = d<N>/dx,

assembled from exact term-wise series derivatives.  W(0) = 1/(s (2nu+3))
and W stays strictly positive: <N> is increasing in the radial label.
"""

from __future__ import annotations

from dataclasses import dataclass

from .spectrum import ModelParams
from .statistics import n_derivatives

__all__ = ["MetricSample", "fubini_metric", "metric_components", "metric_sample"]


@dataclass(frozen=True)
class MetricSample:
    x: float
    W: float


def fubini_metric(p: ModelParams, x: float) -> float:
    """Metric coefficient W(x) = d<N>/dx."""
    d = n_derivatives(p, x)
    ratio = d.N1 / d.N0
    return (d.N1 + x * d.N2) / d.N0 - x * ratio * ratio


def metric_components(p: ModelParams, x: float) -> tuple[float, float]:
    """The two pieces of the line element, per dzbar dz:

    ||d|z>||^2 = (N' + x N'')/N   and   |<z|d|z>|^2 = x (N'/N)^2.

    Their difference is W(x).
    """
    d = n_derivatives(p, x)
    return (d.N1 + x * d.N2) / d.N0, x * (d.N1 / d.N0) ** 2


def metric_sample(p: ModelParams, x: float) -> MetricSample:
    w = fubini_metric(p, x)
    if not w > 0.0:
        raise ArithmeticError(f"metric coefficient must be positive, got {w} at x={x}")
    return MetricSample(x, w)

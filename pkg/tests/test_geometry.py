"""Metric-coefficient tests: closed-form limits, the finite-difference
oracle against the mean occupation, positivity, and the two-component
decomposition."""

import numpy as np
import pytest

from gkcs.geometry import MetricSample, fubini_metric, metric_components, metric_sample
from gkcs.spectrum import ModelParams
from gkcs.statistics import mean_N

WELL = ModelParams(nu=0.0)


def test_value_at_origin():
    # W(0) = 1/(s(2nu+3)); 1/3 for the well
    assert fubini_metric(WELL, 0.0) == pytest.approx(1.0 / 3.0, abs=1e-9)
    for nu, s in ((0.5, 0.5), (2.3, 2.0)):
        p = ModelParams(nu=nu, scale_s=s)
        assert fubini_metric(p, 0.0) == pytest.approx(
            1.0 / (s * (2 * nu + 3)), abs=1e-9
        )


def test_small_label_slope():
    # relative deficit x/(M eps0 (2nu+3)(2nu+4)) = 2x/(s(2nu+3)(2nu+4)), to 1%
    for nu, s in ((0.0, 1.0), (1.0, 0.5)):
        p = ModelParams(nu=nu, scale_s=s)
        x = 1e-4
        deficit = 1.0 - fubini_metric(p, x) / fubini_metric(p, 0.0)
        want = 2.0 * x / (s * (2 * nu + 3) * (2 * nu + 4))
        assert deficit == pytest.approx(want, rel=1e-2)


def test_derivative_of_mean_occupation():
    h = 1e-5
    for x0 in (0.3, 1.7, 6.0):
        fd = (mean_N(WELL, x0 + h) - mean_N(WELL, x0 - h)) / (2.0 * h)
        assert fubini_metric(WELL, x0) == pytest.approx(fd, abs=1e-6)


def test_positivity_scan():
    for nu in (0.0, 1.0, 3.0):
        p = ModelParams(nu=nu)
        assert all(fubini_metric(p, float(x)) > 0.0 for x in np.linspace(0.0, 50.0, 51))


def test_component_decomposition():
    for x in (0.0, 0.8, 4.2):
        bundle, projection = metric_components(WELL, x)
        assert bundle - projection == pytest.approx(fubini_metric(WELL, x), abs=1e-10)
        assert bundle > 0.0 and projection >= 0.0


def test_metric_sample():
    sample = metric_sample(WELL, 2.0)
    assert isinstance(sample, MetricSample)
    assert sample.W == fubini_metric(WELL, 2.0)

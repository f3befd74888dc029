import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from piltz.errors import DegenerateFit, InsufficientPoints, PreconditionError
from piltz.fitting import MIN_POINTS, fit_exponent

XS = np.geomspace(1e3, 1e7, 64)


def test_pure_power_law():
    fit = fit_exponent(XS, 5 * XS ** 0.42)
    assert fit.theta_hat == pytest.approx(0.42, abs=1e-12)
    assert fit.intercept == pytest.approx(math.log(5), abs=1e-10)
    assert fit.rms_residual < 1e-12
    assert (fit.x_lo, fit.x_hi, fit.n_points) == (XS[0], XS[-1], 64)


@given(st.floats(-1, 2), st.floats(0.01, 100), st.sampled_from(["running_max", "all_points"]))
def test_power_laws_recovered(theta, c, method):
    fit = fit_exponent(XS, c * XS ** theta, method=method)
    if theta >= 0 or method == "all_points":
        assert fit.theta_hat == pytest.approx(theta, abs=1e-9)


def test_oscillating_power_law():
    fit = fit_exponent(XS, XS ** 0.3 * np.sin(np.log(XS)))
    assert 0.28 <= fit.theta_hat <= 0.32


def test_running_max_uses_the_window_only():
    vals = np.where(XS < 1e5, 1e9, XS ** 0.25)
    fit = fit_exponent(XS, vals, window=(1e5, 1e7))
    assert fit.theta_hat == pytest.approx(0.25, abs=1e-12)
    assert fit.x_lo >= 1e5


def test_window_fraction_keeps_the_top_end():
    fit = fit_exponent(XS, XS ** 0.3, window=0.5)
    assert fit.x_lo == pytest.approx(1e5, rel=0.2)
    assert fit.x_hi == XS[-1]


def test_running_max_is_never_below_all_points_in_slope_for_decay():
    vals = XS ** -0.2
    assert fit_exponent(XS, vals).theta_hat == pytest.approx(0, abs=1e-12)
    assert fit_exponent(XS, vals, method="all_points").theta_hat == pytest.approx(-0.2, abs=1e-12)


def test_order_of_samples_is_irrelevant():
    rng = np.random.default_rng(0)
    perm = rng.permutation(64)
    vals = XS ** 0.3 * (2 + np.cos(XS))
    assert fit_exponent(XS[perm], vals[perm]) == fit_exponent(XS, vals)


def test_too_few_points():
    assert MIN_POINTS == 8
    with pytest.raises(InsufficientPoints):
        fit_exponent(XS[:7], XS[:7])
    with pytest.raises(DegenerateFit):
        fit_exponent(XS[:7], XS[:7])
    with pytest.raises(InsufficientPoints):
        fit_exponent([], [])
    fit_exponent(XS[:8], XS[:8])


def test_all_zero_is_degenerate():
    with pytest.raises(DegenerateFit):
        fit_exponent(XS, np.zeros_like(XS))


def test_bad_inputs():
    with pytest.raises(PreconditionError):
        fit_exponent(XS, XS[:-1])
    with pytest.raises(PreconditionError):
        fit_exponent(-XS, XS)
    with pytest.raises(PreconditionError):
        fit_exponent(XS, XS, method="direct")
    with pytest.raises(PreconditionError):
        fit_exponent(XS, XS, window=0)


def test_to_dict_keys():
    d = fit_exponent(XS, XS).to_dict()
    assert set(d) == {"theta_hat", "intercept", "rms_residual", "x_lo", "x_hi", "n_points", "method"}

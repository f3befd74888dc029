"""Empirical growth exponents from log-log least squares."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import DegenerateFit, InsufficientPoints, PreconditionError

MIN_POINTS = 8
METHODS = ("running_max", "all_points")


@dataclass(frozen=True)
class FitResult:
    theta_hat: float
    intercept: float
    rms_residual: float
    x_lo: float
    x_hi: float
    n_points: int
    method: str

    def to_dict(self) -> dict:
        return asdict(self)


def _window_mask(x: np.ndarray, window) -> np.ndarray:
    if isinstance(window, (tuple, list)):
        lo, hi = window
        return (x >= lo) & (x <= hi)
    frac = float(window)
    if not 0 < frac <= 1:
        raise PreconditionError("window fraction must lie in (0, 1]")
    lx = np.log(x)
    cut = lx.max() - frac * (lx.max() - lx.min())
    return lx >= cut - 1e-12


def fit_exponent(xs, values, window=1.0, method: str = "running_max") -> FitResult:
    """Slope of log|value| against log x.

    ``window`` is either a fraction of the log range (kept at the top end) or an
    explicit ``(x_lo, x_hi)``.  With ``running_max`` each |value| is replaced by
    the largest |value| at any sample in the window with x no larger.
    """
    if method not in METHODS:
        raise PreconditionError(f"method must be one of {METHODS}")
    x = np.asarray(xs, dtype=np.float64)
    y = np.abs(np.asarray(values, dtype=np.float64))
    if x.shape != y.shape:
        raise PreconditionError("xs and values differ in length")
    if x.size and (x <= 0).any():
        raise PreconditionError("sample points must be positive")
    order = np.argsort(x, kind="stable")
    x, y = x[order], y[order]
    if x.size == 0:
        raise InsufficientPoints("no samples")
    mask = _window_mask(x, window)
    x, y = x[mask], y[mask]
    if method == "running_max" and y.size:
        y = np.maximum.accumulate(y)
    if x.size < MIN_POINTS:
        raise InsufficientPoints(f"{x.size} samples in the fit window; need {MIN_POINTS}")
    keep = y > 0
    if keep.sum() < MIN_POINTS:
        raise DegenerateFit(f"only {int(keep.sum())} nonzero samples in the fit window")
    lx, ly = np.log(x[keep]), np.log(y[keep])
    if np.ptp(lx) == 0:
        raise DegenerateFit("all samples share one abscissa")
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    return FitResult(float(slope), float(intercept), float(np.sqrt(np.mean(resid ** 2))),
                     float(x[keep][0]), float(x[keep][-1]), int(keep.sum()), method)

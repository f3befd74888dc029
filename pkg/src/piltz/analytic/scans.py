"""Growth scans on vertical lines and the Atkinson-type vertical integral."""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass

from ..errors import EmptyGrid, PreconditionError, QuadratureFailure, Unsupported
from ..fields import FieldDescriptor
from ..fitting import FitResult, fit_exponent
from .gamma import loggamma
from .zeta import zeta_K_value

CSV_COLUMNS = ("t", "re", "im", "modulus", "theory_exponent")


@dataclass(frozen=True)
class ScanRow:
    t: float
    value: complex
    theory_exponent: float

    @property
    def modulus(self) -> float:
        return abs(self.value)


@dataclass(frozen=True)
class ConvexityReport:
    label: str
    sigma: float
    rows: tuple
    theory_exponent: float
    fit: FitResult | None

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([repr(r.t), repr(r.value.real), repr(r.value.imag), repr(r.modulus),
                        repr(r.theory_exponent)])
        return buf.getvalue()


def convexity_scan(K: FieldDescriptor, sigma: float, t_grid, window=1.0,
                   method="running_max") -> ConvexityReport:
    """|zeta_K(sigma + it)| over ``t_grid`` next to the convexity exponent n(1 - sigma)/2."""
    t_grid = [float(t) for t in t_grid]
    if not t_grid:
        raise EmptyGrid("t grid is empty")
    if K.kind not in ("rational", "quadratic"):
        raise Unsupported(f"{K.label}: zeta_K is not evaluable inside the critical strip")
    if not 0 <= sigma <= 1:
        raise PreconditionError("sigma must lie in [0, 1]")
    if any(t < 2 for t in t_grid) or any(b <= a for a, b in zip(t_grid, t_grid[1:])):
        raise PreconditionError("t grid must be increasing with every t >= 2")
    theory = K.degree * (1 - sigma) / 2
    rows = tuple(ScanRow(t, complex(zeta_K_value(K, complex(sigma, t))), theory) for t in t_grid)
    fit = None
    if len(rows) >= 8:
        fit = fit_exponent([r.t for r in rows], [r.modulus for r in rows], window, method)
    return ConvexityReport(K.label, float(sigma), rows, theory, fit)


# ---------------------------------------------------------------------------
# Atkinson integral
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AtkinsonResult:
    value: complex
    prediction: float
    residual_budget: float
    evaluations: int

    @property
    def residual(self) -> float:
        return abs(self.value - self.prediction)


def _integrand(A: float, y: float, tau: str):
    logy = math.log(y)

    def f(t: float) -> complex:
        s = complex(A, t)
        lg = loggamma(s) - s * logy
        up = cmath.exp(lg + 0.5j * math.pi * s)
        dn = cmath.exp(lg - 0.5j * math.pi * s)
        v = 0.5 * (up + dn) if tau == "cos" else (up - dn) / 2j
        return v / (2 * math.pi)

    return f


def atkinson_budget(y: float, A: float, B: float) -> float:
    """The error expression of the lemma with every implied constant equal to 1."""
    if y <= B:
        inner = B ** 0.5 if y == B else min(1 / math.log(B / y), B ** 0.5)
        return y ** -0.5 * inner + y ** -A * B ** (A - 0.5) + y ** -0.5
    inner = min(1 / math.log(y / B), B ** 0.5)
    return y ** -A * (B ** (A - 0.5) * inner + A ** (A - 0.5))


def _simpson(f, a, b, fa, fm, fb):
    return (b - a) / 6 * (fa + 4 * fm + fb)


def _adaptive(f, a, b, tol, max_depth, counter):
    m = 0.5 * (a + b)
    fa, fm, fb = f(a), f(m), f(b)
    counter[0] += 3
    whole = _simpson(f, a, b, fa, fm, fb)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    total = 0j
    while stack:
        a, b, fa, fm, fb, whole, tol, depth = stack.pop()
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        counter[0] += 2
        left = _simpson(f, a, m, fa, flm, fm)
        right = _simpson(f, m, b, fm, frm, fb)
        err = abs(left + right - whole)
        if err <= 15 * tol:
            total += left + right + (left + right - whole) / 15
        elif depth >= max_depth:
            raise QuadratureFailure(f"step tolerance not reached on [{a:.6g}, {b:.6g}]")
        else:
            stack.append((a, m, fa, flm, fm, left, tol / 2, depth + 1))
            stack.append((m, b, fm, frm, fb, right, tol / 2, depth + 1))
    return total


def atkinson_integral(y: float, A: float, B: float, tau: str = "cos", tol: float = 1e-9,
                      max_depth: int = 30) -> AtkinsonResult:
    """(1/2 pi i) int_{A-iB}^{A+iB} Gamma(s) tau(pi s / 2) y^{-s} ds by adaptive Simpson.

    The vertical segment is first cut into panels shorter than a quarter of the
    fastest local oscillation period (the phase derivative is log(|t|/y) up to
    O(1)), then each panel is refined adaptively.
    """
    if tau not in ("cos", "sin"):
        raise PreconditionError("tau must be 'cos' or 'sin'")
    if not (y > 0 and A > 1 and B >= A):
        raise PreconditionError("need y > 0 and 1 < A <= B")
    f = _integrand(A, y, tau)
    rate = abs(math.log(y)) + math.log1p(B) + 1
    panels = max(16, math.ceil(2 * B / min(1.0, math.pi / (4 * rate))))
    h = 2 * B / panels
    counter = [0]
    parts = []
    for i in range(panels):
        a = -B + i * h
        parts.append(_adaptive(f, a, a + h, tol * h / (2 * B), max_depth, counter))
    value = complex(math.fsum(p.real for p in parts), math.fsum(p.imag for p in parts))
    trig = math.cos if tau == "cos" else math.sin
    prediction = trig(y) if y <= B else 0.0
    return AtkinsonResult(value, prediction, atkinson_budget(y, A, B), counter[0])

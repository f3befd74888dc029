"""Brute-force bilinear exponential sums and ratio reports against known bounds."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import CoefficientOutOfRange, NoAdmissibleWindow, RangeViolation, TableTooShort
from ..fields import FieldDescriptor
from ..sieve import CoefficientTable

EPS = 0.01
_COEF_SLACK = 1e-12


def _phases_mod1(phase: np.ndarray) -> np.ndarray:
    return phase - np.floor(phase)


def _fsum_complex(z: np.ndarray) -> complex:
    z = np.ravel(z)
    return complex(math.fsum(z.real.tolist()), math.fsum(z.imag.tolist()))


@dataclass(frozen=True)
class BilinearInstance:
    X: float
    alpha: float
    beta: float
    M: int
    M1: int
    N: int
    N1: int
    a: np.ndarray = field(repr=False)  # a[m - M - 1] for M < m <= M1
    b: np.ndarray = field(repr=False)


def _check_ranges(M, M1, N, N1, a, b):
    if not (1 <= M < M1 <= 2 * M):
        raise RangeViolation(f"need 1 <= M < M1 <= 2M, got M={M}, M1={M1}")
    if not (1 <= N < N1 <= 2 * N):
        raise RangeViolation(f"need 1 <= N < N1 <= 2N, got N={N}, N1={N1}")
    if len(a) != M1 - M or len(b) != N1 - N:
        raise RangeViolation("coefficient arrays do not match their ranges")


def bilinear_expsum(X, alpha, beta, a, b, M, M1, N, N1) -> complex:
    """sum_{M<m<=M1} a_m sum_{N<n<=N1} b_n e(X (m/M)^alpha (n/N)^beta).

    Phases are reduced mod 1 before exponentiation; the double sum is
    accumulated with exactly rounded (fsum) real and imaginary parts.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    _check_ranges(M, M1, N, N1, a, b)
    m = np.arange(M + 1, M1 + 1, dtype=np.float64)
    n = np.arange(N + 1, N1 + 1, dtype=np.float64)
    phase = X * np.exp(alpha * np.log(m / M))[:, None] * np.exp(beta * np.log(n / N))[None, :]
    terms = a[:, None] * b[None, :] * np.exp(2j * np.pi * _phases_mod1(phase))
    return _fsum_complex(terms)


def expsum_of(inst: BilinearInstance) -> complex:
    return bilinear_expsum(inst.X, inst.alpha, inst.beta, inst.a, inst.b,
                           inst.M, inst.M1, inst.N, inst.N1)


# ---------------------------------------------------------------------------
# the sum attached to ideal counting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdealSumResult:
    value: float
    raw_max: float
    window: tuple  # (M, M1, N, N1) attaining the maximum
    windows_checked: int


def _dyadic(limit: int):
    v = 1
    while v <= limit:
        yield v
        v *= 2


def prop_ideal_sum(K: FieldDescriptor, m: int, x: float, S: int, F_table: CoefficientTable,
                   c: float = 2.0) -> IdealSumResult:
    """S^{-(mn+1)/(2mn)} max |sum_{M<l<=M1} F(l) sum_{N<k<=N1} e(mn (x l k / D^m)^{1/(mn)})|.

    M and N run over powers of two not exceeding S with S/c <= MN <= c S, and
    M1, N1 over every integer in (M, 2M], (N, 2N].  For each (M, N) all
    partial sums come from one two-dimensional cumulative sum.
    """
    S = int(S)
    if S < 1:
        raise RangeViolation("S must be >= 1")
    if F_table.X < 2 * S:
        raise TableTooShort(f"table length {F_table.X} < 2S = {2 * S}")
    k = m * K.degree
    D = float(K.discriminant_abs) ** m
    F = np.asarray(F_table.values[: 2 * S + 1], dtype=np.float64)
    best, arg, checked = 0.0, None, 0
    for M in _dyadic(S):
        for N in _dyadic(S):
            if not (S / c <= M * N <= c * S):
                continue
            checked += 1
            l = np.arange(M + 1, 2 * M + 1, dtype=np.float64)
            kk = np.arange(N + 1, 2 * N + 1, dtype=np.float64)
            phase = k * np.exp(np.log(x * l[:, None] * kk[None, :] / D) / k)
            W = F[M + 1: 2 * M + 1, None] * np.exp(2j * np.pi * _phases_mod1(phase))
            P = np.abs(np.cumsum(np.cumsum(W, axis=0), axis=1))
            idx = np.unravel_index(int(np.argmax(P)), P.shape)
            val = float(P[idx])
            if arg is None or val > best:
                best, arg = val, (M, M + 1 + int(idx[0]), N, N + 1 + int(idx[1]))
    if arg is None:
        raise NoAdmissibleWindow(f"no dyadic (M, N) with {S / c} <= MN <= {c * S}")
    scale = S ** (-(k + 1) / (2 * k))
    return IdealSumResult(scale * best, best, arg, checked)


# ---------------------------------------------------------------------------
# ratio report
# ---------------------------------------------------------------------------

def _pow(base: float, e: float) -> float:
    """base^e, with 0^negative read as +inf."""
    if base == 0:
        return math.inf if e < 0 else (0.0 if e > 0 else 1.0)
    return base ** e


def wu_rhs(X, M, N) -> float:
    M, N = float(M), float(N)
    return (_pow(X * M ** 3 * N ** 4, 1 / 5) + _pow(X ** 4 * M ** 10 * N ** 11, 1 / 16)
            + _pow(X * M ** 7 * N ** 10, 1 / 11) + M * N ** 0.5
            + _pow(X, -1 / 22) * (M ** 14 * N ** 23) ** (1 / 22) + _pow(X, -0.5) * M * N)


def bordelles_rhs(X, M, N) -> float:
    M, N = float(M), float(N)
    return (_pow(X * M ** 5 * N ** 7, 1 / 8) + N * _pow(X, -1 / 6) * M ** (11 / 12)
            + _pow(X, -1 / 8) * (M ** 21 * N ** 23) ** (1 / 24) + M ** 0.75 * N
            + _pow(X, -0.25) * M * N)


REPORT_COLUMNS = ("index", "X", "M", "M1", "N", "N1", "abs_S", "wu_lhs", "wu_rhs", "wu_ratio",
                  "bordelles_lhs", "bordelles_rhs", "bordelles_ratio", "x_le_m", "nondegenerate")


def wu_bordelles_report(instances) -> list[dict]:
    """Measured |S| next to both lemmas' right-hand sides (implied constants 1)."""
    rows = []
    for i, inst in enumerate(instances):
        a, b = np.asarray(inst.a), np.asarray(inst.b)
        if (np.abs(a) > 1 + _COEF_SLACK).any() or (np.abs(b) > 1 + _COEF_SLACK).any():
            raise CoefficientOutOfRange(f"instance {i}: coefficients must satisfy |a|, |b| <= 1")
        S = abs(expsum_of(inst))
        X, M, N = float(inst.X), inst.M, inst.N
        L = math.log(X * M * N + 2)
        wl, wr = S / L ** 2, wu_rhs(X, M, N)
        bl, br = S * (M * N) ** -EPS, bordelles_rhs(X, M, N)
        al, be = inst.alpha, inst.beta
        rows.append({
            "index": i, "X": X, "M": M, "M1": inst.M1, "N": N, "N1": inst.N1, "abs_S": S,
            "wu_lhs": wl, "wu_rhs": wr, "wu_ratio": wl / wr,
            "bordelles_lhs": bl, "bordelles_rhs": br, "bordelles_ratio": bl / br,
            "x_le_m": X <= M,
            "nondegenerate": al * be * (al - 1) * (be - 1) != 0,
        })
    return rows


def report_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for r in rows:
        w.writerow([repr(r[c]) if isinstance(r[c], float) else r[c] for c in REPORT_COLUMNS])
    return buf.getvalue()

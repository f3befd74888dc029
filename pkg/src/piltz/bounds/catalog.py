"""Known exponents for the error term of I_K^m, as exact rationals.

Each entry records theta in O(x^theta (log x)^log_power) (or x^{theta + eps}
when ``epsilon`` is set), with the (n, m, beta) range where it is proved.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction

from ..errors import PreconditionError

SOURCES = ("huxley", "muller", "bordelles", "lao", "nowak", "cub", "lindelof", "omega",
           "dirichlet_m2", "cubi_uniform")

# entries that are not unconditional upper bounds never compete for "best"
NOT_UPPER = {"lindelof": "conditional on the Lindelof hypothesis", "omega": "lower bound"}


@dataclass(frozen=True)
class ExponentBound:
    source: str
    theta: Fraction
    log_power: Fraction = Fraction(0)
    epsilon: bool = True
    kind: str = "upper"  # upper | conditional | lower
    best: bool = False

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "theta_num": self.theta.numerator,
            "theta_den": self.theta.denominator,
            "theta": float(self.theta),
            "log_power": float(self.log_power),
            "epsilon": self.epsilon,
            "kind": self.kind,
            "valid": True,
            "best": self.best,
        }


F = Fraction


def theta_cub(n: int, m: int) -> Fraction:
    return F(2 * m * n - 3, 2 * m * n + 1)


def theta_nowak(n: int, m: int) -> Fraction:
    k = m * n
    if 3 <= k <= 6:
        return 1 - F(2, k) + F(8, k * (5 * k + 2))
    return 1 - F(2, k) + F(3, 2 * k * k)


def theta_omega(n: int, m: int) -> Fraction:
    return F(1, 2) - F(1, 2 * m * n)


def cubi_beta_limit(n: int) -> Fraction:
    """Upper end (exclusive) of the admissible beta range for the uniform bound."""
    return F(8, 2 * n + 5)


def _as_fraction(beta) -> Fraction:
    return beta if isinstance(beta, Fraction) else Fraction(beta).limit_denominator(10 ** 9)


def exponent_catalog(n: int, m: int = 1, beta=None) -> list[ExponentBound]:
    """Every catalogued bound valid at (n, m), plus the uniform one if ``beta`` is given.

    The smallest unconditional upper bound is flagged ``best``.
    """
    if n < 1 or m < 1:
        raise PreconditionError("n and m must be >= 1")
    k = m * n
    out = []
    if m == 1:
        if n == 2:
            out.append(ExponentBound("huxley", F(131, 416), F(18627, 8320), epsilon=False))
        elif n == 3:
            out.append(ExponentBound("muller", F(43, 96)))
        elif n == 4:
            out.append(ExponentBound("bordelles", F(41, 72)))
        elif 5 <= n <= 10:
            out.append(ExponentBound("bordelles", 1 - F(4, 2 * n + 1)))
        elif n >= 11:
            out.append(ExponentBound("lao", 1 - F(3, n + 6)))
    if n == 1 and m == 2:
        out.append(ExponentBound("dirichlet_m2", F(517, 1648)))
    if n >= 2 and k >= 3:
        if k <= 6:
            lp = m - 1 - F(10 * (m - 2), 5 * n + 2)
        else:
            lp = m - 1 - F(2 * (m - 2), k)
        out.append(ExponentBound("nowak", theta_nowak(n, m), lp, epsilon=False))
    if k >= 4:
        out.append(ExponentBound("cub", theta_cub(n, m)))
    if beta is not None and m == 1 and n >= 4:
        b = _as_fraction(beta)
        if 0 <= b < cubi_beta_limit(n):
            out.append(ExponentBound("cubi_uniform", F(2 * n - 3, 2 * n + 1) + F(2, 2 * n + 1) * b))
    out.append(ExponentBound("lindelof", F(1, 2), kind="conditional"))
    if n >= 2:
        out.append(ExponentBound("omega", theta_omega(n, m), theta_omega(n, m), epsilon=False,
                                 kind="lower"))
    uppers = [b for b in out if b.kind == "upper"]
    if uppers:
        best = min(uppers, key=lambda b: (b.theta, b.log_power))
        out = [replace(b, best=True) if b is best else b for b in out]
    return out


def best_bound(n: int, m: int = 1, beta=None) -> ExponentBound | None:
    for b in exponent_catalog(n, m, beta):
        if b.best:
            return b
    return None


def rprime_exponents(n: int, r: int, ell: int, beta=0) -> list[ExponentBound]:
    """Exponents for E_ell^r: the uniform corollary (n >= 4) and the Lindelof-conditional one."""
    if r < 1 or ell < 1:
        raise PreconditionError("r and ell must be positive")
    b = _as_fraction(beta)
    out = []
    if n >= 4 and 0 <= b < cubi_beta_limit(n):
        if r * ell == 2:
            th = F(4 * n - 2, r * (2 * n + 1)) + F(4, 2 * n + 1) * b
        else:
            th = ell - F(4, 2 * n + 1) + F(2 * n + 5 - (2 * n + 1) * ell, 2 * (2 * n + 1)) * b
        out.append(ExponentBound("cubi_uniform", th, best=True))
    th = F(3, 2 * r) if r * ell == 2 else ell - F(1, 2)
    out.append(ExponentBound("lindelof", th, kind="conditional"))
    return out


def catalog_json(bounds) -> str:
    return json.dumps([b.to_dict() for b in bounds], indent=2, sort_keys=True)

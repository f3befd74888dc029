"""Laurent expansions at s = 1 and the residue main term.

Series are stored as ``c[-P], ..., c[T]`` with P the pole order and T the
truncation (the highest known coefficient).  Products keep only the
coefficients both factors determine.

The constants come from regularised sums
    S_k(chi) = sum_n chi(n) (-log n)^k / n,
evaluated by Euler-Maclaurin over complete residue classes, so that
zeta(s) = 1/(s-1) + sum_k S_k(1)/k! (s-1)^k and L(1+u, chi) = sum_k S_k(chi)/k! u^k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from ..errors import InsufficientTruncation, NonConvergence, PreconditionError, Unsupported
from ..fields import FieldDescriptor
from .zeta import bernoulli_even, character_table

EM_ORDER = 10
MAX_TERMS = 8
_SELF_TOL = 1e-10


@dataclass(frozen=True)
class LaurentSeries:
    pole_order: int
    coeffs: tuple  # c[-pole_order], ..., c[truncation]

    def __post_init__(self):
        if self.pole_order < 0:
            raise PreconditionError("pole order must be >= 0")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    @classmethod
    def regular(cls, coeffs) -> "LaurentSeries":
        return cls(0, tuple(coeffs))

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - self.pole_order - 1

    def coeff(self, k: int) -> float:
        if k < -self.pole_order:
            return 0.0
        if k > self.truncation:
            raise InsufficientTruncation(f"coefficient {k} beyond truncation {self.truncation}")
        return self.coeffs[k + self.pole_order]

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        P = max(self.pole_order, other.pole_order)
        T = min(self.truncation, other.truncation)
        return LaurentSeries(P, tuple(self.coeff(k) + other.coeff(k) for k in range(-P, T + 1)))

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        a, b = self.pole_order, other.pole_order
        T = min(self.truncation - b, other.truncation - a)
        out = []
        for k in range(-(a + b), T + 1):
            out.append(math.fsum(self.coeff(i) * other.coeff(k - i)
                                 for i in range(-a, k + b + 1)))
        return LaurentSeries(a + b, tuple(out))

    def __pow__(self, m: int) -> "LaurentSeries":
        if not isinstance(m, int) or m < 1:
            raise PreconditionError("only positive integer powers are supported")
        out = self
        for _ in range(m - 1):
            out = out * self
        return out


# ---------------------------------------------------------------------------
# regularised log moments
# ---------------------------------------------------------------------------

def _deriv_polys(k: int, order: int):
    """P_r with g^{(r)}(u) = (-1)^k u^{-1-r} P_r(log u) for g(u) = (-log u)^k / u."""
    polys = [[0] * k + [1]]
    for r in range(order):
        p = polys[-1]
        nxt = [-(1 + r) * c for c in p]
        for i in range(1, len(p)):
            nxt[i - 1] += i * p[i]
        polys.append(nxt)
    return polys


def _moment(k: int, chi: tuple, J: int) -> float:
    q = len(chi)
    sign = -1.0 if k % 2 else 1.0
    head = [chi[(n - 1) % q] * sign * math.log(n) ** k / n for n in range(1, J * q + 1)]
    polys = _deriv_polys(k, 2 * EM_ORDER)
    weights = [float(b) / math.factorial(2 * i)
               for i, b in enumerate(bernoulli_even(EM_ORDER), start=1)]
    tail = []
    for a in range(1, q + 1):
        c = chi[a - 1]
        if not c:
            continue
        u = a + J * q
        L = math.log(u)
        terms = [-sign * L ** (k + 1) / (k + 1) / q, 0.5 * sign * L ** k / u]
        for i, w in enumerate(weights, start=1):
            r = 2 * i - 1
            P = sum(pc * L ** j for j, pc in enumerate(polys[r]))
            terms.append(-w * q ** r * sign * P * u ** (-1 - r))
        tail.append(c * math.fsum(terms))
    return math.fsum(head) + math.fsum(tail)


@lru_cache(maxsize=None)
def log_moment(k: int, D: int = 1, J: int = 64) -> float:
    """Regularised sum over n of chi_D(n) (-log n)^k / n; D = 1 is the trivial character.

    Evaluated at two cutoffs; NonConvergence if they disagree by more than 1e-10.
    """
    chi = (1,) if D == 1 else character_table(D)
    v1 = _moment(k, chi, J)
    v2 = _moment(k, chi, 2 * J)
    if abs(v1 - v2) > _SELF_TOL * max(1.0, abs(v2)):
        raise NonConvergence(f"log moment k={k}, D={D}: cutoffs disagree by {abs(v1 - v2):.3g}")
    return v2


def stieltjes(k: int) -> float:
    """Stieltjes constant gamma_k."""
    return (-1) ** k * log_moment(k)


def zeta_laurent(T: int) -> LaurentSeries:
    """zeta(s) about s = 1 through (s-1)^{T-1}."""
    return LaurentSeries(1, (1.0,) + tuple(log_moment(k) / math.factorial(k) for k in range(T)))


def L_taylor(D: int, T: int) -> LaurentSeries:
    """L(s, chi_D) about s = 1 through (s-1)^T."""
    return LaurentSeries.regular(log_moment(k, D) / math.factorial(k) for k in range(T + 1))


def laurent_of_zeta_K(K: FieldDescriptor, T: int) -> LaurentSeries:
    """zeta_K(s) about s = 1: the polar coefficient and T further ones.

    Quadratic and rational fields support T <= 8.  For other fields only the
    polar coefficient (T = 0) is available, from the supplied invariants.
    """
    if T < 0:
        raise PreconditionError("T must be >= 0")
    if K.kind == "rational":
        if T > MAX_TERMS:
            raise Unsupported(f"T = {T} exceeds {MAX_TERMS}")
        return zeta_laurent(T)
    if K.kind == "quadratic":
        if T > MAX_TERMS:
            raise Unsupported(f"T = {T} exceeds {MAX_TERMS}")
        return zeta_laurent(T) * L_taylor(K.d, T)
    if T > 0:
        raise Unsupported(f"{K.label}: higher Laurent coefficients need a factorisation of zeta_K")
    if K.invariants is None:
        raise Unsupported(f"{K.label}: no invariants supplied")
    return LaurentSeries(1, (K.residue_from_invariants(),))


# ---------------------------------------------------------------------------
# residue main term
# ---------------------------------------------------------------------------

def main_term_coefficients(series: LaurentSeries, m: int) -> list:
    """b_j with Res_{s=1} zeta_K(s)^m x^s / s = x sum_j b_j (log x)^j."""
    Pm = series ** m
    if Pm.truncation < -1:
        raise InsufficientTruncation(
            f"zeta_K^{m} known only through order {Pm.truncation}; need -1")
    p = Pm.pole_order
    out = []
    for j in range(p):
        terms = []
        for i in range(-p, -j):
            l = -1 - j - i
            terms.append(Pm.coeff(i) * (-1) ** l)
        out.append(math.fsum(terms) / math.factorial(j))
    return out


def residue_main_term(series: LaurentSeries, m: int, x: float) -> float:
    b = main_term_coefficients(series, m)
    L = math.log(x)
    return x * math.fsum(bj * L ** j for j, bj in enumerate(b))


def main_term(K: FieldDescriptor, m: int, x: float) -> float:
    """The residue main term for zeta_K^m, using the fewest Laurent terms needed."""
    return residue_main_term(laurent_of_zeta_K(K, m - 1), m, x)

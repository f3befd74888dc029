"""Values of zeta, Dirichlet L-functions and Dedekind zeta functions.

Quadratic fields are continued to the whole plane through
zeta_K(s) = zeta(s) L(s, chi_d) and the Hurwitz decomposition of L; any other
field is evaluated only for Re s > 1, from its Euler product with an explicit
tail bound.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from dataclasses import dataclass

import numpy as np

from ..errors import NearSingularity, NonConvergence, PoleAt1, PreconditionError, Unsupported
from ..fields import FieldDescriptor, kronecker_symbol
from .gamma import _logsin_pi, gamma, loggamma

EM_TERMS = 12


@dataclass(frozen=True)
class ComplexPoint:
    """s = sigma + i t."""

    sigma: float
    t: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and math.isfinite(self.t)):
            raise PreconditionError("ComplexPoint components must be finite")

    def __complex__(self) -> complex:
        return complex(self.sigma, self.t)


@lru_cache(maxsize=None)
def bernoulli_even(count: int) -> tuple:
    """(B_2, B_4, ..., B_{2 count}) as exact fractions."""
    B = [Fraction(1)]
    for m in range(1, 2 * count + 1):
        B.append(-sum(math.comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return tuple(B[2 * j] for j in range(1, count + 1))


@lru_cache(maxsize=None)
def _em_weights(count: int) -> tuple:
    return tuple(float(b / math.factorial(2 * j)) for j, b in enumerate(bernoulli_even(count), start=1))


def hurwitz_zeta(s, a: float, return_error=False):
    """zeta(s, a) for complex s != 1 and real a > 0 by Euler-Maclaurin summation."""
    s = complex(s)
    if s == 1:
        raise PoleAt1("Hurwitz zeta has a pole at s = 1")
    J = EM_TERMS
    N = int(abs(s) + 2 * J + 10)
    k = np.arange(N, dtype=np.float64) + a
    terms = np.exp(-s * np.log(k))
    head = terms.sum()
    u = N + a
    logu = math.log(u)
    us = cmath.exp(-s * logu)
    total = head + u * us / (s - 1) + 0.5 * us
    # (s)_{2j-1} u^{-s-2j+1}
    poch = s
    power = us / u
    last = 0.0
    for j, w in enumerate(_em_weights(J), start=1):
        term = w * poch * power
        total += term
        last = abs(term)
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        power /= u * u
    if return_error:
        rounding = 4 * np.finfo(np.float64).eps * (np.abs(terms).sum() * (1 + abs(s) * math.log(u)))
        return total, last + rounding
    return total


REFLECT_BELOW = -1.0  # Re s below this: reflect, the direct sum loses digits to cancellation


def riemann_zeta(s):
    s = complex(s)
    if s.real >= REFLECT_BELOW:
        return hurwitz_zeta(s, 1.0)
    if s.imag == 0 and s.real % 2 == 0:
        return 0j  # trivial zero
    # zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1 - s) zeta(1 - s)
    log_chi = s * math.log(2) + (s - 1) * math.log(math.pi) + _logsin_pi(s / 2) + loggamma(1 - s)
    return cmath.exp(log_chi) * hurwitz_zeta(1 - s, 1.0)


def zeta_alternating(s, terms: int = 64) -> complex:
    """zeta(s) for Re s > 0 from the alternating (eta) series, Borwein's weights."""
    s = complex(s)
    if s.real <= 0:
        raise Unsupported("alternating series route needs Re s > 0")
    if s == 1:
        raise PoleAt1("zeta has a pole at s = 1")
    n = terms
    d = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += Fraction(math.factorial(n + i - 1) * 4 ** i, math.factorial(n - i) * math.factorial(2 * i))
        d.append(n * acc)
    dn = d[n]
    total = 0j
    for k in range(n):
        total += (-1) ** k * float(d[k] - dn) / cmath.exp(s * math.log(k + 1))
    return -total / (float(dn) * (1 - cmath.exp((1 - s) * math.log(2))))


@lru_cache(maxsize=None)
def character_table(D: int) -> tuple:
    """(chi(1), ..., chi(q)) for the Kronecker character of discriminant D."""
    q = abs(D)
    return tuple(kronecker_symbol(D, a) for a in range(1, q + 1))


def dirichlet_L(s, D: int) -> complex:
    """L(s, chi_D) = q^{-s} sum_a chi(a) zeta(s, a/q), any s != 1."""
    s = complex(s)
    q = abs(D)
    chi = character_table(D)
    if s == 1:
        raise PoleAt1("use the Laurent data for L(1, chi)")
    if s.real < REFLECT_BELOW and q > 1:
        return _L_reflected(s, D)
    total = 0j
    for a, c in enumerate(chi, start=1):
        if c:
            total += c * hurwitz_zeta(s, a / q)
    return total * cmath.exp(-s * math.log(q))


def _L_reflected(s: complex, D: int) -> complex:
    # real primitive chi, root number 1:
    # L(s) = (q/pi)^(1/2 - s) Gamma((1 - s + a)/2) / Gamma((s + a)/2) L(1 - s)
    q, a = abs(D), (1 if D < 0 else 0)
    z = (s + a) / 2
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        return 0j  # trivial zero
    # 1/Gamma(z) = Gamma(1 - z) sin(pi z) / pi
    log_factor = ((0.5 - s) * math.log(q / math.pi) + loggamma((1 - s + a) / 2)
                  + loggamma(1 - z) + _logsin_pi(z) - math.log(math.pi))
    return cmath.exp(log_factor) * dirichlet_L(1 - s, D)


# ---------------------------------------------------------------------------
# Dedekind zeta
# ---------------------------------------------------------------------------

_PI_BOUND = 1.25506  # pi(x) < 1.25506 x / log x for x > 1


def euler_tail_bound(n: int, sigma: float, P: int) -> float:
    """Bound on |log zeta_K(s) - log prod_{p <= P}| for a degree-n field, Re s = sigma > 1."""
    prime_part = _PI_BOUND * sigma * P ** (1 - sigma) / ((sigma - 1) * math.log(P))
    power_part = 2 * P ** (1 - 2 * sigma) / (2 * sigma - 1)
    return n * (prime_part + power_part)


def zeta_K_euler(K: FieldDescriptor, s, P: int):
    """Truncated Euler product over p <= P and a bound on its relative error."""
    from ..sieve import local_degree_counts

    s = complex(s)
    if s.real <= 1:
        raise Unsupported("Euler product needs Re s > 1")
    primes, counts = local_degree_counts(K, P)
    logp = np.log(primes.astype(np.float64))
    total = 0j
    for d in range(1, counts.shape[1]):
        c = counts[:, d]
        mask = c > 0
        if mask.any():
            z = np.exp(-s * d * logp[mask])
            total -= (c[mask] * np.log1p(-z)).sum()
    bound = math.expm1(euler_tail_bound(K.degree, s.real, P))
    return cmath.exp(total), bound


def zeta_K_dirichlet(K: FieldDescriptor, s, N: int):
    """Partial Dirichlet series sum_{l <= N} d_K(l) l^{-s} and a tail bound.

    The tail is dominated coefficientwise by that of zeta(s)^n, whose value is
    known exactly.
    """
    from ..fields import rational_field
    from ..sieve import piltz_table, sieve_dk

    s = complex(s)
    if s.real <= 1:
        raise Unsupported("Dirichlet series needs Re s > 1")
    table = sieve_dk(K, N)
    l = np.arange(1, N + 1, dtype=np.float64)
    weights = np.exp(-s * np.log(l))
    value = (table.values[1:] * weights).sum()
    dn = piltz_table(rational_field(), K.degree, N)
    sigma = s.real
    majorant = riemann_zeta(sigma).real ** K.degree
    tail = majorant - float((dn.values[1:] * np.exp(-sigma * np.log(l))).sum())
    return value, max(tail, 0.0)


EULER_LIMITS = (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6)


def zeta_K_value(K: FieldDescriptor, s, rtol: float = 1e-10, return_error=False):
    """zeta_K(s).

    Rational and quadratic fields: any s != 1.  Other fields: Re s > 1 only,
    with the Euler-product limit chosen so the rigorous relative error bound is
    below ``rtol``; NonConvergence if no admissible limit exists.
    """
    s = complex(s)
    if s == 1:
        raise PoleAt1("zeta_K has a pole at s = 1")
    if K.kind == "rational":
        v, err = hurwitz_zeta(s, 1.0, return_error=True)
        return (v, err / max(abs(v), 1e-300)) if return_error else v
    if K.kind == "quadratic":
        v = riemann_zeta(s) * dirichlet_L(s, K.d)
        return (v, 1e-13) if return_error else v
    if s.real <= 1:
        raise Unsupported(f"{K.label}: no continuation to Re s <= 1 for degree {K.degree}")
    for P in EULER_LIMITS:
        if math.expm1(euler_tail_bound(K.degree, s.real, P)) < rtol:
            v, err = zeta_K_euler(K, s, P)
            return (v, err) if return_error else v
    best = math.expm1(euler_tail_bound(K.degree, s.real, EULER_LIMITS[-1]))
    raise NonConvergence(f"Euler product tail bound {best:.3g} exceeds rtol {rtol:.3g}")


# ---------------------------------------------------------------------------
# functional equation
# ---------------------------------------------------------------------------

def _fe_singular(s: complex) -> float:
    """Distance from s to the points where either side is singular."""
    dist = abs(s - 1)
    dist = min(dist, abs(s))  # zeta_K(1 - s) pole
    if s.real < 0.5:
        k = round(s.real)
        if k <= 0:
            dist = min(dist, abs(s - k))
    return dist


def fe_sides(K: FieldDescriptor, s):
    """(zeta_K(1 - s), gamma-factor * zeta_K(s)) for a rational or quadratic field."""
    s = complex(s)
    if K.kind not in ("rational", "quadratic"):
        raise Unsupported("functional-equation check needs an everywhere-evaluable zeta_K")
    if _fe_singular(s) < 0.1:
        raise NearSingularity(f"s = {s} is within 0.1 of a singular point")
    n, r1, r2, D = K.degree, K.r1, K.r2, K.discriminant_abs
    factor = (cmath.exp((s - 0.5) * math.log(D)) * cmath.exp(n * (1 - s) * math.log(2))
              * cmath.exp(-n * s * math.log(math.pi)) * gamma(s) ** n
              * cmath.cos(math.pi * s / 2) ** (r1 + r2) * cmath.sin(math.pi * s / 2) ** r2)
    return zeta_K_value(K, 1 - s), factor * zeta_K_value(K, s)


def functional_equation_residual(K: FieldDescriptor, s) -> float:
    lhs, rhs = fe_sides(K, s)
    return abs(lhs - rhs)

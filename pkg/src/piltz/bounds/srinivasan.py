"""Choosing the balancing parameter q in sum A q^u + sum B q^-v."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import EmptyTermList, InvalidRange, PreconditionError

_INVPHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class BalanceResult:
    q: float
    achieved: float
    bound: float
    Q1: float
    Q2: float


def _objective(growing, shrinking):
    def phi(y: float) -> float:
        return math.fsum([A * math.exp(u * y) for A, u in growing]
                         + [B * math.exp(-v * y) for B, v in shrinking])
    return phi


def srinivasan_balance(growing, shrinking, Q1: float, Q2: float, tol: float = 1e-14) -> BalanceResult:
    """Minimise Phi(q) over [Q1, Q2] and evaluate the lemma's bound with constant N + P.

    Phi is convex in log q, so golden-section search on y = log q finds the
    global minimum.  Q1 below 1 is raised to 1.
    """
    growing = [(float(A), float(u)) for A, u in growing]
    shrinking = [(float(B), float(v)) for B, v in shrinking]
    if not growing or not shrinking:
        raise EmptyTermList("both term lists must be non-empty")
    if any(A < 0 or u < 0 for A, u in growing) or any(B <= 0 or v <= 0 for B, v in shrinking):
        raise PreconditionError("need A, u >= 0 and B, v > 0")
    if not Q2 >= Q1:
        raise InvalidRange(f"Q2 = {Q2} < Q1 = {Q1}")
    Q1 = max(float(Q1), 1.0)
    if Q2 < Q1:
        raise InvalidRange(f"Q2 = {Q2} < 1")
    phi = _objective(growing, shrinking)
    a, b = math.log(Q1), math.log(Q2)
    c, d = b - _INVPHI * (b - a), a + _INVPHI * (b - a)
    fc, fd = phi(c), phi(d)
    while b - a > tol * max(1.0, abs(a), abs(b)):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = phi(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = phi(d)
    candidates = [(phi(y), y) for y in (0.5 * (a + b), math.log(Q1), math.log(Q2))]
    val, y = min(candidates)
    cross = math.fsum((A ** v * B ** u) ** (1 / (u + v)) for A, u in growing for B, v in shrinking)
    edge = math.fsum([A * Q1 ** u for A, u in growing] + [B * Q2 ** -v for B, v in shrinking])
    bound = (len(growing) + len(shrinking)) * (cross + edge)
    return BalanceResult(math.exp(y), val, bound, Q1, float(Q2))

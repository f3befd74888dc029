"""Permutation groups and the constants kappa, lambda of the Omega-result.

Permutations are tuples of images of 1..N (1-based): ``p[i - 1]`` is the image
of i.  Groups are small (at most 10^4 elements) and handled by enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..errors import NotAGroup, NotASubgroup, PreconditionError

MAX_ORDER = 10 ** 4


def compose(p: tuple, q: tuple) -> tuple:
    """p after q."""
    return tuple(p[i - 1] for i in q)


def inverse(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, img in enumerate(p, start=1):
        out[img - 1] = i
    return tuple(out)


def identity(N: int) -> tuple:
    return tuple(range(1, N + 1))


def _check_perm(p, N):
    if len(p) != N or sorted(p) != list(range(1, N + 1)):
        raise NotAGroup(f"{p} is not a permutation of 1..{N}")


def is_group(elements) -> bool:
    S = set(elements)
    if not S:
        return False
    N = len(next(iter(S)))
    if identity(N) not in S:
        return False
    return all(compose(a, b) in S for a in S for b in S) and all(inverse(a) in S for a in S)


@dataclass(frozen=True)
class GaloisData:
    G: tuple
    H: tuple

    def __post_init__(self):
        G = tuple(sorted(set(tuple(p) for p in self.G)))
        H = tuple(sorted(set(tuple(p) for p in self.H)))
        if not G:
            raise NotAGroup("empty group")
        if len(G) > MAX_ORDER:
            raise PreconditionError(f"|G| = {len(G)} exceeds {MAX_ORDER}")
        N = len(G[0])
        for p in G + H:
            _check_perm(p, N)
        if not is_group(G):
            raise NotAGroup("G is not closed under composition and inverses")
        if not set(H) <= set(G) or not is_group(H):
            raise NotASubgroup("H is not a subgroup of G")
        if len(G) % len(H):
            raise NotASubgroup("|H| does not divide |G|")
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "H", H)

    @property
    def n(self) -> int:
        return len(self.G) // len(self.H)

    def relabel(self, pi: tuple) -> "GaloisData":
        """The same abstract data with the permuted points renamed by ``pi``."""
        pinv = inverse(pi)
        conj = lambda p: compose(compose(pi, p), pinv)  # noqa: E731
        return GaloisData(tuple(conj(p) for p in self.G), tuple(conj(p) for p in self.H))


def generate_group(generators) -> tuple:
    """Closure of a set of permutations under composition."""
    gens = [tuple(g) for g in generators]
    if not gens:
        raise NotAGroup("no generators")
    N = len(gens[0])
    seen = {identity(N)}
    frontier = [identity(N)]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = compose(g, a)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
                    if len(seen) > MAX_ORDER:
                        raise PreconditionError(f"group order exceeds {MAX_ORDER}")
        frontier = nxt
    return tuple(sorted(seen))


def symmetric_group(N: int) -> tuple:
    return tuple(itertools.permutations(range(1, N + 1)))


def cyclic_group(N: int) -> tuple:
    return generate_group([tuple(list(range(2, N + 1)) + [1])])


def stabilizer(G, point: int) -> tuple:
    return tuple(p for p in G if p[point - 1] == point)


def field_galois_data(G) -> GaloisData:
    """Galois data of a degree-n field whose closure has group G acting on n roots."""
    return GaloisData(tuple(G), stabilizer(G, len(G[0])))


@dataclass(frozen=True)
class OmegaConstants:
    delta: tuple  # delta_1 .. delta_n as Fractions
    R: int
    kappa: float
    lam: float


def omega_constants(data: GaloisData, m: int = 1) -> OmegaConstants:
    n = data.n
    if n < 2:
        raise PreconditionError("need [G:H] >= 2")
    if m < 1:
        raise PreconditionError("m must be >= 1")
    Hset = set(data.H)
    inv = {s: inverse(s) for s in data.G}
    counts = [0] * (n + 1)
    for tau in data.G:
        c = sum(1 for s in data.G if compose(compose(inv[s], tau), s) in Hset)
        counts[c // len(data.H)] += 1
    order = len(data.G)
    delta = tuple(Fraction(counts[v], order) for v in range(1, n + 1))
    R = sum(1 for d in delta if d > 0)
    k = m * n
    kappa = (k + 1) / (2 * k) * (sum(float(d) * v ** (2 * k / (k + 1))
                                     for v, d in enumerate(delta, start=1)) - 1)
    lam = (k + 1) / (4 * k) * R + (k - 1) / (2 * k)
    return OmegaConstants(delta, R, kappa, lam)

"""Exact Dirichlet-series coefficient tables and ideal counts.

Tables are int64 arrays indexed 1..X (index 0 holds 0).  Every build checks for
64-bit overflow instead of wrapping; tuple counts are accumulated with Python
integers.
"""

from __future__ import annotations

import hashlib
import math
import os
import struct
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import kernels
from .errors import (
    CacheMismatch,
    LengthMismatch,
    OverflowRisk,
    PreconditionError,
    RangeExceeded,
    Unsupported,
)
from .fields import FieldDescriptor, rational_field, splitting_type

SEGMENT = 1 << 20
KINDS = ("piltz", "mobius_norm", "f_kernel", "generic")


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    label: str
    kind: str
    m: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown table kind {self.kind!r}")
        self.values.setflags(write=False)

    @property
    def X(self) -> int:
        return self.values.shape[0] - 1

    def __getitem__(self, l):
        return self.values[l]

    @cached_property
    def prefix(self) -> np.ndarray:
        """prefix[n] = sum_{l <= n} value[l]."""
        total = float(np.abs(self.values).astype(np.float64).sum())
        if total >= 2.0 ** 62:
            raise OverflowRisk(f"{self.label}: partial sums exceed the 64-bit range")
        out = np.cumsum(self.values)
        out.setflags(write=False)
        return out


# ---------------------------------------------------------------------------
# local data
# ---------------------------------------------------------------------------

_PRIMES = np.zeros(0, np.int64)
_PRIME_LIMIT = 1


def primes_up_to(P: int) -> np.ndarray:
    global _PRIMES, _PRIME_LIMIT
    if P > _PRIME_LIMIT:
        _PRIMES = kernels.prime_sieve(int(P))
        _PRIME_LIMIT = int(P)
    return _PRIMES[: np.searchsorted(_PRIMES, P, side="right")]


_COUNTS_CACHE: dict = {}


def local_degree_counts(K: FieldDescriptor, P: int):
    """Primes p <= P and counts[i, d] = #{primes of O_K above p_i with residue degree d}."""
    primes = primes_up_to(P)
    cached = _COUNTS_CACHE.get(K)
    if cached is not None and cached[0] >= P:
        return primes, cached[1][: primes.shape[0]]
    n = K.degree
    if K.kind == "rational":
        counts = np.zeros((primes.shape[0], 2), np.int32)
        counts[:, 1] = 1
    elif K.kind == "quadratic":
        chi = kernels.quadratic_characters(K.d, primes)
        counts = np.zeros((primes.shape[0], 3), np.int32)
        counts[:, 1] = np.where(chi == 1, 2, np.where(chi == 0, 1, 0))
        counts[:, 2] = (chi == -1).astype(np.int32)
    else:
        f = np.array(K.defining_polynomial(), np.int64)
        ramified = (K.discriminant_abs % primes) == 0
        counts = np.zeros((primes.shape[0], n + 1), np.int32)
        good = ~ramified
        if good.any():
            counts[good] = kernels.degree_counts(f, primes[good])
        for i in np.nonzero(ramified)[0]:
            for _, deg in splitting_type(K, int(primes[i])).factors:
                counts[i, deg] += 1
    _COUNTS_CACHE[K] = (P, counts)
    return primes, counts


def _local_tables(K: FieldDescriptor, X: int, inverse: bool):
    primes, counts = local_degree_counts(K, X)
    r = math.isqrt(X)
    n_small = int(np.searchsorted(primes, r, side="right"))
    kmax = max(1, int(math.log2(X)) + 1) if X > 1 else 1
    small_coeffs = np.zeros((n_small, kmax + 1), np.int64)
    for i in range(n_small):
        small_coeffs[i] = kernels.local_series(counts[i], kmax, inverse)
    c1 = counts[:, 1].astype(np.int8)
    c1_lookup = np.zeros(X + 1, np.int8)
    c1_lookup[primes] = c1 if inverse else -c1
    return primes[:n_small].copy(), small_coeffs, c1_lookup


def _multiplicative(K: FieldDescriptor, X: int, inverse: bool, threads=None) -> np.ndarray:
    if X < 1:
        raise PreconditionError("table length must be >= 1")
    kernels.set_threads(threads)
    small_primes, small_coeffs, c1_lookup = _local_tables(K, X, inverse)
    values, flags = kernels.multiplicative_sieve(X, small_primes, small_coeffs, c1_lookup, SEGMENT)
    if flags.any():
        raise OverflowRisk(f"{K.label}: coefficient exceeds the 64-bit range")
    return values


# ---------------------------------------------------------------------------
# public builders
# ---------------------------------------------------------------------------

def sieve_dk(K: FieldDescriptor, X: int, threads=None) -> CoefficientTable:
    """Number of integral ideals of each norm l <= X."""
    return CoefficientTable(K.label, "piltz", 1, _multiplicative(K, int(X), True, threads))


def sieve_mobius(K: FieldDescriptor, X: int, threads=None) -> CoefficientTable:
    """M_K(q): sum of the ideal Moebius function over ideals of norm q."""
    return CoefficientTable(K.label, "mobius_norm", 1, _multiplicative(K, int(X), False, threads))


def dirichlet_convolve(A: CoefficientTable, B: CoefficientTable, kind="generic", m=1,
                       label=None) -> CoefficientTable:
    if A.X != B.X:
        raise LengthMismatch(f"table lengths differ: {A.X} vs {B.X}")
    values, overflow = kernels.dirichlet_convolve(np.asarray(A.values), np.asarray(B.values))
    if overflow:
        raise OverflowRisk("convolution exceeds the 64-bit range")
    return CoefficientTable(label or A.label, kind, m, values)


def delta_table(X: int, label="delta") -> CoefficientTable:
    v = np.zeros(X + 1, np.int64)
    if X >= 1:
        v[1] = 1
    return CoefficientTable(label, "generic", 1, v)


def piltz_table(K: FieldDescriptor, m: int, X: int, threads=None, base=None) -> CoefficientTable:
    """d_K^m on 1..X by m - 1 convolutions of the ideal-count table."""
    if m < 1:
        raise PreconditionError("m must be >= 1")
    dk = base if base is not None else cached_table(K, "piltz", 1, X, threads=threads)
    out = dk
    for j in range(2, m + 1):
        out = dirichlet_convolve(out, dk, kind="piltz", m=j, label=K.label)
    return out


def f_kernel_table(K: FieldDescriptor, m: int, X: int, threads=None) -> CoefficientTable:
    """F_K = d_K^m * mu with the rational Moebius function."""
    dkm = piltz_table(K, m, X, threads=threads)
    mu = sieve_mobius(rational_field(), X, threads=threads)
    return dirichlet_convolve(dkm, mu, kind="f_kernel", m=m, label=K.label)


# ---------------------------------------------------------------------------
# counts
# ---------------------------------------------------------------------------

def _floor(x) -> int:
    return math.floor(x)


def count_ideals(table: CoefficientTable, x) -> int:
    """I_K^m(x): exact partial sum of the table up to x."""
    n = _floor(x)
    if n < 1:
        return 0
    if n > table.X:
        raise RangeExceeded(f"x = {x} beyond table length {table.X}")
    return int(table.prefix[n])


def divisor_summatory(x) -> int:
    """sum_{n <= x} tau(n) by the hyperbola method, O(sqrt x)."""
    n = _floor(x)
    if n < 1:
        return 0
    r = math.isqrt(n)
    return 2 * sum(n // k for k in range(1, r + 1)) - r * r


def count_ideals_streamed(K: FieldDescriptor, m: int, x) -> int:
    """I_K^m(x) without a table; rational field with m <= 2 only."""
    if K.kind != "rational" or m not in (1, 2):
        raise Unsupported("streamed counts exist for K = Q and m in {1, 2} only")
    if m == 1:
        return max(_floor(x), 0)
    return divisor_summatory(x)


def count_rprime(K: FieldDescriptor, r: int, ell: int, x, dk: CoefficientTable,
                 mob: CoefficientTable) -> int:
    """V_ell^r(x, K) = sum_{q^r <= x} M_K(q) I_K(x / q^r)^ell, exactly."""
    if r < 1 or ell < 1:
        raise PreconditionError("r and ell must be positive")
    X = _floor(x)
    if X < 1:
        return 0
    Q = _iroot(X, r)
    if dk.X < X or mob.X < Q:
        raise RangeExceeded(f"tables too short for x = {x} (need {X} and {Q})")
    q = np.arange(1, Q + 1, dtype=np.int64)
    v = X // q ** r
    mcum = np.concatenate(([0], np.cumsum(mob.values[1:Q + 1])))
    # blocks of q sharing the same floor(X / q^r)
    starts = np.concatenate(([0], np.nonzero(np.diff(v))[0] + 1))
    ends = np.concatenate((starts[1:], [Q]))
    prefix = dk.prefix
    total = 0
    for s, e in zip(starts.tolist(), ends.tolist()):
        weight = int(mcum[e] - mcum[s])
        if weight:
            total += weight * int(prefix[v[s]]) ** ell
    return total


def _iroot(X: int, r: int) -> int:
    q = int(round(X ** (1.0 / r)))
    while q ** r > X:
        q -= 1
    while (q + 1) ** r <= X:
        q += 1
    return q


# ---------------------------------------------------------------------------
# disk cache
# ---------------------------------------------------------------------------

_MAGIC = b"PLTZ"
_HEADER = struct.Struct("<4sHQBIQ")
_KIND_CODES = {"piltz": 1, "mobius_norm": 2, "f_kernel": 3, "generic": 4}


def _label_hash(label: str) -> int:
    return int.from_bytes(hashlib.sha256(label.encode()).digest()[:8], "little")


def save_table(table: CoefficientTable, path) -> None:
    header = _HEADER.pack(_MAGIC, 1, _label_hash(table.label), _KIND_CODES[table.kind],
                          table.m, table.X)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.asarray(table.values, dtype="<i8").tobytes())


def load_table(path, label: str, kind: str, m: int, X: int) -> CoefficientTable:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise CacheMismatch(f"{path}: truncated header")
    magic, version, lh, code, mm, xx = _HEADER.unpack_from(raw)
    expected = (_MAGIC, 1, _label_hash(label), _KIND_CODES[kind], m, X)
    if (magic, version, lh, code, mm, xx) != expected:
        raise CacheMismatch(f"{path}: header does not match {label}/{kind}/{m}/{X}")
    body = raw[_HEADER.size:]
    if len(body) != 8 * (X + 1):
        raise CacheMismatch(f"{path}: body length mismatch")
    values = np.frombuffer(body, dtype="<i8").astype(np.int64)
    return CoefficientTable(label, kind, m, values)


def cache_dir():
    d = os.environ.get("PILTZ_CACHE_DIR")
    return Path(d) if d else None


def cached_table(K: FieldDescriptor, kind: str, m: int, X: int, threads=None) -> CoefficientTable:
    """Build a table, going through $PILTZ_CACHE_DIR when it is set."""
    builders = {
        "piltz": lambda: sieve_dk(K, X, threads) if m == 1 else piltz_table(K, m, X, threads),
        "mobius_norm": lambda: sieve_mobius(K, X, threads),
        "f_kernel": lambda: f_kernel_table(K, m, X, threads),
    }
    d = cache_dir()
    if d is None:
        return builders[kind]()
    name = f"{_label_hash(K.label):016x}_{kind}_{m}_{X}.bin"
    path = d / name
    if path.exists():
        return load_table(path, K.label, kind, m, X)
    table = builders[kind]()
    d.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    save_table(table, tmp)
    tmp.replace(path)
    return table

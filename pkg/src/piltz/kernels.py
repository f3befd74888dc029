"""Compiled inner loops (numba) for sieving, convolution and bulk splitting.

Every kernel is deterministic.  The parallel sieve writes disjoint segments,
so its output does not depend on the thread count.
"""

from __future__ import annotations

import numba
import numpy as np
from numba import njit, prange

numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

INT64_MAX = np.iinfo(np.int64).max
_SAFE = 3037000499  # floor(sqrt(2**63 - 1))


@njit(cache=True)
def _powmod(a, e, p):
    r = 1
    a %= p
    while e > 0:
        if e & 1:
            r = (r * a) % p
        a = (a * a) % p
        e >>= 1
    return r


@njit(cache=True)
def quadratic_characters(d, primes):
    """Kronecker symbol (d / p) for every prime in ``primes``."""
    out = np.zeros(primes.shape[0], np.int8)
    for i in range(primes.shape[0]):
        p = primes[i]
        if p == 2:
            r = d % 8
            if r == 1 or r == 7:
                out[i] = 1
            elif r == 3 or r == 5:
                out[i] = -1
            else:
                out[i] = 0
        else:
            a = d % p
            if a == 0:
                out[i] = 0
            else:
                v = _powmod(a, (p - 1) // 2, p)
                out[i] = 1 if v == 1 else -1
    return out


@njit(cache=True)
def _mulmod_poly(a, b, f, n, p, prod, out):
    # out <- a * b mod (f, p); a, b degree < n, f monic of degree n; prod is scratch
    for i in range(2 * n - 1):
        prod[i] = 0
    big = p > 1000000000
    for i in range(n):
        ai = a[i]
        if ai != 0:
            for j in range(n):
                prod[i + j] += ai * b[j]
                if big:
                    prod[i + j] %= p
    for i in range(2 * n - 1):
        prod[i] %= p
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k]
        if c != 0:
            for i in range(n):
                prod[k - n + i] = (prod[k - n + i] - c * f[i]) % p
    for i in range(n):
        out[i] = prod[i]


@njit(cache=True)
def _gcd_degree(a, b, p):
    """Degree of gcd(a, b) over F_p; a, b are coefficient arrays (low first)."""
    x = a.copy()
    y = b.copy()
    dx = x.shape[0] - 1
    while dx >= 0 and x[dx] == 0:
        dx -= 1
    dy = y.shape[0] - 1
    while dy >= 0 and y[dy] == 0:
        dy -= 1
    while dy >= 0:
        # x <- x mod y
        inv = _powmod(y[dy], p - 2, p)
        while dx >= dy:
            c = (x[dx] * inv) % p
            shift = dx - dy
            for i in range(dy + 1):
                x[shift + i] = (x[shift + i] - c * y[i]) % p
            while dx >= 0 and x[dx] == 0:
                dx -= 1
        x, y = y, x
        dx, dy = dy, dx
    return dx


@njit(cache=True)
def degree_counts(f, primes):
    """Residue-degree counts of a square-free monic f modulo each prime.

    ``f`` is monic, lowest coefficient first, degree n >= 2.  Returns an array
    ``counts[i, d]`` = number of irreducible factors of degree d mod primes[i].
    Callers must exclude primes dividing disc(f).
    """
    n = f.shape[0] - 1
    out = np.zeros((primes.shape[0], n + 1), np.int32)
    fp = np.empty(n + 1, np.int64)
    base = np.zeros(n, np.int64)
    h1 = np.zeros(n, np.int64)
    h = np.zeros(n, np.int64)
    g = np.zeros(n, np.int64)
    acc = np.zeros(n, np.int64)
    tmp = np.zeros(n, np.int64)
    prod = np.zeros(2 * n - 1, np.int64)
    roots = np.zeros(n + 1, np.int64)  # roots[k] = deg gcd(f, x^(p^k) - x)
    for idx in range(primes.shape[0]):
        p = primes[idx]
        for i in range(n + 1):
            fp[i] = f[i] % p
        # h1 = x^p mod f
        base[:] = 0
        base[1] = 1
        h1[:] = 0
        h1[0] = 1
        e = p
        while e > 0:
            if e & 1:
                _mulmod_poly(h1, base, fp, n, p, prod, tmp)
                h1[:] = tmp
            e >>= 1
            if e > 0:
                _mulmod_poly(base, base, fp, n, p, prod, tmp)
                base[:] = tmp
        h[:] = h1
        for k in range(1, n + 1):
            if k > 1:
                # h <- h(h1) mod f  (Frobenius composition, Horner)
                acc[:] = 0
                for j in range(n - 1, -1, -1):
                    _mulmod_poly(acc, h1, fp, n, p, prod, tmp)
                    acc[:] = tmp
                    acc[0] = (acc[0] + h[j]) % p
                h[:] = acc
            g[:] = h
            g[1] = (g[1] - 1) % p
            roots[k] = _gcd_degree(fp, g, p) if _any_nonzero(g) else n
        # roots[k] = sum_{d | k} d * N_d
        for k in range(1, n + 1):
            s = roots[k]
            for d in range(1, k):
                if k % d == 0:
                    s -= d * out[idx, d]
            out[idx, k] = s // k
    return out


@njit(cache=True)
def _any_nonzero(a):
    for i in range(a.shape[0]):
        if a[i] != 0:
            return True
    return False


@njit(cache=True)
def local_series(counts_row, kmax, inverse):
    """Power series in t of prod_d (1 - t^d)^(-c_d) (inverse) or (1 - t^d)^(c_d)."""
    a = np.zeros(kmax + 1, np.int64)
    a[0] = 1
    for d in range(1, counts_row.shape[0]):
        for _ in range(counts_row[d]):
            if inverse:
                for k in range(d, kmax + 1):
                    a[k] += a[k - d]
            else:
                for k in range(kmax, d - 1, -1):
                    a[k] -= a[k - d]
    return a


@njit(parallel=True, cache=True)
def multiplicative_sieve(X, small_primes, small_coeffs, c1_lookup, seg):
    """Table of a multiplicative function on 1..X from its local coefficients.

    small_primes: all primes p with p * p <= X; small_coeffs[i, k] is the value
    at small_primes[i] ** k.  c1_lookup[q] is the value at a prime q.  The range
    is processed in independent segments of ``seg`` entries.
    """
    out = np.zeros(X + 1, np.int64)
    nseg = (X + seg - 1) // seg
    flags = np.zeros(nseg, np.int8)
    for s in prange(nseg):
        lo = 1 + s * seg
        hi = min(X + 1, lo + seg)
        m = hi - lo
        rem = np.empty(m, np.int64)
        val = np.ones(m, np.int64)
        for i in range(m):
            rem[i] = lo + i
        for pi in range(small_primes.shape[0]):
            p = small_primes[pi]
            start = ((lo + p - 1) // p) * p
            for nn in range(start, hi, p):
                i = nn - lo
                k = 0
                r = rem[i]
                while r % p == 0:
                    r //= p
                    k += 1
                rem[i] = r
                c = small_coeffs[pi, k]
                v = val[i]
                if c != 0 and v != 0 and (abs(v) > _SAFE or abs(c) > _SAFE):
                    if abs(v) > INT64_MAX // abs(c):
                        flags[s] = 1
                val[i] = v * c
        for i in range(m):
            if rem[i] > 1:
                val[i] = val[i] * c1_lookup[rem[i]]
            out[lo + i] = val[i]
    return out, flags


@njit(cache=True)
def dirichlet_convolve(a, b):
    """out[l] = sum_{jk = l} a[j] b[k] on 1..X (index 0 unused); overflow flag."""
    X = a.shape[0] - 1
    out = np.zeros(X + 1, np.int64)
    overflow = False
    for j in range(1, X + 1):
        aj = a[j]
        if aj == 0:
            continue
        big_a = abs(aj) > _SAFE
        for k in range(1, X // j + 1):
            bk = b[k]
            if bk == 0:
                continue
            if big_a or abs(bk) > _SAFE:
                if abs(aj) > INT64_MAX // abs(bk):
                    overflow = True
            prod = aj * bk
            old = out[j * k]
            new = old + prod
            if (prod > 0 and new < old) or (prod < 0 and new > old):
                overflow = True
            out[j * k] = new
    return out, overflow


@njit(cache=True)
def prime_sieve(X):
    flags = np.ones(X + 1, np.bool_)
    flags[:2] = False
    i = 2
    while i * i <= X:
        if flags[i]:
            for j in range(i * i, X + 1, i):
                flags[j] = False
        i += 1
    return np.nonzero(flags)[0].astype(np.int64)


def set_threads(n: int | None) -> int:
    """Clamp and apply a thread count for parallel kernels; returns it."""
    limit = numba.config.NUMBA_NUM_THREADS
    n = limit if n is None else max(1, min(int(n), limit))
    numba.set_num_threads(n)
    return n

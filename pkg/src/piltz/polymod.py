"""Dense univariate polynomials over Z and F_p.

Polynomials are lists of ints, lowest degree first; ``[]`` is the zero
polynomial.  Everything here is exact.
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a) -> int:
    return len(a) - 1


# ---------------------------------------------------------------------------
# over Z / Q
# ---------------------------------------------------------------------------

def derivative(a):
    return trim([i * c for i, c in enumerate(a)][1:])


def bareiss_det(rows) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(f, g) -> int:
    """Res(f, g) as the Sylvester determinant."""
    f, g = trim(f), trim(g)
    m, n = degree(f), degree(g)
    if m < 0 or n < 0:
        return 0
    size = m + n
    if size == 0:
        return 1
    rows = []
    fh, gh = f[::-1], g[::-1]
    for i in range(n):
        rows.append([0] * i + fh + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gh + [0] * (size - n - 1 - i))
    return bareiss_det(rows)


def discriminant(f) -> int:
    f = trim(f)
    n = degree(f)
    res = resultant(f, derivative(f))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, r = divmod(sign * res, f[-1])
    assert r == 0
    return q


def _q_rem(a, b):
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a = trim(a)
    return a


def _sign_at_inf(p, positive: bool) -> int:
    lead = p[-1]
    s = 1 if lead > 0 else -1
    if not positive and degree(p) % 2 == 1:
        s = -s
    return s


def count_real_roots(f) -> int:
    """Number of distinct real roots via a Sturm sequence."""
    f = trim(f)
    seq = [[Fraction(c) for c in f], [Fraction(c) for c in derivative(f)]]
    while True:
        r = _q_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])

    def changes(positive):
        signs = [_sign_at_inf(p, positive) for p in seq if p]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    return changes(False) - changes(True)


def rational_roots(f):
    """Rational roots of an integer polynomial (monic case: integer roots)."""
    f = trim(f)
    roots = set()
    if f[0] == 0:
        roots.add(0)
        k = 0
        while f[k] == 0:
            k += 1
        f = f[k:]
    lead, const = abs(f[-1]), abs(f[0])

    def divisors(v):
        out = []
        i = 1
        while i * i <= v:
            if v % i == 0:
                out.extend({i, v // i})
            i += 1
        return out

    for p in divisors(const):
        for q in divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                val = sum(Fraction(c) * cand ** i for i, c in enumerate(f))
                if val == 0:
                    roots.add(cand)
    return sorted(roots)


# ---------------------------------------------------------------------------
# over F_p
# ---------------------------------------------------------------------------

def fp(a, p):
    return trim([c % p for c in a])


def fp_add(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def fp_sub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = degree(b)
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = (a[-1] * inv) % p
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a = trim(a)
    return trim(q), a


def fp_rem(a, b, p):
    return fp_divmod(a, b, p)[1]


def fp_monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [(c * inv) % p for c in a]


def fp_gcd(a, b, p):
    a, b = fp(a, p), fp(b, p)
    while b:
        a, b = b, fp_rem(a, b, p)
    return fp_monic(a, p)


def fp_powmod(base, e: int, mod, p):
    result = [1]
    base = fp_rem(base, mod, p)
    while e:
        if e & 1:
            result = fp_rem(fp_mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = fp_rem(fp_mul(base, base, p), mod, p)
    return result


def fp_derivative(a, p):
    return fp(derivative(a), p)


def _pth_root(a, p):
    return trim([a[i] for i in range(0, len(a), p)])


def fp_squarefree(f, p):
    """Square-free decomposition of monic f: list of (factor, multiplicity)."""
    f = fp_monic(fp(f, p), p)
    out = []
    c = fp_gcd(f, fp_derivative(f, p), p)
    w = fp_divmod(f, c, p)[0]
    i = 1
    while degree(w) > 0:
        y = fp_gcd(w, c, p)
        fac = fp_divmod(w, y, p)[0]
        if degree(fac) > 0:
            out.append((fac, i))
        w = y
        c = fp_divmod(c, y, p)[0]
        i += 1
    if degree(c) > 0:
        for g, e in fp_squarefree(_pth_root(c, p), p):
            out.append((g, e * p))
    return out


def fp_ddf(f, p):
    """Distinct-degree factorization of a monic square-free f.

    Returns [(g_d, d)] where g_d is the product of all degree-d irreducible
    factors.
    """
    out = []
    h = [0, 1]
    rest = f
    d = 0
    while degree(rest) >= 2 * (d + 1):
        d += 1
        h = fp_powmod(h, p, rest, p)
        g = fp_gcd(rest, fp_sub(h, [0, 1], p), p)
        if degree(g) > 0:
            out.append((g, d))
            rest = fp_divmod(rest, g, p)[0]
            h = fp_rem(h, rest, p)
    if degree(rest) > 0:
        out.append((rest, degree(rest)))
    return out


def fp_edf(g, d, p, rng: random.Random):
    """Split a product of degree-d irreducibles (Cantor-Zassenhaus)."""
    n = degree(g)
    if n == d:
        return [g]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = trim(a)
        if degree(a) < 1:
            continue
        if p == 2:
            t = a
            acc = a
            for _ in range(d - 1):
                t = fp_rem(fp_mul(t, t, p), g, p)
                acc = fp_add(acc, t, p)
            b = acc
        else:
            b = fp_sub(fp_powmod(a, (p ** d - 1) // 2, g, p), [1], p)
        u = fp_gcd(g, b, p)
        if 0 < degree(u) < n:
            v = fp_divmod(g, u, p)[0]
            return fp_edf(u, d, p, rng) + fp_edf(v, d, p, rng)


def _seeded_rng(f, p) -> random.Random:
    digest = hashlib.sha256(repr((p, tuple(f))).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "little"))


def fp_factor(f, p):
    """Full factorization of monic f over F_p: sorted list of (g, e)."""
    f = fp_monic(fp(f, p), p)
    rng = _seeded_rng(f, p)
    out = []
    for sqf, e in fp_squarefree(f, p):
        for g, d in fp_ddf(sqf, p):
            for h in fp_edf(g, d, p, rng):
                out.append((h, e))
    out.sort(key=lambda t: (degree(t[0]), t[0], t[1]))
    return out


def fp_degree_pattern(f, p):
    """Sorted residue degrees of a square-free reduction (no splitting)."""
    f = fp_monic(fp(f, p), p)
    pattern = []
    for g, d in fp_ddf(f, p):
        pattern.extend([d] * (degree(g) // d))
    return sorted(pattern)

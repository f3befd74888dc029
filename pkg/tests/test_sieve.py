import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import ideal_counts, mobius, piltz_Q, quadratic_counts, rprime_bruteforce
from piltz import sieve
from piltz.errors import CacheMismatch, LengthMismatch, OverflowRisk, RangeExceeded, Unsupported
from piltz.fields import get_field, rational_field

QUADRATIC = ["Q(i)", "Q(sqrt-3)", "Q(sqrt2)", "Q(sqrt5)"]
HIGHER = ["cubic23", "quartic283", "quintic2869"]


def test_gaussian_examples(fields):
    t = sieve.sieve_dk(fields["Q(i)"], 100)
    assert [int(t[l]) for l in (1, 2, 3, 5, 10)] == [1, 1, 0, 2, 2]
    assert sieve.count_ideals(t, 25) == 20
    m = sieve.sieve_mobius(fields["Q(i)"], 100)
    assert (int(m[2]), int(m[25])) == (-1, 1)


@pytest.mark.parametrize("label", QUADRATIC)
def test_quadratic_table_matches_character_sum(fields, label):
    K = fields[label]
    assert np.array_equal(sieve.sieve_dk(K, 3000).values, quadratic_counts(K.d, 3000))


@pytest.mark.parametrize("label", HIGHER)
def test_higher_degree_table_matches_enumeration(fields, label):
    K = fields[label]
    assert np.array_equal(sieve.sieve_dk(K, 600).values, ideal_counts(K, 600))


def test_rational_tables():
    Q = rational_field()
    assert np.array_equal(sieve.sieve_dk(Q, 500).values[1:], np.ones(500, np.int64))
    mu = sieve.sieve_mobius(Q, 500).values
    assert [int(mu[n]) for n in range(1, 501)] == [mobius(n) for n in range(1, 501)]
    for m in (2, 3, 4):
        assert np.array_equal(sieve.piltz_table(Q, m, 400).values, piltz_Q(m, 400))


@pytest.mark.parametrize("label", ["Q(i)", "Q(sqrt5)"] + HIGHER)
def test_mobius_inverts_counts(fields, label):
    K = fields[label]
    X = 2000
    conv = sieve.dirichlet_convolve(sieve.sieve_dk(K, X), sieve.sieve_mobius(K, X))
    assert np.array_equal(conv.values, sieve.delta_table(X).values)


@given(st.sampled_from(QUADRATIC + HIGHER), st.integers(1, 5000), st.integers(1, 5000))
def test_table_is_multiplicative(label, a, b):
    if math.gcd(a, b) != 1 or a * b > 5000:
        return
    t = _table(label)
    assert t[a * b] == t[a] * t[b]


_TABLES = {}


def _table(label):
    if label not in _TABLES:
        _TABLES[label] = sieve.sieve_dk(get_field(label), 5000)
    return _TABLES[label]


@pytest.mark.parametrize("label", ["Q", "Q(i)", "cubic23"])
@pytest.mark.parametrize("r,ell", [(1, 2), (2, 1), (2, 2), (1, 3), (3, 1)])
def test_rprime_matches_bruteforce_small(fields, label, r, ell):
    K = fields[label]
    x = 12 if ell == 3 else 25
    dk, mob = sieve.sieve_dk(K, x), sieve.sieve_mobius(K, x)
    assert sieve.count_rprime(K, r, ell, x, dk, mob) == rprime_bruteforce(K, r, ell, x)


def test_rprime_rational_examples():
    Q = rational_field()
    dk, mob = sieve.sieve_dk(Q, 10), sieve.sieve_mobius(Q, 10)
    assert sieve.count_rprime(Q, 1, 2, 10, dk, mob) == 63
    assert sieve.count_rprime(Q, 2, 1, 10, dk, mob) == 7


@given(st.floats(0, 1e12, allow_nan=False))
def test_streamed_rational_count_is_floor(x):
    assert sieve.count_ideals_streamed(rational_field(), 1, x) == math.floor(x)


@given(st.integers(1, 3000))
def test_divisor_summatory(n):
    assert sieve.divisor_summatory(n) == sum(n // k for k in range(1, n + 1))


def test_streamed_unsupported(fields):
    with pytest.raises(Unsupported):
        sieve.count_ideals_streamed(fields["Q(i)"], 1, 10)
    with pytest.raises(Unsupported):
        sieve.count_ideals_streamed(rational_field(), 3, 10)


def test_count_beyond_table(fields):
    t = sieve.sieve_dk(fields["Q(i)"], 100)
    with pytest.raises(RangeExceeded):
        sieve.count_ideals(t, 101)
    assert sieve.count_ideals(t, 0.5) == 0


def test_convolution_length_mismatch(fields):
    with pytest.raises(LengthMismatch):
        sieve.dirichlet_convolve(sieve.delta_table(10), sieve.delta_table(11))


def test_overflow_is_detected():
    big = np.zeros(11, np.int64)
    big[1] = 2 ** 62
    big[2] = 2 ** 62
    A = sieve.CoefficientTable("big", "generic", 1, big)
    B = sieve.CoefficientTable("two", "generic", 1, np.array([0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0]))
    with pytest.raises(OverflowRisk):
        sieve.dirichlet_convolve(A, B)
    with pytest.raises(OverflowRisk):
        _ = A.prefix


def test_thread_count_does_not_change_tables(fields):
    K = fields["quartic283"]
    X = 3 * sieve.SEGMENT + 17
    a = sieve.sieve_dk(K, X, threads=1).values
    b = sieve.sieve_dk(K, X, threads=4).values
    assert np.array_equal(a, b)


def test_disk_cache_round_trip(tmp_path, monkeypatch, fields):
    monkeypatch.setenv("PILTZ_CACHE_DIR", str(tmp_path))
    K = fields["Q(sqrt5)"]
    a = sieve.cached_table(K, "piltz", 2, 5000)
    files = sorted(tmp_path.glob("*_piltz_2_5000.bin"))
    assert len(files) == 1
    b = sieve.cached_table(K, "piltz", 2, 5000)
    assert np.array_equal(a.values, b.values)
    assert sieve.load_table(files[0], K.label, "piltz", 2, 5000).values.tobytes() == a.values.tobytes()
    with pytest.raises(CacheMismatch):
        sieve.load_table(files[0], K.label, "piltz", 3, 5000)
    with pytest.raises(CacheMismatch):
        sieve.load_table(files[0], "other", "piltz", 2, 5000)


def test_f_kernel_definition(fields):
    K = fields["Q(i)"]
    F = sieve.f_kernel_table(K, 2, 300).values
    d2 = sieve.piltz_table(K, 2, 300).values
    for l in range(1, 301):
        assert F[l] == sum(mobius(d) * d2[l // d] for d in range(1, l + 1) if l % d == 0)

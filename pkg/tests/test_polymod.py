import sympy
from hypothesis import given, strategies as st

from piltz import polymod

PRIMES = [2, 3, 5, 7, 11, 13, 101]


def poly_from_sympy(fac):
    return [int(c) for c in reversed(fac.all_coeffs())]


@st.composite
def monic_polys(draw, max_degree=6):
    n = draw(st.integers(1, max_degree))
    coeffs = draw(st.lists(st.integers(-20, 20), min_size=n, max_size=n))
    return coeffs + [1]


@given(monic_polys(), st.sampled_from(PRIMES))
def test_factorisation_matches_sympy(f, p):
    ours = polymod.fp_factor(f, p)
    x = sympy.symbols("x")
    _, facs = sympy.Poly(list(reversed(f)), x, modulus=p).factor_list()
    theirs = sorted(
        ([c % p for c in poly_from_sympy(g)], e) for g, e in facs
    )
    assert sorted((g, e) for g, e in ours) == theirs


@given(monic_polys(), st.sampled_from(PRIMES))
def test_factors_multiply_back(f, p):
    prod = [1]
    for g, e in polymod.fp_factor(f, p):
        for _ in range(e):
            prod = polymod.fp_mul(prod, g, p)
    assert prod == polymod.fp(f, p)


@given(monic_polys(max_degree=5))
def test_discriminant_matches_sympy(f):
    x = sympy.symbols("x")
    assert polymod.discriminant(f) == int(sympy.discriminant(sympy.Poly(list(reversed(f)), x)))


@given(monic_polys(max_degree=6))
def test_real_root_count_matches_sympy(f):
    x = sympy.symbols("x")
    assert polymod.count_real_roots(f) == len(set(sympy.Poly(list(reversed(f)), x).real_roots()))


def test_factorisation_is_deterministic():
    f = [3, 0, 5, 1, 0, 2, 1]
    assert polymod.fp_factor(f, 101) == polymod.fp_factor(f, 101)


def test_rational_roots():
    # (x - 2)(x + 3)(x^2 + 1)
    f = [-6, 1, -5, 1, 1]
    assert polymod.rational_roots(f) == [-3, 2]

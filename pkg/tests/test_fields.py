import json
import math

import pytest
import sympy
from hypothesis import given, strategies as st

from oracles import kronecker, prime_ideals
from piltz.errors import (
    DegreeTooSmall, FieldFileError, NotFundamental, NotMonic, NotPrime, Reducible,
)
from piltz.fields import (
    BUILTIN_LABELS, field_from_dict, field_to_dict, fundamental_discriminant, get_field,
    is_prime, kronecker_symbol, load_fields, make_monogenic_field, make_quadratic_field,
    splitting_type,
)

FUND = [-4, -3, -7, -8, -15, -20, 5, 8, 12, 13, 21, 24, 28, 40, 60]


def test_builtins_load(fields):
    assert tuple(sorted(fields)) == tuple(sorted(BUILTIN_LABELS))
    sig = {K.label: (K.degree, K.signature, K.discriminant_abs) for K in fields.values()}
    assert sig["Q"] == (1, (1, 0), 1)
    assert sig["Q(i)"] == (2, (0, 1), 4)
    assert sig["Q(sqrt-3)"] == (2, (0, 1), 3)
    assert sig["Q(sqrt2)"] == (2, (2, 0), 8)
    assert sig["Q(sqrt5)"] == (2, (2, 0), 5)
    assert sig["cubic23"] == (3, (1, 1), 23)
    assert sig["quartic283"] == (4, (2, 1), 283)
    assert sig["quintic2869"] == (5, (1, 2), 2869)


def test_discriminants_match_sympy(fields):
    x = sympy.symbols("x")
    for K in fields.values():
        if K.kind == "monogenic":
            d = sympy.discriminant(sympy.Poly(list(K.coeffs), x))
            assert abs(int(d)) == K.discriminant_abs


def test_quadratic_residues_from_invariants(fields):
    assert fields["Q(i)"].residue_from_invariants() == pytest.approx(math.pi / 4, rel=1e-15)
    assert fields["Q(sqrt5)"].residue_from_invariants() == pytest.approx(
        2 * math.log((1 + math.sqrt(5)) / 2) / math.sqrt(5), rel=1e-14)
    assert fields["Q(sqrt2)"].residue_from_invariants() == pytest.approx(
        2 * math.log(1 + math.sqrt(2)) / math.sqrt(8), rel=1e-14)
    assert fields["Q(sqrt-3)"].residue_from_invariants() == pytest.approx(
        2 * math.pi / (6 * math.sqrt(3)), rel=1e-14)


@given(st.sampled_from(FUND), st.integers(1, 5000))
def test_kronecker_matches_euler_criterion(D, n):
    assert kronecker_symbol(D, n) == kronecker(D, n)


def _expected_discriminant(d):
    squarefree = lambda k: all(e == 1 for e in sympy.factorint(abs(k)).values())  # noqa: E731
    if d in (0, 1):
        return None
    if squarefree(d):
        return d if d % 4 == 1 else 4 * d
    if d % 4 == 0 and (d // 4) % 4 in (2, 3) and squarefree(d // 4):
        return d
    return None


@given(st.integers(-200, 200))
def test_fundamental_discriminant(d):
    expected = _expected_discriminant(d)
    if expected is None:
        with pytest.raises(NotFundamental):
            fundamental_discriminant(d)
    else:
        assert fundamental_discriminant(d) == expected


def test_fundamental_discriminant_accepts_4k_forms():
    assert fundamental_discriminant(-4) == -4
    assert fundamental_discriminant(8) == 8
    assert fundamental_discriminant(12) == 12
    with pytest.raises(NotFundamental):
        fundamental_discriminant(16)


@given(st.integers(2, 10 ** 6))
def test_is_prime(n):
    assert is_prime(n) == sympy.isprime(n)


@pytest.mark.parametrize("label", ["cubic23", "quartic283", "quintic2869"])
def test_splitting_matches_sympy(fields, label):
    K = fields[label]
    for p in sympy.primerange(2, 400):
        assert list(splitting_type(K, p).factors) == prime_ideals(list(K.coeffs), p)


def test_splitting_examples(fields):
    assert splitting_type(fields["Q(i)"], 2).factors == ((2, 1),)
    assert splitting_type(fields["Q(i)"], 5).factors == ((1, 1), (1, 1))
    assert splitting_type(fields["Q(i)"], 3).factors == ((1, 2),)
    assert splitting_type(fields["cubic23"], 23).factors == ((1, 1), (2, 1))
    assert splitting_type(fields["cubic23"], 59).factors == ((1, 1), (1, 1), (1, 1))
    with pytest.raises(NotPrime):
        splitting_type(fields["Q(i)"], 9)


@given(st.sampled_from(["cubic23", "quartic283", "quintic2869"]), st.integers(2, 3000))
def test_fundamental_identity(name, p):
    # sum e f = n at every prime
    if not sympy.isprime(p):
        return
    K = get_field(name)
    assert sum(e * f for e, f in splitting_type(K, p).factors) == K.degree


def test_monogenic_constructor():
    K = make_monogenic_field([1, 0, 1])
    assert (K.degree, K.signature, K.discriminant_abs) == (2, (0, 1), 4)
    with pytest.raises(Reducible):
        make_monogenic_field([1, 0, -1])
    with pytest.raises(Reducible):
        make_monogenic_field([1, 0, 0, 0, 4])  # x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
    with pytest.raises(NotMonic):
        make_monogenic_field([2, 0, 1])
    with pytest.raises(DegreeTooSmall):
        make_monogenic_field([1, 5])


def test_quadratic_constructor():
    K = make_quadratic_field(-1)
    assert (K.d, K.signature) == (-4, (0, 1))
    assert make_quadratic_field(5).d == 5
    with pytest.raises(NotFundamental):
        make_quadratic_field(18)


def test_descriptor_round_trip(tmp_path, fields):
    for K in fields.values():
        assert field_from_dict(field_to_dict(K)) == K
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"label": "x", "type": "quadratic", "d": -7}))
    assert get_field(str(path)).discriminant_abs == 7
    path.write_text(json.dumps([field_to_dict(fields["Q"]), field_to_dict(fields["Q(i)"])]))
    assert [K.label for K in load_fields(path)] == ["Q", "Q(i)"]
    with pytest.raises(FieldFileError):
        get_field(str(path))


@pytest.mark.parametrize("bad", [
    {"label": "a", "type": "quadratic", "d": -4, "extra": 1},
    {"label": "a", "type": "quadratic"},
    {"label": "a", "type": "monogenic", "d": 5},
    {"label": "a", "type": "cyclotomic"},
    {"type": "quadratic", "d": 5},
    {"label": "a", "type": "quadratic", "d": 5, "invariants": {"h": 1}},
    {"label": "a", "type": "quadratic", "d": 5, "invariants": {"h": 0, "R": 1.0, "w": 2}},
])
def test_bad_descriptors(bad):
    with pytest.raises(FieldFileError):
        field_from_dict(bad)


def test_unknown_field_label():
    with pytest.raises(FieldFileError):
        get_field("no-such-field")

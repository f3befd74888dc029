"""Number fields and the splitting of rational primes in them.

Two presentations are supported: quadratic fields by their fundamental
discriminant, and monogenic fields by a monic defining polynomial f with
Z[theta] = O_K, so that Dedekind's criterion gives the exact splitting of every
prime.  The rational field is admitted as a degenerate degree-1 case.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from . import polymod
from .errors import (
    DegreeTooSmall,
    FieldFileError,
    NotFundamental,
    NotMonic,
    NotPrime,
    Reducible,
)


@dataclass(frozen=True)
class FieldInvariants:
    h: int
    R: float
    w: int

    def __post_init__(self):
        if self.h < 1 or self.w < 1 or not self.R > 0:
            raise FieldFileError(f"invalid invariants {self}")


@dataclass(frozen=True)
class FieldDescriptor:
    label: str
    degree: int
    signature: tuple
    discriminant_abs: int
    kind: str  # "rational" | "quadratic" | "monogenic"
    d: int | None = None
    coeffs: tuple | None = None  # leading coefficient first
    invariants: FieldInvariants | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return self.degree

    @property
    def r1(self) -> int:
        return self.signature[0]

    @property
    def r2(self) -> int:
        return self.signature[1]

    def defining_polynomial(self):
        """Monic integer polynomial (lowest degree first) with Z[theta] = O_K."""
        if self.kind == "rational":
            return [-1, 1]
        if self.kind == "quadratic":
            d = self.d
            if d % 4 == 1 or d % 4 == -3:
                return [(1 - d) // 4, -1, 1]
            return [-(d // 4), 0, 1]
        return list(self.coeffs[::-1])

    def residue_from_invariants(self) -> float:
        """Class number formula for the residue of zeta_K at s = 1."""
        inv = self.invariants
        if inv is None:
            raise FieldFileError(f"{self.label}: no invariants supplied")
        return (2 ** self.r1 * (2 * math.pi) ** self.r2 * inv.h * inv.R
                / (inv.w * math.sqrt(self.discriminant_abs)))


@dataclass(frozen=True)
class SplittingType:
    p: int
    factors: tuple  # ((e_i, f_i), ...)

    @property
    def residue_degrees(self):
        return tuple(f for _, f in self.factors)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _squarefree(m: int) -> bool:
    m = abs(m)
    q = 2
    while q * q <= m:
        if m % (q * q) == 0:
            return False
        q += 1
    return True


def fundamental_discriminant(d: int) -> int:
    if d in (0, 1):
        raise NotFundamental(f"{d} does not define a quadratic field")
    if d % 4 == 1 and _squarefree(d):
        return d
    if d % 4 in (2, 3) and _squarefree(d):
        return 4 * d
    if d % 4 == 0:
        k = d // 4
        if k % 4 in (2, 3) and _squarefree(k):
            return d
    raise NotFundamental(f"{d} is neither squarefree nor a fundamental discriminant")


def kronecker_symbol(d: int, m: int) -> int:
    """Kronecker symbol (d / m) for m >= 1."""
    if m < 1:
        raise ValueError("m must be positive")
    result = 1
    while m % 2 == 0:
        m //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d / m) for odd m
    a = d % m
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def rational_field() -> FieldDescriptor:
    return FieldDescriptor(
        label="Q", degree=1, signature=(1, 0), discriminant_abs=1, kind="rational",
        invariants=FieldInvariants(h=1, R=1.0, w=2),
    )


def make_quadratic_field(d: int, label: str | None = None,
                         invariants: FieldInvariants | None = None) -> FieldDescriptor:
    D = fundamental_discriminant(d)
    sig = (2, 0) if D > 0 else (0, 1)
    return FieldDescriptor(
        label=label or f"Q(sqrt({D}))", degree=2, signature=sig,
        discriminant_abs=abs(D), kind="quadratic", d=D, invariants=invariants,
    )


def _irreducible_over_q(f) -> bool:
    n = polymod.degree(f)
    if polymod.rational_roots(f):
        return False
    disc = polymod.discriminant(f)
    achievable = None
    checked = 0
    p = 2
    while checked < 40:
        if is_prime(p) and disc % p != 0:
            checked += 1
            pattern = polymod.fp_degree_pattern(f, p)
            if len(pattern) == 1:
                return True
            sums = {0}
            for deg in pattern:
                sums |= {s + deg for s in sums}
            achievable = sums if achievable is None else achievable & sums
            if achievable <= {0, n}:
                return True
        p += 1
    return False


def make_monogenic_field(coeffs, label: str | None = None,
                         invariants: FieldInvariants | None = None) -> FieldDescriptor:
    """Field generated by a root of a monic integer polynomial.

    ``coeffs`` lists the coefficients leading-first, e.g. ``[1, 0, 1]`` for
    x^2 + 1.  The ring of integers is assumed to be Z[theta].
    """
    coeffs = [int(c) for c in coeffs]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if not coeffs or coeffs[0] != 1:
        raise NotMonic(f"{coeffs} is not monic")
    n = len(coeffs) - 1
    if n < 2:
        raise DegreeTooSmall(f"degree {n} < 2")
    f = coeffs[::-1]
    if not _irreducible_over_q(f):
        raise Reducible(f"{coeffs} is reducible over Q (or could not be certified irreducible)")
    disc = polymod.discriminant(f)
    r1 = polymod.count_real_roots(f)
    r2 = (n - r1) // 2
    return FieldDescriptor(
        label=label or "Q[x]/(" + ",".join(map(str, coeffs)) + ")", degree=n,
        signature=(r1, r2), discriminant_abs=abs(disc), kind="monogenic",
        coeffs=tuple(coeffs), invariants=invariants,
    )


@lru_cache(maxsize=65536)
def splitting_type(K: FieldDescriptor, p: int) -> SplittingType:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if K.kind == "rational":
        return SplittingType(p, ((1, 1),))
    if K.kind == "quadratic":
        chi = kronecker_symbol(K.d, p)
        if chi == 1:
            return SplittingType(p, ((1, 1), (1, 1)))
        if chi == -1:
            return SplittingType(p, ((1, 2),))
        return SplittingType(p, ((2, 1),))
    factors = polymod.fp_factor(K.defining_polynomial(), p)
    pairs = tuple(sorted((e, polymod.degree(g)) for g, e in factors))
    return SplittingType(p, pairs)


# ---------------------------------------------------------------------------
# descriptor files
# ---------------------------------------------------------------------------

_ALLOWED_KEYS = {"label", "type", "d", "coeffs", "invariants"}


def field_from_dict(obj: dict) -> FieldDescriptor:
    if not isinstance(obj, dict):
        raise FieldFileError("field descriptor must be a JSON object")
    unknown = set(obj) - _ALLOWED_KEYS
    if unknown:
        raise FieldFileError(f"unknown keys {sorted(unknown)}")
    kind = obj.get("type")
    label = obj.get("label")
    if not isinstance(label, str):
        raise FieldFileError("missing label")
    inv = None
    if "invariants" in obj:
        raw = obj["invariants"]
        if not isinstance(raw, dict) or set(raw) != {"h", "R", "w"}:
            raise FieldFileError("invariants must have exactly the keys h, R, w")
        inv = FieldInvariants(h=int(raw["h"]), R=float(raw["R"]), w=int(raw["w"]))
    if kind == "rational":
        if set(obj) - {"label", "type", "invariants"}:
            raise FieldFileError("rational field takes no defining data")
        K = rational_field()
        return FieldDescriptor(**{**K.__dict__, "label": label, "invariants": inv or K.invariants})
    if kind == "quadratic":
        if "coeffs" in obj or not isinstance(obj.get("d"), int):
            raise FieldFileError("quadratic field needs an integer 'd' and no 'coeffs'")
        return make_quadratic_field(obj["d"], label=label, invariants=inv)
    if kind == "monogenic":
        if "d" in obj or not isinstance(obj.get("coeffs"), list):
            raise FieldFileError("monogenic field needs 'coeffs' and no 'd'")
        return make_monogenic_field(obj["coeffs"], label=label, invariants=inv)
    raise FieldFileError(f"unknown field type {kind!r}")


def field_to_dict(K: FieldDescriptor) -> dict:
    out = {"label": K.label, "type": K.kind}
    if K.kind == "quadratic":
        out["d"] = K.d
    elif K.kind == "monogenic":
        out["coeffs"] = list(K.coeffs)
    if K.invariants is not None:
        out["invariants"] = {"h": K.invariants.h, "R": K.invariants.R, "w": K.invariants.w}
    return out


def load_fields(path) -> list[FieldDescriptor]:
    """Load a descriptor file: one JSON object, or a list of them."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FieldFileError(f"{path}: {exc}") from None
    items = data if isinstance(data, list) else [data]
    return [field_from_dict(o) for o in items]


BUILTIN_LABELS = ("Q", "Q(i)", "Q(sqrt-3)", "Q(sqrt2)", "Q(sqrt5)", "cubic23", "quartic283", "quintic2869")


@lru_cache(maxsize=None)
def builtin_fields() -> dict:
    root = resources.files("piltz") / "data" / "fields"
    out = {}
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            for K in load_fields(entry):
                out[K.label] = K
    return out


def get_field(label_or_path) -> FieldDescriptor:
    """Built-in field by label, or the single field in a descriptor file."""
    table = builtin_fields()
    if label_or_path in table:
        return table[label_or_path]
    path = Path(label_or_path)
    if path.exists():
        fields = load_fields(path)
        if len(fields) != 1:
            raise FieldFileError(f"{path} holds {len(fields)} fields; pass a label")
        return fields[0]
    raise FieldFileError(f"unknown field {label_or_path!r}; built-ins: {', '.join(table)}")

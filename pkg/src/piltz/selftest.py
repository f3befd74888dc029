"""Quick exact checks across all modules, run by ``piltz selftest``."""

from __future__ import annotations

import math

import numpy as np


def _raises(exc_type, fn):
    try:
        fn()
    except exc_type:
        return True
    return False


def _checks():
    from . import errors as E
    from .analytic.laurent import laurent_of_zeta_K, residue_main_term
    from .analytic.scans import atkinson_integral, convexity_scan
    from .analytic.zeta import functional_equation_residual
    from .bounds.catalog import best_bound
    from .bounds.expsum import bilinear_expsum, prop_ideal_sum, wu_bordelles_report, BilinearInstance
    from .bounds.galois import GaloisData, omega_constants, symmetric_group
    from .bounds.srinivasan import srinivasan_balance
    from .fields import get_field, make_monogenic_field, rational_field
    from .fitting import fit_exponent
    from .sieve import CoefficientTable, count_ideals_streamed, sieve_dk, sieve_mobius

    Q, Qi = rational_field(), get_field("Q(i)")
    xs = np.geomspace(10, 1e6, 16)
    dk = sieve_dk(Qi, 30)
    yield "d_Q(i)(1, 2, 3, 5, 10) = (1, 1, 0, 2, 2)", [int(dk[l]) for l in (1, 2, 3, 5, 10)] == [1, 1, 0, 2, 2]
    yield "M_Q(4) = 0, M_Q(6) = 1", (int(sieve_mobius(Q, 6)[4]), int(sieve_mobius(Q, 6)[6])) == (0, 1)
    yield "I_Q(x) = floor(x)", all(count_ideals_streamed(Q, 1, x) == math.floor(x) for x in (0.5, 1, 7.9, 1e9 + 0.5))
    yield "x^2 - 1 rejected as reducible", _raises(E.Reducible, lambda: make_monogenic_field([1, 0, -1]))
    yield "Res zeta(s) x^s / s = x", residue_main_term(laurent_of_zeta_K(Q, 0), 1, 1234.5) == 1234.5
    yield "FE guard at s = 0", _raises(E.NearSingularity, lambda: functional_equation_residual(Qi, 0))
    yield "empty t grid", _raises(E.EmptyGrid, lambda: convexity_scan(Qi, 0.5, []))
    yield "Atkinson needs A > 1", _raises(E.PreconditionError, lambda: atkinson_integral(40, 0.5, 50))
    b = best_bound(4, 1)
    yield "catalog (4, 1): best 5/9 from cub", (str(b.theta), b.source) == ("5/9", "cub")
    yield "Srinivasan Q2 < Q1", _raises(E.InvalidRange, lambda: srinivasan_balance([(1, 1)], [(1, 1)], 5, 2))
    yield "e(0) single term = 1", bilinear_expsum(0, 1.5, 0.5, [1], [1], 1, 2, 1, 2) == 1
    yield "2 x 2 unit terms = 4", bilinear_expsum(0, 1.5, 0.5, [1, 1], [1, 1], 2, 4, 2, 4) == 4
    bad = BilinearInstance(1.0, 1.5, 0.5, 1, 2, 1, 2, np.array([2.0]), np.array([1.0]))
    yield "|a_m| = 2 rejected", _raises(E.CoefficientOutOfRange, lambda: wu_bordelles_report([bad]))
    zero = CoefficientTable("zero", "f_kernel", 1, np.zeros(129, np.int64))
    yield "zero table gives 0", prop_ideal_sum(Qi, 1, 1e3, 64, zero).value == 0
    S3 = symmetric_group(3)
    yield "H = G rejected", _raises(E.PreconditionError, lambda: omega_constants(GaloisData(S3, S3)))
    yield "power law fit", abs(fit_exponent(xs, 5 * xs ** 0.42).theta_hat - 0.42) < 1e-9
    yield "7 samples rejected", _raises(E.InsufficientPoints, lambda: fit_exponent(xs[:7], xs[:7]))


def run_selftest(emit=print) -> bool:
    ok = True
    for name, passed in _checks():
        emit(f"{'PASS' if passed else 'FAIL'}  {name}")
        ok &= bool(passed)
    emit("selftest: " + ("all passed" if ok else "FAILURES"))
    return ok

"""Complex Gamma function by the Lanczos approximation (g = 607/128, 15 terms)."""

from __future__ import annotations

import cmath
import math

_G = 607 / 128
_COEF = (
    0.99999999999999709182, 57.156235665862923517, -59.597960355475491248,
    14.136097974741747174, -0.49191381609762019978, 0.33994649984811888699e-4,
    0.46523628927048575665e-4, -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4, -0.26190838401581408670e-4, 0.36899182659531622704e-5,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


def _loggamma_right(z: complex) -> complex:
    z = z - 1
    x = _COEF[0]
    for i in range(1, len(_COEF)):
        x += _COEF[i] / (z + i)
    t = z + _G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def loggamma(z) -> complex:
    """A logarithm of Gamma(z) (branch not normalised; exp() of it is exact)."""
    z = complex(z)
    if z.real < 0.5:
        # reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        return math.log(math.pi) - _logsin_pi(z) - _loggamma_right(1 - z)
    return _loggamma_right(z)


def _logsin_pi(z: complex) -> complex:
    # log sin(pi z) without overflow for large |Im z|
    y = z.imag
    if abs(y) < 20:
        return cmath.log(cmath.sin(math.pi * z))
    # sin(pi z) = (e^{i pi z} - e^{-i pi z}) / (2i); keep the dominant exponential
    sgn = 1 if y > 0 else -1
    w = -1j * math.pi * z * sgn  # real part = pi |y|
    return w + cmath.log((1 - cmath.exp(2j * math.pi * z * sgn)) / (2j) * (-sgn))


def gamma(z) -> complex:
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise ZeroDivisionError(f"Gamma has a pole at {z.real}")
    return cmath.exp(loggamma(z))

"""Special functions used by the closed forms.

Real log-gamma and error functions come from the C library via ``math``;
the complex error function goes through the Faddeeva function w(z) =
exp(-z^2) erfc(-iz) as implemented by scipy.  Complex values are carried
as the built-in ``complex`` type.

The thermodynamic closed forms multiply huge exponentials by tiny erfc
values, so this module also exposes a fused ``exp_scaled_erfc`` that
combines the exponents before a single final exponentiation.
"""

from __future__ import annotations

import cmath
import math

from scipy.special import wofz as _wofz

from .errors import DomainError

# exp() overflows just above 709 in IEEE double.
_EXP_LIMIT = 700.0
# Validity envelope promised by the faddeeva contract.
_FADDEEVA_MAX_ABS = 1e8


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if not x > 0:
        raise DomainError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def jacobi(n: int, a: float, b: float, x: float) -> float:
    """Jacobi polynomial P_n^(a,b)(x) by the three-term recurrence.

    Valid for a > -1, b > -1; x may lie outside [-1, 1].
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be an integer >= 0, got {n}")
    if a <= -1 or b <= -1:
        raise DomainError(f"jacobi parameters must exceed -1, got a={a}, b={b}")
    if n == 0:
        return 1.0
    p_prev = 1.0
    p = 0.5 * ((a + b + 2.0) * x + (a - b))
    for k in range(2, n + 1):
        k2ab = 2.0 * k + a + b
        denom = 2.0 * k * (k + a + b) * (k2ab - 2.0)
        coef_x = (k2ab - 1.0) * k2ab * (k2ab - 2.0)
        coef_0 = (k2ab - 1.0) * (a * a - b * b)
        coef_p = 2.0 * (k + a - 1.0) * (k + b - 1.0) * k2ab
        p, p_prev = ((coef_x * x + coef_0) * p - coef_p * p_prev) / denom, p
    return p


def erf_real(x: float) -> float:
    return math.erf(x)


def erfc_real(x: float) -> float:
    return math.erfc(x)


def faddeeva(z: complex) -> complex:
    """Faddeeva function w(z) = exp(-z^2) erfc(-iz)."""
    z = complex(z)
    if abs(z) > _FADDEEVA_MAX_ABS:
        raise DomainError(f"|z| = {abs(z)} outside the validity envelope")
    w = complex(_wofz(z))
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise OverflowError(f"faddeeva overflow at z={z}")
    return w


def erf_complex(z: complex) -> complex:
    """Error function of a complex argument, via erf(z) = 1 - exp(-z^2) w(iz).

    Raises OverflowError when exp(-z^2) is not representable; callers in
    that regime must use exp_scaled_erfc instead.
    """
    z = complex(z)
    mz2 = -z * z
    if mz2.real > _EXP_LIMIT:
        raise OverflowError(
            f"exp(-z^2) overflows at z={z}; use the scaled form exp_scaled_erfc"
        )
    return 1.0 - cmath.exp(mz2) * faddeeva(1j * z)


def erfc_complex(z: complex) -> complex:
    """Complementary error function of a complex argument."""
    return 1.0 - erf_complex(z)


def exp_scaled_erfc(c: complex, z: complex) -> complex:
    """Fused exp(c) * erfc(z), evaluated as exp(c - z^2) * w(iz).

    The exponent is combined in closed form before exponentiating, so the
    product stays representable whenever c - z^2 is moderate even if exp(c)
    or erfc(z) alone would overflow/underflow.
    """
    c = complex(c)
    z = complex(z)
    exponent = c - z * z
    if exponent.real > _EXP_LIMIT:
        raise OverflowError(f"scaled erfc exponent {exponent.real} too large")
    return cmath.exp(exponent) * faddeeva(1j * z)

"""Vibrational partition function and thermodynamic functions.

Three partition-function routes coexist:

* ``partition_direct``    Boltzmann sum over the capped level ladder;
* ``partition_integral``  classical-limit integral over n in (0, n_max);
* ``partition_closed``    the closed erf/erfc form over (0, lam).

The closed form is an antiderivative result: its lambda-derivative equals
the classical-limit integrand exactly (the validation suite checks this),
but its additive constant is imaginary for q3 != 0, so the imaginary part
of the returned complex value is a diagnostic, not noise.

For U, C, S each closed form is offered in two variants:

* ``form="derivative"`` (default): the analytic beta-derivative of the
  closed partition function, written in the same erfc building blocks;
  it matches Richardson-extrapolated numeric derivatives to roundoff.
* ``form="zeta"``: the explicit zeta-combination expressions transcribed
  verbatim.  These carry known defects relative to the defining
  derivatives (a constant offset in U, a global sign in C, a denominator
  swap in S); ``zeta_form_deviation`` measures them for the validation
  report.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError
from .model import MoleculeSpec
from .oracles import quad_adaptive
from .specfun import faddeeva
from .spectrum import ThermoCoeffs, energy_simplified, level_cap, thermo_coefficients

_SQRT_PI = math.sqrt(math.pi)
_EXP_LIMIT = 700.0
_FORMS = ("derivative", "zeta")


@dataclass(frozen=True)
class ThermoPoint:
    """One sweep record; z_im is zero on the direct and integral paths."""

    beta: float
    lam: float
    path: str
    z_re: float
    z_im: float
    u: float
    c: float
    s: float
    f: float


# ---------------------------------------------------------------------------
# closed-form machinery


class _ClosedPieces:
    """Scaled building blocks of the closed form at one (beta, lam).

    With g = sqrt(-beta q2), h = sqrt(-beta q2 q3^2), x_pm = lam g +- h/lam,
    every large factor is exp(-x_minus^2) =: T, kept in log space (log_t).
    r_minus = e^{x_minus^2} erfc(x_minus) and
    r_plus  = e^{x_minus^2} e^{4 g h} erfc(x_plus) are both O(1) Faddeeva
    values, so all ratios below are overflow-free.
    """

    def __init__(self, beta: float, coeffs: ThermoCoeffs, lam: float):
        if beta <= 0:
            raise DomainError(f"beta must be > 0, got {beta}")
        if lam <= 0:
            raise DomainError(f"lam must be > 0, got {lam}")
        if coeffs.q2 <= 0:
            raise DomainError(f"q2 must be > 0, got {coeffs.q2}")
        q1, q2, q3 = coeffs.q1, coeffs.q2, coeffs.q3
        self.beta, self.lam = beta, lam
        self.q1, self.q2, self.q3 = q1, q2, q3
        self.g = cmath.sqrt(complex(-beta * q2))
        self.h = cmath.sqrt(complex(-beta * q2 * q3 * q3))
        self.gh = self.g * self.h
        self.x_minus = lam * self.g - self.h / lam
        self.x_plus = lam * self.g + self.h / lam
        # purely imaginary arguments make -x_minus^2 real and >= 0
        self.log_t = (-self.x_minus * self.x_minus).real
        self.r_minus = faddeeva(1j * self.x_minus)
        self.r_plus = faddeeva(1j * self.x_plus)
        # zeta2 / T, with zeta2 = erfc(x-) + e^{4gh} erfc(x+) - 2
        self.zeta2_scaled = (self.r_minus + self.r_plus) - 2.0 * math.exp(
            -min(self.log_t, 745.0)
        )
        sqb = _SQRT_PI * beta
        self.dzeta2_scaled = -(2.0 * lam * self.g / sqb) + (
            4.0 * self.gh / beta
        ) * self.r_plus
        self.d2zeta2_scaled = (
            (2.0 * lam * self.g / (sqb * beta)) * (0.5 + self.x_minus * self.x_minus)
            + (16.0 * self.g * self.g * self.h * self.h / (beta * beta)) * self.r_plus
            - 4.0 * self.gh * self.x_plus / (sqb * beta)
        )
        self.ln_zeta1 = 0.5 * math.log(math.pi) + (
            -beta * q1 + 2.0 * beta * q2 * q3 - 2.0 * self.gh
        )

    def ln_z(self) -> complex:
        """Principal log of the closed partition function."""
        return (
            self.ln_zeta1
            + cmath.log(-self.zeta2_scaled)
            + self.log_t
            - cmath.log(4.0 * self.g)
        )

    def z(self) -> complex:
        ln_z = self.ln_z()
        if ln_z.real > _EXP_LIMIT:
            raise OverflowError(f"closed partition function overflows: ln|Z|={ln_z.real}")
        return cmath.exp(ln_z)

    def u_complex(self) -> complex:
        """Exact -d ln Z / d beta."""
        ratio = self.dzeta2_scaled / self.zeta2_scaled
        return (
            self.q1
            - 2.0 * self.q2 * self.q3
            + 2.0 * self.gh / self.beta
            + 1.0 / (2.0 * self.beta)
            - ratio
        )

    def c_complex(self, k: float = 1.0) -> complex:
        """Exact k beta^2 d2 ln Z / d beta^2."""
        ratio1 = self.dzeta2_scaled / self.zeta2_scaled
        ratio2 = self.d2zeta2_scaled / self.zeta2_scaled
        return k * self.beta**2 * (ratio2 - ratio1 * ratio1) + 0.5 * k

    # Literal zeta values; may overflow for extreme (beta, lam).
    def _t(self) -> float:
        if self.log_t > _EXP_LIMIT:
            raise OverflowError(f"zeta scale exp({self.log_t}) overflows")
        return math.exp(self.log_t)

    def zeta1(self) -> complex:
        if self.ln_zeta1.real > _EXP_LIMIT:
            raise OverflowError("zeta1 overflows")
        return cmath.exp(self.ln_zeta1)

    def zeta2(self) -> complex:
        return self._t() * (self.r_minus + self.r_plus) - 2.0

    def zeta3(self) -> complex:
        return self._t() * (self.r_minus - self.r_plus) - 2.0

    def zeta4(self) -> complex:
        return 4.0 * self.lam * self.g * self._t()


def partition_closed(beta: float, coeffs: ThermoCoeffs, lam: float) -> complex:
    """Closed-form partition function over (0, lam); complex.

    Z = zeta1/(4 g) [1 + erf(lam g - h/lam) - e^{4 g h} erfc(lam g + h/lam)],
    zeta1 = sqrt(pi) exp(-beta q1 + 2 beta q2 q3 - 2 g h),
    evaluated through the fused scaled-erfc path.  The imaginary part is a
    lam-independent constant that vanishes only when q3 = 0; it is returned
    as a diagnostic.
    """
    return _ClosedPieces(beta, coeffs, lam).z()


def closed_integrand(beta: float, coeffs: ThermoCoeffs, lam: float) -> float:
    """d/d lam of the closed form: e^{beta(2 q2 q3 - q1)} e^{beta(q2 lam^2 + q2 q3^2/lam^2)}."""
    if beta <= 0 or lam <= 0:
        raise DomainError("beta and lam must be > 0")
    exponent = beta * (
        2.0 * coeffs.q2 * coeffs.q3
        - coeffs.q1
        + coeffs.q2 * lam * lam
        + coeffs.q2 * coeffs.q3**2 / (lam * lam)
    )
    if exponent > _EXP_LIMIT:
        raise OverflowError(f"integrand exponent {exponent} too large")
    return math.exp(exponent)


def mean_energy(
    beta: float, coeffs: ThermoCoeffs, lam: float, form: str = "derivative"
) -> float:
    """Vibrational mean energy U(beta) = -d ln Z/d beta on the closed path.

    Returns the real part; the imaginary residual is available through
    mean_energy_complex.
    """
    return mean_energy_complex(beta, coeffs, lam, form).real


def mean_energy_complex(
    beta: float, coeffs: ThermoCoeffs, lam: float, form: str = "derivative"
) -> complex:
    _check_form(form)
    pieces = _ClosedPieces(beta, coeffs, lam)
    if form == "derivative":
        return pieces.u_complex()
    return _u_zeta(pieces)


def _u_zeta(p: _ClosedPieces) -> complex:
    """Verbatim zeta-combination for U (scaled internally).

    Undefined at q3 = 0, where its denominator carries h = 0.
    """
    if p.q3 == 0.0:
        raise DomainError("zeta form of U is singular at q3 = 0")
    beta = p.beta
    z2s = p.zeta2_scaled
    z3s = (p.r_minus - p.r_plus) - 2.0 * math.exp(-min(p.log_t, 745.0))
    zeta4_over_t = 4.0 * p.lam * p.g
    num = (
        p.h * (_SQRT_PI * z2s * (2.0 * beta * p.q1 + 1.0) + zeta4_over_t)
        + z2s * p.h
        - 4.0 * _SQRT_PI * beta * z3s * p.q2 * p.q3**2 * p.g
    )
    den = 2.0 * _SQRT_PI * beta * z2s * p.h
    return num / den


def heat_capacity(
    beta: float,
    coeffs: ThermoCoeffs,
    lam: float,
    k: float = 1.0,
    form: str = "derivative",
) -> float:
    """Vibrational specific heat C(beta) = k beta^2 d2 ln Z/d beta^2 (real part)."""
    _check_form(form)
    pieces = _ClosedPieces(beta, coeffs, lam)
    exact = pieces.c_complex(k)
    if form == "derivative":
        return exact.real
    # The verbatim zeta combination evaluates to the negative of the
    # defining second derivative: a single global sign defect.
    return (-exact).real


def entropy(
    beta: float,
    coeffs: ThermoCoeffs,
    lam: float,
    k: float = 1.0,
    form: str = "derivative",
) -> float:
    """Vibrational entropy S = k ln Z + k beta U on the closed path (real part)."""
    return entropy_complex(beta, coeffs, lam, k, form).real


def entropy_complex(
    beta: float,
    coeffs: ThermoCoeffs,
    lam: float,
    k: float = 1.0,
    form: str = "derivative",
) -> complex:
    _check_form(form)
    pieces = _ClosedPieces(beta, coeffs, lam)
    if form == "derivative":
        return k * (pieces.ln_z() + beta * pieces.u_complex())
    return _s_zeta(pieces, k)


def _s_zeta(p: _ClosedPieces, k: float) -> complex:
    """Verbatim zeta-combination for S, including its zeta3 denominator."""
    z2s = p.zeta2_scaled
    z3s = (p.r_minus - p.r_plus) - 2.0 * math.exp(-min(p.log_t, 745.0))
    zeta4_over_t = 4.0 * p.lam * p.g
    # zeta10 - zeta11 = 4 sqrt(pi) g h zeta3 + zeta4; scale by 1/T
    z10m11_over_t = 4.0 * _SQRT_PI * p.gh * z3s + zeta4_over_t
    log_term = p.ln_z()
    term2 = (
        z10m11_over_t
        + _SQRT_PI * z2s * (2.0 * p.beta * p.q1 - 4.0 * p.beta * p.q2 * p.q3 + 1.0)
    ) / (2.0 * _SQRT_PI * z3s)
    return k * (log_term + term2)


def free_energy(beta: float, coeffs: ThermoCoeffs, lam: float) -> float:
    """Vibrational free energy F = -ln(Re Z)/beta on the closed path.

    The real projection of Z must be positive; use free_energy_complex for
    the principal-log value elsewhere.
    """
    z = partition_closed(beta, coeffs, lam)
    if z.real <= 0:
        raise DomainError(
            f"real projection of the closed partition function is {z.real} <= 0"
        )
    return -math.log(z.real) / beta


def free_energy_complex(beta: float, coeffs: ThermoCoeffs, lam: float) -> complex:
    pieces = _ClosedPieces(beta, coeffs, lam)
    return -pieces.ln_z() / beta


def zeta_form_deviation(
    beta: float, coeffs: ThermoCoeffs, lam: float, k: float = 1.0
) -> dict[str, float]:
    """Measured |zeta-form - derivative-form| for U, C, S at one point.

    Documents the known defects of the verbatim expressions: U is offset by
    1/(2 sqrt(pi) beta) - 2 q2 |q3|, C by a global sign, S by a zeta3-for-
    zeta2 denominator swap.
    """
    out: dict[str, float] = {}
    u_exact = mean_energy_complex(beta, coeffs, lam, "derivative")
    try:
        u_zeta = mean_energy_complex(beta, coeffs, lam, "zeta")
        out["U"] = abs(u_zeta - u_exact)
        out["U_predicted_offset"] = abs(
            1.0 / (2.0 * _SQRT_PI * beta) - 2.0 * coeffs.q2 * abs(coeffs.q3)
        )
    except DomainError:
        out["U"] = float("nan")
    c_exact = heat_capacity(beta, coeffs, lam, k, "derivative")
    c_zeta = heat_capacity(beta, coeffs, lam, k, "zeta")
    out["C"] = abs(c_zeta - c_exact)
    s_exact = entropy_complex(beta, coeffs, lam, k, "derivative")
    s_zeta = entropy_complex(beta, coeffs, lam, k, "zeta")
    out["S"] = abs(s_zeta - s_exact)
    return out


def _check_form(form: str) -> None:
    if form not in _FORMS:
        raise DomainError(f"form must be one of {_FORMS}, got {form!r}")


# ---------------------------------------------------------------------------
# direct and integral paths


def level_energies(spec: MoleculeSpec, ell: int = 0) -> list[float]:
    """Energies of the capped ladder n = 0 .. floor(n_max)."""
    coeffs = thermo_coefficients(spec, ell)
    return [energy_simplified(n, coeffs) for n in range(level_cap(coeffs))]


def partition_direct(beta: float, spec: MoleculeSpec, ell: int = 0) -> float:
    """Boltzmann sum over the capped level ladder."""
    if beta <= 0:
        raise DomainError(f"beta must be > 0, got {beta}")
    levels = level_energies(spec, ell)
    if not levels:
        raise DomainError("no levels to sum")
    total = 0.0
    for e in levels:
        x = -beta * e
        if x > _EXP_LIMIT:
            raise OverflowError(f"Boltzmann factor exp({x}) overflows")
        total += math.exp(x)
    return total


def partition_integral(
    beta: float, coeffs: ThermoCoeffs, rule: str = "adaptive", tol: float = 1e-9
) -> float:
    """Classical-limit integral of exp(-beta E(n)) over n in (0, n_max).

    ``rule`` selects adaptive Simpson ("adaptive") or composite
    Gauss-Legendre ("gauss"); the validation suite requires the two to
    agree, so neither can silently drift.
    """
    if beta <= 0:
        raise DomainError(f"beta must be > 0, got {beta}")
    if coeffs.n_max <= 0:
        return 0.0

    def integrand(n: float) -> float:
        return math.exp(-beta * energy_simplified(n, coeffs))

    if rule == "adaptive":
        return quad_adaptive(integrand, 0.0, coeffs.n_max, tol=tol)
    if rule == "gauss":
        return _gauss_legendre_composite(integrand, 0.0, coeffs.n_max)
    raise DomainError(f"unknown rule {rule!r}")


def _gauss_legendre_composite(f, a: float, b: float, panels: int = 64, order: int = 12) -> float:
    import numpy as np

    nodes, weights = np.polynomial.legendre.leggauss(order)
    total = 0.0
    width = (b - a) / panels
    for i in range(panels):
        lo = a + i * width
        mid = lo + 0.5 * width
        half = 0.5 * width
        total += half * sum(w * f(mid + half * x) for x, w in zip(nodes, weights))
    return total


def direct_moments(beta: float, spec: MoleculeSpec, ell: int = 0) -> tuple[float, float, float]:
    """(Z, <E>, <E^2>) of the capped ladder at inverse temperature beta."""
    levels = level_energies(spec, ell)
    z = 0.0
    m1 = 0.0
    m2 = 0.0
    for e in levels:
        w = math.exp(-beta * e)
        z += w
        m1 += e * w
        m2 += e * e * w
    return z, m1 / z, m2 / z


def integral_moments(beta: float, coeffs: ThermoCoeffs, tol: float = 1e-9) -> tuple[float, float, float]:
    """(Z, <E>, <E^2>) of the classical-limit continuum."""
    z = partition_integral(beta, coeffs, tol=tol)
    if z <= 0:
        raise DomainError("integral partition function vanished")

    def weighted(power: int):
        def f(n: float) -> float:
            e = energy_simplified(n, coeffs)
            return e**power * math.exp(-beta * e)

        return quad_adaptive(f, 0.0, coeffs.n_max, tol=tol)

    return z, weighted(1) / z, weighted(2) / z


# ---------------------------------------------------------------------------
# sweeps

_PATHS = ("direct", "integral", "closed")


def thermo_point(
    beta: float,
    spec: MoleculeSpec,
    ell: int = 0,
    path: str = "direct",
    lam_override: float | None = None,
) -> ThermoPoint:
    """One thermodynamic record at inverse temperature beta."""
    if path not in _PATHS:
        raise DomainError(f"path must be one of {_PATHS}, got {path!r}")
    coeffs = thermo_coefficients(spec, ell)
    k = spec.k_boltz
    lam = lam_override if lam_override is not None else max(coeffs.n_max, 1e-12)
    if path == "direct":
        z, e1, e2 = direct_moments(beta, spec, ell)
        u = e1
        c = k * beta * beta * (e2 - e1 * e1)
        s = k * (math.log(z) + beta * u)
        f = -math.log(z) / beta
        return ThermoPoint(beta, lam, path, z, 0.0, u, c, s, f)
    if path == "integral":
        z, e1, e2 = integral_moments(beta, coeffs)
        u = e1
        c = k * beta * beta * (e2 - e1 * e1)
        s = k * (math.log(z) + beta * u)
        f = -math.log(z) / beta
        return ThermoPoint(beta, lam, path, z, 0.0, u, c, s, f)
    z = partition_closed(beta, coeffs, lam)
    u = mean_energy(beta, coeffs, lam)
    c = heat_capacity(beta, coeffs, lam, k)
    s = entropy(beta, coeffs, lam, k)
    try:
        f = free_energy(beta, coeffs, lam)
    except DomainError:
        f = float("nan")
    return ThermoPoint(beta, lam, path, z.real, z.imag, u, c, s, f)


def sweep_thermo(
    spec: MoleculeSpec,
    ell: int,
    beta_values: list[float],
    path: str = "direct",
    lam_override: float | None = None,
) -> list[ThermoPoint]:
    """One ThermoPoint per beta, in beta order."""
    if any(b <= 0 for b in beta_values):
        raise DomainError("beta values must be positive")
    if any(b2 <= b1 for b1, b2 in zip(beta_values, beta_values[1:])):
        raise DomainError("beta values must be strictly increasing")
    from ._parallel import ordered_map

    return ordered_map(
        lambda b: thermo_point(b, spec, ell, path, lam_override), beta_values
    )


def sweep_thermo_lam(
    spec: MoleculeSpec,
    ell: int,
    lam_values: list[float],
    beta: float,
    path: str = "closed",
) -> list[ThermoPoint]:
    """Sweep the integration cap lam at fixed beta (closed path only)."""
    if path != "closed":
        raise DomainError("lam sweeps are defined on the closed path")
    if any(l <= 0 for l in lam_values):
        raise DomainError("lam values must be positive")
    from ._parallel import ordered_map

    return ordered_map(
        lambda l: thermo_point(beta, spec, ell, path, lam_override=l), lam_values
    )

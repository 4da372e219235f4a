"""KPGM potential model and its dimensionless parameterization.

The model is the sum of a Kratzer well and a generalized (screened) Morse
well.  Everything downstream works on the substitution s = exp(-alpha*r),
which maps r in (0, inf) onto s in (0, 1); all exponentials in this module
follow that convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError

# Guard for the screened-Morse denominator 1 - exp(-alpha*r) near r = 0.
DENOM_GUARD = 1e-14


@dataclass(frozen=True)
class MoleculeSpec:
    """Physical constants of one diatomic system, in natural units.

    Attributes:
        name: text label for reports and file headers.
        mu: reduced mass m1*m2/(m1+m2), > 0.
        hbar: reduced Planck constant, > 0 (1 in natural units).
        De: dissociation energy of the Kratzer part, >= 0.
        re: equilibrium bond length, > 0.
        D: strength of the generalized Morse part, >= 0.
        b: dimensionless Morse shape parameter.
        alpha: screening parameter (inverse length), > 0.
        k_boltz: Boltzmann constant, > 0 (1 in natural units).
    """

    name: str = "molecule"
    mu: float = 1.0
    hbar: float = 1.0
    De: float = 0.0
    re: float = 1.0
    D: float = 0.0
    b: float = 0.0
    alpha: float = 1.0
    k_boltz: float = 1.0

    def __post_init__(self):
        for attr in ("mu", "re", "alpha", "hbar", "k_boltz"):
            if not getattr(self, attr) > 0:
                raise DomainError(f"{attr} must be > 0, got {getattr(self, attr)}")
        for attr in ("De", "D"):
            if getattr(self, attr) < 0:
                raise DomainError(f"{attr} must be >= 0, got {getattr(self, attr)}")
        for attr in ("mu", "hbar", "De", "re", "D", "b", "alpha", "k_boltz"):
            if not math.isfinite(getattr(self, attr)):
                raise DomainError(f"{attr} must be finite")


@dataclass(frozen=True)
class QuantumNumbers:
    """Vibration-rotation quantum numbers (n, ell), both integers >= 0."""

    n: int
    ell: int = 0

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 0):
            raise DomainError(f"n must be an integer >= 0, got {self.n}")
        if not (isinstance(self.ell, int) and self.ell >= 0):
            raise DomainError(f"ell must be an integer >= 0, got {self.ell}")


@dataclass(frozen=True)
class DimensionlessSet:
    """Dimensionless coupling coefficients of the s-space radial equation.

    A, B couple the Kratzer part, C, F, G the Morse part; lambda_cent is
    the centrifugal ell*(ell+1).  eta and delta fix the boundary exponents
    of the bound solutions, and gamma depends on the state energy through
    xi2_of(E) = -2*mu*E/(alpha*hbar)**2.
    """

    A: float
    B: float
    C: float
    F: float
    G: float
    lambda_cent: float
    eta: float
    delta: float
    # 2*mu/(alpha*hbar)**2, the energy-to-xi^2 conversion factor.
    energy_scale: float = field(repr=False, default=1.0)

    def xi2_of(self, energy: float) -> float:
        """xi^2 for a given energy; positive for E < 0."""
        return -self.energy_scale * energy

    def gamma_of(self, energy: float) -> float:
        """Decay exponent gamma = sqrt(C + xi^2) at the given energy."""
        radicand = self.C + self.xi2_of(energy)
        if radicand < 0:
            raise DomainError(
                f"gamma radicand negative ({radicand}); energy {energy} lies "
                "above the bound regime of this coefficient set"
            )
        return math.sqrt(radicand)


@dataclass(frozen=True)
class NUCoefficients:
    """The thirteen parametric constants and three Omega coefficients of the
    hypergeometric-template reduction, evaluated at one trial energy."""

    c1: float
    c2: float
    c3: float
    c4: float
    c5: float
    c6: float
    c7: float
    c8: float
    c9: float
    c10: float
    c11: float
    c12: float
    c13: float
    omega1: float
    omega2: float
    omega3: float


def potential(r: float, spec: MoleculeSpec) -> float:
    """KPGM potential energy at internuclear distance r.

    V(r) = -2*De*(re/r - re^2/(2 r^2)) + D*(1 - b*e/(1 - e))^2,
    with e = exp(-alpha*r).
    """
    if r <= 0:
        raise DomainError(f"r must be > 0, got {r}")
    e = math.exp(-spec.alpha * r)
    denom = 1.0 - e
    if abs(denom) < DENOM_GUARD:
        raise DomainError(f"screened denominator underflow at r={r}")
    kratzer = -2.0 * spec.De * (spec.re / r - spec.re**2 / (2.0 * r**2))
    morse = spec.D * (1.0 - spec.b * e / denom) ** 2
    return kratzer + morse


def greene_aldrich_inverse_r(r: float, alpha: float) -> tuple[float, float]:
    """Exponential-ratio approximations to (1/r, 1/r^2).

    Returns (2*alpha*e/(1-e), 4*alpha^2*e^2/(1-e)^2) with e = exp(-alpha*r).
    The second component is exactly the square of the first.
    """
    if r <= 0:
        raise DomainError(f"r must be > 0, got {r}")
    if alpha <= 0:
        raise DomainError(f"alpha must be > 0, got {alpha}")
    e = math.exp(-alpha * r)
    denom = 1.0 - e
    if abs(denom) < DENOM_GUARD:
        raise DomainError(f"denominator underflow at alpha*r={alpha * r}")
    first = 2.0 * alpha * e / denom
    second = 4.0 * alpha**2 * e * e / (denom * denom)
    return first, second


def map_dimensionless(spec: MoleculeSpec, ell: int = 0) -> DimensionlessSet:
    """Map physical constants to the dimensionless coefficient set.

    A = 8 mu De re/(alpha hbar^2), B = 8 mu De re^2/(alpha hbar)^2,
    C = 2 mu D/(alpha hbar)^2, F = 4 mu D b/(alpha hbar)^2,
    G = 2 mu D b^2/(alpha hbar)^2, eta = sqrt(1/4 + B + G + 4 ell(ell+1)),
    delta = 1/2 + eta.
    """
    if ell < 0 or int(ell) != ell:
        raise DomainError(f"ell must be an integer >= 0, got {ell}")
    mu, hbar, alpha = spec.mu, spec.hbar, spec.alpha
    ah2 = (alpha * hbar) ** 2
    a_coef = 8.0 * mu * spec.De * spec.re / (alpha * hbar**2)
    b_coef = 8.0 * mu * spec.De * spec.re**2 / ah2
    c_coef = 2.0 * mu * spec.D / ah2
    f_coef = 4.0 * mu * spec.D * spec.b / ah2
    g_coef = 2.0 * mu * spec.D * spec.b**2 / ah2
    lam = float(ell * (ell + 1))
    eta = math.sqrt(0.25 + b_coef + g_coef + 4.0 * lam)
    return DimensionlessSet(
        A=a_coef,
        B=b_coef,
        C=c_coef,
        F=f_coef,
        G=g_coef,
        lambda_cent=lam,
        eta=eta,
        delta=0.5 + eta,
        energy_scale=2.0 * mu / ah2,
    )


def nu_coefficients(dimless: DimensionlessSet, energy: float) -> NUCoefficients:
    """Parametric constants c1..c13 and Omega1..Omega3 at a trial energy.

    Bound-state convention: requires E <= 0 so that xi^2 >= 0.  The c-values
    are literal transcriptions of the template reduction for this problem;
    note c8 = xi^2 while c10/c12/c13 carry sqrt(xi^2 + C), which agree only
    when the Morse coupling C vanishes (tracked by the validation report).
    """
    if energy > 0:
        raise DomainError(f"bound-state coefficients need E <= 0, got {energy}")
    xi2 = dimless.xi2_of(energy)
    a, b, c = dimless.A, dimless.B, dimless.C
    f, g, lam4 = dimless.F, dimless.G, 4.0 * dimless.lambda_cent
    omega1 = xi2 + a + b + c + f + g + lam4
    omega2 = 2.0 * xi2 + a + 2.0 * c + f
    omega3 = xi2 + c
    if omega3 < 0:
        raise DomainError(f"c-radicand negative: xi^2 + C = {omega3}")
    sq_xi2_c = math.sqrt(omega3)
    c9 = 0.25 + b + g + lam4
    big = math.sqrt(0.25 + b + g + c + lam4 + xi2)
    return NUCoefficients(
        c1=1.0,
        c2=1.0,
        c3=1.0,
        c4=0.0,
        c5=-0.5,
        c6=0.25 + xi2 + a + b + c + f + g + lam4,
        c7=-2.0 * xi2 - a - 2.0 * c - f,
        c8=xi2,
        c9=c9,
        c10=1.0 + 2.0 * sq_xi2_c,
        c11=2.0 + 2.0 * big,
        c12=sq_xi2_c,
        c13=-0.5 - big,
        omega1=omega1,
        omega2=omega2,
        omega3=omega3,
    )


def effective_potential_approx(r: float, spec: MoleculeSpec, ell: int = 0) -> float:
    """Effective r-space potential encoded by the s-space radial equation.

    V_eff(r) = (hbar^2/2mu) * alpha^2 * [(A+B+C+F+G+4*lam)s^2
               - (A+2C+F)s + C] / (1-s)^2  with s = exp(-alpha*r).

    This is the potential whose radial Schroedinger problem transforms
    exactly into the solved s-space equation, so it is the reference
    problem for the finite-difference cross-check.  V_eff -> D as r -> inf.
    """
    if r <= 0:
        raise DomainError(f"r must be > 0, got {r}")
    dm = map_dimensionless(spec, ell)
    s = math.exp(-spec.alpha * r)
    one_minus = 1.0 - s
    if abs(one_minus) < DENOM_GUARD:
        raise DomainError(f"denominator underflow at r={r}")
    bracket = (
        (dm.A + dm.B + dm.C + dm.F + dm.G + 4.0 * dm.lambda_cent) * s * s
        - (dm.A + 2.0 * dm.C + dm.F) * s
        + dm.C
    )
    pref = spec.hbar**2 * spec.alpha**2 / (2.0 * spec.mu)
    return pref * bracket / (one_minus * one_minus)

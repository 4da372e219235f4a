"""Bound-state energies: primary closed form, simplified Q-parameterization,
level cutoff, and the quantization-condition residual used as a cross-check.

Three energy expressions coexist deliberately:

* ``energy``            the primary closed form, transcribed verbatim;
* ``energy_simplified`` the Q1/Q2/Q3/Delta form the thermodynamics uses;
* ``energy_effective``  the exact eigenvalue of the effective-potential
                        problem (the finite-difference oracle's target).

The three do not coincide in general; the validation report measures and
publishes their mutual discrepancies rather than hiding them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .model import DimensionlessSet, MoleculeSpec, QuantumNumbers, map_dimensionless, nu_coefficients


@dataclass(frozen=True)
class ThermoCoeffs:
    """Coefficients of the simplified spectrum E(n) = q1 - q2*(rho + q3/rho)^2
    with rho = n + delta, plus the level cap n_max.

    n_max is the interior stationary point of E(n) when one exists
    (n_max_interior True), else 0.
    """

    q1: float
    q2: float
    q3: float
    delta: float
    n_max: float
    n_max_interior: bool


def energy(nq: QuantumNumbers, spec: MoleculeSpec) -> float:
    """Primary closed-form energy of state (n, ell).

    E = -(alpha*hbar)^2/(2 mu) * [((n^2+n+1/2) + (2n+1) eta - A - 2F) /
        ((2n+1) + 2 eta)]^2 - G,
    with A, F, G, eta from the dimensionless mapping.  Transcribed verbatim;
    see energy_effective for the independently derived eigenvalue.
    """
    dm = map_dimensionless(spec, nq.ell)
    return _energy_from_dimless(nq.n, dm, spec)


def _energy_from_dimless(n: int, dm: DimensionlessSet, spec: MoleculeSpec) -> float:
    eta = dm.eta
    radicand = 0.25 + dm.B + dm.G + 4.0 * dm.lambda_cent
    if radicand < 0:
        raise DomainError(f"eta radicand negative: {radicand}")
    numerator = (n * n + n + 0.5) + (2 * n + 1) * eta - dm.A - 2.0 * dm.F
    denominator = (2 * n + 1) + 2.0 * eta
    pref = (spec.alpha * spec.hbar) ** 2 / (2.0 * spec.mu)
    return -pref * (numerator / denominator) ** 2 - dm.G


def energy_effective(nq: QuantumNumbers, spec: MoleculeSpec) -> float:
    """Exact eigenvalue of the radial problem built on effective_potential_approx.

    Derived by substituting the bound ansatz into the s-space equation:
    gamma_n = (A + F - u_n) / d_n with u_n = (n^2+n+1/2) + (2n+1) eta and
    d_n = (2n+1) + 2 eta, and E = D - (alpha*hbar)^2/(2 mu) * gamma_n^2.
    Differs from energy() whenever the Morse strength D is nonzero.
    Raises DomainError when the state is not bound (gamma_n <= 0).
    """
    dm = map_dimensionless(spec, nq.ell)
    n = nq.n
    u_n = (n * n + n + 0.5) + (2 * n + 1) * dm.eta
    d_n = (2 * n + 1) + 2.0 * dm.eta
    gamma_n = (dm.A + dm.F - u_n) / d_n
    if gamma_n <= 0:
        raise DomainError(
            f"state n={n}, ell={nq.ell} is not bound by the effective potential"
        )
    pref = (spec.alpha * spec.hbar) ** 2 / (2.0 * spec.mu)
    return spec.D - pref * gamma_n**2


def effective_state_count(spec: MoleculeSpec, ell: int = 0) -> int:
    """Number of bound states the effective-potential problem supports."""
    dm = map_dimensionless(spec, ell)
    count = 0
    while True:
        n = count
        u_n = (n * n + n + 0.5) + (2 * n + 1) * dm.eta
        d_n = (2 * n + 1) + 2.0 * dm.eta
        if (dm.A + dm.F - u_n) / d_n <= 0:
            return count
        count += 1


def thermo_coefficients(spec: MoleculeSpec, ell: int = 0) -> ThermoCoeffs:
    """Q-coefficients of the simplified spectrum, transcribed verbatim.

    q1 = -2 mu D b^2/(alpha hbar)^2, q2 = (alpha hbar)^2/(8 mu),
    q3 = -mu De re^2/(2 (alpha hbar)^2) - mu D b^2/(8 (alpha hbar)^2)
         - ell(ell+1)/4 - 4 mu De/(alpha hbar)^2,
    delta = 1/2 + (1/2) sqrt(1 + 2 mu De re^2/(alpha hbar)^2
            + mu D b^2/(2 (alpha hbar)^2) + ell(ell+1)).
    """
    if ell < 0 or int(ell) != ell:
        raise DomainError(f"ell must be an integer >= 0, got {ell}")
    mu, hbar, alpha = spec.mu, spec.hbar, spec.alpha
    ah2 = (alpha * hbar) ** 2
    q1 = -2.0 * mu * spec.D * spec.b**2 / ah2
    q2 = ah2 / (8.0 * mu)
    q3 = (
        -mu * spec.De * spec.re**2 / (2.0 * ah2)
        - mu * spec.D * spec.b**2 / (8.0 * ah2)
        - ell * (ell + 1) / 4.0
        - 4.0 * mu * spec.De / ah2
    )
    radicand = (
        1.0
        + 2.0 * mu * spec.De * spec.re**2 / ah2
        + mu * spec.D * spec.b**2 / (2.0 * ah2)
        + ell * (ell + 1)
    )
    delta = 0.5 + 0.5 * math.sqrt(radicand)
    n_max, interior = _n_max_analytic(q3, delta)
    coeffs = ThermoCoeffs(
        q1=q1, q2=q2, q3=q3, delta=delta, n_max=n_max, n_max_interior=interior
    )
    return coeffs


def energy_simplified(n: float, coeffs: ThermoCoeffs) -> float:
    """Simplified-spectrum energy q1 - q2*(rho + q3/rho)^2, rho = n + delta.

    Accepts real n so the classical-limit integral can evaluate it on a
    continuum.  Algebraically identical to the expanded form
    -(q2 rho^2 + q2 q3^2/rho^2) - (2 q2 q3 - q1).
    """
    rho = n + coeffs.delta
    if rho <= 0:
        raise DomainError(f"n + delta must be > 0, got {rho}")
    inner = rho + coeffs.q3 / rho
    return coeffs.q1 - coeffs.q2 * inner * inner


def energy_simplified_expanded(n: float, coeffs: ThermoCoeffs) -> float:
    """Expanded form of energy_simplified; equal by algebra, kept as a
    consistency cross-check."""
    rho = n + coeffs.delta
    if rho <= 0:
        raise DomainError(f"n + delta must be > 0, got {rho}")
    return -(coeffs.q2 * rho * rho + coeffs.q2 * coeffs.q3**2 / (rho * rho)) - (
        2.0 * coeffs.q2 * coeffs.q3 - coeffs.q1
    )


def _n_max_analytic(q3: float, delta: float) -> tuple[float, bool]:
    root = math.sqrt(abs(q3))
    if root <= delta:
        return 0.0, False
    return root - delta, True


def compute_n_max(coeffs: ThermoCoeffs, cross_check: bool = True) -> tuple[float, bool]:
    """Level cap: the stationary point of E(n), as (value, interior_flag).

    Analytic value max(0, sqrt(|q3|) - delta); when the stationary point is
    interior it is verified against a bracketing bisection root of dE/dn by
    central differences, and the two must agree within 1e-8.
    """
    if not coeffs.q2 > 0:
        raise DomainError("q2 must be > 0")
    value, interior = _n_max_analytic(coeffs.q3, coeffs.delta)
    if interior and cross_check:
        numeric = _n_max_numeric(coeffs, value)
        if abs(numeric - value) > 1e-8:
            raise DomainError(
                f"analytic stationary point {value} disagrees with numeric root "
                f"{numeric}"
            )
    return value, interior


def _n_max_numeric(coeffs: ThermoCoeffs, guess: float) -> float:
    h = 1e-6

    def de_dn(n: float) -> float:
        return (energy_simplified(n + h, coeffs) - energy_simplified(n - h, coeffs)) / (
            2.0 * h
        )

    lo, hi = 0.0, max(2.0 * guess + 1.0, guess + 10.0)
    f_lo = de_dn(lo + h)
    f_hi = de_dn(hi)
    if f_lo * f_hi > 0:
        raise DomainError("dE/dn does not bracket a sign change")
    a, b = lo + h, hi
    fa = f_lo
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = de_dn(mid)
        if fm == 0.0 or (b - a) < 1e-12:
            return mid
        if fa * fm < 0:
            b = mid
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)


def level_cap(coeffs: ThermoCoeffs) -> int:
    """Number of levels entering sums: n = 0 .. floor(n_max), inclusive."""
    return int(math.floor(coeffs.n_max)) + 1


def nu_condition_residual(
    energy_value: float,
    n: int,
    dimless: DimensionlessSet,
    branch: int = -1,
) -> float:
    """Signed residual of the parametric quantization condition at energy E.

    R = c2 n - (2n+1) c5 + (2n+1)(sqrt(c9) + c3 sqrt(c8)) + n(n-1) c3
        + c7 + 2 c3 c8 + 2 sqrt(c8 c9)

    ``branch`` selects the sign of sqrt(c8) (the square root of xi^2 is
    two-valued): branch = -1 reproduces the primary closed form in the
    zero-coupling collapse; branch = +1 is the branch on which generic
    strongly-coupled sets have their root.  A root in E is an eigenvalue
    candidate independent of the primary closed-form algebra.
    """
    if energy_value > 0:
        raise DomainError(f"residual defined for E <= 0, got {energy_value}")
    if branch not in (-1, 1):
        raise DomainError(f"branch must be -1 or +1, got {branch}")
    c = nu_coefficients(dimless, energy_value)
    if c.c8 < 0 or c.c9 < 0:
        raise DomainError("c8/c9 radicand negative")
    sqrt_c8 = branch * math.sqrt(c.c8)
    sqrt_c9 = math.sqrt(c.c9)
    return (
        c.c2 * n
        - (2 * n + 1) * c.c5
        + (2 * n + 1) * (sqrt_c9 + c.c3 * sqrt_c8)
        + n * (n - 1) * c.c3
        + c.c7
        + 2.0 * c.c3 * c.c8
        + 2.0 * sqrt_c8 * sqrt_c9
    )


def find_nu_root(
    n: int,
    dimless: DimensionlessSet,
    spec: MoleculeSpec,
    e_floor: float | None = None,
) -> tuple[float, int] | None:
    """Root of the quantization-condition residual in E, trying both branches.

    Returns (energy, branch) or None when neither branch brackets a root in
    (e_floor, 0).  Bisection; deterministic.
    """
    if e_floor is None:
        scale = (spec.alpha * spec.hbar) ** 2 / (2.0 * spec.mu)
        dm = dimless
        big = (dm.A + 2.0 * dm.C + dm.F + (n * n + n + 1.0) * (1.0 + dm.eta)) ** 2
        e_floor = -scale * max(big, 4.0)
    for branch in (-1, 1):
        root = _bisect_residual(n, dimless, branch, e_floor)
        if root is not None:
            return root, branch
    return None


def _bisect_residual(
    n: int, dimless: DimensionlessSet, branch: int, e_floor: float
) -> float | None:
    lo, hi = e_floor, -1e-300

    def res(e: float) -> float:
        return nu_condition_residual(e, n, dimless, branch)

    f_lo, f_hi = res(lo), res(hi)
    if f_lo == 0.0:
        return lo
    if f_lo * f_hi > 0:
        return None
    a, b, fa = lo, hi, f_lo
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = res(mid)
        if fm == 0.0 or (b - a) < 1e-15 * max(1.0, abs(a)):
            return mid
        if fa * fm < 0:
            b = mid
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)

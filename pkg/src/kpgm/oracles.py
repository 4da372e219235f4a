"""Independent numerical machinery that adjudicates the closed forms.

Nothing in here reuses the closed-form algebra it is meant to check:
integration is adaptive Simpson, differentiation is Richardson-extrapolated
central differences, the radial eigensolver is a second-order finite
difference discretization, and the special-function oracles are
extended-precision series/sums evaluated with mpmath.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import mpmath as mp
import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConvergenceError, DomainError, QuadratureError

_ORACLE_DPS = 50


@dataclass(frozen=True)
class GridSpec:
    """Uniform radial grid: count points from r_min to r_max inclusive."""

    r_min: float
    r_max: float
    count: int

    def __post_init__(self):
        if not self.r_min > 0:
            raise DomainError(f"r_min must be > 0, got {self.r_min}")
        if not self.r_max > self.r_min:
            raise DomainError("r_max must exceed r_min")
        if self.count < 16:
            raise DomainError(f"count must be >= 16, got {self.count}")


def quad_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_evals: int = 2_000_000,
    initial_panels: int = 16,
) -> float:
    """Adaptive Simpson integration of f over [a, b].

    The recursion is seeded with ``initial_panels`` equal panels so that
    features narrower than the full interval are not skipped by the first
    coarse estimate.  The estimated error is at most tol relative to the
    result, or tol absolute for near-zero results.  Deterministic for
    fixed inputs.
    """
    if not a < b:
        raise DomainError(f"need a < b, got [{a}, {b}]")
    if not tol > 0:
        raise DomainError("tol must be > 0")
    if initial_panels < 1:
        raise DomainError("initial_panels must be >= 1")

    evals = [0]

    def feval(x: float) -> float:
        evals[0] += 1
        if evals[0] > max_evals:
            raise QuadratureError(f"evaluation budget {max_evals} exhausted")
        y = f(x)
        if not math.isfinite(y):
            raise QuadratureError(f"integrand not finite at x={x}")
        return y

    def simpson(x0, f0, x2, f2):
        x1 = 0.5 * (x0 + x2)
        f1 = feval(x1)
        return x1, f1, (x2 - x0) * (f0 + 4.0 * f1 + f2) / 6.0

    edges = [a + (b - a) * i / initial_panels for i in range(initial_panels + 1)]
    edges[-1] = b
    f_edges = [feval(x) for x in edges]
    panels = []
    rough = 0.0
    for (x0, f0, x2, f2) in zip(edges[:-1], f_edges[:-1], edges[1:], f_edges[1:]):
        xm, fm_, s = simpson(x0, f0, x2, f2)
        panels.append((x0, f0, x2, f2, xm, fm_, s))
        rough += s
    scale = max(abs(rough), 1.0)
    eps0 = tol * scale / initial_panels

    # Stack of (x0, f0, x2, f2, xm, fm, S, local tolerance, depth).
    total = 0.0
    stack = [p + (eps0, 0) for p in panels]
    while stack:
        x0, f0, x2, f2, xm, fm_, s_whole, eps, depth = stack.pop()
        lm, flm, s_left = simpson(x0, f0, xm, fm_)
        rm, frm, s_right = simpson(xm, fm_, x2, f2)
        delta = s_left + s_right - s_whole
        if depth > 60:
            raise QuadratureError(f"max subdivision depth at x={xm}")
        if abs(delta) <= 15.0 * eps:
            total += s_left + s_right + delta / 15.0
        else:
            half = 0.5 * eps
            stack.append((x0, f0, xm, fm_, lm, flm, s_left, half, depth + 1))
            stack.append((xm, fm_, x2, f2, rm, frm, s_right, half, depth + 1))
    return total


def quad_semi_infinite(
    f: Callable[[float], float], a: float = 0.0, tol: float = 1e-10
) -> float:
    """Integral of f over [a, inf) via the map x = a + t/(1-t).

    Requires f to decay faster than 1/x^2 (exponential decay in practice);
    the mapped integrand is taken as 0 at t = 1.
    """

    def mapped(t: float) -> float:
        if t >= 1.0 - 1e-14:
            return 0.0
        one_minus = 1.0 - t
        x = a + t / one_minus
        return f(x) / (one_minus * one_minus)

    return quad_adaptive(mapped, 0.0, 1.0, tol=tol)


def derivative(
    f: Callable[[float], complex],
    x: float,
    order: int = 1,
    h0: float | None = None,
    levels: int = 4,
) -> tuple[complex, float]:
    """Richardson-extrapolated central-difference derivative of f at x.

    Returns (value, error_estimate).  Works for real- or complex-valued f.
    """
    if order not in (1, 2):
        raise DomainError(f"order must be 1 or 2, got {order}")
    if h0 is None:
        h0 = max(abs(x), 1.0) * 1e-2
    if levels < 3:
        levels = 3

    def stencil(h: float) -> complex:
        if order == 1:
            return (f(x + h) - f(x - h)) / (2.0 * h)
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)

    table = [[stencil(h0 / 2**i)] for i in range(levels)]
    for j in range(1, levels):
        fac = 4.0**j
        for i in range(j, levels):
            table[i].append(
                (fac * table[i][j - 1] - table[i - 1][j - 1]) / (fac - 1.0)
            )
    best = table[levels - 1][levels - 1]
    err = abs(best - table[levels - 2][levels - 2])
    return best, err


def _fd_levels(
    veff: Callable[[float], float],
    grid: GridSpec,
    mu: float,
    hbar: float,
    count_states: int,
    points: int,
) -> np.ndarray:
    """Lowest eigenvalues of the Dirichlet FD discretization on one grid."""
    r = np.linspace(grid.r_min, grid.r_max, points)
    h = r[1] - r[0]
    interior = r[1:-1]
    v = np.array([veff(x) for x in interior])
    if not np.all(np.isfinite(v)):
        raise DomainError("potential not finite on the grid")
    kin = hbar * hbar / (2.0 * mu * h * h)
    diag = 2.0 * kin + v
    off = np.full(len(interior) - 1, -kin)
    vals = eigh_tridiagonal(
        diag, off, select="i", select_range=(0, count_states - 1), eigvals_only=True
    )
    return vals


def fd_eigensolve(
    veff: Callable[[float], float],
    grid: GridSpec,
    mu: float,
    hbar: float,
    count_states: int,
    tol: float = 1e-4,
) -> list[float]:
    """Lowest bound eigenvalues of -(hbar^2/2mu) psi'' + veff psi = E psi.

    Dirichlet conditions at both grid ends; symmetric tridiagonal
    discretization solved at the grid and at double resolution, then
    Richardson-extrapolated in h^2.  Raises ConvergenceError when doubling
    still moves an eigenvalue by more than tol (relative to max(1, |E|)).
    """
    if count_states < 1:
        raise DomainError("count_states must be >= 1")
    coarse = _fd_levels(veff, grid, mu, hbar, count_states, grid.count)
    fine = _fd_levels(veff, grid, mu, hbar, count_states, 2 * grid.count - 1)
    extrap = (4.0 * fine - coarse) / 3.0
    for e_c, e_f, e_x in zip(coarse, fine, extrap):
        err = abs(e_f - e_c) / 3.0
        if err > tol * max(1.0, abs(e_x)):
            raise ConvergenceError(
                f"eigenvalue moved by {err} on grid doubling (tol {tol})"
            )
    return [float(e) for e in extrap]


def jacobi_sum_oracle(n: int, a: float, b: float, x: float) -> float:
    """Jacobi polynomial by the explicit finite sum, in 50-digit arithmetic.

    P_n^(a,b)(x) = sum_k C(n+a, n-k) C(n+b, k) ((x-1)/2)^k ((x+1)/2)^(n-k).
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be an integer >= 0, got {n}")
    if n > 15:
        raise DomainError(f"sum oracle limited to n <= 15, got {n}")
    with mp.workdps(_ORACLE_DPS):
        am, bm, xm = mp.mpf(a), mp.mpf(b), mp.mpf(x)
        half_minus = (xm - 1) / 2
        half_plus = (xm + 1) / 2
        total = mp.mpf(0)
        for k in range(n + 1):
            term = (
                mp.binomial(n + am, n - k)
                * mp.binomial(n + bm, k)
                * half_minus**k
                * half_plus ** (n - k)
            )
            total += term
        return float(total)


def erf_series_oracle(z: complex) -> complex:
    """Maclaurin series of erf with extended-precision accumulation.

    erf(z) = (2/sqrt(pi)) sum_k (-1)^k z^(2k+1) / (k! (2k+1)), |z| <= 4.
    """
    z = complex(z)
    if abs(z) > 4.0:
        raise DomainError(f"series oracle limited to |z| <= 4, got {abs(z)}")
    with mp.workdps(_ORACLE_DPS):
        zm = mp.mpc(z.real, z.imag)
        total = mp.mpc(0)
        term = zm
        k = 0
        while abs(term) > mp.mpf(10) ** (-2 * _ORACLE_DPS) and k < 500:
            total += term / (2 * k + 1)
            k += 1
            term = -term * zm * zm / k
        total *= 2 / mp.sqrt(mp.pi)
        return complex(total)

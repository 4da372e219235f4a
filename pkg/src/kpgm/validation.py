"""Oracle suite: every closed form is adjudicated by an independent
numerical route and the outcomes are assembled into a structured report.

Check kinds:

* ``hard``    must pass; any failure makes the validate command exit 2.
* ``soft``    measured and reported, never fatal (documented quantities
              whose exact value is itself a finding, like the closed-form
              normalization ratio).
* ``finding`` a measured discrepancy between two published expressions
              that cannot both be right; reported with its magnitude.

The primary-vs-finite-difference energy comparison is hard when the Morse
strength D vanishes (the primary closed form is then the exact spectrum of
the effective problem) and a finding otherwise, where the two provably
part ways by a constant offset D and a factor-2 coupling term.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .errors import DomainError
from .model import (
    MoleculeSpec,
    QuantumNumbers,
    effective_potential_approx,
    greene_aldrich_inverse_r,
    map_dimensionless,
)
from .oracles import (
    GridSpec,
    derivative,
    erf_series_oracle,
    fd_eigensolve,
    jacobi_sum_oracle,
)
from .specfun import erf_complex, jacobi, ln_gamma
from .spectrum import (
    ThermoCoeffs,
    energy,
    energy_effective,
    energy_simplified,
    effective_state_count,
    find_nu_root,
    level_cap,
    thermo_coefficients,
)
from .thermo import (
    _ClosedPieces,
    closed_integrand,
    entropy_complex,
    free_energy,
    heat_capacity,
    level_energies,
    mean_energy_complex,
    partition_closed,
    partition_direct,
    partition_integral,
    zeta_form_deviation,
)
from .wavefunction import closed_norm_ratio, count_nodes, numeric_norm


@dataclass
class Check:
    name: str
    kind: str  # hard | soft | finding
    status: str  # pass | fail | info
    measured: float
    tolerance: float | None
    details: str

    def failed_hard(self) -> bool:
        return self.kind == "hard" and self.status == "fail"


def _hard(name: str, measured: float, tol: float, details: str = "") -> Check:
    status = "pass" if measured <= tol else "fail"
    return Check(name, "hard", status, measured, tol, details)


def _info(name: str, kind: str, measured: float, details: str = "") -> Check:
    return Check(name, kind, "info", measured, None, details)


# ---------------------------------------------------------------------------
# individual checks


def check_special_functions() -> list[Check]:
    checks = []
    worst = 0.0
    xs = np.linspace(-1.0, 1.0, 41)
    for n in range(13):
        for a in (-0.5, 0.0, 0.7, 2.3):
            for b in (-0.5, 0.0, 0.7, 2.3):
                for x in xs[::4] if n > 6 else xs:
                    ref = jacobi_sum_oracle(n, a, b, float(x))
                    val = jacobi(n, a, b, float(x))
                    worst = max(worst, abs(val - ref) / max(1.0, abs(ref)))
    checks.append(_hard("jacobi_recurrence_vs_sum", worst, 1e-10))

    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(200):
        z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        if abs(z) > 3:
            z *= 3.0 / abs(z)
        ref = erf_series_oracle(z)
        val = erf_complex(z)
        worst = max(worst, abs(val - ref) / max(1.0, abs(ref)))
    checks.append(_hard("erf_complex_vs_series", worst, 1e-10))

    worst = 0.0
    for x in np.geomspace(1e-3, 1e4, 300):
        lhs = ln_gamma(x + 1.0)
        rhs = ln_gamma(x) + math.log(x)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    checks.append(_hard("ln_gamma_recursion", worst, 1e-13))

    worst = 0.0
    rng = np.random.default_rng(7)
    for _ in range(100):
        r = float(rng.uniform(0.05, 10.0))
        alpha = float(rng.uniform(0.1, 3.0))
        first, second = greene_aldrich_inverse_r(r, alpha)
        worst = max(worst, abs(second - first * first) / abs(second))
    checks.append(_hard("inverse_r_square_identity", worst, 1e-14))
    return checks


def _fd_grid(spec: MoleculeSpec, ell: int, gammas: list[float]) -> GridSpec:
    gamma_min = min(gammas) if gammas else 1.0
    alpha_rmax = max(40.0, 24.0 / max(gamma_min, 0.1))
    return GridSpec(1e-3 / spec.alpha, alpha_rmax / spec.alpha, 3000)


def check_fd_spectrum(spec: MoleculeSpec, ell: int, n_states: int = 3) -> list[Check]:
    """Finite-difference eigenvalues vs the closed forms."""
    checks: list[Check] = []
    bound = min(n_states, effective_state_count(spec, ell))
    if bound == 0:
        checks.append(
            _info(
                f"fd_vs_effective_ell{ell}",
                "soft",
                0.0,
                "no bound states in the effective problem; box-level wiring "
                "check is exercised by the test suite instead",
            )
        )
        return checks
    gammas = []
    dm = map_dimensionless(spec, ell)
    for n in range(bound):
        u_n = (n * n + n + 0.5) + (2 * n + 1) * dm.eta
        d_n = (2 * n + 1) + 2.0 * dm.eta
        gammas.append((dm.A + dm.F - u_n) / d_n)
    grid = _fd_grid(spec, ell, gammas)
    veff = lambda r: effective_potential_approx(r, spec, ell)
    levels = fd_eigensolve(veff, grid, spec.mu, spec.hbar, bound, tol=1e-3)

    worst_eff = 0.0
    worst_primary = 0.0
    rows = []
    for n, e_fd in enumerate(levels):
        e_eff = energy_effective(QuantumNumbers(n, ell), spec)
        e_13 = energy(QuantumNumbers(n, ell), spec)
        rel_eff = abs(e_fd - e_eff) / max(abs(e_eff), 1e-12)
        rel_13 = abs(e_fd - e_13) / max(abs(e_13), 1e-12)
        worst_eff = max(worst_eff, rel_eff)
        worst_primary = max(worst_primary, rel_13)
        rows.append(f"n={n}: fd={e_fd:.9g} effective={e_eff:.9g} primary={e_13:.9g}")
    checks.append(
        _hard(
            f"fd_vs_effective_ell{ell}",
            worst_eff,
            1e-3,
            "; ".join(rows),
        )
    )
    kind = "hard" if spec.D == 0.0 else "finding"
    status = "pass" if worst_primary <= 1e-3 else ("fail" if kind == "hard" else "info")
    checks.append(
        Check(
            f"fd_vs_primary_ell{ell}",
            kind,
            status,
            worst_primary,
            1e-3,
            "primary closed form vs finite-difference oracle; for D > 0 the two "
            "differ by a constant offset D and a factor-2 linear-Morse coupling "
            "term, so the discrepancy is reported as a finding",
        )
    )
    return checks


def check_nu_condition(spec: MoleculeSpec, ell: int, n_states: int = 3) -> list[Check]:
    checks = []
    dm = map_dimensionless(spec, ell)
    for n in range(n_states):
        e_primary = energy(QuantumNumbers(n, ell), spec)
        found = find_nu_root(n, dm, spec)
        if found is None:
            checks.append(
                _info(
                    f"nu_root_n{n}_ell{ell}",
                    "finding",
                    float("nan"),
                    "no quantization-condition root on either branch in (E_floor, 0)",
                )
            )
            continue
        e_root, branch = found
        rel = abs(e_root - e_primary) / max(abs(e_primary), 1e-12)
        if rel <= 1e-3:
            checks.append(
                Check(
                    f"nu_root_n{n}_ell{ell}",
                    "hard",
                    "pass",
                    rel,
                    1e-3,
                    f"root {e_root:.9g} (branch {branch:+d}) brackets primary {e_primary:.9g}",
                )
            )
        else:
            checks.append(
                _info(
                    f"nu_root_n{n}_ell{ell}",
                    "finding",
                    rel,
                    f"quantization-condition root {e_root:.9g} (branch {branch:+d}) "
                    f"disagrees with primary closed form {e_primary:.9g}",
                )
            )
    return checks


def check_wavefunctions(spec: MoleculeSpec, ell: int, states: list[int]) -> list[Check]:
    from .wavefunction import wavefunction_value
    from .oracles import quad_semi_infinite

    checks = []
    worst_norm = 0.0
    node_fail = []
    for n in states:
        nq = QuantumNumbers(n, ell)

        def rho(r: float, nq=nq) -> float:
            if r <= 0:
                return 0.0
            v = wavefunction_value(r, nq, spec)
            return v * v

        total = quad_semi_infinite(rho, 0.0, tol=1e-10)
        worst_norm = max(worst_norm, abs(total - 1.0))
        nodes = count_nodes(nq, spec)
        if nodes != n:
            node_fail.append(f"n={n}: {nodes} nodes")
    checks.append(_hard(f"norm_unity_ell{ell}", worst_norm, 1e-6))
    checks.append(
        Check(
            f"node_counts_ell{ell}",
            "hard",
            "pass" if not node_fail else "fail",
            float(len(node_fail)),
            0.0,
            "; ".join(node_fail) or "all node counts equal n",
        )
    )
    return checks


def check_norm_ratio(spec: MoleculeSpec, ell: int, states: list[int]) -> list[Check]:
    checks = []
    ratios = []
    reproducibility = 0.0
    for n in states:
        nq = QuantumNumbers(n, ell)
        first = closed_norm_ratio(nq, spec)
        numeric_norm.cache_clear()
        second = closed_norm_ratio(nq, spec)
        reproducibility = max(reproducibility, abs(first - second) / abs(first))
        ratios.append(f"n={n}: {first:.12g}")
    checks.append(
        _info(
            f"closed_norm_ratio_ell{ell}",
            "soft",
            float("nan"),
            "closed-form constant / quadrature norm: " + "; ".join(ratios),
        )
    )
    checks.append(_hard(f"closed_norm_ratio_reproducible_ell{ell}", reproducibility, 1e-10))
    return checks


def check_antiderivative(
    coeffs: ThermoCoeffs,
    betas: list[float],
    lams: list[float],
) -> list[Check]:
    """d(partition_closed)/d lam vs the closed-form integrand on a grid."""
    worst = 0.0
    worst_im = 0.0
    worst_im_model = 0.0
    im_points = 0
    for beta in betas:
        for lam in lams:
            target = closed_integrand(beta, coeffs, lam)
            dz, _ = derivative(
                lambda L: partition_closed(beta, coeffs, L).real,
                lam,
                order=1,
                h0=1e-3 * lam,
            )
            worst = max(worst, abs(dz - target) / abs(target))
            z = partition_closed(beta, coeffs, lam)
            worst_im = max(worst_im, abs(z.imag) / max(abs(z.real), 1e-300))
            # analytic value of the lam-independent imaginary constant
            a0 = math.sqrt(beta * coeffs.q2)
            c0 = a0 * abs(coeffs.q3)
            e1 = -beta * coeffs.q1 + 2.0 * beta * coeffs.q2 * coeffs.q3 + 2.0 * a0 * c0
            im_pred = -(math.sqrt(math.pi) / (4.0 * a0)) * math.exp(e1) * (
                1.0 - math.exp(-4.0 * a0 * c0)
            )
            # the constant is only representable in double precision where it
            # is not dwarfed by |Z|; below that it is roundoff of the angle
            if abs(im_pred) >= 1e-9 * abs(z):
                im_points += 1
                worst_im_model = max(
                    worst_im_model, abs(z.imag - im_pred) / abs(im_pred)
                )
    checks = [_hard("antiderivative_property", worst, 1e-6)]
    kind = "hard" if coeffs.q3 == 0.0 else "finding"
    status = "pass" if worst_im <= 1e-8 else ("fail" if kind == "hard" else "info")
    checks.append(
        Check(
            "im_over_re",
            kind,
            status,
            worst_im,
            1e-8,
            "imaginary part of the closed form is a lam-independent constant "
            "that vanishes only for q3 = 0; nonzero values are a property of "
            "the formula, not an evaluation error",
        )
    )
    if coeffs.q3 != 0.0 and im_points:
        checks.append(
            _hard(
                "im_z_matches_analytic_constant",
                worst_im_model,
                1e-6,
                "Im Z equals -(sqrt(pi)/(4 a0)) e^(E1) (1 - e^(-4 a0 c0)) at the "
                f"{im_points} grid points where the constant is resolvable",
            )
        )
    return checks


def check_thermo_derivatives(
    coeffs: ThermoCoeffs,
    lam: float,
    betas: list[float],
    k: float = 1.0,
) -> list[Check]:
    """Closed-form U, C, S, F vs Richardson derivatives of ln Z_closed."""
    worst_u = worst_c = worst_s = worst_f = 0.0
    f_points = 0
    for beta in betas:
        pieces_ln = lambda B: _ClosedPieces(B, coeffs, lam).ln_z()
        u_closed = mean_energy_complex(beta, coeffs, lam)
        du, _ = derivative(pieces_ln, beta, order=1, h0=2e-2 * beta)
        worst_u = max(worst_u, abs((-du) - u_closed) / abs(u_closed))
        c_closed = heat_capacity(beta, coeffs, lam, k)
        d2, _ = derivative(pieces_ln, beta, order=2, h0=5e-2 * beta)
        c_numeric = (k * beta * beta * d2).real
        worst_c = max(worst_c, abs(c_numeric - c_closed) / max(abs(c_closed), 1e-12))
        s_closed = entropy_complex(beta, coeffs, lam, k)
        s_numeric = k * (pieces_ln(beta) + beta * (-du))
        worst_s = max(worst_s, abs(s_numeric - s_closed) / max(abs(s_closed), 1e-12))
        z = partition_closed(beta, coeffs, lam)
        if z.real > 0:
            f_closed = free_energy(beta, coeffs, lam)
            f_ref = -math.log(z.real) / beta
            worst_f = max(worst_f, abs(f_closed - f_ref) / max(abs(f_ref), 1e-12))
            f_points += 1
    checks = [
        _hard("closed_u_vs_numeric", worst_u, 1e-5),
        _hard("closed_c_vs_numeric", worst_c, 1e-4),
        _hard("closed_s_vs_numeric", worst_s, 1e-5),
        _hard(
            "closed_f_vs_numeric",
            worst_f,
            1e-6,
            f"{f_points} grid points with positive real projection",
        ),
    ]
    return checks


def check_direct_identities(spec: MoleculeSpec, ell: int, betas: list[float]) -> list[Check]:
    """Thermodynamic identities among the stored direct-path fields, plus a
    numeric-derivative cross-check of the moment formulas."""
    from .thermo import thermo_point

    k = spec.k_boltz
    worst_s = worst_f = 0.0
    worst_u_numeric = worst_c_numeric = 0.0
    ln_z_direct = lambda b: math.log(partition_direct(b, spec, ell))
    for beta in betas:
        pt = thermo_point(beta, spec, ell, path="direct")
        worst_s = max(worst_s, abs(pt.s / k - (math.log(pt.z_re) + beta * pt.u)))
        t = 1.0 / (k * beta)
        worst_f = max(worst_f, abs(pt.f - (pt.u - t * pt.s)))
        du, _ = derivative(ln_z_direct, beta, order=1, h0=2e-2 * beta)
        worst_u_numeric = max(
            worst_u_numeric, abs(-du.real - pt.u) / max(abs(pt.u), 1e-12)
        )
        d2, _ = derivative(ln_z_direct, beta, order=2, h0=5e-2 * beta)
        c_numeric = k * beta * beta * d2.real
        # scale floor keeps degenerate single-level ladders (C identically 0)
        # from dividing Richardson noise by an epsilon
        worst_c_numeric = max(
            worst_c_numeric, abs(c_numeric - pt.c) / max(abs(pt.c), 1e-3)
        )
    return [
        _hard("direct_entropy_identity", worst_s, 1e-9),
        _hard("direct_free_energy_identity", worst_f, 1e-9),
        _hard("direct_u_vs_numeric", worst_u_numeric, 1e-7),
        _hard("direct_c_vs_numeric", worst_c_numeric, 1e-5),
    ]


def check_z_monotone(spec: MoleculeSpec, ell: int, betas: list[float]) -> list[Check]:
    levels = level_energies(spec, ell)
    all_negative = all(e < 0 for e in levels)
    values = [partition_direct(b, spec, ell) for b in betas]
    increasing = all(b > a for a, b in zip(values, values[1:]))
    if not all_negative:
        return [
            _info(
                "direct_z_monotone",
                "soft",
                0.0,
                "spectrum not all-negative; monotonicity not required",
            )
        ]
    return [
        Check(
            "direct_z_monotone",
            "hard",
            "pass" if increasing else "fail",
            0.0 if increasing else 1.0,
            0.0,
            "Z strictly increasing in beta for the all-negative ladder",
        )
    ]


def check_partition_rules(coeffs: ThermoCoeffs, betas: list[float]) -> list[Check]:
    worst = 0.0
    for beta in betas:
        a = partition_integral(beta, coeffs, rule="adaptive")
        g = partition_integral(beta, coeffs, rule="gauss")
        if a != 0.0:
            worst = max(worst, abs(a - g) / abs(a))
    return [_hard("integral_rules_agree", worst, 1e-8)]


def check_energy_form_discrepancy(spec: MoleculeSpec, ell: int, states: list[int]) -> list[Check]:
    coeffs = thermo_coefficients(spec, ell)
    rows = []
    worst = 0.0
    for n in states:
        e13 = energy(QuantumNumbers(n, ell), spec)
        e23 = energy_simplified(n, coeffs)
        rel = abs(e13 - e23) / max(abs(e13), 1e-12)
        worst = max(worst, rel)
        rows.append(f"n={n}: primary={e13:.9g} simplified={e23:.9g} rel={rel:.3g}")
    return [
        _info(
            f"primary_vs_simplified_ell{ell}",
            "soft",
            worst,
            "; ".join(rows),
        )
    ]


def check_zeta_forms(coeffs: ThermoCoeffs, lam: float, beta: float) -> list[Check]:
    dev = zeta_form_deviation(beta, coeffs, lam)
    parts = ", ".join(f"{k}={v:.6g}" for k, v in dev.items())
    return [
        _info(
            "zeta_form_deviation",
            "finding",
            max(v for v in dev.values() if not math.isnan(v)),
            "verbatim zeta expressions vs defining derivatives at "
            f"beta={beta}, lam={lam}: {parts}",
        )
    ]


def check_lam_sweep_diagnostics(
    spec: MoleculeSpec, ell: int, beta: float, lams: list[float]
) -> list[Check]:
    coeffs = thermo_coefficients(spec, ell)
    zs = [partition_closed(beta, coeffs, lam).real for lam in lams]
    decreasing = all(b < a for a, b in zip(zs, zs[1:]))
    return [
        _info(
            "closed_z_lam_sweep",
            "soft",
            0.0,
            f"Re Z over lam={lams[0]:.3g}..{lams[-1]:.3g} at beta={beta}: "
            + ("monotone decreasing" if decreasing else "not monotone decreasing"),
        )
    ]


# ---------------------------------------------------------------------------
# report assembly


def build_report(spec: MoleculeSpec, ell: int = 0, states: list[int] | None = None) -> dict:
    """Run the full oracle suite for one molecule and assemble the report."""
    t0 = time.perf_counter()
    if states is None:
        states = [0, 1, 2, 3]
    coeffs = thermo_coefficients(spec, ell)
    lam = max(coeffs.n_max, 1.0)
    betas_grid = [0.1 + 1.9 * i / 19 for i in range(20)]
    lam_grid = [0.5 + 2.5 * i / 9 for i in range(10)]
    # keep the closed-form integrand exponent representable on the grid
    worst_coef = (
        coeffs.q2 * lam_grid[0] ** 2
        + coeffs.q2 * coeffs.q3**2 / lam_grid[0] ** 2
        + abs(2.0 * coeffs.q2 * coeffs.q3 - coeffs.q1)
    )
    beta_hi = min(2.0, 600.0 / max(worst_coef, 1.0))
    anti_betas = [0.1 * beta_hi + 0.9 * beta_hi * i / 9 for i in range(10)]

    checks: list[Check] = []
    checks += check_special_functions()
    checks += check_fd_spectrum(spec, ell)
    checks += check_nu_condition(spec, ell)
    checks += check_wavefunctions(spec, ell, states)
    checks += check_norm_ratio(spec, ell, states)
    checks += check_antiderivative(coeffs, anti_betas, lam_grid)
    checks += check_thermo_derivatives(coeffs, lam, betas_grid)
    checks += check_direct_identities(spec, ell, betas_grid)
    checks += check_z_monotone(spec, ell, betas_grid)
    checks += check_partition_rules(coeffs, betas_grid[::4])
    checks += check_energy_form_discrepancy(spec, ell, states)
    if coeffs.q3 != 0.0:
        checks += check_zeta_forms(coeffs, lam, betas_grid[5])
    checks += check_lam_sweep_diagnostics(spec, ell, betas_grid[5], lam_grid)

    hard_failures = [c.name for c in checks if c.failed_hard()]
    return {
        "artifact": f"kpgm {__version__}",
        "molecule": {
            "name": spec.name,
            "mu": spec.mu,
            "hbar": spec.hbar,
            "De": spec.De,
            "re": spec.re,
            "D": spec.D,
            "b": spec.b,
            "alpha": spec.alpha,
            "k": spec.k_boltz,
        },
        "ell": ell,
        "n_max": coeffs.n_max,
        "levels": level_cap(coeffs),
        "elapsed_seconds": round(time.perf_counter() - t0, 3),
        "checks": [asdict(c) for c in checks],
        "hard_failures": hard_failures,
        "ok": not hard_failures,
    }

import math

import numpy as np
import pytest

from kpgm.errors import DomainError
from kpgm.model import QuantumNumbers, effective_potential_approx, map_dimensionless
from kpgm.oracles import GridSpec, fd_eigensolve
from kpgm.spectrum import (
    ThermoCoeffs,
    compute_n_max,
    effective_state_count,
    energy,
    energy_effective,
    energy_simplified,
    energy_simplified_expanded,
    find_nu_root,
    level_cap,
    nu_condition_residual,
    thermo_coefficients,
)


class TestPrimaryEnergy:
    def test_null_coupling_collapse(self, null_spec):
        # with all couplings off the closed form collapses to
        # -(alpha^2 hbar^2 / 2 mu) ((n+1)/2)^2
        assert energy(QuantumNumbers(0, 0), null_spec) == pytest.approx(-0.125)
        assert energy(QuantumNumbers(2, 0), null_spec) == pytest.approx(-1.125)

    def test_collapse_formula_all_n(self, null_spec):
        for n in range(6):
            expected = -0.5 * ((n + 1) / 2.0) ** 2
            assert energy(QuantumNumbers(n, 0), null_spec) == pytest.approx(
                expected, rel=1e-15
            )

    def test_frozen_generic_values(self, derived_spec):
        assert energy(QuantumNumbers(0, 0), derived_spec) == pytest.approx(
            -9.3531351043362773969, rel=1e-14
        )
        assert energy(QuantumNumbers(1, 0), derived_spec) == pytest.approx(
            -9.0757796044123113989, rel=1e-14
        )
        assert energy(QuantumNumbers(2, 0), derived_spec) == pytest.approx(
            -9.0003045843557126699, rel=1e-14
        )

    def test_bracket_invariant_under_mu_hbar2_scaling(self, derived_spec):
        from kpgm.model import MoleculeSpec

        c = 2.5
        scaled = MoleculeSpec(
            mu=c * derived_spec.mu,
            hbar=math.sqrt(c) * derived_spec.hbar,
            De=derived_spec.De,
            re=derived_spec.re,
            D=derived_spec.D,
            b=derived_spec.b,
            alpha=derived_spec.alpha,
        )
        for n in range(3):
            assert energy(QuantumNumbers(n, 0), scaled) == pytest.approx(
                energy(QuantumNumbers(n, 0), derived_spec), rel=1e-13
            )


class TestEffectiveEnergy:
    def test_agrees_with_primary_when_morse_off(self, kratzer_spec):
        # with D = 0 the primary closed form is the exact spectrum
        for n in range(effective_state_count(kratzer_spec, 0)):
            assert energy_effective(QuantumNumbers(n, 0), kratzer_spec) == pytest.approx(
                energy(QuantumNumbers(n, 0), kratzer_spec), rel=1e-13
            )

    def test_fd_oracle_agreement(self, deep_spec):
        # the finite-difference solver is the adjudicating oracle
        for ell in (0, 1):
            veff = lambda r: effective_potential_approx(r, deep_spec, ell)
            grid = GridSpec(1e-3 / deep_spec.alpha, 40.0 / deep_spec.alpha, 3000)
            levels = fd_eigensolve(veff, grid, 1.0, 1.0, 3, tol=1e-3)
            for n, e_fd in enumerate(levels):
                e_cl = energy_effective(QuantumNumbers(n, ell), deep_spec)
                assert e_fd == pytest.approx(e_cl, rel=1e-6)

    def test_unbound_state_raises(self, derived_spec):
        # the derived well holds two levels at ell = 0
        assert effective_state_count(derived_spec, 0) == 2
        with pytest.raises(DomainError):
            energy_effective(QuantumNumbers(2, 0), derived_spec)

    def test_null_well_holds_nothing(self, null_spec):
        assert effective_state_count(null_spec, 0) == 0


class TestThermoCoefficients:
    def test_q2_direct_substitution(self):
        from kpgm.model import MoleculeSpec

        spec = MoleculeSpec(De=1.0, re=1.0, D=0.0, b=0.0, alpha=2.0)
        assert thermo_coefficients(spec, 0).q2 == pytest.approx(0.5)

    def test_null_coupling_values(self, null_spec):
        co = thermo_coefficients(null_spec, 0)
        assert co.q1 == 0.0
        assert co.q3 == 0.0
        assert co.delta == pytest.approx(1.0)
        assert not co.n_max_interior

    def test_frozen_generic_values(self, derived_spec):
        co = thermo_coefficients(derived_spec, 0)
        assert co.q1 == pytest.approx(-9.0, rel=1e-14)
        assert co.q2 == pytest.approx(0.02, rel=1e-14)
        assert co.q3 == pytest.approx(-32.59375, rel=1e-14)
        assert co.delta == pytest.approx(3.3006695628010099114, rel=1e-14)
        assert co.n_max == pytest.approx(2.4084240605336083418, rel=1e-12)
        assert co.n_max_interior
        assert level_cap(co) == 3


class TestEnergySimplified:
    def test_null_single_level(self, null_spec):
        co = thermo_coefficients(null_spec, 0)
        assert energy_simplified(0, co) == pytest.approx(-0.125)

    def test_compact_equals_expanded(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            co = ThermoCoeffs(
                q1=float(rng.uniform(-10, 2)),
                q2=float(rng.uniform(0.001, 2.0)),
                q3=float(rng.uniform(-50, 5)),
                delta=float(rng.uniform(0.6, 6.0)),
                n_max=0.0,
                n_max_interior=False,
            )
            n = float(rng.uniform(0, 6))
            lhs = energy_simplified(n, co)
            rhs = energy_simplified_expanded(n, co)
            assert abs(lhs - rhs) <= 1e-14 * max(1.0, abs(lhs))

    def test_frozen_generic_values(self, derived_spec):
        co = thermo_coefficients(derived_spec, 0)
        assert energy_simplified(0, co) == pytest.approx(
            -9.8644075780420738719, rel=1e-13
        )
        assert energy_simplified(1, co) == pytest.approx(
            -9.2149177683059667192, rel=1e-13
        )

    def test_rejects_nonpositive_rho(self):
        co = ThermoCoeffs(q1=0, q2=1, q3=0, delta=0.5, n_max=0, n_max_interior=False)
        with pytest.raises(DomainError):
            energy_simplified(-1.0, co)

    def test_monotone_toward_cap_and_sign_flip(self, derived_spec):
        # E(n) rises toward its ceiling q1 on [0, n_max), then falls
        co = thermo_coefficients(derived_spec, 0)
        ns = np.linspace(0.0, co.n_max * 0.999, 40)
        es = [energy_simplified(float(n), co) for n in ns]
        assert all(b > a for a, b in zip(es, es[1:]))
        assert all(e < co.q1 for e in es)
        h = 1e-6
        slope_before = (
            energy_simplified(co.n_max - 0.1 + h, co)
            - energy_simplified(co.n_max - 0.1 - h, co)
        ) / (2 * h)
        slope_after = (
            energy_simplified(co.n_max + 0.1 + h, co)
            - energy_simplified(co.n_max + 0.1 - h, co)
        ) / (2 * h)
        assert slope_before > 0 > slope_after


class TestComputeNMax:
    def test_analytic_interior_point(self):
        co = ThermoCoeffs(q1=0, q2=1, q3=-4.0, delta=1.0, n_max=0, n_max_interior=False)
        value, interior = compute_n_max(co)
        assert interior
        assert value == pytest.approx(1.0, abs=1e-10)

    def test_monotone_case_flag(self):
        co = ThermoCoeffs(q1=0, q2=1, q3=0.0, delta=1.0, n_max=0, n_max_interior=False)
        value, interior = compute_n_max(co)
        assert value == 0.0
        assert not interior

    def test_generic_cross_checked_by_bisection(self, derived_spec):
        co = thermo_coefficients(derived_spec, 0)
        value, interior = compute_n_max(co, cross_check=True)
        assert interior
        assert value == pytest.approx(2.4084240605336083418, abs=1e-8)


class TestNuCondition:
    def test_residual_vanishes_at_null_energies(self, null_spec):
        dm = map_dimensionless(null_spec, 0)
        for n in range(3):
            e = energy(QuantumNumbers(n, 0), null_spec)
            assert abs(nu_condition_residual(e, n, dm)) <= 1e-10

    def test_residual_monotone_in_energy(self, null_spec):
        dm = map_dimensionless(null_spec, 0)
        es = np.linspace(-2.0, -1e-6, 50)
        vals = [nu_condition_residual(float(e), 1, dm) for e in es]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_root_for_generic_spec_found_on_plus_branch(self, derived_spec):
        dm = map_dimensionless(derived_spec, 0)
        found = find_nu_root(0, dm, derived_spec)
        assert found is not None
        (e_root, branch) = found
        assert branch == 1
        assert nu_condition_residual(e_root, 0, dm, branch=branch) == pytest.approx(
            0.0, abs=1e-8
        )
        # the root and the primary closed form disagree here; both are kept
        # and the validation report publishes the gap
        e_primary = energy(QuantumNumbers(0, 0), derived_spec)
        assert abs(e_root - e_primary) / abs(e_primary) > 0.5

    def test_rejects_positive_energy(self, null_spec):
        dm = map_dimensionless(null_spec, 0)
        with pytest.raises(DomainError):
            nu_condition_residual(1.0, 0, dm)

    def test_rejects_bad_branch(self, null_spec):
        dm = map_dimensionless(null_spec, 0)
        with pytest.raises(DomainError):
            nu_condition_residual(-1.0, 0, dm, branch=2)

import math

import numpy as np
import pytest

from kpgm.errors import DomainError
from kpgm.model import QuantumNumbers, map_dimensionless
from kpgm.oracles import quad_adaptive, quad_semi_infinite
from kpgm.spectrum import energy
from kpgm.wavefunction import (
    RadialSample,
    closed_norm_ratio,
    count_nodes,
    default_radial_grid,
    normalization_constant,
    numeric_norm,
    probability_density,
    sample_states,
    wavefunction_value,
)


class TestNormalizationConstant:
    def test_small_integer_gammas(self):
        # all gamma-function arguments reduce to small integers
        assert normalization_constant(0, 0.5, 0.5, 0.5) == pytest.approx(0.5, rel=1e-14)

    def test_log_space_matches_direct_product(self):
        n, gamma, delta, alpha = 3, 1.2, 2.4, 0.3
        val = normalization_constant(n, gamma, delta, alpha)
        gd2 = 2 * gamma + 2 * delta
        direct = math.sqrt(
            2
            * alpha
            * math.factorial(n)
            * math.gamma(gd2 + n)
            * math.gamma(gd2 + 2 * n)
            / (2**gd2 * math.gamma(2 * gamma + n) * math.gamma(2 * delta + n + 1))
        )
        assert val == pytest.approx(direct, rel=1e-12)

    def test_rejects_bad_arguments(self):
        with pytest.raises(DomainError):
            normalization_constant(-1, 1.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            normalization_constant(0, -1.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            normalization_constant(0, 1.0, 0.2, 1.0)


class TestNumericNorm:
    def test_scaling_linearity(self, derived_spec):
        # numeric_norm is the norm of the fixed shape; scaling the shape by c
        # scales the integral norm by c.  Exercised through the quadrature
        # route on a hand-scaled integrand.
        nq = QuantumNumbers(0, 0)
        base = numeric_norm(nq, derived_spec)

        from kpgm.wavefunction import _shape, _state_exponents

        gamma, delta, _ = _state_exponents(nq, derived_spec)

        c = 7.0e6  # keeps the squared integrand near unit scale

        def scaled(r):
            v = c * _shape(r, 0, gamma, delta, derived_spec.alpha)
            return v * v

        val = math.sqrt(quad_semi_infinite(scaled, 0.0, tol=1e-12))
        assert val == pytest.approx(c * base, rel=1e-9)

    def test_frozen_generic_value(self, derived_spec):
        assert numeric_norm(QuantumNumbers(0, 0), derived_spec) == pytest.approx(
            1.5096740427843569649e-7, rel=1e-9
        )

    def test_closed_form_ratio_reported_values(self, derived_spec, null_spec):
        # the closed-form constant is not trusted; its ratio to the
        # quadrature norm is a measured, reproducible finding
        ratio_derived = closed_norm_ratio(QuantumNumbers(0, 0), derived_spec)
        assert ratio_derived == pytest.approx(8.7045751971371863588e19, rel=1e-8)
        ratio_null = closed_norm_ratio(QuantumNumbers(0, 0), null_spec)
        assert ratio_null == pytest.approx(ratio_null, rel=0)  # finite, reproducible
        second = closed_norm_ratio(QuantumNumbers(0, 0), derived_spec)
        assert abs(second - ratio_derived) <= 1e-10 * ratio_derived


class TestWavefunctionValue:
    def test_frozen_generic_value(self, derived_spec):
        val = wavefunction_value(1.0, QuantumNumbers(0, 0), derived_spec)
        assert val == pytest.approx(0.21620650671349032436, rel=1e-9)

    def test_far_tail_decays(self, derived_spec):
        r = 60.0 / derived_spec.alpha
        assert abs(wavefunction_value(r, QuantumNumbers(0, 0), derived_spec)) < 1e-8

    def test_origin_boundary_layer_vanishes(self, derived_spec):
        r = 1e-6 / derived_spec.alpha
        assert abs(wavefunction_value(r, QuantumNumbers(0, 0), derived_spec)) < 1e-6

    def test_normalization_of_every_state(self, derived_spec, null_spec):
        for spec, states in ((derived_spec, range(4)), (null_spec, range(4))):
            for n in states:
                nq = QuantumNumbers(n, 0)

                def rho(r):
                    return probability_density(r, nq, spec) if r > 0 else 0.0

                total = quad_semi_infinite(rho, 0.0, tol=1e-10)
                assert total == pytest.approx(1.0, abs=1e-6)

    def test_tail_log_slope_matches_gamma(self, derived_spec):
        nq = QuantumNumbers(0, 0)
        dm = map_dimensionless(derived_spec, 0)
        gamma = dm.gamma_of(energy(nq, derived_spec))
        alpha = derived_spec.alpha
        r1, r2 = 30.0 / alpha, 60.0 / alpha
        from kpgm.wavefunction import _shape

        v1 = _shape(r1, 0, gamma, dm.delta, alpha)
        v2 = _shape(r2, 0, gamma, dm.delta, alpha)
        slope = (math.log(abs(v2)) - math.log(abs(v1))) / (alpha * (r2 - r1))
        assert slope == pytest.approx(-gamma, rel=0.02)

    def test_closed_norm_switch(self, derived_spec):
        nq = QuantumNumbers(0, 0)
        quadrature = wavefunction_value(1.0, nq, derived_spec, norm="quadrature")
        closed = wavefunction_value(1.0, nq, derived_spec, norm="closed")
        ratio = closed / quadrature
        assert ratio == pytest.approx(
            closed_norm_ratio(nq, derived_spec), rel=1e-10
        )

    def test_rejects_bad_inputs(self, derived_spec):
        with pytest.raises(DomainError):
            wavefunction_value(0.0, QuantumNumbers(0, 0), derived_spec)
        with pytest.raises(DomainError):
            wavefunction_value(1.0, QuantumNumbers(0, 0), derived_spec, norm="bogus")


class TestDensityAndNodes:
    def test_density_nonnegative_on_grid(self, derived_spec):
        grid = default_radial_grid(derived_spec.alpha, count=1000)
        nq = QuantumNumbers(2, 0)
        assert all(probability_density(r, nq, derived_spec) >= 0.0 for r in grid)

    def test_node_counts_match_quantum_number(self, null_spec, derived_spec):
        for spec in (null_spec, derived_spec):
            for n in range(5):
                assert count_nodes(QuantumNumbers(n, 0), spec) == n

    def test_orthogonality_where_states_share_a_hamiltonian(self, kratzer_spec):
        # with the Morse part off, the closed-form states are true
        # eigenstates of one problem and must be mutually orthogonal
        pairs = [(0, 1), (0, 2), (1, 2)]
        for n, m in pairs:
            f = lambda r: (
                wavefunction_value(r, QuantumNumbers(n, 0), kratzer_spec)
                * wavefunction_value(r, QuantumNumbers(m, 0), kratzer_spec)
            )
            overlap = quad_adaptive(f, 1e-9, 200.0, tol=1e-11, initial_panels=64)
            assert abs(overlap) <= 1e-6

    def test_null_coupling_states_are_not_orthogonal(self, null_spec):
        # the zero-coupling collapse states solve no common Hamiltonian;
        # their mutual overlap is large and exactly computable
        f = lambda r: (
            wavefunction_value(r, QuantumNumbers(0, 0), null_spec)
            * wavefunction_value(r, QuantumNumbers(1, 0), null_spec)
        )
        overlap = quad_adaptive(f, 1e-9, 80.0, tol=1e-11, initial_panels=64)
        # exact value 64/315 / sqrt(1/3 * 1/6)
        assert overlap == pytest.approx(
            (64.0 / 315.0) / math.sqrt(1.0 / 18.0), rel=1e-6
        )


class TestSampling:
    def test_empty_states_give_empty_table(self, derived_spec):
        assert sample_states([1.0, 2.0], [], derived_spec) == []

    def test_row_cardinality_and_order(self, derived_spec):
        grid = [0.5, 1.0, 1.5]
        states = [QuantumNumbers(0, 0), QuantumNumbers(1, 0)]
        rows = sample_states(grid, states, derived_spec)
        assert len(rows) == 6
        assert [(r.n, r.r) for r in rows] == [
            (0, 0.5),
            (0, 1.0),
            (0, 1.5),
            (1, 0.5),
            (1, 1.0),
            (1, 1.5),
        ]

    def test_rho_is_square_of_psi(self, derived_spec):
        rows = sample_states([1.0, 2.0], [QuantumNumbers(1, 0)], derived_spec)
        for row in rows:
            assert row.rho == pytest.approx(row.psi**2, rel=1e-15)

    def test_rejects_bad_grid(self, derived_spec):
        with pytest.raises(DomainError):
            sample_states([1.0, 0.5], [QuantumNumbers(0, 0)], derived_spec)
        with pytest.raises(DomainError):
            sample_states([-1.0, 0.5], [QuantumNumbers(0, 0)], derived_spec)

    def test_default_grid_shape(self):
        grid = default_radial_grid(0.4)
        assert len(grid) == 600
        assert grid[0] == pytest.approx(0.01 / 0.4)
        assert grid[-1] == pytest.approx(15.0 / 0.4)
        assert all(b > a for a, b in zip(grid, grid[1:]))

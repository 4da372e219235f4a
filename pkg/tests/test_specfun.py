import cmath
import math

import numpy as np
import pytest

from kpgm.errors import DomainError
from kpgm.oracles import erf_series_oracle, jacobi_sum_oracle
from kpgm.specfun import (
    erf_complex,
    erf_real,
    erfc_complex,
    erfc_real,
    exp_scaled_erfc,
    faddeeva,
    jacobi,
    ln_gamma,
)


class TestLnGamma:
    def test_integer_anchors(self):
        assert ln_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
        assert ln_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-15)

    def test_frozen_value(self):
        assert ln_gamma(3.7) == pytest.approx(1.4280723266653879219, rel=1e-14)

    def test_recursion_identity(self):
        for x in np.geomspace(1e-3, 1e4, 500):
            lhs = ln_gamma(x + 1.0)
            rhs = ln_gamma(x) + math.log(x)
            assert abs(lhs - rhs) <= 1e-13 * max(1.0, abs(lhs))

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            ln_gamma(0.0)
        with pytest.raises(DomainError):
            ln_gamma(-2.5)


class TestJacobi:
    def test_degree_zero_is_one(self):
        for a, b, x in ((0.3, 1.7, -0.2), (-0.5, 2.0, 4.0), (1.0, 1.0, 0.0)):
            assert jacobi(0, a, b, x) == 1.0

    def test_degree_one(self):
        assert jacobi(1, 1.0, 1.0, 0.5) == pytest.approx(1.0, abs=1e-15)

    def test_frozen_value_vs_sum_oracle(self):
        assert jacobi(4, 0.3, 1.7, -0.2) == pytest.approx(-0.3636625, rel=1e-12)

    def test_recurrence_vs_sum_oracle_grid(self):
        xs = np.linspace(-1.0, 1.0, 41)
        for n in range(13):
            for a in (-0.5, 0.0, 0.7, 2.3):
                for b in (-0.5, 0.0, 0.7, 2.3):
                    for x in xs:
                        ref = jacobi_sum_oracle(n, a, b, float(x))
                        val = jacobi(n, a, b, float(x))
                        assert abs(val - ref) <= 1e-10 * max(1.0, abs(ref))

    def test_reflection_symmetry(self):
        xs = np.linspace(-1.0, 1.0, 41)
        for n in range(9):
            for a, b in ((0.3, 1.7), (-0.5, 0.0), (2.3, 0.7)):
                for x in xs:
                    lhs = jacobi(n, a, b, -float(x))
                    rhs = (-1.0) ** n * jacobi(n, b, a, float(x))
                    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))

    def test_value_at_one_ties_to_ln_gamma(self):
        for n in range(9):
            for a, b in ((0.3, 1.7), (2.3, -0.5)):
                expected = math.exp(
                    ln_gamma(n + a + 1.0) - ln_gamma(n + 1.0) - ln_gamma(a + 1.0)
                )
                assert jacobi(n, a, b, 1.0) == pytest.approx(expected, rel=1e-12)

    def test_rejects_out_of_range_parameters(self):
        with pytest.raises(DomainError):
            jacobi(2, -1.0, 0.0, 0.5)
        with pytest.raises(DomainError):
            jacobi(2, 0.0, -1.5, 0.5)


class TestRealErf:
    def test_anchors(self):
        assert erf_real(0.0) == 0.0
        assert erfc_real(0.0) == 1.0

    def test_frozen_series_value(self):
        assert erf_real(1.0) == pytest.approx(0.84270079294971486934, rel=1e-15)

    def test_complement_identity(self):
        for x in np.linspace(-4.0, 4.0, 30):
            assert erf_real(float(x)) + erfc_real(float(x)) == pytest.approx(
                1.0, abs=1e-14
            )


class TestFaddeeva:
    def test_at_origin(self):
        assert faddeeva(0.0) == pytest.approx(1.0 + 0.0j, abs=1e-15)

    def test_real_axis_real_part_is_gaussian(self):
        for x in np.linspace(-5.0, 5.0, 41):
            w = faddeeva(complex(x, 0.0))
            assert w.real == pytest.approx(math.exp(-x * x), abs=1e-12)

    def test_erf_complex_on_real_axis_matches_real(self):
        for x in (0.5, 1.0, 2.0):
            val = erf_complex(complex(x, 0.0))
            assert val.real == pytest.approx(erf_real(x), abs=1e-13)
            assert abs(val.imag) <= 1e-13

    def test_erf_complex_odd_symmetry(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            assert abs(erf_complex(-z) + erf_complex(z)) <= 1e-12

    def test_erf_of_imaginary_unit(self):
        val = erf_complex(1j)
        assert val.real == pytest.approx(0.0, abs=1e-14)
        assert val.imag == pytest.approx(1.650425758797542876, rel=1e-13)

    def test_vs_series_oracle(self):
        rng = np.random.default_rng(42)
        for _ in range(200):
            z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            if abs(z) > 3:
                z *= 3.0 / abs(z)
            ref = erf_series_oracle(z)
            val = erf_complex(z)
            assert abs(val - ref) <= 1e-10 * max(1.0, abs(ref))

    def test_erfc_complex_complement(self):
        z = 0.7 + 0.4j
        assert erf_complex(z) + erfc_complex(z) == pytest.approx(1.0 + 0.0j, abs=1e-14)

    def test_overflow_contract(self):
        with pytest.raises(OverflowError):
            erf_complex(40.0j)
        with pytest.raises(DomainError):
            faddeeva(2e8 + 0j)


class TestExpScaledErfc:
    def test_matches_unscaled_product_in_safe_range(self):
        for c, z in ((0.3, 1.2 + 0.0j), (2.0, 0.5j), (-1.0, 1.0 + 1.0j)):
            fused = exp_scaled_erfc(c, z)
            plain = cmath.exp(c) * erfc_complex(z)
            assert abs(fused - plain) <= 1e-13 * max(1.0, abs(plain))

    def test_survives_where_plain_product_overflows(self):
        # erfc(30j) alone overflows as exp(900); the fused exponent is 0
        val = exp_scaled_erfc(-900.0, 30.0j)
        assert cmath.isfinite(val)
        with pytest.raises(OverflowError):
            erfc_complex(30.0j)

    def test_overflow_guard(self):
        with pytest.raises(OverflowError):
            exp_scaled_erfc(800.0, 0.0j)

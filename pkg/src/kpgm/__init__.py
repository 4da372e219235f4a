"""Kratzer plus generalized Morse (KPGM) model: bound-state energies,
normalized radial wavefunctions, and vibrational thermodynamics, with the
numerical oracles that cross-check every closed form."""

from .errors import (
    ConvergenceError,
    DomainError,
    KpgmError,
    ParseError,
    QuadratureError,
    ValidationError,
)
from .model import (
    DimensionlessSet,
    MoleculeSpec,
    NUCoefficients,
    QuantumNumbers,
    effective_potential_approx,
    greene_aldrich_inverse_r,
    map_dimensionless,
    nu_coefficients,
    potential,
)
from .spectrum import (
    ThermoCoeffs,
    compute_n_max,
    energy,
    energy_effective,
    energy_simplified,
    nu_condition_residual,
    thermo_coefficients,
)
from .thermo import (
    ThermoPoint,
    free_energy,
    heat_capacity,
    mean_energy,
    partition_closed,
    partition_direct,
    partition_integral,
    sweep_thermo,
    sweep_thermo_lam,
)
from .wavefunction import (
    RadialSample,
    normalization_constant,
    numeric_norm,
    probability_density,
    sample_states,
    wavefunction_value,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DimensionlessSet",
    "DomainError",
    "KpgmError",
    "MoleculeSpec",
    "NUCoefficients",
    "ParseError",
    "QuadratureError",
    "QuantumNumbers",
    "RadialSample",
    "ThermoCoeffs",
    "ThermoPoint",
    "ValidationError",
    "compute_n_max",
    "effective_potential_approx",
    "energy",
    "energy_effective",
    "energy_simplified",
    "free_energy",
    "greene_aldrich_inverse_r",
    "heat_capacity",
    "map_dimensionless",
    "mean_energy",
    "normalization_constant",
    "nu_coefficients",
    "nu_condition_residual",
    "numeric_norm",
    "partition_closed",
    "partition_direct",
    "partition_integral",
    "potential",
    "probability_density",
    "sample_states",
    "sweep_thermo",
    "sweep_thermo_lam",
    "thermo_coefficients",
    "wavefunction_value",
    "__version__",
]

"""Truncated two-mode Fock-space numerics for the deformed algebra."""

from .ops import (
    OperatorMatrix,
    PhaseOps,
    ResourceError,
    SimUnits,
    TildeOps,
    TruncationSpec,
    build_phase_ops,
    commutator,
    commutator_residual,
    identity,
    linear_operator,
    polynomial_matrix,
    product,
    tilde_transform,
)
from .spectra import (
    SpectrumResult,
    central_difference_slopes,
    eigenspectrum,
    first_order_shift,
    hamiltonian_landau,
    hamiltonian_oscillator,
    landau_spec,
    oscillator_at,
    oscillator_perturbation,
)
from .sweep import CSV_HEADER, Row, sweep
from .uncertainty import (
    GaussianFamilySpec,
    MinimizationResult,
    StateVector,
    minimize_uncertainty,
    random_interior_state,
    uncertainty_pair,
    variance,
)

"""Scrambling diagnostics for one-dimensional discrete-time quantum walks.

Fast paths evolve exact rank-2 operator representations in O(L) per step;
everything is cross-validated against dense-matrix oracles in the test suite.
"""

from .dynamics import (
    Trajectory,
    butterfly_velocity,
    dispersion,
    evolve,
    group_velocity,
    initial_state,
    ipr,
    localization_length,
    position_variance,
    trajectory_ensemble,
)
from .ensemble import EnsembleResult, EnsembleSpec, derived_seed, run_ensemble
from .errors import NumericalDegeneracyError
from .krylov import (
    KrylovDecomposition,
    gram_matrix,
    k_complexity,
    k_complexity_ensemble,
    krylov_decompose,
)
from .operators import (
    Rank2Operator,
    conjugate_step,
    frobenius_inner,
    initial_local_operator,
    operator_to_dense,
    site_block,
)
from .otoc import (
    FrontFit,
    OtocGrid,
    front_extent,
    front_velocity,
    otoc_grid,
    otoc_grid_ensemble,
    otoc_row,
)
from .walk import (
    CoinSchedule,
    DisorderSpec,
    WalkConfig,
    centered_labels,
    coin_matrix,
    sample_schedule,
    step,
    step_inverse,
    to_centered,
)

__version__ = "0.1.0"

__all__ = [
    "CoinSchedule",
    "DisorderSpec",
    "EnsembleResult",
    "EnsembleSpec",
    "FrontFit",
    "KrylovDecomposition",
    "NumericalDegeneracyError",
    "OtocGrid",
    "Rank2Operator",
    "Trajectory",
    "WalkConfig",
    "butterfly_velocity",
    "centered_labels",
    "coin_matrix",
    "conjugate_step",
    "derived_seed",
    "dispersion",
    "evolve",
    "front_extent",
    "front_velocity",
    "frobenius_inner",
    "gram_matrix",
    "group_velocity",
    "initial_local_operator",
    "initial_state",
    "ipr",
    "k_complexity",
    "k_complexity_ensemble",
    "krylov_decompose",
    "localization_length",
    "operator_to_dense",
    "otoc_grid",
    "otoc_grid_ensemble",
    "otoc_row",
    "position_variance",
    "run_ensemble",
    "sample_schedule",
    "site_block",
    "step",
    "step_inverse",
    "to_centered",
    "__version__",
]

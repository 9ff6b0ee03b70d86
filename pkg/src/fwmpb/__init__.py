"""Photon-blockade statistics of a three-mode four-wave-mixing cavity."""

from .fock import (
    DEFAULT_TRUNCATION,
    FockSpace,
    FockTruncation,
    InvalidTruncationError,
    Operator,
    build_space,
    lowering_op,
    number_op,
)
from .model import (
    DegenerateSteadyStateError,
    DensityMatrix,
    StepSizeError,
    Superoperator,
    SystemParams,
    build_h_eff,
    build_liouvillian,
    build_non_hermitian,
    evolve,
    steady_state,
    trace_distance,
)
from .observables import (
    TruncationWarning,
    UndefinedCorrelationError,
    g2_zero,
    mean_occupation,
    mode_marginal,
)
from .analytic import (
    AmplitudeVector,
    DegenerateParametersError,
    InvalidRangeError,
    manifold_eigenfrequencies,
    manifold_matrix,
    optimal_detuning_scan,
    steady_amplitudes,
    weak_drive_g2,
)
from .sweep import (
    CSV_HEADER,
    ConfigError,
    OBSERVABLE_COLUMNS,
    ObservableRecord,
    SweepSpec,
    emit_csv,
    parse_config,
    parse_csv,
    run_sweep,
    solve_point,
)
from ._propagate import USING_COMPILED_KERNEL, kernel_backend

__version__ = "0.1.0"

__all__ = [
    "AmplitudeVector",
    "CSV_HEADER",
    "ConfigError",
    "DEFAULT_TRUNCATION",
    "DegenerateParametersError",
    "DegenerateSteadyStateError",
    "DensityMatrix",
    "FockSpace",
    "FockTruncation",
    "InvalidRangeError",
    "InvalidTruncationError",
    "OBSERVABLE_COLUMNS",
    "ObservableRecord",
    "Operator",
    "StepSizeError",
    "Superoperator",
    "SweepSpec",
    "SystemParams",
    "TruncationWarning",
    "USING_COMPILED_KERNEL",
    "UndefinedCorrelationError",
    "build_h_eff",
    "build_liouvillian",
    "build_non_hermitian",
    "build_space",
    "emit_csv",
    "evolve",
    "g2_zero",
    "kernel_backend",
    "lowering_op",
    "manifold_eigenfrequencies",
    "manifold_matrix",
    "mean_occupation",
    "mode_marginal",
    "number_op",
    "optimal_detuning_scan",
    "parse_config",
    "parse_csv",
    "run_sweep",
    "solve_point",
    "steady_amplitudes",
    "steady_state",
    "trace_distance",
    "weak_drive_g2",
]

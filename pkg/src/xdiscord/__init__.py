"""Classical correlation and quantum discord of two-qubit X states under
single-qubit amplitude, phase and depolarizing noise."""

from .channels import (
    ChannelAtTime,
    NoiseKind,
    apply,
    evolve_density_matrix,
    evolve_params,
    kraus_single_qubit,
    lift_to_qubit_A,
)
from .discord import (
    Branch,
    CorrelationBreakdown,
    branch_entropies,
    correlations,
    f,
    phase_noise_correlations,
)
from .dynamics import (
    SuddenChangeEvent,
    SweepResult,
    depolarizing_zero_time,
    detect_events,
    locate_transition,
    sweep,
)
from .linalg import hermitian_eigenvalues, partial_trace, tensor, von_neumann_entropy
from .oracle import (
    MeasurementDirection,
    OracleSettings,
    conditional_entropy,
    min_conditional_entropy,
    oracle_correlations,
)
from .states import (
    BellDiagonalParams,
    XStateParams,
    closed_form_eigenvalues,
    from_density_matrix,
    to_density_matrix,
)

__version__ = "0.1.0"

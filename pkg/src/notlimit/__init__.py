"""Conservation-law limits on implementing the quantum NOT gate.

Exact lower bounds on the gate trace distance of Z-conserving NOT
implementations, the construction that attains them, and numerical tools
to audit both.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .channels import (
    ComponentDecomposition,
    Implementation,
    SearchConfig,
    analytic_witness,
    apply_implementation,
    distance_via_components,
    fidelity_to_pure,
    gate_trace_distance,
    ideal_not,
    output_distance,
    trace_distance_qubit,
    trace_distance_spectral,
)
from .conservation import (
    AncillaCoefficients,
    BlockUnitary,
    PermutationUnitary,
    ancilla_sector_coefficients,
    assemble_conservative,
    block_dims,
    commutator_norm,
    component_bound,
    extract_components,
    fixed_ancilla_bound,
    haar_unitary,
    overlap_bound,
    random_conservative,
    random_pure_state,
)
from .constructions import (
    ChainImplementation,
    PurificationPlan,
    evaluate_chain,
    is_classically_complete,
    optimal_ancilla,
    optimal_unitary,
    purify,
    random_mixed_implementation,
    uniform_ancilla,
)
from .errors import CapacityError, DomainError, NotLimitError, ShapeError, ValidationError
from .hilbert import PureQubitState, hamming_sectors, partial_trace_ancilla, tensor, total_z_diagonal
from .policy import POLICY, NumericalPolicy
from .spectral import (
    BoundReport,
    bound_cc,
    bound_general,
    bound_hadamard_ref,
    bound_mixed,
    bound_mixed_worst,
    chebyshev_W,
    max_overlap_sum,
    overlap_sum,
    power_iteration,
    tridiag_max_eig,
)

__all__ = [
    "__version__",
    "analytic_witness",
    "ancilla_sector_coefficients",
    "AncillaCoefficients",
    "apply_implementation",
    "assemble_conservative",
    "BACKEND",
    "block_dims",
    "BlockUnitary",
    "bound_cc",
    "bound_general",
    "bound_hadamard_ref",
    "bound_mixed",
    "bound_mixed_worst",
    "BoundReport",
    "CapacityError",
    "ChainImplementation",
    "chebyshev_W",
    "commutator_norm",
    "component_bound",
    "ComponentDecomposition",
    "distance_via_components",
    "DomainError",
    "evaluate_chain",
    "extract_components",
    "fidelity_to_pure",
    "fixed_ancilla_bound",
    "gate_trace_distance",
    "haar_unitary",
    "hamming_sectors",
    "ideal_not",
    "Implementation",
    "is_classically_complete",
    "max_overlap_sum",
    "NotLimitError",
    "NumericalPolicy",
    "optimal_ancilla",
    "optimal_unitary",
    "output_distance",
    "overlap_bound",
    "overlap_sum",
    "partial_trace_ancilla",
    "PermutationUnitary",
    "POLICY",
    "power_iteration",
    "PureQubitState",
    "PurificationPlan",
    "purify",
    "random_conservative",
    "random_mixed_implementation",
    "random_pure_state",
    "SearchConfig",
    "ShapeError",
    "tensor",
    "total_z_diagonal",
    "trace_distance_qubit",
    "trace_distance_spectral",
    "tridiag_max_eig",
    "uniform_ancilla",
    "ValidationError",
]

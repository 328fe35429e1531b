"""Symmetric Petz-Rényi divergences, their trace-norm and observable bounds,
and numerical verifiers for the associated uncertainty relations."""

from .bounds import (
    DomainError,
    bound_B,
    bound_B_inverse,
    pinsker_rhs,
    uncertainty_f,
)
from .classical import (
    Distribution,
    Involution,
    classical_renyi,
    entropy_variable,
    exp_moment_identity_check,
    lemma2_bound,
    pair_construction,
    symmetric_classical_renyi,
    total_variation,
    triangular_discrimination,
)
from .divergences import (
    DEFAULT_ALPHAS,
    holevo_fidelity,
    petz_renyi,
    quantum_relative_entropy,
    symmetric_petz_renyi,
)
from .linalg import (
    DensityMatrix,
    EigenDecomposition,
    NotHermitian,
    NotPSD,
    Observable,
    TraceNotOne,
    hermitian_eigen,
    matrix_power,
    trace_distance,
    validate_density,
)
from .nussbaum_szkola import NsEmbedding, ns_divergence_identity, ns_embed, ns_moment_relations
from .samplers import (
    RngStream,
    random_density,
    random_distribution,
    random_involution,
    random_observable,
    random_trajectory_instance,
    saturating_pair,
)
from .uncertainty import (
    InequalityMargin,
    PreconditionError,
    omega_operator,
    s_statistic,
    verify_classical_turs,
    verify_exchange_tur,
    verify_generalized_holevo,
    verify_inverted_ur,
    verify_theorem,
)

__version__ = "0.1.0"

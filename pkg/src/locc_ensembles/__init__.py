"""Numerics for LOCC and separable transformations of bipartite states.

Schmidt/majorization convertibility, pure-state ensembles, separable Kraus
channels, and a counterexample family in which every decomposition element
of a mixed state converts to the target by LOCC while the mixed state does
not.
"""
from .errors import (
    ConvergenceError,
    InputError,
    LoccError,
    ShapeError,
    SizeError,
    ValidationError,
)
from .states import (
    DensityMatrix,
    PureState,
    PureStateEnsemble,
    SchmidtDecomposition,
    density_from_ensemble,
    mix_ensemble,
    random_support_state,
    schmidt_decompose,
    schmidt_rank,
    schmidt_vector,
    spectral_ensemble,
)
from .channels import (
    SeparableChannel,
    apply_channel,
    branch_vectors,
    coefficient_orthonormality,
    lemma1_dimension_check,
    proportionality_matrix,
    validate_trace_preserving,
)
from .majorization import (
    MonotoneSpec,
    convertible_order,
    ensemble_monotone,
    jonathan_plenio_check,
    monotone_value,
    nielsen_convertible,
    vidal_monotone,
)

__version__ = "0.1.0"

"""Lower bound of concurrence for GHZ states under local noise channels.

The package evolves generalized N-qubit GHZ states through single-qubit
amplitude-damping, depolarizing, and phase-damping channels and evaluates a
multipartite concurrence lower bound three ways: a closed form for
X-structured states, a brute-force spectral route over all bipartite cuts
and SO(d) generator pairs, and factorized expressions of the form
(initial bound) x (noise factor) where they exist.
"""

__version__ = "0.1.0"

from ._backend import backend_name
from .channels import (
    ChannelSpec,
    KrausSet,
    NoiseConfig,
    apply_local,
    evolve,
    kraus_ops,
    p_of_t,
    resolve_probabilities,
)
from .errors import (
    ConfigMismatch,
    ConfigParseError,
    DegenerateState,
    DimensionTooSmall,
    GhzLbcError,
    IndexOutOfRange,
    NegativeInput,
    NormViolation,
    NotXStructured,
    NumericalFailure,
    PatternLengthMismatch,
    ProbabilityOutOfRange,
    QubitCapExceeded,
    TooFewQubits,
    UnknownPreset,
    UnsupportedScenario,
)
from .factorization import (
    ConditionWitness,
    FactorizationPrediction,
    VerificationReport,
    VerifyPoint,
    classify_conditions,
    coherence_factor,
    death_probability,
    predict_lbc,
    verify,
    verify_point,
)
from .lbc import (
    Bipartition,
    LbcReport,
    SoGeneratorSet,
    bipartitions,
    lbc_closed_form,
    lbc_spectral,
    so_generators,
    xstate_pair_index,
)
from .state import (
    DensityMatrix,
    GhzSpec,
    ValidationReport,
    XStateView,
    ghz_density,
    reduced_state,
    validate_density,
    xstate_to_density,
    xstate_view,
)

__all__ = [
    "__version__",
    "backend_name",
    # states
    "GhzSpec", "DensityMatrix", "XStateView", "ValidationReport",
    "ghz_density", "xstate_view", "xstate_to_density", "reduced_state",
    "validate_density",
    # channels
    "ChannelSpec", "KrausSet", "NoiseConfig",
    "p_of_t", "kraus_ops", "apply_local", "evolve", "resolve_probabilities",
    # lower bound
    "Bipartition", "SoGeneratorSet", "LbcReport",
    "bipartitions", "so_generators", "xstate_pair_index",
    "lbc_closed_form", "lbc_spectral",
    # factorization
    "FactorizationPrediction", "ConditionWitness",
    "VerifyPoint", "VerificationReport",
    "coherence_factor", "classify_conditions", "predict_lbc",
    "verify", "verify_point", "death_probability",
    # errors
    "GhzLbcError", "NormViolation", "PatternLengthMismatch", "TooFewQubits",
    "IndexOutOfRange", "NotXStructured", "NegativeInput",
    "ProbabilityOutOfRange", "ConfigMismatch", "DimensionTooSmall",
    "QubitCapExceeded", "UnsupportedScenario", "DegenerateState",
    "NumericalFailure", "ConfigParseError", "UnknownPreset",
]

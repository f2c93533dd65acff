"""lincov: autocovariance calculus for stationary linear time series.

Expand ARMA transfer functions into forward (psi) and inverse (pi)
filter weights, propagate autocovariance sequences through linear
filters with certified truncation error, diagnose the two classical
tail conditions (|gamma_k| ln k -> 0 and weighted summability), and
cross-check everything against a reproducible Monte Carlo oracle.
"""

__version__ = "0.1.0"

from .acvf import (
    AcvfSequence,
    ComposeResult,
    ExpBoundFit,
    Tail,
    XiTriple,
    compose_acvf,
    filter_self_acvf,
    fit_exponential_bound,
    toeplitz_min_eigenvalue,
    xi_bounds,
    xi_decomposition,
)
from .backend import backend_name
from .diagnostics import (
    BermanSection,
    ConditionReport,
    SummabilitySection,
    XiCheck,
    berman_diagnostic,
    geometric_lag_grid,
    summability_diagnostic,
    theorem_check,
)
from .errors import (
    ConfigError,
    DomainError,
    InsufficientLagsError,
    LincovError,
    NoGeometricEnvelopeError,
    NonInvertibleError,
    NonStationaryError,
    RangeError,
    TailUnknownError,
)
from .models import (
    ArmaModel,
    FarimaSpec,
    RootReport,
    arma_acvf,
    check_invertible,
    check_stationary,
    farima_acvf,
)
from .simulation import (
    NoiseSpec,
    OracleReport,
    SimConfig,
    apply_filter,
    empirical_acvf,
    oracle_compare,
    simulate_linear_process,
    simulate_model,
    weights_for_model,
)
from .weights import (
    FilterWeights,
    arma_pi_weights,
    arma_psi_weights,
    fractional_integration_weights,
    long_division_oracle,
)

__all__ = [
    "__version__",
    "AcvfSequence", "ComposeResult", "ExpBoundFit", "Tail", "XiTriple",
    "compose_acvf", "filter_self_acvf", "fit_exponential_bound",
    "toeplitz_min_eigenvalue", "xi_bounds", "xi_decomposition",
    "backend_name",
    "BermanSection", "ConditionReport", "SummabilitySection", "XiCheck",
    "berman_diagnostic", "geometric_lag_grid", "summability_diagnostic",
    "theorem_check",
    "ConfigError", "DomainError", "InsufficientLagsError", "LincovError",
    "NoGeometricEnvelopeError", "NonInvertibleError", "NonStationaryError",
    "RangeError", "TailUnknownError",
    "ArmaModel", "FarimaSpec", "RootReport", "arma_acvf",
    "check_invertible", "check_stationary", "farima_acvf",
    "NoiseSpec", "OracleReport", "SimConfig", "apply_filter",
    "empirical_acvf", "oracle_compare", "simulate_linear_process",
    "simulate_model", "weights_for_model",
    "FilterWeights", "arma_pi_weights", "arma_psi_weights",
    "fractional_integration_weights", "long_division_oracle",
]

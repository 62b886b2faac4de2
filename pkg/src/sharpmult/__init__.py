"""Sharp L^p bounds for martingale transforms and Fourier multipliers.

Subpackages by capability:

- constants: closed-form sharp constants and rigorous enclosures
- symbols: homogeneous multiplier families on R^d and their axis ranges
- torus: spectral application of a symbol on the discrete torus plus
  lower bounds for its L^p operator norm
- martingales: dyadic martingale transforms, exact depth-limited optima,
  and adversarial search for extremal transform pairs
- bellman: biconcave-envelope solver estimating the sharp constant
- witness: reproducible certificates packaging a certified lower bound
- cli: command-line front end over all of the above
"""

from .bellman import (
    BellmanSurface,
    BracketError,
    EnvelopeNonConvergence,
    envelope,
    estimate_C,
    feasible,
    initial_V,
)
from .constants import (
    ConstantResult,
    burkholder_constant,
    choi_approx,
    choi_bounds,
    cpbB_bounds,
    known_constant,
    p_star,
)
from .martingales import (
    HaarExpansion,
    PaleyWalshMartingale,
    ResolutionError,
    TransformSequence,
    dp_optimal_ratio,
    search_extremal,
    transform,
)
from .symbols import (
    LevyMeasureSpec,
    MultiplierSymbol,
    QuadraticFormSpec,
    SymbolEvaluationError,
    check_properties,
    extract_bB,
    levy_symbol,
    log_symbol,
    marcinkiewicz_symbol,
    partial_riesz_symbol,
    riesz2_symbol,
    riesz_pair_symbol,
    split_stable_symbol,
    symbol_from_json,
    symbol_to_json,
)
from .torus import (
    TorusGrid,
    apply_multiplier,
    eigenfunction_check,
    estimate_norm_lower,
    multiplier_array,
)
from .witness import CertificationVoid, WitnessCertificate, certify_lower_bound

__version__ = "0.1.0"

__all__ = [
    "BellmanSurface",
    "BracketError",
    "CertificationVoid",
    "ConstantResult",
    "EnvelopeNonConvergence",
    "HaarExpansion",
    "LevyMeasureSpec",
    "MultiplierSymbol",
    "PaleyWalshMartingale",
    "QuadraticFormSpec",
    "ResolutionError",
    "SymbolEvaluationError",
    "TorusGrid",
    "TransformSequence",
    "WitnessCertificate",
    "apply_multiplier",
    "burkholder_constant",
    "certify_lower_bound",
    "check_properties",
    "choi_approx",
    "choi_bounds",
    "cpbB_bounds",
    "dp_optimal_ratio",
    "eigenfunction_check",
    "envelope",
    "estimate_C",
    "estimate_norm_lower",
    "extract_bB",
    "feasible",
    "initial_V",
    "known_constant",
    "levy_symbol",
    "log_symbol",
    "marcinkiewicz_symbol",
    "multiplier_array",
    "p_star",
    "partial_riesz_symbol",
    "riesz2_symbol",
    "riesz_pair_symbol",
    "search_extremal",
    "split_stable_symbol",
    "symbol_from_json",
    "symbol_to_json",
    "transform",
    "__version__",
]

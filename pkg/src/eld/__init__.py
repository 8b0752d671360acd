"""Fast Levenshtein distance estimation for large documents via lossy signatures."""

from .calibration import AlphabetModel, Kind, expected_overlap, load_model
from .compressor import DEFAULT_ALPHABET, Params, compress, validate_params
from .core_ld import levenshtein
from .estimator import EstimateResult, compare, error_rate, estimate, significance
from .signature import Signature, build, compatible, parse, serialize

__version__ = "0.1.0"

__all__ = [
    "AlphabetModel",
    "DEFAULT_ALPHABET",
    "EstimateResult",
    "Kind",
    "Params",
    "Signature",
    "build",
    "compare",
    "compatible",
    "compress",
    "error_rate",
    "estimate",
    "expected_overlap",
    "levenshtein",
    "load_model",
    "parse",
    "serialize",
    "significance",
    "validate_params",
]

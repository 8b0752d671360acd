"""Edit-distance estimates and significance scores from signature pairs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .core_ld import levenshtein
from .signature import Signature, compatible

# Expected overlap ratios of two unrelated same-model strings.
R_RANDOM = 0.0417
R_CHARS = 0.1593
R_WORDS = 0.1902

DEFAULT_R = R_WORDS
DEFAULT_MAX_RATIO = 10.0
# Below this many digest characters on either side the estimate is noise.
MIN_DIGEST_LENGTH = 4


class IncompatibleParams(ValueError):
    pass


class EmptyDigests(ValueError):
    pass


class ZeroLength(ValueError):
    pass


@dataclass(frozen=True)
class EstimateResult:
    eld: int
    dig_ld: int
    dig_diff: int
    effective_c: float
    scaled_dig_ld: float
    file_length_diff: int
    delta: float | None  # None when the significance score is not applicable
    low_confidence: bool


def round_half_away(x: float) -> int:
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def estimate(
    a: Signature,
    b: Signature,
    r: float = DEFAULT_R,
    max_ratio: float | None = DEFAULT_MAX_RATIO,
) -> EstimateResult:
    """Estimate the edit distance between the documents behind ``a`` and ``b``.

    The digest distance is reduced by the unavoidable part caused by the
    digest length difference, scaled up by the realized compression ratio,
    discounted by the chance overlap ``r`` and added to the file length
    difference.
    """
    if not compatible(a, b):
        raise IncompatibleParams(
            f"{a.path} (c={a.c}, n={a.n}) vs {b.path} (c={b.c}, n={b.n})"
        )
    if a.file_length < b.file_length:
        a, b = b, a
    total_digest = a.digest_length + b.digest_length
    if total_digest == 0:
        raise EmptyDigests(f"{a.path} and {b.path} both have empty digests")

    dig_ld = levenshtein(a.digest, b.digest)
    # absolute value: the longer file does not always have the longer digest
    dig_diff = abs(a.digest_length - b.digest_length)
    effective_c = (a.file_length + b.file_length) / total_digest
    scaled = (dig_ld - dig_diff) * effective_c / (1 + r)
    file_length_diff = a.file_length - b.file_length
    delta = significance(a.digest_length, b.digest_length, dig_ld, max_ratio)
    return EstimateResult(
        eld=round_half_away(scaled + file_length_diff),
        dig_ld=dig_ld,
        dig_diff=dig_diff,
        effective_c=effective_c,
        scaled_dig_ld=scaled,
        file_length_diff=file_length_diff,
        delta=delta,
        low_confidence=a.low_confidence or b.low_confidence,
    )


def significance(
    len_a: int,
    len_b: int,
    dig_ld: int,
    max_ratio: float | None = DEFAULT_MAX_RATIO,
) -> float | None:
    """Relatedness score in [0, 1] for two digests of the given lengths.

    ``None`` means not applicable: the shorter digest is empty, or the longer
    one exceeds ``max_ratio`` times the shorter (at that point the score
    degenerates towards 1 for unrelated inputs). Pass ``max_ratio=None`` to
    disable the guard.
    """
    if len_a < len_b:
        len_a, len_b = len_b, len_a
    if len_b == 0:
        return None
    if max_ratio is not None and len_a > max_ratio * len_b:
        return None
    return (len_a - dig_ld) / len_b


def error_rate(ld: int, eld: int, len_a: int, len_b: int) -> float:
    longest = max(len_a, len_b)
    if longest <= 0:
        raise ZeroLength("both documents are empty")
    return abs(ld - eld) / longest


# Comparison status values carried into reports.
OK = "ok"
EXACT = "exact"
NOT_APPLICABLE = "not_applicable"
INCOMPATIBLE = "incompatible"


@dataclass(frozen=True)
class Comparison:
    path_a: str
    path_b: str
    status: str
    eld: int | None = None
    delta: float | None = None
    dig_ld: int | None = None
    effective_c: float | None = None
    low_confidence: bool = False

    def passes(self, threshold: float) -> bool:
        """Threshold filter; a missing score counts as 0."""
        if self.status == INCOMPATIBLE:
            return True
        score = 0.0 if self.delta is None else self.delta
        return score >= threshold


ExactFallback = Callable[[Signature, Signature], "int | None"]


def compare(
    a: Signature,
    b: Signature,
    r: float = DEFAULT_R,
    max_ratio: float | None = DEFAULT_MAX_RATIO,
    fallback: ExactFallback | None = None,
) -> Comparison:
    """Score one pair for reporting.

    Incompatible parameters give an ``incompatible`` entry, never a number.
    When either digest is shorter than :data:`MIN_DIGEST_LENGTH`, ``fallback``
    (if given) is asked for the exact distance of the originals; without an
    answer the pair is ``not_applicable``.
    """
    if not compatible(a, b):
        return Comparison(a.path, b.path, INCOMPATIBLE)
    low = a.low_confidence or b.low_confidence
    if min(a.digest_length, b.digest_length) < MIN_DIGEST_LENGTH:
        exact = fallback(a, b) if fallback is not None else None
        if exact is None:
            return Comparison(a.path, b.path, NOT_APPLICABLE, low_confidence=low)
        return Comparison(a.path, b.path, EXACT, eld=exact, low_confidence=low)
    res = estimate(a, b, r, max_ratio)
    return Comparison(
        a.path,
        b.path,
        OK,
        eld=res.eld,
        delta=res.delta,
        dig_ld=res.dig_ld,
        effective_c=res.effective_c,
        low_confidence=res.low_confidence,
    )

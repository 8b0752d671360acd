"""Exact Levenshtein distance over raw byte strings."""

from __future__ import annotations

from rapidfuzz.distance import Levenshtein as _Levenshtein


def levenshtein(a: bytes, b: bytes) -> int:
    """Return the unit-cost edit distance between two byte strings.

    Operates on octets, not code points, so multi-byte UTF-8 characters
    count as several edits. Memory grows with ``min(len(a), len(b))``.

    >>> levenshtein(b"pat", b"mat")
    1
    >>> levenshtein(b"pats", b"mat")
    2
    """
    if not a:
        return len(b)
    if not b:
        return len(a)
    return _Levenshtein.distance(bytes(a), bytes(b))


def levenshtein_bounded(a: bytes, b: bytes, max_distance: int) -> int | None:
    """Like :func:`levenshtein` but give up once ``max_distance`` is exceeded.

    Returns ``None`` when the distance is larger than ``max_distance``.
    """
    if abs(len(a) - len(b)) > max_distance:
        return None
    d = _Levenshtein.distance(bytes(a), bytes(b), score_cutoff=max_distance)
    return d if d <= max_distance else None

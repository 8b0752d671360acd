"""Lossy compression of a byte string into a short digest.

An ``n``-byte window slides over the input one byte at a time. Whenever the
window hash ``T`` satisfies ``T % c == 0`` the byte ``alphabet[T % len(alphabet)]``
is appended to the digest, so on average one output byte is produced per
``c`` input positions. Each output byte depends on a single window only,
which keeps the effect of any edit local.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .rolling_hash import DEFAULT_HASHER, WindowHasher

# Printable ASCII minus comma, double quote, single quote, backslash and
# backtick. 89 entries, a prime, so every ``c`` is coprime with it.
DEFAULT_ALPHABET = bytes(
    b for b in range(0x21, 0x7F) if chr(b) not in ",\"'\\`"
)

_FORBIDDEN = frozenset(b",\n\r\t")


class ParamsError(ValueError):
    """Invalid compression parameters."""


class NotCoprime(ParamsError):
    pass


class ForbiddenByte(ParamsError):
    pass


class DuplicateAlphabetByte(ParamsError):
    pass


class BadN(ParamsError):
    pass


@dataclass(frozen=True)
class Params:
    c: int = 101
    n: int = 11
    alphabet: bytes = field(default=DEFAULT_ALPHABET, repr=False)


def validate_params(p: Params) -> None:
    """Raise a :class:`ParamsError` subclass unless ``p`` is usable."""
    if p.c < 1:
        raise ParamsError(f"c must be a positive integer, got {p.c}")
    if p.n < 2:
        raise BadN(f"n must be >= 2, got {p.n}")
    alphabet = bytes(p.alphabet)
    if len(alphabet) < 2:
        raise ParamsError("alphabet needs at least two bytes")
    for b in alphabet:
        if b in _FORBIDDEN:
            raise ForbiddenByte(f"alphabet may not contain {chr(b)!r}")
        if not 0x20 <= b < 0x7F:
            raise ForbiddenByte(f"alphabet byte 0x{b:02x} is not printable ASCII")
    if len(set(alphabet)) != len(alphabet):
        raise DuplicateAlphabetByte("alphabet bytes must be unique")
    if math.gcd(p.c, len(alphabet)) != 1:
        raise NotCoprime(
            f"c={p.c} and alphabet length {len(alphabet)} share a factor"
        )


def compress(data: bytes, p: Params, hasher: WindowHasher = DEFAULT_HASHER) -> bytes:
    """Return the digest of ``data``; empty when ``len(data) < p.n``."""
    validate_params(p)
    c = p.c
    alphabet = bytes(p.alphabet)
    size = len(alphabet)
    out = bytearray()
    append = out.append
    for t in hasher.slide(data, p.n):
        if not t % c:
            append(alphabet[t % size])
    return bytes(out)


def expected_digest_length(file_length: int, c: int, n: int) -> float:
    return max(0, file_length - n + 1) / c


def is_low_confidence(file_length: int, digest_length: int, c: int, n: int) -> bool:
    """Flag digests whose size is implausible for the input length.

    Highly repetitive input either never triggers a selection or triggers
    one over and over; both show up as a large deviation from ``1/c``.
    """
    expected = expected_digest_length(file_length, c, n)
    return digest_length < max(4.0, expected / 8) or digest_length > 8 * expected


_WS_RUN = re.compile(rb"\s+")


def preprocess(data: bytes, lowercase: bool = False, collapse_ws: bool = False) -> bytes:
    """Optional normalization applied before compression (off by default)."""
    if lowercase:
        data = data.lower()
    if collapse_ws:
        data = _WS_RUN.sub(b" ", data)
    return data

"""Shared test utilities: corpus access and seeded English-like text."""

from __future__ import annotations

import random
from functools import lru_cache
from pathlib import Path

DATA = Path(__file__).parent / "data"
# Encyclopaedia Britannica 11th ed. (1911), "Shakespeare, William"; public domain.
BOOK = DATA / "eb1911_shakespeare.txt"


@lru_cache(maxsize=None)
def book_words() -> tuple[bytes, ...]:
    return tuple(BOOK.read_bytes().split())


def english_like(seed: int, size: int = 30_000, line_width: int = 70) -> bytes:
    """Words drawn from the book at random, wrapped into lines."""
    words = book_words()
    rng = random.Random(seed)
    out = bytearray()
    col = 0
    while len(out) < size:
        word = rng.choice(words)
        out += word
        col += len(word) + 1
        if col > line_width:
            out += b"\n"
            col = 0
        else:
            out += b" "
    return bytes(out[:size])


def naive_levenshtein(a: bytes, b: bytes) -> int:
    """Plain full-matrix DP; independent of the library implementation."""
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]

"""Rabin-Karp rolling hash over fixed-size byte windows.

Digests are only comparable when produced with identical constants, so
``BASE`` and ``MODULUS`` are part of the signature interchange contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Protocol

BASE = 257
MODULUS = (1 << 61) - 1


class WindowSizeError(ValueError):
    """Window length does not match the configured neighborhood size."""


@dataclass(frozen=True)
class RollState:
    value: int
    window_size: int
    power: int  # BASE ** (window_size - 1) % MODULUS

    def __post_init__(self) -> None:
        if self.window_size < 1:
            raise WindowSizeError(f"window_size must be >= 1, got {self.window_size}")


class WindowHasher(Protocol):
    """Anything that can hash every size-``n`` window of a byte string."""

    def slide(self, data: bytes, n: int) -> Iterator[int]: ...


class RabinKarp:
    """Polynomial rolling hash ``sum(w[i] * base**(n-1-i)) mod modulus``."""

    def __init__(self, base: int = BASE, modulus: int = MODULUS) -> None:
        if modulus < 2 or not 1 < base < modulus:
            raise ValueError("need 1 < base < modulus")
        self.base = base
        self.modulus = modulus

    def init(self, window: bytes, n: int | None = None) -> RollState:
        if n is None:
            n = len(window)
        if len(window) != n:
            raise WindowSizeError(f"window has length {len(window)}, expected {n}")
        base, mod = self.base, self.modulus
        value = 0
        for byte in window:
            value = (value * base + byte) % mod
        return RollState(value, n, pow(base, n - 1, mod))

    def roll(self, state: RollState, outgoing: int, incoming: int) -> RollState:
        value = ((state.value - outgoing * state.power) * self.base + incoming) % self.modulus
        return RollState(value, state.window_size, state.power)

    def slide(self, data: bytes, n: int) -> Iterator[int]:
        """Yield the hash of ``data[p:p+n]`` for every ``p`` in ``0..len(data)-n``."""
        if n < 1:
            raise WindowSizeError(f"window size must be >= 1, got {n}")
        if len(data) < n:
            return
        data = bytes(data)
        base, mod = self.base, self.modulus
        value = self.init(data[:n]).value
        yield value
        # additive inverse of each outgoing-byte contribution, so every
        # intermediate stays non-negative and of the same magnitude for all n
        power = pow(base, n - 1, mod)
        drop = [(-x * power) % mod for x in range(256)]
        for out, inc in zip(data, data[n:]):
            value = ((value + drop[out]) * base + inc) % mod
            yield value


DEFAULT_HASHER = RabinKarp()


def init(window: bytes, n: int | None = None) -> RollState:
    return DEFAULT_HASHER.init(window, n)


def roll(state: RollState, outgoing: int, incoming: int) -> RollState:
    return DEFAULT_HASHER.roll(state, outgoing, incoming)


def window_hashes(data: bytes, n: int) -> Iterator[int]:
    return DEFAULT_HASHER.slide(data, n)

"""Deterministic random numbers shared by environments, agents and benchmarks.

The generator is SplitMix64. The 64-bit state advances by a fixed odd
constant and every output is a finalizer hash of the state:

    state  <- (state + 0x9E3779B97F4A7C15)            mod 2^64
    z      <- state
    z      <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9  mod 2^64
    z      <- (z xor (z >> 27)) * 0x94D049BB133111EB  mod 2^64
    output <- z xor (z >> 31)

Two properties matter here:

* the update equations above are tiny enough to re-implement anywhere, so
  seeded runs replay identically regardless of platform or language;
* the state after n draws is simply ``seed + n * GAMMA``, so the exact same
  output sequence can be produced one value at a time (:class:`Prng`) or as
  a vectorized numpy block (:func:`bulk_u64`), which the benchmark harness
  uses to pre-generate action streams.

Named substreams come from :func:`derive`, which folds string/int keys
through the finalizer. Every subsystem that needs independent randomness
(maze layout per episode, unit spawn rows, opponent policies, benchmark
workers) derives its own stream instead of sharing one generator.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer: avalanche a 64-bit value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


def derive(seed: int, *keys: int | str) -> int:
    """Derive an independent child seed from ``seed`` and named keys.

    Strings are folded bytewise through the finalizer; the result only
    depends on (seed, keys), never on generator state, so the same
    substream can be re-derived at any time.
    """
    s = mix64(seed)
    for key in keys:
        if isinstance(key, str):
            k = 0
            for byte in key.encode("utf-8"):
                k = mix64((k << 8) ^ byte ^ GAMMA)
        else:
            k = key & MASK64
        s = mix64(s ^ mix64(k ^ GAMMA))
    return s


class Prng:
    """Sequential SplitMix64 stream."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + GAMMA) & MASK64
        return mix64(self._state)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n). Uses the modulo reduction; the bias is
        below 2^-50 for any n that fits a game action space."""
        if n <= 0:
            raise ValueError("randrange() requires n >= 1")
        return self.next_u64() % n

    def uniform(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def spawn(self, *keys: int | str) -> "Prng":
        """Child stream keyed off the current seed without advancing it."""
        return Prng(derive(self._state, *keys))


def bulk_u64(seed: int, n: int, offset: int = 0) -> np.ndarray:
    """The outputs of draws ``offset+1 .. offset+n`` of ``Prng(seed)``,
    computed vectorized. Exactly matches repeated ``next_u64()`` calls."""
    idx = np.arange(offset + 1, offset + n + 1, dtype=np.uint64)
    z = np.uint64(seed & MASK64) + idx * np.uint64(GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MUL1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MUL2)
    return z ^ (z >> np.uint64(31))


def bulk_actions(seed: int, n: int, action_count: int, offset: int = 0) -> np.ndarray:
    """Pre-generated uniform action stream as uint8 (action_count <= 255)."""
    if not 1 <= action_count <= 255:
        raise ValueError("action_count must be in [1, 255]")
    return (bulk_u64(seed, n, offset) % np.uint64(action_count)).astype(np.uint8)

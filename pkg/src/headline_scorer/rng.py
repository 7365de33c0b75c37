"""Deterministic pseudo-random generator for reproducible corpus splits.

The splitting pipeline must replay byte-identically across platforms and
interpreter versions, so the generator is spelled out here instead of
relying on a standard-library default whose stream is not contractual.
The core is xorshift64* (64-bit state, multiplied output) seeded through
one step of splitmix64 so that any integer, including 0, is a valid seed.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_XORSHIFT_MULTIPLIER = 0x2545F4914F6CDD1D


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state once; return (new_state, output)."""
    state = (state + _SPLITMIX_GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


class Xorshift64Star:
    """xorshift64* generator with a splitmix64-derived nonzero start state."""

    def __init__(self, seed: int):
        state = seed & _MASK64
        # xorshift has a fixed point at 0; draw seed states until nonzero.
        mix, value = splitmix64(state)
        while value == 0:
            mix, value = splitmix64(mix)
        self._state = value

    def next_u64(self) -> int:
        x = self._state
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self._state = x
        return (x * _XORSHIFT_MULTIPLIER) & _MASK64

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n), by rejection so there is no modulo bias."""
        if n <= 0:
            raise ValueError(f"randbelow requires n >= 1, got {n}")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, n: int, k: int) -> list[int]:
        """k distinct indices drawn uniformly from range(n), in draw order."""
        if not 0 <= k <= n:
            raise ValueError(f"cannot sample {k} items from {n}")
        indices = list(range(n))
        for i in range(k):
            j = i + self.randbelow(n - i)
            indices[i], indices[j] = indices[j], indices[i]
        return indices[:k]

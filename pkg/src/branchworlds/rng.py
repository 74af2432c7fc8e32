"""Deterministic splittable random number generator.

The generator is SplitMix64 (Steele, Lea & Flood's mixing constants, Stafford
mix13 finalizer).  State advances by the 64-bit golden-ratio increment
0x9E3779B97F4A7C15 and each output is the mixed state:

    state  = (state + 0x9E3779B97F4A7C15) mod 2^64
    output = mix13(state)

Substreams are derived arithmetically, never by drawing, so stream k of a
seed is the same no matter how many values other streams consumed:

    substream(seed, k) = SplitMix64(mix13(mix13(seed) ^ ((k + 1) * GOLDEN)))

Fixed-seed results are therefore reproducible across processes, platforms,
and independent reimplementations of the same recipe.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix13(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Sequential 64-bit generator with an equidistributed state walk."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return _mix13(self._state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), bias-free via rejection sampling."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range [lo, hi]."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.below(hi - lo + 1)

    def uniform(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def choice(self, items):
        return items[self.below(len(items))]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def substream(seed: int, index: int) -> SplitMix64:
    """Independent deterministic stream `index` of `seed` (formula above)."""
    if index < 0:
        raise ValueError("substream index must be nonnegative")
    key = _mix13(_mix13(seed) ^ (((index + 1) * _GOLDEN) & _MASK64))
    return SplitMix64(key)

"""Seeded samplers for games and sequential games.

Every sampler takes an explicit SplitMix64 stream; callers derive one
substream per trial index so batches are order-independent and reproducible.
"""

from __future__ import annotations

from fractions import Fraction

from .games import MAX, ExactCoefficient, Game
from .rng import SplitMix64


def sample_fraction(
    rng: SplitMix64,
    max_numerator: int = 20,
    max_denominator: int = 20,
    allow_negative: bool = False,
    allow_zero: bool = False,
) -> Fraction:
    lo = 0 if allow_zero else 1
    numerator = rng.randint(lo, max_numerator)
    denominator = rng.randint(1, max_denominator)
    value = Fraction(numerator, denominator)
    if allow_negative and rng.below(2) == 1:
        value = -value
    return value


def sample_phase(rng: SplitMix64, resolution: int = 12) -> Fraction:
    return Fraction(rng.below(resolution), resolution)


def sample_rewards(rng: SplitMix64, n: int, span: int = 50) -> list[Fraction]:
    return [
        Fraction(rng.randint(-span, span), rng.randint(1, 10)) for _ in range(n)
    ]


def sample_game(
    rng: SplitMix64,
    p,
    max_rows: int = 5,
    max_numerator: int = 20,
    max_denominator: int = 20,
) -> Game:
    """Random game with the given rational ambient exponent."""
    n = rng.randint(1, max_rows)
    rewards = sample_rewards(rng, n)
    rows = []
    for i in range(n):
        mag = sample_fraction(rng, max_numerator, max_denominator)
        rows.append((ExactCoefficient(mag, sample_phase(rng)), rewards[i]))
    return Game(tuple(rows), p)


def sample_max_game(rng: SplitMix64, max_rows: int = 5) -> Game:
    """Random MAX-ambient game; the small magnitude grid makes ties common."""
    n = rng.randint(1, max_rows)
    rewards = sample_rewards(rng, n)
    rows = []
    for i in range(n):
        mag = Fraction(rng.randint(1, 6), rng.randint(1, 4))
        rows.append((ExactCoefficient(mag, sample_phase(rng)), rewards[i]))
    return Game(tuple(rows), MAX)


def sample_game_for(rng: SplitMix64, ambient, **kwargs) -> Game:
    if ambient is MAX:
        return sample_max_game(rng, kwargs.get("max_rows", 5))
    return sample_game(rng, ambient, **kwargs)

"""Core game types and exact value rules.

A game is an ordered list of branches; each branch carries an exact
coefficient and a rational reward.  A coefficient stores the p-th power of
its magnitude (``mag_p``) together with a phase expressed as a fraction of a
full turn, so every value computation runs in exact rational arithmetic and
no radicals or floats ever enter the core path.

For a game with rational ambient exponent p the fair value is the
magnitude-weighted mean of the rewards,

    value = sum_i mag_p_i * r_i / sum_i mag_p_i,

and the subjective probability of branch i is the value of the elementary
game paying 1 on branch i and 0 elsewhere.  The MAX ambient selects the
max-magnitude rule instead: the plain average of rewards over the branches
whose magnitude ties the maximum.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    EmptyGame,
    InvalidCoefficient,
    InvalidExponent,
    MaxNormUnsupported,
    NonpositiveFactor,
    NotMaxMode,
    ZeroTotalMeasure,
)


class _MaxExponent:
    """Marker for games valued by the max-magnitude rule."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "MAX"


MAX = _MaxExponent()

Exponent = Union[Fraction, _MaxExponent]


class UniverseKind(Enum):
    """Branching semantics a scenario runs under.

    KENT multiplies worlds: integer coefficients literally count the
    successor worlds created per outcome.  REVERSE_KENT splits a fixed pool
    of worlds, conserving their number.  PNORM measures sets of worlds by
    the p-th power of the coefficient magnitudes.
    """

    KENT = "kent"
    REVERSE_KENT = "reverse-kent"
    PNORM = "pnorm"


def as_fraction(value) -> Fraction:
    """Coerce int/str/Fraction to an exact Fraction; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact fraction: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class ExactCoefficient:
    """Branch weight: magnitude^p as a nonnegative rational, plus a phase.

    ``mag_p`` is |alpha|^p under the game's ambient exponent (for MAX games
    it is |alpha| itself).  ``phase`` is theta/2pi reduced into [0, 1).
    """

    mag_p: Fraction
    phase: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        mag = as_fraction(self.mag_p)
        if mag < 0:
            raise InvalidCoefficient(f"magnitude power must be >= 0, got {mag}")
        object.__setattr__(self, "mag_p", mag)
        object.__setattr__(self, "phase", as_fraction(self.phase) % 1)

    def scaled(self, factor: Fraction) -> "ExactCoefficient":
        return ExactCoefficient(self.mag_p * factor, self.phase)


Row = tuple[ExactCoefficient, Fraction]


def _validate_exponent(p) -> Exponent:
    if p is MAX or isinstance(p, _MaxExponent):
        return MAX
    exponent = as_fraction(p)
    if exponent < 1:
        raise InvalidExponent(f"ambient exponent must satisfy p >= 1, got {exponent}")
    return exponent


@dataclass(frozen=True)
class Game:
    """Ordered branching bet: rows of (coefficient, reward) plus an ambient exponent.

    Rows with zero magnitude describe no worlds and may not be stored; they
    are rejected at construction.
    """

    rows: tuple[Row, ...]
    p: Exponent

    def __post_init__(self) -> None:
        rows = tuple(
            (coefficient, as_fraction(reward)) for coefficient, reward in self.rows
        )
        if not rows:
            raise EmptyGame("a game needs at least one row")
        for coefficient, _ in rows:
            if not isinstance(coefficient, ExactCoefficient):
                raise TypeError("rows must pair ExactCoefficient with a reward")
            if coefficient.mag_p == 0:
                raise InvalidCoefficient(
                    "a zero-magnitude row describes no worlds and may not be stored"
                )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "p", _validate_exponent(self.p))

    @classmethod
    def from_pairs(cls, p, pairs: Iterable) -> "Game":
        """Build a game from (mag_p, reward) or (mag_p, phase, reward) tuples."""
        rows = []
        for pair in pairs:
            if len(pair) == 2:
                mag, reward = pair
                coefficient = ExactCoefficient(as_fraction(mag))
            elif len(pair) == 3:
                mag, phase, reward = pair
                coefficient = ExactCoefficient(as_fraction(mag), as_fraction(phase))
            else:
                raise ValueError("row tuples must have 2 or 3 entries")
            rows.append((coefficient, as_fraction(reward)))
        return cls(tuple(rows), p)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def is_max(self) -> bool:
        return isinstance(self.p, _MaxExponent)

    def magnitudes(self) -> tuple[Fraction, ...]:
        return tuple(coefficient.mag_p for coefficient, _ in self.rows)

    def rewards(self) -> tuple[Fraction, ...]:
        return tuple(reward for _, reward in self.rows)

    def total_weight(self) -> Fraction:
        return sum(self.magnitudes(), Fraction(0))

    def with_rewards(self, rewards: Sequence) -> "Game":
        """Same coefficients and exponent, different reward vector."""
        if len(rewards) != self.n:
            raise ValueError("reward vector length must match row count")
        rows = tuple(
            (coefficient, as_fraction(reward))
            for (coefficient, _), reward in zip(self.rows, rewards)
        )
        return Game(rows, self.p)


@dataclass(frozen=True)
class ProbabilityVector:
    """Nonnegative exact rationals summing to exactly 1."""

    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        entries = tuple(as_fraction(entry) for entry in self.entries)
        if any(entry < 0 for entry in entries):
            raise ValueError("probabilities must be nonnegative")
        if sum(entries, Fraction(0)) != 1:
            raise ValueError("probabilities must sum to exactly 1")
        object.__setattr__(self, "entries", entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> Fraction:
        return self.entries[index]


def value_p_born(game: Game) -> Fraction:
    """Magnitude-weighted mean of the rewards; independent of phases."""
    if game.is_max:
        raise MaxNormUnsupported("value_p_born needs a finite rational exponent")
    total = game.total_weight()
    if total == 0:
        raise ZeroTotalMeasure("game carries no measure")
    weighted = sum(
        (coefficient.mag_p * reward for coefficient, reward in game.rows),
        Fraction(0),
    )
    return weighted / total


def value_max_born(game: Game) -> Fraction:
    """Average reward over the rows whose magnitude ties the maximum.

    Ties are decided by exact equality of the stored magnitudes; there is no
    epsilon tolerance.
    """
    if not game.is_max:
        raise NotMaxMode("value_max_born needs a MAX-ambient game")
    top = max(game.magnitudes())
    winners = [reward for coefficient, reward in game.rows if coefficient.mag_p == top]
    return sum(winners, Fraction(0)) / len(winners)


def game_value(game: Game) -> Fraction:
    """Value under the rule selected by the game's ambient exponent."""
    return value_max_born(game) if game.is_max else value_p_born(game)


def subjective_probabilities(game: Game) -> ProbabilityVector:
    """Per-row probabilities: values of the elementary games e_i.

    The elementary game for row i keeps the coefficients and pays 1 on row i,
    0 elsewhere.  The resulting entries are nonnegative, sum to exactly 1,
    and reconstruct the game value as sum_i p_i * r_i.
    """
    zeros = [Fraction(0)] * game.n
    entries = []
    for i in range(game.n):
        rewards = list(zeros)
        rewards[i] = Fraction(1)
        entries.append(game_value(game.with_rewards(rewards)))
    return ProbabilityVector(tuple(entries))


def scale_coefficients(game: Game, factor) -> Game:
    """Multiply every mag_p by a positive factor; values are unchanged."""
    scale = as_fraction(factor)
    if scale <= 0:
        raise NonpositiveFactor(f"scale factor must be > 0, got {scale}")
    rows = tuple((coefficient.scaled(scale), reward) for coefficient, reward in game.rows)
    return Game(rows, game.p)


def value_p_born_float(game: Game) -> float:
    """Weighted-mean value computed entirely in binary floating point.

    Companion to the exact rule for the continuity regression; agreement is
    checked at relative 1e-12.
    """
    if game.is_max:
        raise MaxNormUnsupported("float mode covers rational exponents only")
    total = sum(float(coefficient.mag_p) for coefficient, _ in game.rows)
    weighted = sum(
        float(coefficient.mag_p) * float(reward) for coefficient, reward in game.rows
    )
    return weighted / total

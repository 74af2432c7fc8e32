"""Multi-stage games: reductions to simple games, substitution, and the two-bet ledger.

A sequential game's rows carry either a terminal reward or a nested subgame.
Reduction flattens it to a simple game, innermost subgames first, then left
to right, one subgame row at a time:

  multiplying universe  — the subgame row (c, H) becomes rows (c*d_j, s_j);
                          all other rows are untouched (world counts multiply).
  splitting universe    — the subgame row becomes (c*d_j, s_j) and every other
                          row's coefficient is scaled by the subgame total
                          (the fixed pool is partitioned, totals conserved).
  p-norm universe       — the subgame row becomes (c*d_j, s_j) with phases
                          added, and every other row expands against the
                          subgame's coefficients (or, in the coarse form,
                          scales by the subgame's total mag_p; both forms
                          have identical value).

Replacing a subgame by its standalone value (substitution) agrees exactly
with reduction in the splitting and p-norm universes and fails in the
multiplying universe, where later branchings change earlier proportions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    AsymmetricInput,
    EmptyGame,
    InvalidCoefficient,
    NegativeMultiplicity,
    UniverseMismatch,
    ZeroTotal,
)
from .games import (
    ExactCoefficient,
    Game,
    ProbabilityVector,
    UniverseKind,
    as_fraction,
    value_p_born,
)

_ZERO = Fraction(0)

Payload = Union[Fraction, "SequentialGame"]


@dataclass(frozen=True)
class SequentialGame:
    """Rows of (coefficient, terminal reward | nested subgame)."""

    rows: tuple[tuple[ExactCoefficient, Payload], ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise EmptyGame("a sequential game needs at least one row")
        rows = []
        for coefficient, payload in self.rows:
            if not isinstance(coefficient, ExactCoefficient):
                raise TypeError("rows must start with an ExactCoefficient")
            if coefficient.mag_p == 0:
                raise InvalidCoefficient("zero-magnitude rows may not be stored")
            if not isinstance(payload, SequentialGame):
                payload = as_fraction(payload)
            rows.append((coefficient, payload))
        object.__setattr__(self, "rows", tuple(rows))

    @classmethod
    def from_rows(cls, rows) -> "SequentialGame":
        """Build from (mag_p, payload) or (mag_p, phase, payload) tuples."""
        built = []
        for row in rows:
            if len(row) == 2:
                mag, payload = row
                coefficient = ExactCoefficient(as_fraction(mag))
            else:
                mag, phase, payload = row
                coefficient = ExactCoefficient(as_fraction(mag), as_fraction(phase))
            built.append((coefficient, payload))
        return cls(tuple(built))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def depth(self) -> int:
        sub = [
            payload.depth for _, payload in self.rows
            if isinstance(payload, SequentialGame)
        ]
        return 1 + max(sub, default=0)

    @property
    def is_simple(self) -> bool:
        return all(not isinstance(payload, SequentialGame) for _, payload in self.rows)


def _require_multiplicity(coefficient: ExactCoefficient, universe: UniverseKind) -> None:
    if universe is UniverseKind.PNORM:
        return
    if coefficient.mag_p.denominator != 1 or coefficient.phase != 0:
        raise UniverseMismatch(
            f"{universe.value} coefficients must be phase-free integers, "
            f"got mag {coefficient.mag_p}, phase {coefficient.phase}"
        )


def once_or_twice(c1, c2, universe: UniverseKind) -> ProbabilityVector:
    """Proportions of the world classes (1), (2,1), (2,2).

    The measurement with weights (c1, c2) is performed once, then repeated
    only in the outcome-2 worlds.  In the multiplying universe c1, c2 are
    integer world counts and the denominators grow with the second
    branching; in the splitting and p-norm universes the total is conserved,
    so the outcome-1 class keeps its single-trial share.  For the p-norm
    universe pass mag_p weights (magnitudes already raised to p).
    """
    c1, c2 = as_fraction(c1), as_fraction(c2)
    if c1 < 0 or c2 < 0:
        raise NegativeMultiplicity("weights must be nonnegative")
    if universe is UniverseKind.PNORM:
        if c1 == 0 or c2 == 0:
            raise ZeroTotal("p-norm weights must both be positive")
    elif c1.denominator != 1 or c2.denominator != 1:
        raise UniverseMismatch("world multiplicities must be integers")
    if c1 + c2 == 0:
        raise ZeroTotal("at least one weight must be positive")
    if universe is UniverseKind.KENT:
        total = c1 + c1 * c2 + c2 * c2
        if total == 0:
            raise ZeroTotal("no worlds exist in this scenario")
        entries = (c1 / total, c1 * c2 / total, c2 * c2 / total)
    else:
        total = (c1 + c2) ** 2
        entries = (c1 * (c1 + c2) / total, c2 * c1 / total, c2 * c2 / total)
    return ProbabilityVector(entries)


def _combine(a: ExactCoefficient, b: ExactCoefficient) -> ExactCoefficient:
    return ExactCoefficient(a.mag_p * b.mag_p, a.phase + b.phase)


def _reduce_rows(
    game: SequentialGame, universe: UniverseKind, expanded: bool
) -> list[tuple[ExactCoefficient, Fraction]]:
    work: list[tuple[ExactCoefficient, object]] = []
    for coefficient, payload in game.rows:
        _require_multiplicity(coefficient, universe)
        if isinstance(payload, SequentialGame):
            work.append((coefficient, _reduce_rows(payload, universe, expanded)))
        else:
            work.append((coefficient, payload))

    def first_pending() -> Optional[int]:
        for index, (_, payload) in enumerate(work):
            if isinstance(payload, list):
                return index
        return None

    while (j := first_pending()) is not None:
        parent, flat = work[j]
        total = sum((c.mag_p for c, _ in flat), _ZERO)
        replaced: list[tuple[ExactCoefficient, object]] = []
        for index, (coefficient, payload) in enumerate(work):
            if index == j:
                replaced.extend(
                    (_combine(parent, c), reward) for c, reward in flat
                )
            elif universe is UniverseKind.KENT:
                replaced.append((coefficient, payload))
            elif universe is UniverseKind.REVERSE_KENT:
                replaced.append((coefficient.scaled(total), payload))
            elif expanded:
                replaced.extend(
                    (_combine(coefficient, c), payload) for c, _ in flat
                )
            else:
                replaced.append((coefficient.scaled(total), payload))
        work = replaced
    return [(coefficient, payload) for coefficient, payload in work]


def reduce_sequential(
    g: SequentialGame,
    universe: UniverseKind,
    expanded: bool = True,
    ambient_p=Fraction(2),
) -> Game:
    """Flatten a sequential game to a value-equivalent simple game.

    `expanded` only matters in the p-norm universe: the expanded form keeps
    one row per joint outcome, the coarse form one row per original row
    scaled by subgame totals.  Kent-universe games come back with ambient
    exponent 1 (multiplicity games); p-norm games with `ambient_p`.
    """
    rows = _reduce_rows(g, universe, expanded)
    if universe is UniverseKind.PNORM:
        ambient = as_fraction(ambient_p)
    else:
        ambient = Fraction(1)
    return Game(tuple(rows), ambient)


def sequential_value(g: SequentialGame, universe: UniverseKind) -> Fraction:
    """Value of the reduced simple game under the universe's weighted rule."""
    return value_p_born(reduce_sequential(g, universe, expanded=False))


def substitution_value(g: SequentialGame, universe: UniverseKind) -> Fraction:
    """Value obtained by replacing each subgame with its standalone value."""
    numerator = _ZERO
    denominator = _ZERO
    for coefficient, payload in g.rows:
        _require_multiplicity(coefficient, universe)
        if isinstance(payload, SequentialGame):
            reward = substitution_value(payload, universe)
        else:
            reward = payload
        numerator += coefficient.mag_p * reward
        denominator += coefficient.mag_p
    return numerator / denominator


@dataclass(frozen=True)
class SubstitutionReport:
    universe: UniverseKind
    holds: bool
    reduced_value: Fraction
    substitution_value: Fraction
    witness: Optional[SequentialGame] = None


def check_substitution(g: SequentialGame, universe: UniverseKind) -> SubstitutionReport:
    """Compare the reduction value with the subgame-by-value substitution.

    Exact equality holds in the splitting and p-norm universes for every
    input; the multiplying universe fails on generic inputs because the
    second branching dilutes the single-stage worlds.
    """
    reduced = sequential_value(g, universe)
    substituted = substitution_value(g, universe)
    holds = reduced == substituted
    return SubstitutionReport(
        universe,
        holds,
        reduced,
        substituted,
        witness=None if holds else g,
    )


@dataclass(frozen=True)
class LedgerEntry:
    world_class: tuple[int, ...]
    measure: Fraction
    payoff: Fraction


@dataclass(frozen=True)
class OutcomeLedger:
    """Per-world-class accounting of accumulated bet payoffs."""

    entries: tuple[LedgerEntry, ...]

    def payoffs(self) -> tuple[Fraction, ...]:
        return tuple(entry.payoff for entry in self.entries)


def dutch_book_demo(
    c1: int,
    c2: int,
    first_bet=(Fraction(3), Fraction(-3)),
    second_bet=(Fraction(-4), Fraction(2)),
) -> OutcomeLedger:
    """Two bets that lose in every world of the symmetric once-or-twice tree.

    The first bet pays first_bet[0] in outcome-1 worlds and first_bet[1] in
    outcome-2 worlds of the first measurement.  The second bet pays
    second_bet[0] in the world measured once and second_bet[1] in each world
    measured twice.  With the default stakes every world class accumulates
    exactly -1.
    """
    if c1 != c2:
        raise AsymmetricInput("the demo requires equal multiplicities")
    if c1 < 1:
        raise ZeroTotal("multiplicities must be >= 1")
    stage_one_win, stage_one_loss = (as_fraction(x) for x in first_bet)
    single_world, double_world = (as_fraction(x) for x in second_bet)
    c1f, c2f = Fraction(c1), Fraction(c2)
    entries = (
        LedgerEntry((1,), c1f, stage_one_win + single_world),
        LedgerEntry((2, 1), c2f * c1f, stage_one_loss + double_world),
        LedgerEntry((2, 2), c2f * c2f, stage_one_loss + double_world),
    )
    return OutcomeLedger(entries)

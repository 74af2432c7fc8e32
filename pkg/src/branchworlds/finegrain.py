"""Fine-graining steps, constructive symmetrization, and the max-norm obstruction.

A fine-graining step replaces one row's coefficient by parts whose mag_p
values sum exactly to the original (the additive form of p-norm
preservation); all parts inherit the row's reward, parts replace the parent
in place, and zero-magnitude parts are dropped since they describe no
worlds.  Repeating such steps takes any rational-exponent game to a
symmetric game (all coefficients equal), whose value is the plain average of
its rewards; that average is the independent route to the weighted-mean
value rule.

Under the MAX ambient no such reduction exists: a max-preserving split keeps
one part at the parent magnitude, so a reward class's maximal magnitude can
never change and games with distinct magnitudes stay asymmetric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import (
    ConstraintViolated,
    IndexOutOfRange,
    MaxNormUnsupported,
    NotMaxMode,
    SizeOverflow,
    SymmetricInput,
)
from .games import ExactCoefficient, Game, value_p_born

DEFAULT_MAX_ROWS = 10**6

_ZERO = Fraction(0)


@dataclass(frozen=True)
class FineGrainStep:
    """Split of one row's coefficient into parts with the same total mag_p."""

    row_index: int
    parts: tuple[ExactCoefficient, ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ConstraintViolated("a fine-graining step needs at least 2 parts")
        for part in self.parts:
            if not isinstance(part, ExactCoefficient):
                raise TypeError("parts must be ExactCoefficient instances")


def apply_fine_grain(game: Game, step: FineGrainStep) -> Game:
    """Replace the target row by the step's nonzero parts, in place.

    The parts' mag_p values must sum exactly to the target row's mag_p;
    the value of the game is preserved exactly.
    """
    if not 0 <= step.row_index < game.n:
        raise IndexOutOfRange(f"row {step.row_index} not in 0..{game.n - 1}")
    coefficient, reward = game.rows[step.row_index]
    total = sum((part.mag_p for part in step.parts), _ZERO)
    if total != coefficient.mag_p:
        raise ConstraintViolated(
            f"parts sum to {total}, row magnitude is {coefficient.mag_p}"
        )
    replacement = tuple(
        (part, reward) for part in step.parts if part.mag_p > 0
    )
    rows = (
        game.rows[: step.row_index] + replacement + game.rows[step.row_index + 1 :]
    )
    return Game(rows, game.p)


def replay(game: Game, steps) -> Game:
    for step in steps:
        game = apply_fine_grain(game, step)
    return game


@dataclass(frozen=True)
class SymmetrizationTrace:
    """Replayable recipe taking a game to its symmetric refinement.

    Replaying `steps` from the input yields a game whose coefficients all
    have mag_p = 1/common_denominator and where the i-th input reward
    occupies exactly multiplicities[i] consecutive rows.
    """

    steps: tuple[FineGrainStep, ...]
    common_denominator: int
    multiplicities: tuple[int, ...]


def symmetrization_plan(game: Game) -> tuple[int, tuple[int, ...]]:
    """Common denominator and per-row multiplicities of the symmetric form.

    d is the least common multiple of the mag_p denominators; row i expands
    into mag_p_i * d rows of magnitude 1/d.
    """
    if game.is_max:
        raise MaxNormUnsupported("MAX games cannot be symmetrized")
    magnitudes = game.magnitudes()
    d = lcm(*(mag.denominator for mag in magnitudes))
    multiplicities = tuple(int(mag * d) for mag in magnitudes)
    return d, multiplicities


def symmetric_size(game: Game) -> int:
    d, multiplicities = symmetrization_plan(game)
    total = sum(multiplicities)
    if total != d * game.total_weight():
        raise AssertionError("multiplicities do not match d * total weight")
    return total


def symmetrize(game: Game, max_rows: int = DEFAULT_MAX_ROWS) -> tuple[Game, SymmetrizationTrace]:
    """Fine-grain every row into equal-magnitude, zero-phase parts.

    Returns the symmetric game and a trace whose steps replay to it.  Rows
    that are already canonical (magnitude 1/d, phase 0, multiplicity 1) need
    no step; a multiplicity-1 row with the wrong phase is rewritten through a
    trivial split whose second part has zero magnitude.
    """
    d, multiplicities = symmetrization_plan(game)
    total = sum(multiplicities)
    if total > max_rows:
        raise SizeOverflow(
            f"symmetric refinement needs {total} rows, bound is {max_rows}"
        )
    unit = ExactCoefficient(Fraction(1, d))
    steps = []
    out_rows = []
    position = 0
    for (coefficient, reward), count in zip(game.rows, multiplicities):
        if count == 1 and coefficient == unit:
            pass
        else:
            parts = (unit,) * count
            if count == 1:
                parts = (unit, ExactCoefficient(_ZERO))
            steps.append(FineGrainStep(position, parts))
        out_rows.extend((unit, reward) for _ in range(count))
        position += count
    symmetric = Game(tuple(out_rows), game.p)
    trace = SymmetrizationTrace(tuple(steps), d, multiplicities)
    return symmetric, trace


def value_via_symmetrization(game: Game, max_rows: int = DEFAULT_MAX_ROWS) -> Fraction:
    """Value obtained by symmetrizing and averaging the refined rewards.

    Independent of the closed-form weighted mean; the two agree exactly on
    every game the refinement bound admits.
    """
    symmetric, _ = symmetrize(game, max_rows)
    rewards = symmetric.rewards()
    return sum(rewards, _ZERO) / len(rewards)


@dataclass(frozen=True)
class ObstructionWitness:
    """Exhaustive-search certificate that no symmetric refinement exists.

    `class_maxima` maps each reward to the maximal magnitude attached to it
    in the input; every explored refinement keeps the same maxima, and none
    of the `explored` refinements is symmetric.
    """

    depth: int
    explored: int
    symmetric_found: int
    class_maxima: tuple[tuple[Fraction, Fraction], ...]
    invariant_held: bool

    @property
    def confirmed(self) -> bool:
        return self.symmetric_found == 0 and self.invariant_held


def _class_maxima(state) -> dict:
    maxima: dict = {}
    for magnitude, reward in state:
        if reward not in maxima or magnitude > maxima[reward]:
            maxima[reward] = magnitude
    return maxima


def max_norm_obstruction(game: Game, depth: int = 3) -> ObstructionWitness:
    """Search every max-preserving split tree up to `depth` splits.

    A split replaces a row of magnitude m by two parts (m, q) with q <= m,
    keeping the maximum; candidate q values are the magnitudes present in
    the input game, which loses nothing because splits can never raise a
    reward class's maximal magnitude.
    """
    if not game.is_max:
        raise NotMaxMode("the obstruction search is defined for MAX games")
    magnitudes = sorted(set(game.magnitudes()))
    if len(magnitudes) < 2:
        raise SymmetricInput("all magnitudes equal; nothing to obstruct")

    # Multisets as frozensets of ((magnitude, reward), count) pairs.
    def as_counter(state):
        return dict(state)

    def freeze(counter):
        return frozenset(counter.items())

    start_counter: dict = {}
    for coefficient, reward in game.rows:
        key = (coefficient.mag_p, reward)
        start_counter[key] = start_counter.get(key, 0) + 1
    start = freeze(start_counter)

    input_maxima = _class_maxima(as_counter(start))
    seen = {start}
    frontier = [start]
    symmetric_found = 0
    invariant_held = True
    for _ in range(depth):
        next_frontier = []
        for state in frontier:
            counter = as_counter(state)
            for (magnitude, reward) in list(counter):
                for q in magnitudes:
                    if q > magnitude:
                        break
                    child = dict(counter)
                    child[(q, reward)] = child.get((q, reward), 0) + 1
                    frozen = freeze(child)
                    if frozen in seen:
                        continue
                    seen.add(frozen)
                    next_frontier.append(frozen)
        frontier = next_frontier
    for state in seen:
        counter = as_counter(state)
        mags_here = {magnitude for (magnitude, _reward) in counter}
        if len(mags_here) == 1:
            symmetric_found += 1
        if _class_maxima(counter) != input_maxima:
            invariant_held = False
    return ObstructionWitness(
        depth=depth,
        explored=len(seen),
        symmetric_found=symmetric_found,
        class_maxima=tuple(sorted(input_maxima.items(), key=lambda kv: str(kv[0]))),
        invariant_held=invariant_held,
    )

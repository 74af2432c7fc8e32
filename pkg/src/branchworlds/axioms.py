"""Executable checks of the rationality axioms.

Each check draws a seeded sample of games, evaluates the axiom's defining
equality or inequality exactly, and reports the first counterexample (by
trial index) or a pass.  Trials use independent substreams, so the report is
the same regardless of evaluation order.

Continuity is not an exact finite check; its surrogate is the max-rule
witness sequence below, plus the float-regression test for the weighted
rules.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .games import (
    MAX,
    ExactCoefficient,
    Game,
    game_value,
    value_max_born,
)
from .rng import substream
from .sampling import sample_fraction, sample_game_for


class Axiom(Enum):
    CONSTANCY = "constancy"
    DOMINANCE = "dominance"
    ADDITIVITY = "additivity"
    INDIFFERENCE = "indifference"
    HOMOGENEITY = "homogeneity"


@dataclass(frozen=True)
class Counterexample:
    trial: int
    note: str
    lhs: Fraction
    rhs: Fraction
    games: tuple[Game, ...]


@dataclass(frozen=True)
class AxiomReport:
    axiom: Axiom
    rule: str
    trials: int
    passed: bool
    counterexample: Optional[Counterexample] = None


def rule_name(ambient) -> str:
    return "max-born" if ambient is MAX else f"p-born({ambient})"


def _check_constancy(rng, ambient):
    game = sample_game_for(rng, ambient)
    reward = sample_fraction(rng, 30, 10, allow_negative=True, allow_zero=True)
    constant = game.with_rewards([reward] * game.n)
    value = game_value(constant)
    if value != reward:
        return Counterexample(0, "constant-reward game valued off its reward", value, reward, (constant,))
    return None


def _check_dominance(rng, ambient):
    game = sample_game_for(rng, ambient)
    lowered = [
        reward - Fraction(rng.below(8), rng.randint(1, 4)) for reward in game.rewards()
    ]
    smaller = game.with_rewards(lowered)
    high, low = game_value(game), game_value(smaller)
    if high < low:
        return Counterexample(0, "componentwise-smaller rewards valued higher", high, low, (game, smaller))
    return None


def _check_additivity(rng, ambient):
    game = sample_game_for(rng, ambient)
    other_rewards = [
        sample_fraction(rng, 30, 10, allow_negative=True, allow_zero=True)
        for _ in range(game.n)
    ]
    other = game.with_rewards(other_rewards)
    combined = game.with_rewards(
        [a + b for a, b in zip(game.rewards(), other.rewards())]
    )
    lhs = game_value(combined)
    rhs = game_value(game) + game_value(other)
    if lhs != rhs:
        return Counterexample(0, "split ticket priced differently", lhs, rhs, (game, other, combined))
    return None


def _check_indifference(rng, ambient):
    game = sample_game_for(rng, ambient)
    order = list(range(game.n))
    rng.shuffle(order)
    permuted = Game(tuple(game.rows[i] for i in order), game.p)
    lhs, rhs = game_value(permuted), game_value(game)
    if lhs != rhs:
        return Counterexample(0, "row permutation changed the value", lhs, rhs, (game, permuted))
    return None


def _check_homogeneity(rng, ambient):
    game = sample_game_for(rng, ambient)
    index = rng.below(game.n)
    mu = sample_fraction(rng, 20, 8, allow_negative=True, allow_zero=True)
    unit = [Fraction(0)] * game.n
    unit[index] = Fraction(1)
    scaled = [Fraction(0)] * game.n
    scaled[index] = mu
    lhs = game_value(game.with_rewards(scaled))
    rhs = mu * game_value(game.with_rewards(unit))
    if lhs != rhs:
        return Counterexample(0, "elementary game not homogeneous in its reward", lhs, rhs, (game,))
    return None


_CHECKS = {
    Axiom.CONSTANCY: _check_constancy,
    Axiom.DOMINANCE: _check_dominance,
    Axiom.ADDITIVITY: _check_additivity,
    Axiom.INDIFFERENCE: _check_indifference,
    Axiom.HOMOGENEITY: _check_homogeneity,
}


def check_axiom(axiom: Axiom, ambient, trials: int, seed: int = 0) -> AxiomReport:
    """Evaluate one axiom on `trials` seeded games under the given value rule.

    `ambient` is a rational exponent for the weighted rule or MAX for the
    max-magnitude rule; trial i draws from substream(seed, i).  A failing
    axiom is a report, not an error.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    check = _CHECKS[axiom]
    for trial in range(trials):
        rng = substream(seed, trial)
        found = check(rng, ambient)
        if found is not None:
            witness = Counterexample(trial, found.note, found.lhs, found.rhs, found.games)
            return AxiomReport(axiom, rule_name(ambient), trials, False, witness)
    return AxiomReport(axiom, rule_name(ambient), trials, True)


@dataclass(frozen=True)
class ContinuityWitness:
    """Max-rule discontinuity exhibit.

    The games [(1, r1), (1 + 1/k, r2)] all value to r2, yet their limit
    [(1, r1), (1, r2)] values to the midpoint, so no continuous rule agrees
    with the max rule.
    """

    k_values: tuple[int, ...]
    sequence_values: tuple[Fraction, ...]
    limit_value: Fraction
    discontinuous: bool


def max_born_continuity_witness(r1, r2, k_values=tuple(range(1, 11))) -> ContinuityWitness:
    r1, r2 = Fraction(r1), Fraction(r2)
    sequence_values = []
    for k in k_values:
        game_k = Game(
            (
                (ExactCoefficient(Fraction(1)), r1),
                (ExactCoefficient(1 + Fraction(1, k)), r2),
            ),
            MAX,
        )
        sequence_values.append(value_max_born(game_k))
    limit_game = Game(
        ((ExactCoefficient(Fraction(1)), r1), (ExactCoefficient(Fraction(1)), r2)),
        MAX,
    )
    limit_value = value_max_born(limit_game)
    tail = sequence_values[-1]
    return ContinuityWitness(
        tuple(k_values),
        tuple(sequence_values),
        limit_value,
        discontinuous=(limit_value != tail),
    )

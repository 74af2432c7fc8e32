"""Repeated branchings: world counts, product measures, and frequency laws.

One trial branches into n outcomes with per-outcome measures.  N independent
repetitions induce the product measure over outcome sequences; grouping
sequences by how often a target outcome occurs gives an exact binomial law,
which concentrates around the single-trial proportion (Hoeffding bound).
Outcome labels are 1-based throughout, matching sequence notation like
(2, 2, 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, exp, lcm

from .errors import (
    EnumerationTooLarge,
    InvalidSequence,
    InvalidSpec,
    NegativeMultiplicity,
    NonpositiveEpsilon,
    UniverseMismatch,
    WrongUniverse,
    ZeroTotal,
)
from .games import UniverseKind, as_fraction
from .rng import substream

DEFAULT_ENUMERATION_BOUND = 10**7

_ZERO = Fraction(0)
_HOEFFDING_SLACK = Fraction(1e-15)


@dataclass(frozen=True)
class BranchSpec:
    """Per-trial outcome measures plus a repetition count.

    In the multiplying universe the measures are literal integer world
    multiplicities; elsewhere they are arbitrary nonnegative rationals.
    """

    universe: UniverseKind
    measures: tuple[Fraction, ...]
    repeats: int

    def __post_init__(self) -> None:
        measures = tuple(as_fraction(m) for m in self.measures)
        if not measures:
            raise InvalidSpec("at least one outcome measure is required")
        if any(m < 0 for m in measures):
            raise NegativeMultiplicity("measures must be nonnegative")
        if all(m == 0 for m in measures):
            raise ZeroTotal("at least one measure must be positive")
        if self.universe is UniverseKind.KENT and any(
            m.denominator != 1 for m in measures
        ):
            raise UniverseMismatch("multiplying-universe measures must be integers")
        if self.repeats < 1:
            raise InvalidSpec("repeats must be >= 1")
        object.__setattr__(self, "measures", measures)

    @property
    def n_outcomes(self) -> int:
        return len(self.measures)

    def total_measure(self) -> Fraction:
        return sum(self.measures, _ZERO)

    def single_trial_proportion(self, outcome: int) -> Fraction:
        self._check_outcome(outcome)
        return self.measures[outcome - 1] / self.total_measure()

    def _check_outcome(self, outcome: int) -> None:
        if not 1 <= outcome <= self.n_outcomes:
            raise InvalidSequence(
                f"outcome {outcome} not in 1..{self.n_outcomes}"
            )

    def _check_sequence(self, sequence) -> tuple[int, ...]:
        sequence = tuple(sequence)
        if len(sequence) != self.repeats:
            raise InvalidSequence(
                f"sequence length {len(sequence)} != repeats {self.repeats}"
            )
        for label in sequence:
            self._check_outcome(label)
        return sequence


@dataclass(frozen=True)
class SequenceMeasure:
    sequence: tuple[int, ...]
    measure: Fraction


def world_count(spec: BranchSpec, sequence) -> int:
    """Number of worlds carrying this outcome sequence (multiplying universe)."""
    if spec.universe is not UniverseKind.KENT:
        raise WrongUniverse("world counts exist only in the multiplying universe")
    sequence = spec._check_sequence(sequence)
    count = 1
    for label in sequence:
        count *= int(spec.measures[label - 1])
    return count


def sequence_measure(spec: BranchSpec, sequence) -> Fraction:
    """Product of the single-trial measures along the sequence."""
    sequence = spec._check_sequence(sequence)
    measure = Fraction(1)
    for label in sequence:
        measure *= spec.measures[label - 1]
    return measure


def proportion(spec: BranchSpec, sequence) -> Fraction:
    """Normalized share of this sequence: measure over (total measure)^N."""
    return sequence_measure(spec, sequence) / spec.total_measure() ** spec.repeats


def enumerate_sequences(spec: BranchSpec, bound: int = DEFAULT_ENUMERATION_BOUND):
    """Yield (sequence, measure, proportion) for all n^N sequences."""
    count = spec.n_outcomes**spec.repeats
    if count > bound:
        raise EnumerationTooLarge(
            f"{count} sequences exceed the enumeration bound {bound}"
        )
    total = spec.total_measure() ** spec.repeats
    for sequence in product(range(1, spec.n_outcomes + 1), repeat=spec.repeats):
        measure = sequence_measure(spec, sequence)
        yield sequence, measure, measure / total


@dataclass(frozen=True)
class FrequencyDistribution:
    """Exact binomial masses of the target-outcome count over N repetitions."""

    repeats: int
    outcome: int
    masses: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if sum(self.masses, _ZERO) != 1:
            raise AssertionError("frequency masses must sum to exactly 1")

    def mass(self, k: int) -> Fraction:
        return self.masses[k]


def grouped_proportions(
    spec: BranchSpec, outcome: int, bound: int = DEFAULT_ENUMERATION_BOUND
) -> tuple[Fraction, ...]:
    """Proportion mass per target-outcome count, via explicit enumeration.

    The independent route to the binomial closed form: sums the proportions
    of all sequences containing the target outcome exactly k times.
    """
    spec._check_outcome(outcome)
    masses = [_ZERO] * (spec.repeats + 1)
    for sequence, _measure, share in enumerate_sequences(spec, bound):
        k = sum(1 for label in sequence if label == outcome)
        masses[k] += share
    return tuple(masses)


def frequency_distribution(
    spec: BranchSpec, outcome: int, verify_bound: int = 4096
) -> FrequencyDistribution:
    """Closed-form binomial law for the target outcome's frequency.

    When the full sequence space is small (n^N <= verify_bound) the closed
    form is additionally checked against enumeration grouped by count.
    """
    lam = spec.single_trial_proportion(outcome)
    n = spec.repeats
    masses = tuple(
        comb(n, k) * lam**k * (1 - lam) ** (n - k) for k in range(n + 1)
    )
    if spec.n_outcomes**n <= verify_bound:
        if grouped_proportions(spec, outcome, verify_bound) != masses:
            raise AssertionError("closed form disagrees with enumeration")
    return FrequencyDistribution(n, outcome, masses)


@dataclass(frozen=True)
class HoeffdingReport:
    repeats: int
    epsilon: Fraction
    lambda1: Fraction
    tail_mass: Fraction
    bound: float
    holds: bool


def hoeffding_check(spec: BranchSpec, outcome: int, epsilon) -> HoeffdingReport:
    """Exact tail mass of |f_N - lambda1| >= epsilon against 2*exp(-2*N*eps^2).

    The deviation event uses >= so exact ties k/N - lambda1 = epsilon count
    as deviations; the bound is computed in floating point and compared with
    1e-15 absolute slack.
    """
    epsilon = as_fraction(epsilon)
    if epsilon <= 0:
        raise NonpositiveEpsilon("epsilon must be > 0")
    distribution = frequency_distribution(spec, outcome, verify_bound=0)
    lam = spec.single_trial_proportion(outcome)
    n = spec.repeats
    tail = sum(
        (
            distribution.mass(k)
            for k in range(n + 1)
            if abs(Fraction(k, n) - lam) >= epsilon
        ),
        _ZERO,
    )
    bound = 2.0 * exp(-2.0 * n * float(epsilon) ** 2)
    holds = tail <= Fraction(bound) + _HOEFFDING_SLACK
    return HoeffdingReport(n, epsilon, lam, tail, bound, holds)


@dataclass(frozen=True)
class FrequencyHistogram:
    """Empirical counts of the target-outcome frequency over seeded runs."""

    repeats: int
    outcome: int
    runs: int
    seed: int
    counts: tuple[int, ...]

    def mean_frequency(self) -> Fraction:
        hits = sum(k * c for k, c in enumerate(self.counts))
        return Fraction(hits, self.runs * self.repeats)

    def tail_fraction(self, lam: Fraction, epsilon: Fraction) -> Fraction:
        deviating = sum(
            c
            for k, c in enumerate(self.counts)
            if abs(Fraction(k, self.repeats) - lam) >= epsilon
        )
        return Fraction(deviating, self.runs)


def sample_frequencies(
    spec: BranchSpec, outcome: int, runs: int, seed: int
) -> FrequencyHistogram:
    """Monte Carlo companion to the exact law for large N.

    Run j draws its trials from substream(seed, j); each trial picks outcome
    i with probability measure_i / total, realized by an exact integer draw
    against common-denominator weights.
    """
    spec._check_outcome(outcome)
    if runs < 1:
        raise InvalidSpec("runs must be >= 1")
    denominator = lcm(*(m.denominator for m in spec.measures))
    weights = [int(m * denominator) for m in spec.measures]
    total = sum(weights)
    cumulative = []
    acc = 0
    for w in weights:
        acc += w
        cumulative.append(acc)
    target = outcome - 1
    counts = [0] * (spec.repeats + 1)
    for run in range(runs):
        rng = substream(seed, run)
        k = 0
        for _ in range(spec.repeats):
            x = rng.below(total)
            index = 0
            while cumulative[index] <= x:
                index += 1
            if index == target:
                k += 1
        counts[k] += 1
    return FrequencyHistogram(spec.repeats, outcome, runs, seed, tuple(counts))

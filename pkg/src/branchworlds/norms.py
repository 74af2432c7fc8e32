"""Numerical checks that a norm admitting consistent fine-graining is a p-norm.

Everything here is floating point: the hypotheses (disjoint-support
composition, permutation invariance, nontrivial f(2) = ||(1,1)||) and the
conclusion (||c|| = (sum |c_i|^p)^(1/p) on rational vectors) are verified on
samples against tolerances chosen to separate genuine p-norms from
perturbed impostors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import log
from typing import Callable, Optional, Sequence

from .errors import DegenerateNorm, LiteralError, OverlappingSupport
from .games import as_fraction

COMPOSITION_RTOL = 1e-10
F_TABLE_RTOL = 1e-10
SPREAD_TOL = 1e-6
VECTOR_RTOL = 1e-10
_DEGENERATE_TOL = 1e-12

Vector = Sequence


@dataclass(frozen=True)
class NormUnderTest:
    """Named norm evaluator with an optional declared exponent."""

    name: str
    evaluate: Callable[[Sequence[float]], float]
    declared_p: Optional[Fraction] = None

    def __call__(self, vector: Vector) -> float:
        return self.evaluate([float(x) for x in vector])


def p_norm(p) -> NormUnderTest:
    p = as_fraction(p)
    exponent = float(p)

    def evaluate(vector: Sequence[float]) -> float:
        return sum(abs(x) ** exponent for x in vector) ** (1.0 / exponent)

    return NormUnderTest(f"p{p}", evaluate, declared_p=p)


def max_norm() -> NormUnderTest:
    return NormUnderTest("max", lambda vector: max(abs(x) for x in vector))


def weighted_counterexample() -> NormUnderTest:
    """Weighted 1-norm |x1| + 2|x2| + |x3| + ...; breaks composition and symmetry."""

    def evaluate(vector: Sequence[float]) -> float:
        return sum(
            (2.0 if index == 1 else 1.0) * abs(x) for index, x in enumerate(vector)
        )

    return NormUnderTest("weighted", evaluate)


def perturbed_p_norm(p, factor: float = 1.0 + 1e-3) -> NormUnderTest:
    base = p_norm(p)
    return NormUnderTest(
        f"{base.name}-perturbed",
        lambda vector: factor * base.evaluate(vector),
    )


_REGISTRY: dict[str, Callable[[], NormUnderTest]] = {
    "p1": lambda: p_norm(1),
    "p3/2": lambda: p_norm(Fraction(3, 2)),
    "p1.5": lambda: p_norm(Fraction(3, 2)),
    "p2": lambda: p_norm(2),
    "p3": lambda: p_norm(3),
    "max": max_norm,
    "weighted": weighted_counterexample,
    "p2-perturbed": lambda: perturbed_p_norm(2),
}


def get_norm(name: str) -> NormUnderTest:
    """Look up a registered norm; names p<fraction> construct p-norms."""
    if name in _REGISTRY:
        return _REGISTRY[name]()
    if name.startswith("p"):
        try:
            return p_norm(Fraction(name[1:]))
        except (ValueError, ZeroDivisionError):
            pass
    raise LiteralError(f"unknown norm {name!r}; registered: {sorted(_REGISTRY)}")


def registered_norms() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


def _relative_gap(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else abs(a - b) / scale


def check_disjoint_composition(norm: NormUnderTest, v: Vector, w: Vector) -> float:
    """Absolute residual | ||v+w|| - ||(||v||, ||w||)|| | on a disjoint pair."""
    v = [float(x) for x in v]
    w = [float(x) for x in w]
    if len(v) != len(w):
        raise OverlappingSupport("vectors must share a common length")
    for a, b in zip(v, w):
        if a != 0.0 and b != 0.0:
            raise OverlappingSupport("vectors must have disjoint supports")
    joint = norm([a + b for a, b in zip(v, w)])
    composed = norm([norm(v), norm(w)])
    return abs(joint - composed)


def composition_passes(norm: NormUnderTest, v: Vector, w: Vector) -> bool:
    residual = check_disjoint_composition(norm, v, w)
    joint = norm([float(a) + float(b) for a, b in zip(v, w)])
    return residual <= COMPOSITION_RTOL * max(1.0, abs(joint))


def default_composition_pairs() -> tuple[tuple[tuple, tuple], ...]:
    return (
        ((3, 0, 0), (0, 4, 0)),
        ((1, 0, 0), (0, 1, 0)),
        ((1, 2, 0, 0), (0, 0, 3, 4)),
        ((Fraction(1, 2), 0, 0), (0, Fraction(1, 3), Fraction(2, 5))),
        ((5, 0, 1, 0), (0, 2, 0, 7)),
    )


def permutation_invariance_residual(norm: NormUnderTest, vector: Vector) -> float:
    values = [norm(list(p)) for p in permutations(vector)]
    return max(values) - min(values)


def homogeneity_residual(
    norm: NormUnderTest, vector: Vector, scalars=(2.0, 0.5, 3.0)
) -> float:
    base = norm(vector)
    worst = 0.0
    for t in scalars:
        scaled = norm([t * float(x) for x in vector])
        worst = max(worst, _relative_gap(scaled, abs(t) * base))
    return worst


@dataclass(frozen=True)
class FTable:
    """Values f(n) = ||ones(n)||, by the two-step recursion and directly."""

    recursive: tuple[float, ...]
    direct: tuple[float, ...]

    def f(self, n: int) -> float:
        return self.recursive[n - 1]

    def max_relative_gap(self) -> float:
        return max(
            _relative_gap(a, b) for a, b in zip(self.recursive, self.direct)
        )


def f_table(norm: NormUnderTest, n_max: int) -> FTable:
    """Tabulate f(1..n_max) via f(n+1) = ||(1, f(n))|| and via all-ones vectors."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    recursive = [norm([1.0])]
    for _ in range(n_max - 1):
        recursive.append(norm([1.0, recursive[-1]]))
    direct = [norm([1.0] * n) for n in range(1, n_max + 1)]
    return FTable(tuple(recursive), tuple(direct))


@dataclass(frozen=True)
class ExponentEstimate:
    """Exponent recovered from the growth of f(n) = n^(1/p)."""

    estimate: float
    rational: Fraction
    spread: float
    samples: tuple[tuple[int, float], ...]
    power_law_ok: bool
    monotone_ok: bool

    @property
    def passed(self) -> bool:
        return self.spread < SPREAD_TOL and self.power_law_ok and self.monotone_ok


def estimate_p(
    norm: NormUnderTest, sample_points: tuple[int, ...] = (2, 3, 5, 7, 10)
) -> ExponentEstimate:
    """Recover p from log n / log f(n) at several n; raise if f(2) = 1.

    Also checks the multiplicativity f(n^k) = f(n)^k for n in {2,3},
    k in {2,3}, and that f is nondecreasing on 1..64.
    """
    table = f_table(norm, 64)
    if table.f(2) <= 1.0 + _DEGENERATE_TOL:
        raise DegenerateNorm(
            "f(2) = 1 forces f(n) = 1 for all n; no exponent is recoverable"
        )
    samples = tuple((n, log(n) / log(table.f(n))) for n in sample_points)
    values = [p for _, p in samples]
    estimate = sum(values) / len(values)
    spread = max(values) - min(values)
    power_law_ok = all(
        _relative_gap(table.f(n**k), table.f(n) ** k) <= F_TABLE_RTOL
        for n in (2, 3)
        for k in (2, 3)
    )
    monotone_ok = all(
        table.f(n + 1) >= table.f(n) * (1.0 - _DEGENERATE_TOL) for n in range(1, 64)
    )
    return ExponentEstimate(
        estimate=estimate,
        rational=Fraction(estimate).limit_denominator(100),
        spread=spread,
        samples=samples,
        power_law_ok=power_law_ok,
        monotone_ok=monotone_ok,
    )


@dataclass(frozen=True)
class VectorCheck:
    vector: tuple[Fraction, ...]
    expected: float
    actual: float
    relative_error: float


@dataclass(frozen=True)
class RationalVectorReport:
    checks: tuple[VectorCheck, ...]

    @property
    def max_relative_error(self) -> float:
        return max(check.relative_error for check in self.checks)

    @property
    def passed(self) -> bool:
        return self.max_relative_error <= VECTOR_RTOL


def default_rational_vectors() -> tuple[tuple[Fraction, ...], ...]:
    vectors = [
        (Fraction(1, 2), Fraction(1, 3)),
        (Fraction(3, 5), Fraction(4, 5)),
        (Fraction(1), Fraction(2, 3)),
        (Fraction(2), Fraction(3), Fraction(5)),
        (Fraction(1, 7), Fraction(5, 7), Fraction(2, 7), Fraction(6, 7)),
    ]
    vectors.extend((Fraction(1), Fraction(m, n)) for m, n in ((1, 2), (2, 3), (5, 4)))
    return tuple(tuple(v) for v in vectors)


def verify_rational_vectors(
    norm: NormUnderTest, p, vectors=None
) -> RationalVectorReport:
    """Compare the evaluator against (sum |c_i|^p)^(1/p) on rational vectors."""
    p = float(as_fraction(p))
    if vectors is None:
        vectors = default_rational_vectors()
    checks = []
    for vector in vectors:
        vector = tuple(as_fraction(x) for x in vector)
        expected = sum(abs(float(x)) ** p for x in vector) ** (1.0 / p)
        actual = norm(vector)
        checks.append(
            VectorCheck(vector, expected, actual, _relative_gap(expected, actual))
        )
    return RationalVectorReport(tuple(checks))

"""branchworlds: exact-arithmetic engine for branching games and world trees.

Values branching bets under weighted (p-norm) and max-magnitude rules,
fine-grains games into symmetric form, simulates repeated branchings under
multiplying and splitting world semantics, and numerically characterizes the
norms for which consistent fine-graining is possible.  The core path is
exact rational arithmetic throughout.
"""

from .axioms import (
    Axiom,
    AxiomReport,
    ContinuityWitness,
    check_axiom,
    max_born_continuity_witness,
)
from .errors import BranchWorldsError
from .finegrain import (
    FineGrainStep,
    SymmetrizationTrace,
    apply_fine_grain,
    max_norm_obstruction,
    replay,
    symmetrize,
    value_via_symmetrization,
)
from .games import (
    MAX,
    ExactCoefficient,
    Game,
    ProbabilityVector,
    UniverseKind,
    game_value,
    scale_coefficients,
    subjective_probabilities,
    value_max_born,
    value_p_born,
    value_p_born_float,
)
from .norms import (
    NormUnderTest,
    check_disjoint_composition,
    estimate_p,
    f_table,
    get_norm,
    max_norm,
    p_norm,
    perturbed_p_norm,
    verify_rational_vectors,
    weighted_counterexample,
)
from .sequential import (
    OutcomeLedger,
    SequentialGame,
    SubstitutionReport,
    check_substitution,
    dutch_book_demo,
    once_or_twice,
    reduce_sequential,
    sequential_value,
    substitution_value,
)
from .worlds import (
    BranchSpec,
    FrequencyDistribution,
    FrequencyHistogram,
    HoeffdingReport,
    enumerate_sequences,
    frequency_distribution,
    grouped_proportions,
    hoeffding_check,
    proportion,
    sample_frequencies,
    sequence_measure,
    world_count,
)

__version__ = "0.1.0"

__all__ = [
    "MAX",
    "Axiom",
    "AxiomReport",
    "BranchSpec",
    "BranchWorldsError",
    "ContinuityWitness",
    "ExactCoefficient",
    "FineGrainStep",
    "FrequencyDistribution",
    "FrequencyHistogram",
    "Game",
    "HoeffdingReport",
    "NormUnderTest",
    "OutcomeLedger",
    "ProbabilityVector",
    "SequentialGame",
    "SubstitutionReport",
    "SymmetrizationTrace",
    "UniverseKind",
    "apply_fine_grain",
    "check_axiom",
    "check_disjoint_composition",
    "check_substitution",
    "dutch_book_demo",
    "enumerate_sequences",
    "estimate_p",
    "f_table",
    "frequency_distribution",
    "game_value",
    "get_norm",
    "grouped_proportions",
    "hoeffding_check",
    "max_born_continuity_witness",
    "max_norm",
    "max_norm_obstruction",
    "once_or_twice",
    "p_norm",
    "perturbed_p_norm",
    "proportion",
    "reduce_sequential",
    "replay",
    "sample_frequencies",
    "scale_coefficients",
    "sequence_measure",
    "sequential_value",
    "subjective_probabilities",
    "substitution_value",
    "symmetrize",
    "value_max_born",
    "value_p_born",
    "value_p_born_float",
    "value_via_symmetrization",
    "verify_rational_vectors",
    "weighted_counterexample",
    "world_count",
]

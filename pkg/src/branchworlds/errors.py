"""Exception types shared across the package."""


class BranchWorldsError(Exception):
    """Base class for every domain error raised by this package."""


class EmptyGame(BranchWorldsError):
    """A game must have at least one row."""


class InvalidCoefficient(BranchWorldsError):
    """Coefficient magnitude is negative, or a stored row has zero magnitude."""


class InvalidExponent(BranchWorldsError):
    """Ambient exponent must be a rational p >= 1 or MAX."""


class ZeroTotalMeasure(BranchWorldsError):
    """All magnitudes are zero, so no weighted mean exists."""


class NonpositiveFactor(BranchWorldsError):
    """Coefficient scaling requires a strictly positive factor."""


class NotMaxMode(BranchWorldsError):
    """Operation requires a MAX-ambient game."""


class MaxNormUnsupported(BranchWorldsError):
    """Operation requires a finite rational exponent, not MAX."""


class ConstraintViolated(BranchWorldsError):
    """A fine-graining step breaks the magnitude-sum constraint."""


class IndexOutOfRange(BranchWorldsError):
    """Row index does not exist in the target game."""


class SizeOverflow(BranchWorldsError):
    """Symmetric refinement would exceed the configured row bound."""


class SymmetricInput(BranchWorldsError):
    """All magnitudes already equal; there is no obstruction to exhibit."""


class WrongUniverse(BranchWorldsError):
    """Operation is only defined for a different universe kind."""


class InvalidSequence(BranchWorldsError):
    """Outcome sequence has the wrong length or out-of-range labels."""


class InvalidSpec(BranchWorldsError):
    """Branch specification fields are inconsistent."""


class EnumerationTooLarge(BranchWorldsError):
    """Explicit sequence enumeration would exceed the configured bound."""


class NonpositiveEpsilon(BranchWorldsError):
    """Deviation threshold must be strictly positive."""


class ZeroTotal(BranchWorldsError):
    """Total weight of a branching scenario is zero."""


class NegativeMultiplicity(BranchWorldsError):
    """World multiplicities and measures must be nonnegative."""


class UniverseMismatch(BranchWorldsError):
    """Coefficients are incompatible with the selected universe kind."""


class AsymmetricInput(BranchWorldsError):
    """The two-bet ledger demo requires equal multiplicities."""


class OverlappingSupport(BranchWorldsError):
    """Vectors must have disjoint supports."""


class DegenerateNorm(BranchWorldsError):
    """The norm gives f(2) = 1, so no exponent can be recovered."""


class LiteralError(BranchWorldsError):
    """Input literal (JSON/fraction text) could not be parsed."""

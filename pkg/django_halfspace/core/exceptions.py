class HalfspaceError(RuntimeError):
    """Base class for every error raised by django-halfspace."""

    pass


class HalfspaceConfigError(HalfspaceError):
    """A HALFSPACE profile could not be parsed."""

    pass


class HalfspaceConfigNotFoundError(HalfspaceError):
    """HalfspaceConfig not found in HALFSPACE settings."""

    pass


class AllSlopesZeroError(HalfspaceError):
    """Every slope coefficient is zero (the degenerate index set)."""

    pass


class ZeroVectorError(HalfspaceError):
    """An operation needed a nonzero vector."""

    pass


class NotPrimitiveError(HalfspaceError):
    """A normal vector is not primitive (gcd of its coordinates is not 1)."""

    pass


class AffinelyDependentError(HalfspaceError):
    """The points of a basic set are not affinely independent."""

    pass


class NonIntegralOffsetError(HalfspaceError):
    """The hyperplane does not pass through a lattice point."""

    pass


class DimensionMismatchError(HalfspaceError):
    """Operands live in different dimensions."""

    pass


class InconsistentDataError(HalfspaceError):
    """A point occurs with both labels."""

    pass


class InvalidStreamSpecError(HalfspaceError):
    """A StreamSpec cannot produce a legal informant."""

    pass


class MalformedCodeError(HalfspaceError):
    """A natural number does not decode to a usable hypothesis."""

    pass


class UnderlyingLearnerUndefinedError(HalfspaceError):
    """A wrapped learner failed to produce a hypothesis."""

    pass


class AdapterInsufficientError(HalfspaceError):
    """A validator needs a semantic decider the adapter does not provide."""

    pass


class BoundsExceededError(HalfspaceError):
    """A brute-force oracle was asked to search beyond desk scale."""

    pass


class EnumerationBudgetError(HalfspaceError):
    """The enumeration learner exhausted its per-step candidate budget."""

    pass


class TraceFormatError(HalfspaceError):
    """A trace or stream file is malformed."""

    pass


class LearnerStepError(HalfspaceError):
    """A learner raised while processing a datum."""

    def __init__(self, step: int, message: str) -> None:
        super().__init__(f"step {step}: {message}")
        self.step = step

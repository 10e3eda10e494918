"""Exception hierarchy shared by all modules."""


class SchurColError(Exception):
    """Base class for all package-specific errors."""


class DiscViolation(SchurColError):
    """A value required to lie strictly inside the unit disc does not."""


class UnitViolation(SchurColError):
    """A value required to be unimodular is not."""


class NearPole(SchurColError):
    """Evaluation or linear solve requested too close to a pole."""


class Terminal(SchurColError):
    """The Schur recursion reached a unimodular value and cannot continue."""


class DegreeDropFailure(SchurColError):
    """A Schur step did not reduce the polynomial degree by exactly one."""


class NotUnitary(SchurColError):
    """Matrix fails the unitarity residual bound."""


class NotSimple(SchurColError):
    """Colligation fails the simplicity (full rank) requirement."""


class NotMinimal(SchurColError):
    """Colligation fails the controllability/observability requirement."""


class NotNormalized(SchurColError):
    """The first channel row is not in the expected special form."""


class DimensionMismatch(SchurColError):
    """Operands have incompatible shapes."""


class InternalInconsistency(SchurColError):
    """Two routes that must agree analytically disagree numerically."""


class NormMismatch(SchurColError):
    """Row vectors that must share a norm do not."""


class ZeroVector(SchurColError):
    """A nonzero vector was required."""


class FeedbackSingular(SchurColError):
    """The feedback loop of a coupling is singular."""


class ZerosTooClose(SchurColError):
    """Blaschke zeros violate the minimal pairwise separation."""


class NotPositiveDefinite(SchurColError):
    """A Gram matrix expected to be positive definite is not."""

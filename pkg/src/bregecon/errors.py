"""Exception hierarchy shared by all modules."""


class BregeconError(Exception):
    """Base class for every error raised by this package."""


class DomainViolation(BregeconError):
    """An argument lies outside the interval a potential is defined on."""


class DimensionMismatch(BregeconError):
    """Vector arguments whose lengths disagree."""


class UnknownFamily(BregeconError):
    """Family name not present in the catalog."""


class InvalidParams(BregeconError):
    """Parameters that violate a family's validity conditions."""


class InvalidSpec(BregeconError):
    """A production-function specification that fails validation."""


class NoBracket(BregeconError):
    """Root finding called without a sign change on the bracket."""


class NoConvergence(BregeconError):
    """An iteration hit its step budget before meeting tolerance."""


class NonFiniteSample(BregeconError):
    """A quadrature node evaluated to nan or inf."""


class ConjugateUnavailable(BregeconError):
    """Convex conjugate requested where it cannot be constructed."""


class InversionFailure(BregeconError):
    """Derivative inversion failed; the value lies outside its range."""


class NoSolution(BregeconError):
    """No bundle satisfies the requested optimality condition."""


class InfeasibleTarget(BregeconError):
    """Requested output level cannot be produced on the domain."""


class NotOnPath(BregeconError):
    """Bundle does not satisfy the cost-minimizing path condition."""


class ZeroDenominator(BregeconError):
    """A ratio whose denominator vanished at the evaluation point."""


class DegenerateRatio(BregeconError):
    """Sensitivity ratio undefined because both partials vanish."""


class NumericalBreakdown(BregeconError):
    """Intermediate quantity left the range where the scheme is valid."""

# core/exceptions.py


class XDError(Exception):
    """Base class for every error raised by the library."""

    exit_code = 1


class ValidationError(XDError):
    """The input violates a precondition."""

    exit_code = 2


class NumericalError(XDError):
    """A numerical procedure failed on otherwise valid input."""

    exit_code = 3


# -----------------------------------------------------------------------------
# Validation errors
# -----------------------------------------------------------------------------
class DomainError(ValidationError):
    pass


class UnsupportedOrder(ValidationError):
    pass


class EmptySupport(ValidationError):
    pass


class InvalidScale(ValidationError):
    pass


class UnknownFamily(ValidationError):
    pass


class MissingParameter(ValidationError):
    pass


class ExponentialCase(ValidationError):
    pass


class NotMonotone(ValidationError):
    pass


class InvalidSlope(ValidationError):
    pass


class RateOutOfDomain(ValidationError):
    pass


class OutOfSupport(ValidationError):
    pass


class NotCensored(ValidationError):
    pass


class DomainTooSmall(ValidationError):
    pass


class NotCensorable(ValidationError):
    pass


class UnboundedSupport(ValidationError):
    pass


class NegativityViolation(ValidationError):
    pass


class DomainViolation(ValidationError):
    pass


class DomainNotFull(ValidationError):
    pass


class NonpositiveSlope(ValidationError):
    pass


class InvalidVarianceFunction(ValidationError):
    pass


class WindowOutOfDomain(ValidationError):
    pass


class NoPowerAsymptotics(ValidationError):
    pass


class ExponentialDomain(ValidationError):
    pass


class NoExponentialAsymptotics(ValidationError):
    pass


class MixedMonotoneClass(ValidationError):
    pass


class ExpressionError(ValidationError):
    pass


class ConfigError(ValidationError):
    pass


# -----------------------------------------------------------------------------
# Numerical errors
# -----------------------------------------------------------------------------
class IntegrationFailure(NumericalError):
    pass


class DivergentIntegral(NumericalError):
    """An improper integral diverges toward `direction` ('lower' or 'upper')."""

    def __init__(self, message: str, direction: str):
        super().__init__(message)
        self.direction = direction


class RootFindingFailure(NumericalError):
    pass


class StencilOutOfSupport(NumericalError):
    pass


class ExperimentFailed(NumericalError):
    """A convergence experiment ran but did not meet its acceptance rule."""

"""Exception hierarchy; each class maps to one CLI exit code."""


class TCError(Exception):
    exit_code = 1


class InvalidArgument(TCError, ValueError):
    exit_code = 2


class UnsupportedOperation(TCError):
    exit_code = 2


class MethodInapplicable(TCError):
    """The requested closed form does not cover these parameters (e.g. w2 != w3)."""

    exit_code = 3


class DomainError(TCError, ValueError):
    exit_code = 4


class AccuracyError(TCError, ArithmeticError):
    """A truncated series or kernel could not reach its accuracy target."""

    exit_code = 4

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate

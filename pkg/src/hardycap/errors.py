"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: parameter/domain/degenerate-input
problems exit with 2, numerical failures (bracketing, non-convergence)
with 3, and a violated inequality -- which signals a bug, never expected
behaviour -- with 4.
"""


class HardyError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(HardyError):
    """A constructor or operation parameter is outside its admissible range."""


class DomainError(ParameterError):
    """An evaluation point lies outside the domain of the function."""


class DegenerateInputError(ParameterError):
    """The supplied function is identically zero or otherwise degenerate."""


class NumericalError(HardyError):
    """A numerical procedure failed (bracketing, root finding, ...)."""


class InequalityViolationError(HardyError):
    """A proven inequality was violated beyond tolerance."""

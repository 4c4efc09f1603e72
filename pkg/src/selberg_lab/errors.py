"""Exception hierarchy.

Every error carries an integer ``code`` that the command-line front end
uses as its exit status.
"""


class SelbergLabError(Exception):
    code = 1


class ValidationError(SelbergLabError, ValueError):
    """Malformed or inconsistent input data."""

    code = 2


class ConvergenceError(SelbergLabError, ArithmeticError):
    """A numerical procedure did not reach its tolerance."""

    code = 3


class TruncationError(ConvergenceError):
    pass


class FitFailure(ConvergenceError):
    pass


class PreconditionError(SelbergLabError):
    code = 4


class SingularityError(PreconditionError, ArithmeticError):
    """Evaluation point too close to a pole or zero."""


class DegreeError(PreconditionError):
    pass


class OverflowLimitError(ConvergenceError, OverflowError):
    pass

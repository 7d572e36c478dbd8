"""Exception hierarchy shared by the solvers and the command-line harness."""


class InvNFTError(Exception):
    """Base class for all errors raised by :mod:`invnft`."""


class InvalidArgumentError(InvNFTError, ValueError):
    """A parameter is outside its admissible range."""


class MethodConstraintError(InvalidArgumentError):
    """A method was asked to run on a grid it cannot handle (e.g. NT with c != 1)."""


class NumericInputError(InvalidArgumentError):
    """Input data contains non-finite values."""


class SolverError(InvNFTError, ArithmeticError):
    """Base class for failures during a solve."""


class SingularSystemError(SolverError):
    """A pivot of a recursive or dense solve vanished."""


class NumericBreakdownError(SolverError):
    """An iterative method produced non-finite values."""


class DivergenceError(SolverError):
    """The iterative-convolution fixed point iteration blew up."""

    def __init__(self, message, m=None, k=None):
        super().__init__(message)
        self.m = m
        self.k = k


class OutOfRangeError(InvalidArgumentError):
    """A requested accuracy cannot be reached inside the available sweep."""

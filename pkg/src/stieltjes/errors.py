"""Exception hierarchy."""


class StieltjesError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(StieltjesError, ValueError):
    pass


class InsufficientDigitsError(StieltjesError):
    pass


class SolverError(StieltjesError):
    """Newton iteration for the saddle did not converge.

    ``last_iterate`` and ``residual`` carry the state at the point of failure.
    """

    def __init__(self, message, last_iterate=None, residual=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual


class WrongBranchError(SolverError):
    pass


class DegenerateSaddleError(StieltjesError):
    pass


class OrderMismatchError(StieltjesError):
    pass


class PrecisionError(StieltjesError):
    """Double-and-compare failed to certify the requested digits."""

    def __init__(self, message, achieved_digits=None):
        super().__init__(message)
        self.achieved_digits = achieved_digits


class CertificationError(StieltjesError):
    """Oracle runs at two parameter settings disagree."""

    def __init__(self, message, achieved_digits=None):
        super().__init__(message)
        self.achieved_digits = achieved_digits


class NoReferenceError(StieltjesError, LookupError):
    pass

"""Saddle-point asymptotics for the Stieltjes constants.

Evaluates gamma_n and the generalized constants gamma_n(alpha) from the
steepest-descent expansion about the principal saddle of t*e^t = n*i/(2*pi*k),
with an Euler-Maclaurin brute-force oracle for validation.
"""

from .errors import (
    CertificationError,
    DegenerateSaddleError,
    InsufficientDigitsError,
    InvalidInputError,
    NoReferenceError,
    OrderMismatchError,
    PrecisionError,
    SolverError,
    StieltjesError,
    WrongBranchError,
)
from .numerics import LogScaled, PrecisionContext, compare_digits, to_log_scaled
from .saddle import Frame, SaddlePoint, SaddleSpec, frame, initial_guess, solve_saddle
from .expansion import (
    ExpansionRequest,
    GammaEstimate,
    bounds,
    eval_hurwitz,
    eval_Jk,
    eval_leading,
    eval_multi,
    eval_theorem1,
    eval_theorem2,
    evaluate,
)
from .oracle import EMConfig, em_gamma, reference

__version__ = "0.1.0"

__all__ = [
    "CertificationError",
    "DegenerateSaddleError",
    "EMConfig",
    "ExpansionRequest",
    "Frame",
    "GammaEstimate",
    "InsufficientDigitsError",
    "InvalidInputError",
    "LogScaled",
    "NoReferenceError",
    "OrderMismatchError",
    "PrecisionContext",
    "PrecisionError",
    "SaddlePoint",
    "SaddleSpec",
    "SolverError",
    "StieltjesError",
    "WrongBranchError",
    "bounds",
    "compare_digits",
    "em_gamma",
    "eval_Jk",
    "eval_hurwitz",
    "eval_leading",
    "eval_multi",
    "eval_theorem1",
    "eval_theorem2",
    "evaluate",
    "frame",
    "initial_guess",
    "reference",
    "solve_saddle",
    "to_log_scaled",
]

"""Laguerre-Geronimus orthogonal polynomials: exact evaluation and large-n asymptotics.

The measure x^alpha e^-x / (x - c) dx + N delta_c on [0, inf) (c < 0, N >= 0)
has monic orthogonal polynomials Q_n = L_n + Lambda_n L_{n-1}.  This package
evaluates Lambda_n, Q_n, the perturbed recurrence, zeros and the 2F2 form,
together with the Laguerre functions of the second kind they are built from.
"""

from .errors import (
    BranchError,
    DegenerateError,
    DomainError,
    GeronimusError,
    MeasureError,
    NonConvergenceError,
    PoleError,
)
from .geronimus import (
    GeronimusParams,
    LambdaValue,
    PerturbedRecurrence,
    HypergeomRep,
    eval_Q,
    gram_matrix,
    hypergeom_rep,
    inner_product_nu,
    lambda_n,
    lambda_sequence,
    ode_residuals,
    perturbed_recurrence,
    zeros_Q,
)
from .laguerre import eval_monic_laguerre, monic_laguerre, ratio_pi
from .scaled import LogComplex, LogScaled
from .second_kind import eval_second_kind, f0_second_kind, ratio_r_cf

__all__ = [
    "BranchError",
    "DegenerateError",
    "DomainError",
    "GeronimusError",
    "MeasureError",
    "NonConvergenceError",
    "PoleError",
    "GeronimusParams",
    "LambdaValue",
    "PerturbedRecurrence",
    "HypergeomRep",
    "eval_Q",
    "gram_matrix",
    "hypergeom_rep",
    "inner_product_nu",
    "lambda_n",
    "lambda_sequence",
    "ode_residuals",
    "perturbed_recurrence",
    "zeros_Q",
    "eval_monic_laguerre",
    "monic_laguerre",
    "ratio_pi",
    "LogComplex",
    "LogScaled",
    "eval_second_kind",
    "f0_second_kind",
    "ratio_r_cf",
]

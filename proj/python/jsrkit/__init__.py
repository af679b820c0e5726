"""Bounds on the joint spectral radius of a finite set of matrices.

Matrices are passed as sequences of 2-D arrays. Upper bounds come from
sum-of-squares Lyapunov forms (``rho_sos``), common quadratic forms of the
lifted set (``rho_cq``) and the spectral radius of the lifted sum
(``rho_sr``); ``lower_bound`` maximizes over short products.
"""

from ._core import (
    CapExceededError,
    DimensionError,
    Error,
    NumericalFailure,
    ParseError,
    PreconditionError,
    basis,
    certify,
    induced_matrix,
    lift_vector,
    lifting_sizes,
    lower_bound,
    permanent,
    quality_factor,
    rho_cq,
    rho_sos,
    rho_sr,
    solve_fixed_point,
    verify_certificate,
)

__all__ = [
    "CapExceededError",
    "DimensionError",
    "Error",
    "NumericalFailure",
    "ParseError",
    "PreconditionError",
    "basis",
    "certify",
    "induced_matrix",
    "lift_vector",
    "lifting_sizes",
    "lower_bound",
    "permanent",
    "quality_factor",
    "rho_cq",
    "rho_sos",
    "rho_sr",
    "solve_fixed_point",
    "verify_certificate",
]

"""Tame estimates for composition operators ``f -> G(f, x)`` in Bessel potential
spaces ``H^n(R^d)``: exact combinatorics, explicit constants, the quantitative
bound, and a spectral harness that certifies the inequalities numerically."""

from .combinatorics import pm_evaluate, pm_polynomial
from .constants import INF, adams_frazier_U, embedding_constant, func_E, hausdorff_young_C
from .errors import BallViolation, DomainError
from .estimates import BoundReport, b_md, beta_md, c_nd, gamma_nd, monomial_B, monomial_Gamma, tame_bound
from .gmodel import (
    ComplexMonomial,
    GModel,
    RealMonomial,
    RealPolynomial,
    SeparableLinear,
    Sinh,
    model_from_dict,
)

__version__ = "0.1.0"

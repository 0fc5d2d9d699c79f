"""Exact symbolic engine for the two-mode deformed Heisenberg-Weyl algebra."""

from .algebra import (
    MAX_DEGREE,
    GeneratorKind,
    NCMonomial,
    NCPolynomial,
    ResourceError,
    commutator,
    expand_generator,
    ladder_operator,
    normal_order_product,
    poly_mul,
    render,
    substitute,
    tilde_generator,
)
from .coeffs import CoeffField, DomainError, Roots
from .derivations import AlgebraReport, DerivationReport, derive_be_condition, verify_ghq_algebra
from .parser import ParseError, UnknownIdentifier, parse_binding, parse_operator_expression

__all__ = [
    "AlgebraReport",
    "CoeffField",
    "DerivationReport",
    "DomainError",
    "GeneratorKind",
    "MAX_DEGREE",
    "NCMonomial",
    "NCPolynomial",
    "ParseError",
    "ResourceError",
    "Roots",
    "UnknownIdentifier",
    "commutator",
    "derive_be_condition",
    "expand_generator",
    "ladder_operator",
    "normal_order_product",
    "parse_binding",
    "parse_operator_expression",
    "poly_mul",
    "render",
    "substitute",
    "tilde_generator",
    "verify_ghq_algebra",
]

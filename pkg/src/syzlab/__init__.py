"""Gröbner bases, free resolutions and homological invariants over graded
quotients of polynomial rings over prime fields."""

from .poly import (
    DEFAULT_PRIME,
    FieldElement,
    FreeModule,
    MonomialOrder,
    NON_HOMOGENEOUS,
    PolyRing,
    Polynomial,
    UsageError,
    Vector,
    homogeneous_degree,
    monomial_cmp,
    poly_arith,
)
from .groebner import (
    DegreeCapError,
    GroebnerBasis,
    SubmodulePresentation,
    buchberger,
    normal_form,
    syzygy_basis,
)

__version__ = "0.1.0"

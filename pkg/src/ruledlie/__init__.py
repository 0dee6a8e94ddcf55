"""Ruled surfaces in three-dimensional Lie groups with bi-invariant metrics.

Two independent routes to the invariants are provided: a definitional one
built from the fundamental forms, and the closed-form expressions per
surface family.  ``verify`` compares them.
"""

from .algebra import LieAlgebra3, builtin, from_constants, validate
from .errors import (
    ConfigError,
    CurvatureDegenerateError,
    DegenerateRulingError,
    DomainError,
    FamilySingularityError,
    RuledLieError,
    SingularPointError,
    UnknownAlgebraError,
)
from .frenet import Curve, FrameField, FrenetData, circle, frenet_at, helix, tabulated
from .invariants import classify, evaluate_grid, evaluate_point
from .surfaces import Family, RuledSurface, make_surface

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "CurvatureDegenerateError",
    "Curve",
    "DegenerateRulingError",
    "DomainError",
    "Family",
    "FamilySingularityError",
    "FrameField",
    "FrenetData",
    "LieAlgebra3",
    "RuledLieError",
    "RuledSurface",
    "SingularPointError",
    "UnknownAlgebraError",
    "builtin",
    "circle",
    "classify",
    "evaluate_grid",
    "evaluate_point",
    "frenet_at",
    "from_constants",
    "helix",
    "make_surface",
    "tabulated",
    "validate",
]

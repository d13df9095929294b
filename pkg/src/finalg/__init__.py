"""Finite-algebra workbench.

Pair constructions between bounded posets/semilattices/lattices and their
centered involutive counterparts, axiom checkers for the surrounding
variety tower, congruence and filter machinery, and exhaustive
enumeration with counterexample search at desk scale.
"""

from .errors import InputError, PreconditionError, TheoremViolationError
from .finord import (
    DOES_NOT_EXIST,
    FiniteAlgebra,
    MeetResult,
    dual_product_order,
    glb,
    is_distributive_lattice,
    lub,
    validate_poset,
)

__all__ = [
    "DOES_NOT_EXIST",
    "FiniteAlgebra",
    "InputError",
    "MeetResult",
    "PreconditionError",
    "TheoremViolationError",
    "dual_product_order",
    "glb",
    "is_distributive_lattice",
    "lub",
    "validate_poset",
]

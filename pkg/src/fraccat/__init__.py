"""Computable localization for finite categories, homotopy categories of complexes and finite rings."""

__version__ = "0.1.0"

from .fincat import FinCategory, FinFunctor, Morphism, NatTransformation, validate_category
from .fractions import build_fraction_category, check_calculus_left, saturation
from .modloc import FinCommRing, localize_ring, mult_set
from .triangulated import TriangulatedModel, kb_model, thick_closure, verdier_quotient

__all__ = [
    "FinCategory",
    "FinCommRing",
    "FinFunctor",
    "Morphism",
    "NatTransformation",
    "TriangulatedModel",
    "build_fraction_category",
    "check_calculus_left",
    "kb_model",
    "localize_ring",
    "mult_set",
    "saturation",
    "thick_closure",
    "validate_category",
    "verdier_quotient",
]

"""Sets without tangents in PG(2,q), exterior sets of conics, and the dual
codes / stopping sets of projective planes."""

from .gfq import GF, FieldSpec, QuadChar, field_for_order, field_new
from .plane import Plane, PointSet, plane_for, plane_for_order
from .conic import Conic, LineClass, PointClass, canonical_conic
from .tangency import Spectrum, determined_directions, is_tangent_free, spectrum

__version__ = "0.1.0"

__all__ = [
    "GF",
    "FieldSpec",
    "QuadChar",
    "field_new",
    "field_for_order",
    "Plane",
    "PointSet",
    "plane_for",
    "plane_for_order",
    "Conic",
    "LineClass",
    "PointClass",
    "canonical_conic",
    "Spectrum",
    "spectrum",
    "is_tangent_free",
    "determined_directions",
    "__version__",
]

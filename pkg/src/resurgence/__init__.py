"""Exact computations with symbolic powers of ideals of points."""

__version__ = "0.1.0"

from .fields import GF, QQ, FieldSpec
from .poly import GREVLEX, LEX, MonomialOrder, Polynomial, RingContext
from .groebner import GroebnerBasis, ResourceCap, buchberger
from .ideals import Ideal, ideal_power, intersect, saturate_irrelevant
from .points import (
    PointConfiguration,
    ProjectivePoint,
    all_but_one_config,
    chmn_config,
    fermat_config,
    symbolic_power,
)
from .asymptotics import (
    Budget,
    check_containment,
    resurgence_bracket,
    verify_theorem,
    waldschmidt_table,
)

__all__ = [
    "__version__",
    "GF",
    "QQ",
    "FieldSpec",
    "GREVLEX",
    "LEX",
    "MonomialOrder",
    "Polynomial",
    "RingContext",
    "GroebnerBasis",
    "ResourceCap",
    "buchberger",
    "Ideal",
    "ideal_power",
    "intersect",
    "saturate_irrelevant",
    "PointConfiguration",
    "ProjectivePoint",
    "all_but_one_config",
    "chmn_config",
    "fermat_config",
    "symbolic_power",
    "Budget",
    "check_containment",
    "resurgence_bracket",
    "verify_theorem",
    "waldschmidt_table",
]

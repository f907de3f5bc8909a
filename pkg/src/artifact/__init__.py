"""Auslander-Reiten theory for finite-dimensional bound quiver algebras, computed exactly."""

from .algebra import BoundQuiverAlgebra, Quiver, Relation, StructureAlgebra, build_algebra, opposite
from .exactla import GF, QQ, Field
from .modrep import Module, Morphism, ShortExactSequence, hom_space
from .stable import ar_translate_classical, stable_hom, tau_general, transpose
from .functors import defects, ext1
from .duality import (
    almost_split_sequence,
    determined_epi,
    verify_ar_duality_inj,
    verify_ar_duality_proj,
    verify_defect_formula,
)

__version__ = "0.1.0"

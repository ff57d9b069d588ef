"""Equivariant quantum Schubert calculus on Grassmannians, in exact arithmetic."""

from .exactpoly import Polynomial, Var, parse, render
from .partitions import GrassmannShape, Partition, enumerate_partitions, parse_partition
from .factorial_schur import factorial_schur, generic, make_t
from .struct_const import classical_lr, flr_peel, flr_vanish
from .eqqring import (
    PresentationRing, SchubertExpansion, build_ring, eqlr, eqlr_xmodel,
    pieri_rule, reduce_out_of_rectangle, specialize, verify_relations,
)

__version__ = "0.1.0"

__all__ = [
    "Polynomial", "Var", "parse", "render",
    "GrassmannShape", "Partition", "enumerate_partitions", "parse_partition",
    "factorial_schur", "generic", "make_t",
    "classical_lr", "flr_peel", "flr_vanish",
    "PresentationRing", "SchubertExpansion", "build_ring", "eqlr", "eqlr_xmodel",
    "pieri_rule", "reduce_out_of_rectangle", "specialize", "verify_relations",
    "__version__",
]

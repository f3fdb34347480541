"""Exact polynomial substrate: rational arithmetic, elimination and certified roots."""

from .algebra import is_squarefree, resultant, squarefree_decompose, sturm_count, sylvester_resultant
from .poly import AXES, BiPoly, Rational, UniPoly
from .roots import (
    DEFAULT_WIDTH,
    Disc,
    RootBox,
    dyadic_str,
    isolate_roots,
    isolate_squarefree,
    parse_dyadic,
    real_root_intervals,
    refine_real_root,
)

__all__ = [
    "AXES", "BiPoly", "DEFAULT_WIDTH", "Disc", "Rational", "RootBox", "UniPoly",
    "dyadic_str", "is_squarefree", "isolate_roots", "isolate_squarefree", "parse_dyadic",
    "real_root_intervals", "refine_real_root", "resultant", "squarefree_decompose",
    "sturm_count", "sylvester_resultant",
]

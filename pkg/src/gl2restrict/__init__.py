"""Exact verification of mod-p restriction decompositions for GL2 over finite fields."""

from .ffield import FiniteField, Tower, build_tower, find_epsilon
from .grp import BudgetError, Subgroup, aniso, borel, center, full, split

__version__ = "0.1.0"

__all__ = [
    "FiniteField",
    "Tower",
    "build_tower",
    "find_epsilon",
    "BudgetError",
    "Subgroup",
    "full",
    "borel",
    "aniso",
    "split",
    "center",
    "__version__",
]

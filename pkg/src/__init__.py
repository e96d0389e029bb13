"""
Figurate Toolkit
Figurate numbers, lattice-path partitions, decomposition solvers and posets
"""

__version__ = "1.0.0"
__author__ = "Figurate Toolkit Team"

from .config import Config
from .decompose import LatticeRep, solve
from .posets import build_poset, derive_poset

__all__ = ["Config", "LatticeRep", "solve", "build_poset", "derive_poset"]

"""Exact relative BGG machinery for sl(n+1), n <= 7."""

from .homology import ChainComplex, complex_for, kostant_predict
from .parabolic import ParabolicPair, build_pair, parse_pair_string
from .qmatrix import QMatrix
from .repn import WeightModule, irrep
from .rootdata import RootSystem, Weight, WeylWord, build_root_system, weight

__version__ = "0.1.0"

__all__ = [
    "ChainComplex", "ParabolicPair", "QMatrix", "RootSystem", "Weight", "WeightModule", "WeylWord",
    "build_pair", "build_root_system", "complex_for", "irrep", "kostant_predict",
    "parse_pair_string", "weight",
]

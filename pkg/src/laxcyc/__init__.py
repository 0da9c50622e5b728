"""laxcyc: polynomial-matrix phase spaces with a cyclic twist, their
Poisson pencils, Lax flows, momentum-map reductions, and spectral-curve
certificates, all checkable by exact arithmetic."""

from .cyclotomic import Cyclotomic
from .polymat import BivarPoly, PolyMat, char_poly, hamiltonian
from .symmetry import (
    canonicalize,
    classify_torsion,
    conjugator,
    enumerate_E,
    fixed_basis,
    is_fixed,
    omega,
    sigma_action,
)

__version__ = "0.1.0"

__all__ = [
    "BivarPoly",
    "Cyclotomic",
    "PolyMat",
    "canonicalize",
    "char_poly",
    "classify_torsion",
    "conjugator",
    "enumerate_E",
    "fixed_basis",
    "hamiltonian",
    "is_fixed",
    "omega",
    "sigma_action",
    "__version__",
]

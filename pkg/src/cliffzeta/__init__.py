"""Exact Clifford-theoretic computation of representation and twist zeta
polynomials for finite groups presented as extensions of p-groups."""

__version__ = "0.1.0"

from .corpus import CATALOGUE, CORPUS, build
from .zeta import Clifford, DirichletPoly, assemble, assemble_twist, rational_fit

__all__ = ["CATALOGUE", "CORPUS", "Clifford", "DirichletPoly", "assemble", "assemble_twist",
           "build", "rational_fit", "__version__"]

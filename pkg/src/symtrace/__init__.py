"""Exact equivariant trace computations on projective hypersurfaces and
symmetric group character decompositions."""

__version__ = "0.1.0"

from .exact import Cyclotomic, Rational, root_of_unity

__all__ = ["Cyclotomic", "Rational", "root_of_unity", "__version__"]

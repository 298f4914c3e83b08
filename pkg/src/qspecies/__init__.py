"""Exact computer algebra for species valuations.

Truncated commutative, noncommutative and super power series, counting
species with their operations, the Weyl algebra with its star product,
Gaussian moments with Feynman graph expansions, and admissible-graph star
products.  All arithmetic is exact over :class:`fractions.Fraction`.
"""
from .comm_series import CommSeries
from .core import FiniteGroupoidData, FinitePoset, InvalidArgument, InvariantError, Rational
from .kernels import BACKEND
from .nc_series import NCSeries
from .super_series import SuperSeries
from .weyl import WeylElement

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CommSeries",
    "FiniteGroupoidData",
    "FinitePoset",
    "InvalidArgument",
    "InvariantError",
    "NCSeries",
    "Rational",
    "SuperSeries",
    "WeylElement",
]

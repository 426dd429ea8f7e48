"""Jacobian Kummer surfaces in P^5 from genus-2 theta functions."""

from .fields import ComplexField, PrimeField, RationalField
from .theta_core import Characteristic, PeriodMatrix, TruncationPolicy, theta

__version__ = "0.1.0"

__all__ = [
    "Characteristic",
    "ComplexField",
    "PeriodMatrix",
    "PrimeField",
    "RationalField",
    "TruncationPolicy",
    "theta",
]

"""Defectivity certificates for secant varieties of Segre-Veronese varieties.

The package evaluates the closed-form dimension bound for
``X_{n,d} = P^{n_0} x ... x P^{n_{k-1}}`` embedded in multi-degree
``(1, ..., 1, d)``, generates the known infinite defective families, and
cross-checks every certificate with an exact Terracini rank computation over
a prime field.
"""

from svdefect.errors import (
    CapacityError,
    InvalidSplittingError,
    RangeError,
    ShapeMismatchError,
)
from svdefect.ms_tensor import Shape, dim_space, dim_sum, dim_sym
from svdefect.gf import DEFAULT_PRIME, FieldSpec, kernel_dim, rank
from svdefect.segre_veronese import Splitting, terracini_rank
from svdefect.criteria import Certificate, ConditionReport, certify, check_conditions

__all__ = [
    "CapacityError",
    "Certificate",
    "ConditionReport",
    "DEFAULT_PRIME",
    "FieldSpec",
    "InvalidSplittingError",
    "RangeError",
    "Shape",
    "ShapeMismatchError",
    "Splitting",
    "certify",
    "check_conditions",
    "dim_space",
    "dim_sum",
    "dim_sym",
    "kernel_dim",
    "rank",
    "terracini_rank",
]

__version__ = "0.1.0"

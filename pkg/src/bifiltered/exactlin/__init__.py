from .fields import GF, QQ, ExtensionField, Field, PrimeField, Rationals
from .kernels import BACKEND
from .matrix import (DimensionMismatch, Matrix, Subspace, image, intersect, intersect_all,
                     preimage, quotient_basis, rref, solve, subspace_sum, sum_all)

__all__ = [
    "BACKEND", "DimensionMismatch", "ExtensionField", "Field", "GF", "Matrix", "PrimeField",
    "QQ", "Rationals", "Subspace", "image", "intersect", "intersect_all", "preimage",
    "quotient_basis", "rref", "solve", "subspace_sum", "sum_all",
]

"""Exact linear algebra and presentations of finitary k-linear categories."""

from .field import Field, Q, GF, Residue
from .linalg import (BasisCoords, Echelon, Quotient, Subspace, LinearKit, linear_kit, rank, nullspace, solve,
                     matmul, matvec, transpose, identity, inverse, is_invertible)
from .category import (Obj, obj, Mor, CatPresentation, IdealData, ValidationReport, FormatError,
                       ContractViolation, RadicalUnavailable, validate_presentation, radical,
                       end_radical, local_defects, split_test, hom_dim)

__all__ = [
    "BasisCoords", "Field", "Q", "GF", "Residue", "Echelon", "Quotient", "Subspace", "LinearKit", "linear_kit",
    "rank", "nullspace", "solve", "matmul", "matvec", "transpose", "identity", "inverse",
    "is_invertible", "Obj", "obj", "Mor", "CatPresentation", "IdealData", "ValidationReport",
    "FormatError", "ContractViolation", "RadicalUnavailable", "validate_presentation", "radical",
    "end_radical", "local_defects", "split_test", "hom_dim",
]

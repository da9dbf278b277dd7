"""Kazhdan-Lusztig polynomials for affine symmetric groups and graded
decomposition matrices of blocks of cyclotomic q-Schur algebras."""

from .laurent import LaurentPoly, parse
from .coxeter import AffinePermutation, ParabolicSubset
from .multipartitions import Block, Charge, Multipartition
from .decomp import DecompMatrix, dc_block_matrices

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly", "parse", "AffinePermutation", "ParabolicSubset", "Block", "Charge",
    "Multipartition", "DecompMatrix", "dc_block_matrices", "__version__",
]

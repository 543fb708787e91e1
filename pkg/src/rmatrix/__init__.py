"""Exact construction and verification of trigonometric and rational r-matrices.

The geometric r-matrices attached to the canonical torsion-free sheaves on the
nodal and cuspidal cubic are computed in :mod:`rmatrix.sheaf`; closed forms
live in :mod:`rmatrix.catalog`; :mod:`rmatrix.verify` and :mod:`rmatrix.manin`
check the Yang-Baxter identities and the Manin-triple description exactly.
"""
from __future__ import annotations

from .catalog import CatalogEntry
from .lie import BasisIndex, LieElem, casimir
from .tensor_poly import MLaurent, RatFun, Tensor2, Tensor3, flip, is_zero

__version__ = "0.1.0"

__all__ = [
    "BasisIndex",
    "CatalogEntry",
    "LieElem",
    "MLaurent",
    "RatFun",
    "Tensor2",
    "Tensor3",
    "casimir",
    "flip",
    "is_zero",
]

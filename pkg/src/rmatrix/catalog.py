"""Closed-form r-matrices used as oracles and verification targets."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import lie
from .lie import E, H, LieElem, add_tensors, casimir, tensor_from_pairs, wedge
from .scalars import zeta
from .tensor_poly import RatFun, Tensor2

CYBE = "CYBE"
GCYBE_ONLY = "GCYBE-only"
SKEW = "skew"
NONDEGENERATE = "nondegenerate"
FLAGS = (CYBE, GCYBE_ONLY, SKEW, NONDEGENERATE)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    n: int
    tensor: Tensor2 = field(compare=False)
    expected: frozenset[str]


def _x() -> RatFun:
    return RatFun.var("x")


def _y() -> RatFun:
    return RatFun.var("y")


def _pole() -> RatFun:
    """``1 / (y - x)``."""
    return RatFun.inv_diff("y", "x")


def _e(n: int, i: int, j: int) -> LieElem:
    return LieElem.basis_element(n, E(i, j))


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError("rank must be at least 2")


def yang(n: int) -> CatalogEntry:
    """``gamma / (y - x)``."""
    _check_n(n)
    t = Tensor2.from_const(n, casimir(n), _pole())
    return CatalogEntry("yang", n, t, frozenset({CYBE, SKEW, NONDEGENERATE}))


def gcybe_only(n: int) -> CatalogEntry:
    """``x / (y - x) * gamma``: solves the generalized equation only."""
    _check_n(n)
    t = Tensor2.from_const(n, casimir(n), _x() * _pole())
    return CatalogEntry("gcybe_only", n, t, frozenset({GCYBE_ONLY, NONDEGENERATE}))


def r_st_constant(n: int) -> dict:
    """Constant part ``1/2 sum g_j* (x) g_j + sum_{i<j} e_{j,i} (x) e_{i,j}``."""
    gs, gd = lie.g_basis(n), lie.g_dual(n)
    pairs = [(gd[j], gs[j], Fraction(1, 2)) for j in range(n - 1)]
    pairs += [(_e(n, j, i), _e(n, i, j), 1) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return tensor_from_pairs(pairs)


def r_h(n: int) -> dict:
    """``(1/2n) sum_j (1 + zeta^j)/(1 - zeta^j) g_{n-j} (x) g_j``."""
    gs = lie.g_basis(n)
    pairs = []
    for j in range(1, n):
        zj = zeta(n, j)
        c = Fraction(1, 2 * n) * (1 + zj) / (1 - zj)
        pairs.append((gs[n - j - 1], gs[j - 1], c))
    return tensor_from_pairs(pairs)


def r_sp(n: int) -> dict:
    """``sum_{i<j} e_{j,i} ^ (sum_{k=1}^{i-1} e_{i-k, j-k})``."""
    _check_n(n)
    parts = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            acc = LieElem(n)
            for k in range(1, i):
                acc = acc + _e(n, i - k, j - k)
            if acc:
                parts.append(wedge(_e(n, j, i), acc))
    return add_tensors(*parts)


def bd_constant(n: int) -> dict:
    """The constant part ``r_st,0 + r_h + r_sp`` of the nodal solution.

    This constant tensor solves the CYBE and satisfies ``r + r^{21} = gamma``;
    the wedge sum ``r_sp`` on its own is skew.
    """
    _check_n(n)
    return add_tensors(r_st_constant(n), r_h(n), r_sp(n))


def nodal_closed_form(n: int) -> CatalogEntry:
    """``r_st + r_h + r_sp`` for the canonical nodal triple."""
    _check_n(n)
    gamma = casimir(n)
    const = bd_constant(n)
    t = Tensor2.from_const(n, gamma, _x() * _pole()) + Tensor2.from_const(n, const)
    return CatalogEntry("nodal", n, t, frozenset({CYBE, SKEW, NONDEGENERATE}))


def cuspidal_constant(n: int) -> dict:
    """``sum_k h_k* ^ e_{k+1,k} + sum_{k>=l+2} (sum_j e_{l-j,k-j-1}) ^ e_{k,l}``."""
    hd = lie.h_dual(n)
    parts = [wedge(hd[k - 1], _e(n, k + 1, k)) for k in range(1, n)]
    for k in range(1, n + 1):
        for l in range(1, k - 1):
            acc = LieElem(n)
            for j in range(l):
                acc = acc + _e(n, l - j, k - j - 1)
            parts.append(wedge(acc, _e(n, k, l)))
    return add_tensors(*parts)


def cuspidal_closed_form(n: int) -> CatalogEntry:
    _check_n(n)
    t = Tensor2.from_const(n, casimir(n), _pole()) + Tensor2.from_const(n, cuspidal_constant(n))
    return CatalogEntry("cuspidal", n, t, frozenset({CYBE, SKEW, NONDEGENERATE}))


def _sl2():
    e = LieElem.basis_element(2, E(1, 2))
    f = LieElem.basis_element(2, E(2, 1))
    h = LieElem.basis_element(2, H(1))
    return e, f, h


def sl2_item6(n: int = 2) -> CatalogEntry:
    """``gamma/(y-x) + 1/2 (h (x) f - f (x) h)``, written out for sl_2."""
    if n != 2:
        raise ValueError("sl2_item6 exists only for n = 2")
    e, f, h = _sl2()
    gamma = tensor_from_pairs([(h, h, Fraction(1, 2)), (e, f, 1), (f, e, 1)])
    const = tensor_from_pairs([(h, f, Fraction(1, 2)), (f, h, Fraction(-1, 2))])
    t = Tensor2.from_const(2, gamma, _pole()) + Tensor2.from_const(2, const)
    return CatalogEntry("sl2_item6", 2, t, frozenset({CYBE, SKEW, NONDEGENERATE}))


def stolin_sl2(n: int = 2) -> CatalogEntry:
    """``gamma/z + z (f (x) h + h (x) f) - z^3 f (x) f`` with ``z = y - x``."""
    if n != 2:
        raise ValueError("stolin_sl2 exists only for n = 2")
    e, f, h = _sl2()
    z = _y() - _x()
    t = (Tensor2.from_const(2, casimir(2), _pole())
         + Tensor2.from_const(2, tensor_from_pairs([(f, h, 1), (h, f, 1)]), z)
         + Tensor2.from_const(2, tensor_from_pairs([(f, f, 1)]), -(z ** 3)))
    return CatalogEntry("stolin_sl2", 2, t, frozenset({CYBE, SKEW, NONDEGENERATE}))


BUILDERS: dict[str, Callable[[int], CatalogEntry]] = {
    "yang": yang,
    "gcybe_only": gcybe_only,
    "nodal": nodal_closed_form,
    "cuspidal": cuspidal_closed_form,
    "stolin_sl2": stolin_sl2,
    "sl2_item6": sl2_item6,
}

FIXED_RANK = {"stolin_sl2": 2, "sl2_item6": 2}


def names() -> list[str]:
    return sorted(BUILDERS)


def get(name: str, n: int = 2) -> CatalogEntry:
    try:
        builder = BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(names())}") from None
    return builder(n)


def entries(ns=(2, 3)) -> list[CatalogEntry]:
    """Every catalog entry for the given ranks (fixed-rank ones once)."""
    out = []
    for name in names():
        if name in FIXED_RANK:
            out.append(get(name, FIXED_RANK[name]))
        else:
            out.extend(get(name, n) for n in ns)
    return out

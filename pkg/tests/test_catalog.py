from __future__ import annotations

from fractions import Fraction

import pytest

from oracles import cybe_at
from rmatrix import catalog, lie, verify
from rmatrix.catalog import CYBE, GCYBE_ONLY, NONDEGENERATE, SKEW
from rmatrix.lie import E, H, LieElem, casimir
from rmatrix.scalars import zeta
from rmatrix.tensor_poly import RatFun, Tensor2, flip, is_zero

X, Y = RatFun.var("x"), RatFun.var("y")
POLE = RatFun.inv_diff("y", "x")
ALL = catalog.entries((2, 3))


def _sl2():
    return tuple(LieElem.basis_element(2, b) for b in (E(1, 2), E(2, 1), H(1)))


def test_names_and_lookup():
    assert catalog.names() == ["cuspidal", "gcybe_only", "nodal", "sl2_item6", "stolin_sl2", "yang"]
    with pytest.raises(KeyError):
        catalog.get("elliptic")
    with pytest.raises(ValueError):
        catalog.get("stolin_sl2", 3)
    with pytest.raises(ValueError):
        catalog.get("yang", 1)


def test_yang_values():
    e, f, h = _sl2()
    expected = lie.tensor_from_pairs([(h, h, Fraction(1, 2)), (e, f, 1), (f, e, 1)])
    assert catalog.yang(2).tensor == Tensor2.from_const(2, expected, POLE)
    for n in (2, 3):
        t = catalog.yang(n).tensor
        assert is_zero(flip(t) + t)
    g3 = casimir(3)
    roots = {k: v for k, v in g3.items() if k[0].kind == "e"}
    cartan = {k: v for k, v in g3.items() if k[0].kind == "h"}
    assert len(roots) == 6 and all(a == E(b.j, b.i) and v == 1 for (a, b), v in roots.items())
    assert cartan == {(H(1), H(1)): Fraction(2, 3), (H(1), H(2)): Fraction(1, 3),
                      (H(2), H(1)): Fraction(1, 3), (H(2), H(2)): Fraction(2, 3)}


def test_nodal_sl2_value():
    e, f, h = _sl2()
    const = lie.tensor_from_pairs([(h, h, Fraction(1, 4)), (f, e, 1)])
    expected = Tensor2.from_const(2, casimir(2), X * POLE) + Tensor2.from_const(2, const)
    assert catalog.nodal_closed_form(2).tensor == expected
    assert catalog.r_h(2) == {}
    assert catalog.r_sp(2) == {}


def test_r_h_coefficient_sl3():
    gs = lie.g_basis(3)
    c = Fraction(1, 6) * (1 + zeta(3)) / (1 - zeta(3))
    expected = lie.tensor_from_pairs([(gs[1], gs[0], c), (gs[0], gs[1], Fraction(1, 6) * (1 + zeta(3, 2)) / (1 - zeta(3, 2)))])
    assert catalog.r_h(3) == expected


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_r_sp_is_skew_and_bd_constant_meets_constraint(n):
    sp = catalog.r_sp(n)
    assert lie.add_tensors(sp, lie.flip_factors(sp)) == {}
    r0 = catalog.bd_constant(n)
    assert lie.add_tensors(r0, lie.flip_factors(r0)) == casimir(n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_bd_constant_solves_cybe(n):
    assert verify.cybe_lhs(Tensor2.from_const(n, catalog.bd_constant(n))).is_zero()


def test_cuspidal_values():
    e, f, h = _sl2()
    const = lie.tensor_from_pairs([(h, f, Fraction(1, 2)), (f, h, Fraction(-1, 2))])
    assert catalog.cuspidal_closed_form(2).tensor == Tensor2.from_const(2, casimir(2), POLE) + Tensor2.from_const(2, const)
    assert lie.h_dual(2) == [LieElem.basis_element(2, H(1), Fraction(1, 2))]
    # n = 3: the second sum has the single pair (k, l) = (3, 1)
    c3 = catalog.cuspidal_constant(3)
    double_sum = {k: v for k, v in c3.items() if E(3, 1) in k}
    assert double_sum == {(E(1, 2), E(3, 1)): 1, (E(3, 1), E(1, 2)): -1}


def test_sl2_item6_equals_cuspidal():
    assert catalog.sl2_item6().tensor == catalog.cuspidal_closed_form(2).tensor


def test_stolin_ff_coefficient():
    t = catalog.stolin_sl2().tensor
    f = E(2, 1)
    assert t.entries[(f, f)] == -((Y - X) ** 3)


@pytest.mark.parametrize("entry", ALL, ids=lambda e: f"{e.name}-{e.n}")
def test_flags_hold(entry):
    r = entry.tensor
    assert verify.cybe_lhs(r).is_zero() == (CYBE in entry.expected)
    assert verify.skew_check(r) == (SKEW in entry.expected)
    if GCYBE_ONLY in entry.expected:
        assert verify.gcybe_lhs(r).is_zero()
    if NONDEGENERATE in entry.expected:
        assert verify.nondegenerate_at(r, (1, 2))
        if entry.name == "nodal":
            assert verify.nondegenerate_at(r, (2, 1))


@pytest.mark.parametrize("name", ["yang", "cuspidal", "sl2_item6", "stolin_sl2", "nodal", "gcybe_only"])
def test_cybe_flags_against_matrix_oracle(name):
    r = catalog.get(name, 2).tensor
    pts = [(Fraction(1), Fraction(3), Fraction(-2)), (Fraction(5, 2), Fraction(-1), Fraction(4))]
    vals = [cybe_at(r, *p).is_zero_matrix for p in pts]
    assert all(vals) == (name != "gcybe_only")


def test_cuspidal_sl3_against_matrix_oracle():
    r = catalog.cuspidal_closed_form(3).tensor
    assert cybe_at(r, Fraction(1), Fraction(2), Fraction(-1)).is_zero_matrix

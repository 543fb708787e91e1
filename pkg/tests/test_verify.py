from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from oracles import gcybe_at
from rmatrix import catalog, lie, verify
from rmatrix.lie import E, H, LieElem, casimir
from rmatrix.tensor_poly import PoleError, RatFun, Tensor2, is_zero

POLE = RatFun.inv_diff("y", "x")
SKEW_CYBE = [e for e in catalog.entries((2, 3)) if catalog.CYBE in e.expected]


def test_gcybe_examples():
    assert verify.gcybe_lhs(catalog.yang(2).tensor).is_zero()
    assert verify.gcybe_lhs(catalog.gcybe_only(2).tensor).is_zero()
    assert verify.gcybe_lhs(Tensor2(2, {})).is_zero()


def test_printed_gcybe_variant_differs_on_gcybe_only():
    r = catalog.gcybe_only(2).tensor
    assert not verify.gcybe_lhs(r, form="printed").is_zero()
    with pytest.raises(ValueError):
        verify.gcybe_lhs(r, form="other")


@pytest.mark.parametrize("n", [2, 3])
def test_gcybe_only_matches_matrix_oracle(n):
    r = catalog.gcybe_only(n).tensor
    assert gcybe_at(r, Fraction(1), Fraction(3), Fraction(-2)).is_zero_matrix
    # a non-solution for the oracle: perturb by a constant
    bad = r + Tensor2(n, {(E(1, 2), E(1, 2)): 1})
    assert not gcybe_at(bad, Fraction(1), Fraction(3), Fraction(-2)).is_zero_matrix
    assert not verify.gcybe_lhs(bad).is_zero()


@pytest.mark.parametrize("entry", SKEW_CYBE, ids=lambda e: f"{e.name}-{e.n}")
def test_skew_cybe_implies_gcybe(entry):
    assert verify.gcybe_lhs(entry.tensor).is_zero()
    for form in verify.GCYBE_FORMS:
        assert verify.gcybe_lhs(entry.tensor, form=form).is_zero()


def test_cybe_examples():
    assert verify.cybe_lhs(catalog.cuspidal_closed_form(2).tensor).is_zero()
    assert not verify.cybe_lhs(catalog.gcybe_only(2).tensor).is_zero()
    assert verify.cybe_lhs(catalog.nodal_closed_form(3).tensor).is_zero()


def test_skew_examples():
    for n in (2, 3):
        assert verify.skew_check(catalog.yang(n).tensor)
        assert not verify.skew_check(catalog.gcybe_only(n).tensor)
    assert verify.skew_check(catalog.cuspidal_closed_form(2).tensor)


def test_nondegenerate_examples():
    assert verify.nondegenerate_at(catalog.yang(2).tensor, (1, 2))
    ee = Tensor2(2, {(E(1, 2), E(1, 2)): 1})
    assert not verify.nondegenerate_at(ee, (1, 2))
    assert verify.nondegenerate_at(catalog.nodal_closed_form(2).tensor, (1, 2))
    with pytest.raises(PoleError):
        verify.nondegenerate_at(catalog.yang(2).tensor, (3, 3))


def test_check_verdicts():
    v = verify.check(catalog.gcybe_only(2).tensor, "cybe")
    assert not v.passed and v.witness
    assert verify.check(catalog.yang(2).tensor, "skew").to_json() == {"identity": "skew", "pass": True}
    with pytest.raises(ValueError):
        verify.check(catalog.yang(2).tensor, "jacobi")


def test_transform_examples():
    r = catalog.yang(2).tensor
    assert verify.transform(r, "gauge", [[1, 0], [0, 1]]) == r
    doubled = verify.transform(r, "rescale", 2)
    assert doubled == Tensor2.from_const(2, casimir(2), POLE * 2)
    assert verify.cybe_lhs(doubled).is_zero()
    assert verify.transform(r, "shift", Fraction(5, 3)) == r
    with pytest.raises(ValueError):
        verify.transform(r, "gauge", [[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        verify.transform(r, "rescale", 0)


def _gauges(n):
    perms = []
    for p in itertools.permutations(range(n)):
        perms.append([[Fraction(int(p[i] == j)) for j in range(n)] for i in range(n)])
    diag = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        diag[i][i] = Fraction(2) if i == 0 else (Fraction(1, 2) if i == 1 else Fraction(1))
    return perms + [diag]


@pytest.mark.parametrize("entry", catalog.entries((2, 3)), ids=lambda e: f"{e.name}-{e.n}")
def test_gauge_preserves_gcybe(entry):
    for g in _gauges(entry.n):
        t = verify.transform(entry.tensor, "gauge", g)
        assert verify.gcybe_lhs(t).is_zero() == verify.gcybe_lhs(entry.tensor).is_zero()


def test_gauge_equals_adjoint_action_on_casimir():
    g = [[Fraction(1), Fraction(2)], [Fraction(0), Fraction(1)]]
    t = verify.transform(catalog.yang(2).tensor, "gauge", g)
    assert t == catalog.yang(2).tensor


def _basis_loop(n, k, b):
    return {k: LieElem.basis_element(n, b)}


@pytest.mark.parametrize("name", ["yang", "cuspidal", "nodal"])
@pytest.mark.parametrize("n", [2, 3])
def test_cobracket_is_polynomial(name, n):
    r = catalog.get(name, n).tensor
    for k in range(4):
        for b in lie.basis(n):
            out = verify.cobracket(_basis_loop(n, k, b), r)
            assert all(not v.den for v in out.entries.values())


def test_cobracket_examples():
    h = {0: LieElem.basis_element(2, H(1))}
    assert verify.cobracket(h, catalog.yang(2).tensor).is_zero()
    ze = {1: LieElem.basis_element(2, E(1, 2))}
    out = verify.cobracket(ze, catalog.yang(2).tensor)
    assert not out.is_zero() and all(not v.den for v in out.entries.values())
    assert all(not v.den for v in verify.cobracket(h, catalog.cuspidal_closed_form(2).tensor).entries.values())


def test_cobracket_detects_surviving_pole():
    r = Tensor2(2, {(E(1, 2), E(1, 2)): POLE})
    with pytest.raises(verify.NonRegularError):
        verify.cobracket({0: LieElem.basis_element(2, H(1))}, r)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_casimir_invariance(n):
    for b in lie.basis(n):
        assert verify.casimir_invariance_defect(n, LieElem.basis_element(n, b)) == {}


def test_cojacobi_disabled_by_default():
    with pytest.raises(RuntimeError):
        verify.cojacobi_defect({0: LieElem.basis_element(2, H(1))}, catalog.yang(2).tensor)


@pytest.mark.parametrize("reading", verify.COJACOBI_READINGS)
def test_cojacobi_vanishes_for_cuspidal_sl2(reading):
    r = catalog.cuspidal_closed_form(2).tensor
    for k in range(2):
        for b in lie.basis(2):
            d = verify.cojacobi_defect(_basis_loop(2, k, b), r, reading, enabled=True)
            assert is_zero(d)

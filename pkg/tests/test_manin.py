from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rmatrix import catalog, lie, manin, verify
from rmatrix.lie import E, H
from rmatrix.manin import LocalMatrix, LoopElem, residue_pairing
from rmatrix.tensor_poly import RatFun, Tensor2

e12, e21, h1 = E(1, 2), E(2, 1), H(1)


def loop(n, *terms):
    return LoopElem(n, {(k, b): c for k, b, c in terms})


def test_residue_pairing_examples():
    assert residue_pairing(loop(2, (-1, h1, 1)), loop(2, (0, h1, 1))) == 2
    assert residue_pairing(loop(2, (2, e12, 1)), loop(2, (-1, e21, 1))) == 0
    assert residue_pairing(loop(2, (-1, e12, 1)), loop(2, (0, e21, 1))) == 1


small = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))
terms = st.dictionaries(st.tuples(st.integers(-3, 3), st.sampled_from(lie.basis(2))), small, max_size=5)


@given(terms, terms, terms, small)
def test_residue_pairing_symmetric_bilinear(a, b, c, s):
    f, g, k = LoopElem(2, a), LoopElem(2, b), LoopElem(2, c)
    assert residue_pairing(f, g) == residue_pairing(g, f)
    assert residue_pairing(f + k * s, g) == residue_pairing(f, g) + s * residue_pairing(k, g)
    assert residue_pairing(f.regular_part(), g.regular_part()) == 0


def test_expand_yang_has_no_polynomial_part():
    s = manin.expand(catalog.yang(2).tensor, 3)
    assert s.coeffs == {} and s.shape_ok
    w = manin.w_basis(s)
    assert len(w) == 4 * 3
    for (k, a), f in w.elements.items():
        assert f == LoopElem(2, {(-k - 1, b): v for b, v in lie.dual_terms(2, a)})


def test_expand_cuspidal_sl2_constant_term():
    s = manin.expand(catalog.cuspidal_closed_form(2).tensor, 2)
    assert s.shape_ok
    assert s.coeffs == {(0, e21): loop(2, (0, h1, Fraction(-1, 2))), (0, h1): loop(2, (0, e21, Fraction(1, 2)))}
    f = manin.w_basis(s).elements[(0, e21)]
    assert f.coefficient(0).coeffs.get(h1)


def test_expand_gcybe_only_flags_shifted_principal_part():
    s = manin.expand(catalog.gcybe_only(2).tensor, 3)
    assert not s.shape_ok
    w = manin.w_basis(s)
    assert not manin.coisotropy_check(w)
    assert not manin.lagrangian_complement_check(w)


def test_expand_rejects_higher_poles_and_other_denominators():
    two = Tensor2.from_const(2, lie.casimir(2), RatFun.inv_diff("y", "x", 2))
    with pytest.raises(manin.HigherOrderPoleError):
        manin.expand(two, 2)
    # 1/y in r(x, y) becomes 1/x in -r(y, x), which has no expansion at x = 0
    inv_y = Tensor2.from_const(2, lie.casimir(2), RatFun(1, {"y": 1}))
    with pytest.raises(manin.DesignatedClassError):
        manin.expand(inv_y, 2)
    assert manin.expand(Tensor2.from_const(2, lie.casimir(2), RatFun(1, {"x": 1})), 2).shape_ok is False


def test_w_basis_element_count():
    assert len(manin.w_basis(manin.expand(catalog.yang(2).tensor, 2))) == 9


@pytest.mark.parametrize("entry", [catalog.yang(2), catalog.yang(3), catalog.cuspidal_closed_form(2),
                                   catalog.cuspidal_closed_form(3), catalog.stolin_sl2(), catalog.sl2_item6()],
                         ids=lambda e: f"{e.name}-{e.n}")
def test_round_trip_and_structure(entry):
    s = manin.expand(entry.tensor, 5 if entry.n == 2 else 4)
    w = manin.w_basis(s)
    assert manin.coisotropy_check(w)
    assert manin.lagrangian_complement_check(w)
    assert manin.s_stability_check(w)
    assert manin.dual_basis_reconstruct(w) == s


def test_non_skew_perturbation_breaks_coisotropy_only():
    r = catalog.yang(2).tensor + Tensor2(2, {(h1, h1): 1})
    assert not verify.skew_check(r)
    w = manin.w_basis(manin.expand(r, 4))
    assert not manin.coisotropy_check(w)
    assert manin.lagrangian_complement_check(w)


def test_corrupted_coefficient_fails_lagrangian_check():
    w = manin.w_basis(manin.expand(catalog.cuspidal_closed_form(2).tensor, 4))
    # double the principal coefficient of f_{0,h}; p_{0,h} is nonzero, so the span moves
    f = w.elements[(0, h1)]
    w.elements[(0, h1)] = f + f.principal_part()
    assert not manin.lagrangian_complement_check(w)
    s = manin.expand(catalog.cuspidal_closed_form(2).tensor, 4)
    assert manin.dual_basis_reconstruct(w) != s


def test_reconstruct_from_mixed_basis():
    s = manin.expand(catalog.cuspidal_closed_form(2).tensor, 3)
    w = manin.w_basis(s)
    # f_{k,a} + f_{k-1,a} spans the same space; the dual basis recovers f
    mixed = {key: (f + w.elements[(key[0] - 1, key[1])] if key[0] else f) for key, f in w.elements.items()}
    assert manin.dual_basis_reconstruct(manin.WBasis(2, 3, mixed)) == s


def test_reconstruct_rejects_degenerate_elements():
    w = manin.w_basis(manin.expand(catalog.yang(2).tensor, 2))
    w.elements[(2, h1)] = w.elements[(1, h1)]
    with pytest.raises(manin.DualityError):
        manin.dual_basis_reconstruct(w)


def test_s_stability_fails_for_non_stable_span():
    w = manin.w_basis(manin.expand(catalog.yang(2).tensor, 4))
    w.elements[(0, h1)] = w.elements[(0, h1)] + loop(2, (0, e12, 1))
    w.elements[(2, h1)] = w.elements[(2, h1)] + loop(2, (0, e21, 1))
    assert not manin.s_stability_check(w)


def _local(entries, order):
    return LocalMatrix(2, entries, order)


def test_residue_at_singularity_examples():
    h = {(0, 0): {0: 1}, (1, 1): {0: -1}}
    assert manin.residue_at_singularity({"inf": _local(h, 3)}, {"inf": _local(h, 3)}, "cuspidal") == 0
    diag = {(0, 0): {0: 3}, (1, 1): {0: -3}}
    data = {"0": _local(diag, 2), "inf": _local(diag, 2)}
    assert manin.residue_at_singularity(data, data, "nodal") == 0
    # tr(fg) = w^2 lies in C[[w^2, w^3]]: no residue
    f = {(0, 1): {-1: 1}}
    g = {(1, 0): {3: 1}}
    assert manin.residue_at_singularity({"inf": _local(f, 4)}, {"inf": _local(g, 6)}, "cuspidal") == 0
    # tr(h * h w) = 2 w contributes -2
    hw = {(0, 0): {1: 1}, (1, 1): {1: -1}}
    assert manin.residue_at_singularity({"inf": _local(h, 3)}, {"inf": _local(hw, 3)}, "cuspidal") == -2


def test_residue_truncation_error():
    f = {(0, 1): {-1: 1}}
    g = {(1, 0): {0: 1}}
    with pytest.raises(manin.TruncationError):
        manin.residue_at_singularity({"inf": _local(f, 1)}, {"inf": _local(g, 0)}, "cuspidal")
    with pytest.raises(ValueError):
        manin.residue_at_singularity({"inf": _local(f, 1)}, {"inf": _local(g, 0)}, "nodal")

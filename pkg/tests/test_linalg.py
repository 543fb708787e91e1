from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from rmatrix import linalg
from rmatrix.linalg import SingularMatrixError, UFrac, bareiss_rref
from rmatrix.upoly import UPoly, gcd, xgcd

X = sympy.Symbol("x")
small = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))
polys = st.lists(small, max_size=5).map(UPoly)


def to_sympy(p: UPoly):
    return sum(sympy.Rational(c.numerator, c.denominator) * X ** i for i, c in enumerate(p.coeffs))


def from_sympy(expr) -> UPoly:
    poly = sympy.Poly(expr, X, domain="QQ")
    coeffs = [Fraction(0)] * (poly.degree() + 1) if not poly.is_zero else []
    for (k,), c in poly.terms():
        coeffs[k] = Fraction(int(c.p), int(c.q))
    return UPoly(coeffs)


@given(polys, polys)
def test_upoly_ring_ops_match_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert sympy.expand(to_sympy(a - b) - (to_sympy(a) - to_sympy(b))) == 0


@given(polys, polys)
def test_divmod_identity(a, b):
    if b.is_zero():
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(polys, polys)
def test_gcd_matches_sympy(a, b):
    if a.is_zero() and b.is_zero():
        return
    g = gcd(a, b)
    assert g == from_sympy(sympy.gcd(to_sympy(a), to_sympy(b))).monic()
    g2, s, t = xgcd(a, b)
    assert s * a + t * b == g2


def test_rank_det_inverse_match_sympy():
    rng = random.Random(7)
    for _ in range(40):
        k = rng.randint(1, 5)
        m = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(k)] for _ in range(k)]
        ref = sympy.Matrix(k, k, lambda i, j: sympy.Rational(m[i][j].numerator, m[i][j].denominator))
        assert linalg.rank(m) == ref.rank()
        d = ref.det()
        assert linalg.det(m) == Fraction(int(d.p), int(d.q))
        if d != 0:
            inv = linalg.inverse(m)
            assert linalg.matmul(m, inv) == linalg.identity(k)
        else:
            with pytest.raises(SingularMatrixError):
                linalg.inverse(m)


def test_bareiss_matches_sympy_rref():
    rng = random.Random(11)
    for _ in range(40):
        rows, cols = rng.randint(1, 4), rng.randint(1, 5)
        m = [[UPoly([rng.randint(-2, 2) for _ in range(rng.randint(0, 3))]) for _ in range(cols)]
             for _ in range(rows)]
        d, a, pivots = bareiss_rref(m)
        ref, ref_piv = sympy.Matrix(rows, cols, lambda i, j: to_sympy(m[i][j])).rref(simplify=True)
        assert tuple(pivots) == tuple(ref_piv)
        for i in range(rows):
            for j in range(cols):
                ours = sympy.cancel(to_sympy(a[i][j]) / to_sympy(d))
                assert sympy.simplify(ours - ref[i, j]) == 0


def test_ufrac_field_ops():
    x = UFrac(UPoly((0, 1)))
    one = UFrac(UPoly((1,)))
    a = (x + one) / (x - one)
    assert a * (x - one) == x + one
    assert a(Fraction(3)) == 2
    assert (a - a).num.is_zero()

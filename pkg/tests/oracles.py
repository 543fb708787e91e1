"""Independent reference computations used by the tests.

These deliberately avoid the package's own bracket, embedding and
normalization code: tensors are evaluated at rational points and realized as
Kronecker products of explicit matrices with sympy.
"""
from __future__ import annotations

from fractions import Fraction

import sympy

from rmatrix import lie


def sym(q) -> sympy.Rational:
    q = Fraction(q)
    return sympy.Rational(q.numerator, q.denominator)


def basis_matrix(n: int, b) -> sympy.Matrix:
    m = sympy.zeros(n, n)
    for (i, j), v in lie.unit_matrix(b).items():
        m[i - 1, j - 1] = v
    return m


def const_tensor_matrix(n: int, t, slots: str) -> sympy.Matrix:
    """Matrix of a constant tensor acting on (C^n)^{(x)3} in the given slots."""
    eye = sympy.eye(n)
    out = sympy.zeros(n ** 3, n ** 3)
    for (a, b), v in t.items():
        ma, mb = basis_matrix(n, a), basis_matrix(n, b)
        factors = {"12": (ma, mb, eye), "13": (ma, eye, mb), "23": (eye, ma, mb), "32": (eye, mb, ma)}[slots]
        out += sym(v) * sympy.kronecker_product(*factors)
    return out


def _comm(a, b):
    return a * b - b * a


def cybe_at(r, p1, p2, p3) -> sympy.Matrix:
    n = r.n
    r12 = const_tensor_matrix(n, r.evaluate({"x": p1, "y": p2}), "12")
    r13 = const_tensor_matrix(n, r.evaluate({"x": p1, "y": p3}), "13")
    r23 = const_tensor_matrix(n, r.evaluate({"x": p2, "y": p3}), "23")
    return _comm(r12, r13) + _comm(r13, r23) + _comm(r12, r23)


def gcybe_at(r, p1, p2, p3) -> sympy.Matrix:
    n = r.n
    r12 = const_tensor_matrix(n, r.evaluate({"x": p1, "y": p2}), "12")
    r13 = const_tensor_matrix(n, r.evaluate({"x": p1, "y": p3}), "13")
    r23 = const_tensor_matrix(n, r.evaluate({"x": p2, "y": p3}), "23")
    r32 = const_tensor_matrix(n, r.evaluate({"x": p3, "y": p2}), "32")
    return _comm(r12, r13) + _comm(r12, r23) + _comm(r32, r13)


def trace_gram(n: int) -> sympy.Matrix:
    bs = lie.basis(n)
    mats = [basis_matrix(n, b) for b in bs]
    return sympy.Matrix(len(bs), len(bs), lambda i, j: (mats[i] * mats[j]).trace())


def casimir_oracle(n: int) -> dict:
    """gamma = sum_{a,b} (G^{-1})_{ab} x_a (x) x_b from the sympy-inverted Gram matrix."""
    bs = lie.basis(n)
    ginv = trace_gram(n).inv()
    out = {}
    for i, a in enumerate(bs):
        for j, b in enumerate(bs):
            if ginv[i, j] != 0:
                out[(a, b)] = Fraction(int(ginv[i, j].p), int(ginv[i, j].q))
    return out

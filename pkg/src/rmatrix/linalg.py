"""Exact linear algebra.

Two layers:

* generic Gauss-Jordan elimination over any exact field whose elements
  support ``+ - * /`` and truthiness (``Fraction``, ``Cyclotomic``,
  :class:`UFrac`);
* fraction-free Gauss-Jordan elimination over the polynomial ring Q[x]
  (:func:`bareiss_rref`), which keeps every intermediate entry a polynomial.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .upoly import UPoly, gcd


class SingularMatrixError(ArithmeticError):
    """Raised when inverting a singular matrix."""


# -- generic field elimination ------------------------------------------

def _copy(m: Sequence[Sequence]) -> list[list]:
    return [list(row) for row in m]


def rref(m: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form with first-nonzero pivoting."""
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((k for k in range(r, rows) if a[k][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [v / piv if v else v for v in a[r]]
        for k in range(rows):
            if k != r and a[k][c]:
                f = a[k][c]
                a[k] = [u - f * v if v else u for u, v in zip(a[k], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1]) if m else 0


def det(m: Sequence[Sequence]):
    """Determinant by elimination (exact)."""
    a = _copy(m)
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        p = next((k for k in range(c, n) if a[k][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        piv = a[c][c]
        result = result * piv
        for k in range(c + 1, n):
            if a[k][c]:
                f = a[k][c] / piv
                a[k] = [u - f * v if v else u for u, v in zip(a[k], a[c])]
    return result


def inverse(m: Sequence[Sequence]) -> list[list]:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    inner = len(b)
    cols = len(b[0]) if inner else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = Fraction(0)
            for k in range(inner):
                if row[k] and b[k][j]:
                    acc = acc + row[k] * b[k][j]
            new.append(acc)
        out.append(new)
    return out


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


# -- rational functions in one variable ---------------------------------

class UFrac:
    """Element of Q(x): reduced ``num/den`` with ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, UPoly) else UPoly((num,))
        den = UPoly((1,)) if den is None else (den if isinstance(den, UPoly) else UPoly((den,)))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = UPoly(), UPoly((1,))
            return
        g = gcd(num, den)
        if g.degree > 0:
            num, den = num.exquo(g), den.exquo(g)
        lc = den.lead()
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    @staticmethod
    def _c(o) -> "UFrac":
        if isinstance(o, UFrac):
            return o
        if isinstance(o, (int, Fraction, UPoly)):
            return UFrac(o)
        raise TypeError(f"cannot combine UFrac with {type(o).__name__}")

    def __add__(self, o):
        o = self._c(o)
        if self.den == o.den:
            return UFrac(self.num + o.num, self.den)
        return UFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return UFrac(-self.num, self.den)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        return UFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._c(o)
        if not o.num:
            raise ZeroDivisionError("division by zero in Q(x)")
        return UFrac(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return self._c(o) / self

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, o):
        try:
            o = self._c(o)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"UFrac({self.num!r}, {self.den!r})"

    def __call__(self, t):
        d = self.den(t)
        if d == 0:
            raise ZeroDivisionError("pole at evaluation point")
        return self.num(t) / d


# -- fraction-free elimination over Q[x] --------------------------------

def bareiss_rref(m: Sequence[Sequence[UPoly]]) -> tuple[UPoly, list[list[UPoly]], list[int]]:
    """Fraction-free Gauss-Jordan elimination over Q[x].

    Returns ``(d, a, pivots)`` where ``a / d`` is the reduced row echelon form
    of ``m``.  Every pivot entry of ``a`` equals ``d`` and every division
    performed is exact (entries stay minors of ``m``).  Pivots are chosen as
    the first nonzero entry in each column.
    """
    a = [[e if isinstance(e, UPoly) else UPoly((e,)) for e in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    prev = UPoly((1,))
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((k for k in range(r, rows) if a[k][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        prow = a[r]
        for k in range(rows):
            if k == r:
                continue
            row = a[k]
            f = row[c]
            new = []
            for l in range(cols):
                if l == c:
                    new.append(UPoly())
                    continue
                v = piv * row[l]
                if f and prow[l]:
                    v = v - f * prow[l]
                new.append(v.exquo(prev) if v and prev.degree >= 0 and prev.coeffs != (1,) else v)
            a[k] = new
        pivots.append(c)
        prev = piv
        r += 1
    return prev, a, pivots

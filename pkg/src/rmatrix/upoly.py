"""Dense univariate polynomials over the rationals.

Used for cyclotomic polynomials, for arithmetic in Q(zeta_n), and as the
coefficient ring of the fraction-free elimination in :mod:`rmatrix.linalg`.
Coefficients are stored low degree first with no trailing zeros, so the zero
polynomial is the empty tuple.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable


def _trim(coeffs: Iterable) -> tuple:
    c = [x if isinstance(x, Fraction) else Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class UPoly:
    """Immutable univariate polynomial with :class:`Fraction` coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim(coeffs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "UPoly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def const(cls, c) -> "UPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "UPoly":
        return cls([0] * k + [c])

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UPoly({[str(c) for c in self.coeffs]})"

    def __call__(self, t):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    # -- ring operations -----------------------------------------------
    @staticmethod
    def _coerce(other) -> "UPoly":
        if isinstance(other, UPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UPoly((other,))
        raise TypeError(f"cannot combine UPoly with {type(other).__name__}")

    def __add__(self, other) -> "UPoly":
        o = self._coerce(other).coeffs
        s = self.coeffs
        if len(s) < len(o):
            s, o = o, s
        out = list(s)
        for i, c in enumerate(o):
            out[i] += c
        return UPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "UPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return UPoly()
            return UPoly._raw(tuple(c * other for c in self.coeffs))
        o = self._coerce(other).coeffs
        s = self.coeffs
        if not s or not o:
            return UPoly()
        out = [Fraction(0)] * (len(s) + len(o) - 1)
        for i, a in enumerate(s):
            if a == 0:
                continue
            for j, b in enumerate(o):
                out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = UPoly((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.coeffs
        dl = d[-1]
        dd = len(d) - 1
        if len(rem) <= dd:
            return UPoly(), self
        quo = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c / dl
            quo[k - dd] = q
            for i in range(dd + 1):
                rem[k - dd + i] -= q * d[i]
        return UPoly(quo), UPoly(rem[:dd])

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[1]

    def exquo(self, other: "UPoly") -> "UPoly":
        """Exact quotient; raises ``ArithmeticError`` if a remainder is left."""
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{self!r} is not divisible by {other!r}")
        return q

    def monic(self) -> "UPoly":
        if not self.coeffs:
            return self
        return self * (1 / self.coeffs[-1])

    def low_order(self) -> int:
        """Exponent of the lowest nonzero term (-1 for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def is_monomial(self) -> bool:
        return bool(self.coeffs) and self.low_order() == self.degree

    def shift_down(self, k: int) -> "UPoly":
        """Divide by t**k; the caller guarantees divisibility."""
        return UPoly._raw(self.coeffs[k:])


def gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = UPoly((1,)), UPoly()
    t0, t1 = UPoly(), UPoly((1,))
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    lc = 1 / r0.lead()
    return r0 * lc, s0 * lc, t0 * lc

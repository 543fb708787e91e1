"""Exact scalars: rationals and elements of the cyclotomic field Q(zeta_n).

Rationals are plain :class:`fractions.Fraction` values (Python ``int`` is
accepted wherever a rational is).  Irrational cyclotomic numbers are
:class:`Cyclotomic` instances reduced modulo the n-th cyclotomic polynomial.
Arithmetic that produces a rational result returns a ``Fraction``, so every
scalar has a single canonical representation and ``Fraction`` and
``Cyclotomic`` values compare and hash consistently.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd as _igcd
from typing import Iterable, Union

from .upoly import UPoly, xgcd

Scalar = Union[int, Fraction, "Cyclotomic"]


class ScalarZeroDivisionError(ZeroDivisionError):
    """Raised when inverting the zero element of Q(zeta_n)."""


class IncompatibleOrderError(TypeError):
    """Raised when mixing cyclotomic numbers of different orders."""


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> UPoly:
    """The n-th cyclotomic polynomial.

    Computed as ``t**n - 1`` divided exactly by the cyclotomic polynomials of
    the proper divisors of ``n``.

    >>> cyclotomic_poly(4).coeffs == (1, 0, 1)
    True
    """
    if n < 1:
        raise ValueError("cyclotomic_poly requires n >= 1")
    p = UPoly.monomial(n) - 1
    for d in _divisors(n)[:-1]:
        p = p.exquo(cyclotomic_poly(d))
    return p


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Rows ``t**k mod Phi_n`` for ``0 <= k < 2*phi(n) - 1``."""
    phi = cyclotomic_poly(n)
    deg = phi.degree
    rows = []
    for k in range(max(2 * deg - 1, 1)):
        r = (UPoly.monomial(k) % phi).coeffs
        rows.append(tuple(r) + (Fraction(0),) * (deg - len(r)))
    return tuple(rows)


def euler_phi(n: int) -> int:
    return cyclotomic_poly(n).degree


def _reduce(order: int, coeffs: Iterable) -> tuple[Fraction, ...]:
    deg = euler_phi(order)
    coeffs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
    if len(coeffs) <= deg:
        return tuple(coeffs) + (Fraction(0),) * (deg - len(coeffs))
    if len(coeffs) <= 2 * deg - 1:
        table = _reduction_table(order)
        out = [Fraction(0)] * deg
        for k, c in enumerate(coeffs):
            if c:
                for i, v in enumerate(table[k]):
                    if v:
                        out[i] += c * v
        return tuple(out)
    r = (UPoly(coeffs) % cyclotomic_poly(order)).coeffs
    return tuple(r) + (Fraction(0),) * (deg - len(r))


def _wrap(order: int, coeffs: tuple[Fraction, ...]) -> Scalar:
    """Return a Fraction when the element is rational, else a Cyclotomic."""
    if not any(coeffs[1:]):
        return coeffs[0] if coeffs else Fraction(0)
    obj = object.__new__(Cyclotomic)
    obj.order = order
    obj.coeffs = coeffs
    return obj


class Cyclotomic:
    """An element of Q(zeta_n) in the power basis ``1, t, ..., t**(phi(n)-1)``.

    The constructor accepts any coefficient list and reduces it modulo the
    cyclotomic polynomial.  Results of arithmetic are demoted to ``Fraction``
    when rational.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        self.coeffs = _reduce(order, coeffs)

    # -- helpers -------------------------------------------------------
    def _other_coeffs(self, other) -> tuple[Fraction, ...] | None:
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise IncompatibleOrderError(
                    f"cannot combine Q(zeta_{self.order}) with Q(zeta_{other.order})"
                )
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) + (Fraction(0),) * (len(self.coeffs) - 1)
        return None

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        o = self._other_coeffs(other)
        if o is None:
            return NotImplemented
        return _wrap(self.order, tuple(a + b for a, b in zip(self.coeffs, o)))

    __radd__ = __add__

    def __neg__(self):
        return _wrap(self.order, tuple(-a for a in self.coeffs))

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._other_coeffs(other)
        if o is None:
            return NotImplemented
        return _wrap(self.order, tuple(a - b for a, b in zip(self.coeffs, o)))

    def __rsub__(self, other):
        o = self._other_coeffs(other)
        if o is None:
            return NotImplemented
        return _wrap(self.order, tuple(b - a for a, b in zip(self.coeffs, o)))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return _wrap(self.order, tuple(a * other for a in self.coeffs))
        o = self._other_coeffs(other)
        if o is None:
            return NotImplemented
        s = self.coeffs
        prod = [Fraction(0)] * (len(s) + len(o) - 1)
        for i, a in enumerate(s):
            if a:
                for j, b in enumerate(o):
                    if b:
                        prod[i + j] += a * b
        return _wrap(self.order, _reduce(self.order, prod))

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via the extended Euclidean algorithm."""
        a = UPoly(self.coeffs)
        if not a:
            raise ScalarZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.order)
        g, s, _ = xgcd(a, cyclotomic_poly(self.order))
        # Phi_n is irreducible, so g == 1 for every nonzero a.
        assert g.coeffs == (1,)
        return _wrap(self.order, _reduce(self.order, s.coeffs))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ScalarZeroDivisionError("division by zero")
            return _wrap(self.order, tuple(a / other for a in self.coeffs))
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return inv(self) ** (-k)
        result: Scalar = Fraction(1)
        base: Scalar = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ----------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic):
            if self.is_rational() and other.is_rational():
                return self.coeffs[0] == other.coeffs[0]
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __repr__(self) -> str:
        return f"Cyclotomic({self.order}, [{', '.join(map(str, self.coeffs))}])"

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = f"z{self.order}" + (f"^{k}" if k > 1 else "")
                parts.append(mono if c == 1 else f"({c})*{mono}")
        return " + ".join(parts) if parts else "0"


def zeta(n: int, j: int = 1) -> Scalar:
    """The root of unity ``exp(2*pi*i*j/n)`` in canonical form."""
    if n < 1:
        raise ValueError("zeta requires n >= 1")
    j %= n
    if n == 1 or j == 0:
        return Fraction(1)
    coeffs = [0] * j + [1]
    return _wrap(n, _reduce(n, coeffs))


def inv(a: Scalar) -> Scalar:
    """Multiplicative inverse of a scalar."""
    if isinstance(a, Cyclotomic):
        return a.inverse()
    if a == 0:
        raise ScalarZeroDivisionError("inverse of zero")
    return 1 / Fraction(a)


def div(a: Scalar, b: Scalar) -> Scalar:
    return a * inv(b)


def is_zero(a: Scalar) -> bool:
    return not a


def common_order(values: Iterable[Scalar]) -> int:
    """The cyclotomic order shared by ``values`` (1 if all are rational)."""
    order = 1
    for v in values:
        if isinstance(v, Cyclotomic):
            if order not in (1, v.order):
                raise IncompatibleOrderError(f"orders {order} and {v.order} mixed")
            order = v.order
    return order


# -- text forms ---------------------------------------------------------

_RATIONAL_RE = re.compile(r"^(-?)(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?$")


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse the canonical form ``"p"`` or ``"p/q"``; reject anything else."""
    if not isinstance(text, str):
        raise ValueError(f"rational must be a string, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational {text!r}")
    sign, num, den = m.groups()
    p, q = int(num), int(den) if den else 1
    if den is not None and (q == 1 or _igcd(p, q) != 1):
        raise ValueError(f"non-canonical rational {text!r}")
    if p == 0 and (sign or den is not None):
        raise ValueError(f"non-canonical zero {text!r}")
    return Fraction(-p if sign else p, q)


def scalar_to_json(a: Scalar):
    if isinstance(a, Cyclotomic) and a.is_rational():
        return format_rational(a.coeffs[0])
    if isinstance(a, Cyclotomic):
        return {"coeffs": [format_rational(c) for c in a.coeffs], "order": a.order}
    return format_rational(a)


def scalar_from_json(obj) -> Scalar:
    if isinstance(obj, str):
        return parse_rational(obj)
    if isinstance(obj, dict) and set(obj) == {"coeffs", "order"}:
        order = obj["order"]
        if not isinstance(order, int) or isinstance(order, bool) or order < 1:
            raise ValueError(f"bad cyclotomic order {order!r}")
        coeffs = [parse_rational(c) for c in obj["coeffs"]]
        if len(coeffs) != euler_phi(order):
            raise ValueError("cyclotomic coefficient vector has the wrong length")
        value = Cyclotomic(order, coeffs)
        if value.is_rational():
            raise ValueError("rational value written in cyclotomic form")
        return value
    raise ValueError(f"malformed scalar {obj!r}")

"""Series expansions, the residue pairing, and dual-basis reconstruction.

A solution ``r(x, y)`` with a simple pole along ``x = y`` is expanded as

    -r(y, x) = sum_{k >= 0} sum_a ( y^{-k-1} x^a + p_{k,a}(y) ) (x) x^k x_a

in the region ``|x| < |y|``, where ``x_a`` runs over the sl_n basis and
``x^a`` over its trace-dual basis.  The elements
``f_{k,a} = z^{-k-1} x^a + p_{k,a}(z)`` span a complement ``W`` of
``g[[z]]`` in ``g((z))``; the pairing ``res_0 tr(f g) dz`` makes that
decomposition a Manin triple exactly when ``r`` is skew-symmetric.

Elements of ``g[z, 1/z]`` are :class:`LoopElem` values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from . import lie, linalg
from .lie import BasisIndex, LieElem
from .scalars import Scalar
from .tensor_poly import DesignatedClassError, MLaurent, Tensor2


class HigherOrderPoleError(ValueError):
    """The input has a pole of order > 1 along ``x = y``."""


class DualityError(ArithmeticError):
    """The elements do not admit a dual basis of the required shape."""


class TruncationError(ValueError):
    """The truncation order does not determine the requested coefficient."""


class LoopElem:
    """A Laurent polynomial with coefficients in sl_n: ``{(exp, basis): c}``."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, BasisIndex], Scalar] | None = None):
        self.n = n
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def from_lie(cls, elem: LieElem, exp: int = 0) -> "LoopElem":
        return cls(elem.n, {(exp, b): c for b, c in elem.coeffs.items()})

    @classmethod
    def monomial(cls, n: int, exp: int, b: BasisIndex, c: Scalar = 1) -> "LoopElem":
        return cls(n, {(exp, b): c})

    def __add__(self, other: "LoopElem") -> "LoopElem":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LoopElem(self.n, out)

    def __neg__(self) -> "LoopElem":
        return LoopElem(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "LoopElem") -> "LoopElem":
        return self + (-other)

    def __mul__(self, c: Scalar) -> "LoopElem":
        return LoopElem(self.n, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def shift(self, k: int) -> "LoopElem":
        """Multiply by ``z**k``."""
        return LoopElem(self.n, {(e + k, b): v for (e, b), v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LoopElem):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def exponents(self) -> list[int]:
        return sorted({e for e, _ in self.terms})

    def coefficient(self, exp: int) -> LieElem:
        return LieElem(self.n, {b: v for (e, b), v in self.terms.items() if e == exp})

    def principal_part(self) -> "LoopElem":
        return LoopElem(self.n, {k: v for k, v in self.terms.items() if k[0] < 0})

    def regular_part(self) -> "LoopElem":
        return LoopElem(self.n, {k: v for k, v in self.terms.items() if k[0] >= 0})

    def is_polynomial(self) -> bool:
        return all(e >= 0 for e, _ in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        body = " + ".join(f"({v})*{b}*z^{e}" for (e, b), v in self.sorted_terms())
        return f"LoopElem({body or '0'})"


def residue_pairing(f: LoopElem, g: LoopElem) -> Scalar:
    """``res_0 tr(f g) dz``: pairs ``a z^l`` with ``b z^k`` to ``tr(ab)`` iff ``l + k = -1``."""
    if f.n != g.n:
        raise ValueError("mismatched ranks")
    total: Scalar = Fraction(0)
    by_exp: dict[int, dict] = {}
    for (e, b), v in g.terms.items():
        by_exp.setdefault(e, {})[b] = v
    for (e, a), v in f.terms.items():
        other = by_exp.get(-1 - e)
        if not other:
            continue
        for b, gv in lie.gram_terms(f.n, a):
            w = other.get(b)
            if w:
                total = total + v * w * gv
    return total


def _dual_loop(n: int, b: BasisIndex, exp: int) -> LoopElem:
    return LoopElem(n, {(exp, a): v for a, v in lie.dual_terms(n, b)})


@dataclass
class SeriesTensor:
    """Coefficients ``p_{k,a}`` (``0 <= k <= order``) of the expansion.

    ``shape_ok`` records whether every ``p_{k,a}`` is a polynomial, i.e.
    whether the principal parts are exactly ``z^{-k-1} x^a``.
    """

    n: int
    order: int
    coeffs: dict[tuple[int, BasisIndex], LoopElem] = field(default_factory=dict)

    @property
    def shape_ok(self) -> bool:
        return all(p.is_polynomial() for p in self.coeffs.values())

    def p(self, k: int, a: BasisIndex) -> LoopElem:
        return self.coeffs.get((k, a), LoopElem(self.n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesTensor):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return (self.n == other.n and self.order == other.order
                and all(self.p(*k) == other.p(*k) for k in keys))

    __hash__ = None


@dataclass
class WBasis:
    """Elements ``f_{k,a}`` of ``g[z, 1/z]`` indexed by ``(k, a)``."""

    n: int
    order: int
    elements: dict[tuple[int, BasisIndex], LoopElem]

    def keys(self) -> list[tuple[int, BasisIndex]]:
        pos = lie.basis_position(self.n)
        return sorted(self.elements, key=lambda ka: (ka[0], pos[ka[1]]))

    def __len__(self) -> int:
        return len(self.elements)


def _laurent_to_loop_coeff(p: MLaurent, var: str) -> dict[int, Scalar]:
    if not p.terms:
        return {}
    q = p.extend((var,)) if p.vars != (var,) else p
    return {e[0]: c for e, c in q.terms.items()}


def expand(r: Tensor2, order: int) -> SeriesTensor:
    """Expand ``-r(y, x)`` in powers of ``x`` up to ``x**order``.

    Raises :class:`HigherOrderPoleError` for poles of order > 1 along
    ``x = y`` and :class:`DesignatedClassError` for other denominators or for
    negative powers of ``x``.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    n = r.n
    swapped = (-r).rename({"x": "y", "y": "x"})
    # g_{k,b}(y) = sum_a [x^k] c_ab(x, y) * a
    g: dict[tuple[int, BasisIndex], dict] = {}
    for (a, b), c in swapped.entries.items():
        m = 0
        for f, mult in c.den:
            if f != ("x", "y"):
                raise DesignatedClassError(f"factor ({f[0]}-{f[1]}) cannot be expanded")
            m = mult
        if m > 1:
            raise HigherOrderPoleError(f"pole of order {m} along x = y")
        extra = set(c.num.used_vars()) - {"x", "y"}
        if extra:
            raise DesignatedClassError(f"unexpected variables {sorted(extra)}")
        num = c.num.extend(("x", "y"))
        if any(e[0] < 0 for e in num.terms):
            raise DesignatedClassError("negative powers of x cannot be expanded at x = 0")
        rows: dict[int, dict[int, Scalar]] = {}
        for (i, j), v in num.terms.items():
            rows.setdefault(i, {})[j] = v
        for k in range(order + 1):
            coeff: dict[int, Scalar] = {}
            if m == 0:
                coeff = dict(rows.get(k, {}))
            else:
                # 1/(x - y) = -sum_j x^j y^{-j-1}
                for i in range(k + 1):
                    for j, v in rows.get(i, {}).items():
                        e = j - (k - i) - 1
                        coeff[e] = coeff.get(e, 0) - v
            for e, v in coeff.items():
                if v:
                    slot = g.setdefault((k, b), {})
                    slot[(e, a)] = slot.get((e, a), 0) + v
    coeffs = {}
    for k in range(order + 1):
        for b in lie.basis(n):
            p = LoopElem(n, g.get((k, b), {})) - _dual_loop(n, b, -k - 1)
            if p:
                coeffs[(k, b)] = p
    return SeriesTensor(n, order, coeffs)


def w_basis(s: SeriesTensor) -> WBasis:
    """``f_{k,a} = z^{-k-1} x^a + p_{k,a}`` for ``0 <= k <= order``."""
    els = {}
    for k in range(s.order + 1):
        for a in lie.basis(s.n):
            els[(k, a)] = _dual_loop(s.n, a, -k - 1) + s.p(k, a)
    return WBasis(s.n, s.order, els)


def coisotropy_check(w: WBasis) -> bool:
    """Whether ``f_{k,a}`` and ``f_{r,b}`` pair to zero whenever ``k + r <= N - 1``."""
    keys = w.keys()
    for i, (k, a) in enumerate(keys):
        for (r, b) in keys[i:]:
            if k + r <= w.order - 1 and residue_pairing(w.elements[(k, a)], w.elements[(r, b)]):
                return False
    return True


def _principal_vectors(w: WBasis) -> list[list[Scalar]]:
    cols = sorted({key for f in w.elements.values() for key in f.principal_part().terms},
                  key=lambda eb: (eb[0], lie.basis_position(w.n)[eb[1]]))
    index = {c: i for i, c in enumerate(cols)}
    rows = []
    for key in w.keys():
        row = [Fraction(0)] * len(cols)
        for t, v in w.elements[key].principal_part().terms.items():
            row[index[t]] = v
        rows.append(row)
    return rows


def lagrangian_complement_check(w: WBasis) -> bool:
    """Independence of principal parts and duality with ``z^r x_b`` for ``k, r <= N``."""
    rows = _principal_vectors(w)
    if not rows or not rows[0] or linalg.rank(rows) != len(rows):
        return False
    for (k, a), f in w.elements.items():
        for r in range(w.order + 1):
            for b in lie.basis(w.n):
                want = 1 if (k == r and a == b) else 0
                if residue_pairing(f, LoopElem.monomial(w.n, r, b)) != want:
                    return False
    return True


def _reduce_into_span(g: LoopElem, w: WBasis) -> LoopElem | None:
    """Subtract multiples of ``f_{m,b}`` to clear principal terms of ``g``."""
    n = w.n
    for _ in range(10 * (w.order + 2)):
        neg = [e for e in g.exponents() if e < 0]
        if not neg:
            return g
        e = neg[0]
        m = -e - 1
        if m > w.order:
            return None
        lead = g.coefficient(e)
        for b in lie.basis(n):
            c = lie.trace_form(lead, LieElem.basis_element(n, b))
            if c:
                g = g - w.elements[(m, b)] * c
    return None


def s_stability_check(w: WBasis) -> bool:
    """Whether ``z^-2`` and ``z^-3`` map ``span{f_{k,a} : k <= N - 3}`` into ``span{f}``."""
    for (k, a), f in w.elements.items():
        if k > w.order - 3:
            continue
        for s in (2, 3):
            rest = _reduce_into_span(f.shift(-s), w)
            if rest is None or rest:
                return False
    return True


def dual_basis_reconstruct(w: WBasis) -> SeriesTensor:
    """Rebuild the series from the elements via the dual basis of ``z^r x_b``.

    The Gram matrix ``G[(k,a),(r,b)] = <w_{k,a}, z^r x_b>`` is inverted; the
    resulting elements must have principal part exactly ``z^{-r-1} x^b``.
    """
    n, N = w.n, w.order
    keys = w.keys()
    targets = [(r, b) for r in range(N + 1) for b in lie.basis(n)]
    if len(keys) != len(targets):
        raise DualityError("element count does not match (N + 1) * dim")
    gram = [[residue_pairing(w.elements[key], LoopElem.monomial(n, r, b)) for (r, b) in targets]
            for key in keys]
    try:
        ginv = linalg.inverse(gram)
    except linalg.SingularMatrixError:
        raise DualityError("pairing with z^r x_b is degenerate") from None
    # dual element t = sum_j M[t][j] w_j with M = G^{-1} indexed (target, key)
    coeffs = {}
    for ti, (r, b) in enumerate(targets):
        acc = LoopElem(n)
        for j, key in enumerate(keys):
            c = ginv[ti][j]
            if c:
                acc = acc + w.elements[key] * c
        principal = acc.principal_part()
        if principal != _dual_loop(n, b, -r - 1):
            raise DualityError(f"dual element for ({r}, {b}) has principal part {principal}")
        p = acc - _dual_loop(n, b, -r - 1)
        if p:
            coeffs[(r, b)] = p
    return SeriesTensor(n, N, coeffs)


# -- residues at the singular point -----------------------------------------

@dataclass(frozen=True)
class LocalMatrix:
    """An n x n matrix of truncated Laurent series in a local coordinate.

    ``entries[(i, j)]`` maps exponents to coefficients; coefficients with
    exponent greater than ``order`` are unknown.
    """

    n: int
    entries: Mapping[tuple[int, int], Mapping[int, Scalar]]
    order: int

    def valuation(self) -> int:
        exps = [e for d in self.entries.values() for e, v in d.items() if v and e <= self.order]
        return min(exps) if exps else self.order + 1


def _trace_coefficient(f: LocalMatrix, g: LocalMatrix, e: int) -> Scalar:
    limit = min(f.order + g.valuation(), g.order + f.valuation())
    if e > limit:
        raise TruncationError(f"coefficient {e} of tr(fg) needs more terms (determined up to {limit})")
    total: Scalar = Fraction(0)
    for (i, k), fd in f.entries.items():
        gd = g.entries.get((k, i))
        if not gd:
            continue
        for a, u in fd.items():
            v = gd.get(e - a)
            if u and v:
                total = total + u * v
    return total


def residue_at_singularity(f: Mapping[str, LocalMatrix], g: Mapping[str, LocalMatrix], curve: str) -> Scalar:
    """Sum over the preimages of the singular point of ``res tr(fg) omega``.

    Nodal: data at ``"0"`` (coordinate ``z``) and ``"inf"`` (coordinate
    ``w = 1/z``) with ``omega = dz/z``.  Cuspidal: data at ``"inf"`` only with
    ``omega = dz = -dw/w^2``.
    """
    if curve == "nodal":
        for key in ("0", "inf"):
            if key not in f or key not in g:
                raise ValueError(f"nodal residues need data at {key!r}")
        return _trace_coefficient(f["0"], g["0"], 0) - _trace_coefficient(f["inf"], g["inf"], 0)
    if curve == "cuspidal":
        if "inf" not in f or "inf" not in g:
            raise ValueError("cuspidal residues need data at 'inf'")
        return -_trace_coefficient(f["inf"], g["inf"], 1)
    raise ValueError(f"unknown curve kind {curve!r}")


def series_keys(n: int, order: int) -> Iterable[tuple[int, BasisIndex]]:
    for k in range(order + 1):
        for a in lie.basis(n):
            yield (k, a)

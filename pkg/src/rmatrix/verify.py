"""Exact checkers for the Yang-Baxter identities and related properties."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import lie, linalg
from .lie import BasisIndex, LieElem
from .scalars import Scalar
from .tensor_poly import (
    MLaurent,
    PoleError,
    RatFun,
    Tensor2,
    Tensor3,
    _Accumulator,
    bracket_sum,
    embed,
    flip,
)

# A polynomial element of sl_n[z]: {power of z: coefficient}.
LoopPoly = Mapping[int, LieElem]


class NonRegularError(ArithmeticError):
    """The cobracket kept a pole along ``x = y``."""


@dataclass(frozen=True)
class Verdict:
    identity: str
    passed: bool
    witness: str | None = None

    def to_json(self) -> dict:
        out = {"identity": self.identity, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _slots(r: Tensor2) -> dict[str, Tensor3]:
    return {
        "12": embed(r, "12", {"x": "x1", "y": "x2"}),
        "13": embed(r, "13", {"x": "x1", "y": "x3"}),
        "23": embed(r, "23", {"x": "x2", "y": "x3"}),
        "32": embed(r, "32", {"x": "x3", "y": "x2"}),
    }


GCYBE_FORMS = ("standard", "printed")


def gcybe_lhs(r: Tensor2, form: str = "standard") -> Tensor3:
    """Left-hand side of the generalized classical Yang-Baxter equation.

    ``form="standard"`` (default) is
    ``[r12(x1,x2), r13(x1,x3)] + [r12(x1,x2), r23(x2,x3)] + [r32(x3,x2), r13(x1,x3)]``,
    the form solved by ``x/(y-x) gamma``.  ``form="printed"`` is the variant
    ``[r12, r13] + [r13, r23] + [r32, r12]``.  Both reduce to the CYBE
    left-hand side when ``r`` is skew-symmetric.
    """
    s = _slots(r)
    if form == "standard":
        pairs = [(s["12"], s["13"]), (s["12"], s["23"]), (s["32"], s["13"])]
    elif form == "printed":
        pairs = [(s["12"], s["13"]), (s["13"], s["23"]), (s["32"], s["12"])]
    else:
        raise ValueError(f"form must be one of {GCYBE_FORMS}")
    out = bracket_sum(pairs)
    out.n = r.n
    return out


def cybe_lhs(r: Tensor2) -> Tensor3:
    """``[r12, r13] + [r13, r23] + [r12, r23]`` with arguments ``(x1,x2), (x1,x3), (x2,x3)``."""
    s = _slots(r)
    out = bracket_sum([(s["12"], s["13"]), (s["13"], s["23"]), (s["12"], s["23"])])
    out.n = r.n
    return out


def skew_check(r: Tensor2) -> bool:
    """``flip(r) + r == 0``."""
    return (flip(r) + r).is_zero()


def _witness(t) -> str | None:
    if t.is_zero():
        return None
    key, val = t.sorted_items()[0]
    return f"{'*'.join(str(b) for b in key)}: {val}"


def check(r: Tensor2, identity: str, point: Sequence[Scalar] = (1, 2)) -> Verdict:
    """Run one named check and package the result."""
    if identity == "cybe":
        lhs = cybe_lhs(r)
        return Verdict("cybe", lhs.is_zero(), _witness(lhs))
    if identity == "gcybe":
        lhs = gcybe_lhs(r)
        return Verdict("gcybe", lhs.is_zero(), _witness(lhs))
    if identity == "skew":
        s = flip(r) + r
        return Verdict("skew", s.is_zero(), _witness(s))
    if identity == "nondeg":
        ok = nondegenerate_at(r, point)
        witness = None if ok else f"singular map at (x, y) = ({point[0]}, {point[1]})"
        return Verdict("nondeg", ok, witness)
    raise ValueError(f"unknown identity {identity!r}")


def map_determinant(r: Tensor2, point: Sequence[Scalar]) -> Scalar:
    x0, y0 = (Fraction(v) if isinstance(v, int) else v for v in point)
    const = r.evaluate({"x": x0, "y": y0})
    return linalg.det(lie.tensor_to_map(const, r.n))


def nondegenerate_at(r: Tensor2, point: Sequence[Scalar] = (1, 2)) -> bool:
    """Whether the map induced by ``r(x0, y0)`` is invertible.

    Raises :class:`PoleError` if the point lies on a pole.
    """
    if len(point) != 2:
        raise ValueError("point must be a pair")
    if point[0] == point[1]:
        raise PoleError("the evaluation point lies on the diagonal x = y")
    return map_determinant(r, point) != 0


# -- equivalence transforms ----------------------------------------------

def _adjoint_images(n: int, g: Sequence[Sequence[Scalar]]) -> dict[BasisIndex, LieElem]:
    if len(g) != n or any(len(row) != n for row in g):
        raise ValueError(f"gauge matrix must be {n} x {n}")
    try:
        ginv = linalg.inverse(g)
    except linalg.SingularMatrixError:
        raise ValueError("gauge matrix is singular") from None
    out = {}
    for b in lie.basis(n):
        m = LieElem.basis_element(n, b).to_matrix()
        out[b] = LieElem.from_matrix(n, linalg.matmul(linalg.matmul(g, m), ginv))
    return out


def transform(r: Tensor2, kind: str, param) -> Tensor2:
    """Apply an equivalence transform.

    * ``"gauge"``: ``param`` is an invertible constant matrix ``G``; applies
      ``Ad_G (x) Ad_G``.
    * ``"rescale"``: multiplies by the nonzero constant ``param``.
    * ``"shift"``: substitutes ``x -> x + a``, ``y -> y + a`` for ``a = param``.
    """
    if kind == "gauge":
        images = _adjoint_images(r.n, param)
        out: dict = {}
        for (a, b), v in r.entries.items():
            for p, cp in images[a].coeffs.items():
                for q, cq in images[b].coeffs.items():
                    term = v * (cp * cq)
                    out[(p, q)] = out[(p, q)] + term if (p, q) in out else term
        return Tensor2(r.n, out)
    if kind == "rescale":
        if not param:
            raise ValueError("rescaling constant must be nonzero")
        return r * param
    if kind == "shift":
        return r.map_coeffs(lambda v: v.shift({"x": param, "y": param}))
    raise ValueError(f"unknown transform {kind!r}")


# -- the cobracket ---------------------------------------------------------

def _acc_tensor2(n: int, acc: _Accumulator) -> Tensor2:
    return Tensor2._raw(n, acc.result())


def cobracket(f: LoopPoly, r: Tensor2, check_regular: bool = True) -> Tensor2:
    """``[f(x) (x) 1 + 1 (x) f(y), r(x, y)]``, checked to be free of ``1/(x-y)``."""
    n = r.n
    table = lie.structure_constants(n)
    acc = _Accumulator(("x", "y"))
    for k, elem in f.items():
        if elem.n != n:
            raise ValueError("mismatched ranks")
        xk = MLaurent._raw(("x", "y"), {(k, 0): Fraction(1)})
        yk = MLaurent._raw(("x", "y"), {(0, k): Fraction(1)})
        for g, cg in elem.coeffs.items():
            for (a, b), v in r.entries.items():
                for s, c in table.get((g, a), ()):
                    acc.add((s, b), v.num * xk, v.den, cg * c)
                for s, c in table.get((g, b), ()):
                    acc.add((a, s), v.num * yk, v.den, cg * c)
    out = _acc_tensor2(n, acc)
    if check_regular:
        for key, v in out.sorted_items():
            if v.den:
                raise NonRegularError(
                    f"cobracket entry {key[0]}*{key[1]} keeps the pole {v}")
    return out


def casimir_invariance_defect(n: int, f: LieElem) -> dict:
    """``[gamma, f (x) 1 + 1 (x) f]`` as a constant tensor (zero for sl_n)."""
    return lie.tensor_bracket_diagonal(lie.casimir(n), n, f)


# -- co-Jacobi (disabled by default) ---------------------------------------

COJACOBI_READINGS = ("left", "right")


def _theta_terms(r: Tensor2, power: int, b: BasisIndex) -> Tensor2:
    return cobracket({power: LieElem.basis_element(r.n, b)}, r)


def _coeff_split(v: RatFun) -> list[tuple[int, int, Scalar]]:
    num = v.num.extend(("x", "y"))
    return [(e[0], e[1], c) for e, c in sorted(num.terms.items())]


def _cyclic(t: Tensor3) -> Tensor3:
    """``a1 (x) a2 (x) a3 -> a3 (x) a1 (x) a2`` with the variables following."""
    out = {}
    for (p, q, s), v in t.entries.items():
        out[(s, p, q)] = v.rename({"x3": "x1", "x1": "x2", "x2": "x3"})
    return Tensor3._raw(t.n, out)


def cojacobi_defect(f: LoopPoly, r: Tensor2, reading: str = "left", *, enabled: bool = False) -> Tensor3:
    """Cyclic sum of the iterated cobracket; zero for a Lie bialgebra.

    ``reading="left"`` uses ``(theta (x) id) o theta`` and ``reading="right"``
    uses ``(id (x) theta) o theta``; both are followed by the sum over cyclic
    permutations of the three factors.  The check is experimental and must be
    switched on with ``enabled=True``.
    """
    if not enabled:
        raise RuntimeError("the co-Jacobi check is disabled; pass enabled=True to run it")
    if reading not in COJACOBI_READINGS:
        raise ValueError(f"reading must be one of {COJACOBI_READINGS}")
    first = cobracket(f, r)
    total: dict = {}
    names = ("x1", "x2", "x3")
    for (a, b), v in first.entries.items():
        for i, j, c in _coeff_split(v):
            if reading == "left":
                inner = _theta_terms(r, i, a).rename({"x": "x1", "y": "x2"})
                outer = MLaurent._raw(names, {(0, 0, j): c})
                for (p, q), w in inner.entries.items():
                    key = (p, q, b)
                    term = w * RatFun._raw(outer, ())
                    total[key] = total[key] + term if key in total else term
            else:
                inner = _theta_terms(r, j, b).rename({"x": "x2", "y": "x3"})
                outer = MLaurent._raw(names, {(i, 0, 0): c})
                for (p, q), w in inner.entries.items():
                    key = (a, p, q)
                    term = w * RatFun._raw(outer, ())
                    total[key] = total[key] + term if key in total else term
    t = Tensor3(r.n, total)
    t1 = _cyclic(t)
    return t + t1 + _cyclic(t1)

"""The Lie algebra sl_n with its trace form, Casimir element and Cartan bases.

Basis convention: all ``E(i, j)`` (matrix units, ``i != j``) in lexicographic
order, followed by ``H(1), ..., H(n-1)`` where ``H(k) = diag(.., 1, -1, ..)``
with the ``1`` in position ``k``.

Constant tensors (``Tensor2Const``) are plain dicts mapping pairs of
:class:`BasisIndex` to nonzero scalars.

The bilinear form is the trace form ``tr(ab)``.  The Killing form of sl_n is
``2n`` times the trace form; every statement used here is invariant under that
constant rescaling.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, NamedTuple, Tuple

from . import linalg
from .scalars import Scalar, zeta


class BasisIndex(NamedTuple):
    """``("e", i, j)`` for the matrix unit e_{i,j}, ``("h", k, 0)`` for h_k."""

    kind: str
    i: int
    j: int = 0

    def __str__(self) -> str:
        if self.kind == "e":
            return f"e_{self.i}_{self.j}"
        return f"h_{self.i}"

    @classmethod
    def parse(cls, text: str) -> "BasisIndex":
        parts = text.split("_")
        try:
            if parts[0] == "e" and len(parts) == 3:
                i, j = int(parts[1]), int(parts[2])
                if str(i) == parts[1] and str(j) == parts[2] and i != j:
                    return cls("e", i, j)
            elif parts[0] == "h" and len(parts) == 2:
                k = int(parts[1])
                if str(k) == parts[1]:
                    return cls("h", k, 0)
        except ValueError:
            pass
        raise ValueError(f"malformed basis index {text!r}")

    def valid_for(self, n: int) -> bool:
        if self.kind == "e":
            return 1 <= self.i <= n and 1 <= self.j <= n and self.i != self.j
        return self.kind == "h" and 1 <= self.i <= n - 1 and self.j == 0


def E(i: int, j: int) -> BasisIndex:
    return BasisIndex("e", i, j)


def H(k: int) -> BasisIndex:
    return BasisIndex("h", k, 0)


ConstTensor = Dict[Tuple[BasisIndex, BasisIndex], Scalar]


@lru_cache(maxsize=None)
def basis(n: int) -> tuple[BasisIndex, ...]:
    if n < 2:
        raise ValueError("sl_n requires n >= 2")
    es = [E(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    return tuple(es + [H(k) for k in range(1, n)])


@lru_cache(maxsize=None)
def basis_position(n: int) -> dict[BasisIndex, int]:
    return {b: p for p, b in enumerate(basis(n))}


def dim(n: int) -> int:
    return n * n - 1


# -- matrices -----------------------------------------------------------

def unit_matrix(b: BasisIndex) -> dict[tuple[int, int], int]:
    """Sparse matrix ``{(row, col): value}`` (1-based) of a basis element."""
    if b.kind == "e":
        return {(b.i, b.j): 1}
    return {(b.i, b.i): 1, (b.i + 1, b.i + 1): -1}


def coords_from_matrix(n: int, m: Mapping[tuple[int, int], Scalar]) -> dict[BasisIndex, Scalar]:
    """Basis coordinates of a traceless matrix given sparsely."""
    out: dict[BasisIndex, Scalar] = {}
    diag = [Fraction(0)] * (n + 1)
    for (i, j), c in m.items():
        if not c:
            continue
        if i == j:
            diag[i] = diag[i] + c
        else:
            out[E(i, j)] = out.get(E(i, j), 0) + c
    acc: Scalar = Fraction(0)
    for k in range(1, n):
        acc = acc + diag[k]
        if acc:
            out[H(k)] = acc
    if acc + diag[n]:
        raise ValueError("matrix is not traceless")
    return {b: c for b, c in out.items() if c}


class LieElem:
    """An element of sl_n stored as sparse basis coordinates."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Mapping[BasisIndex, Scalar] | None = None):
        self.n = n
        self.coeffs = {b: c for b, c in (coeffs or {}).items() if c}
        for b in self.coeffs:
            if not b.valid_for(n):
                raise ValueError(f"{b} is not a basis index of sl_{n}")

    @classmethod
    def basis_element(cls, n: int, b: BasisIndex, c: Scalar = 1) -> "LieElem":
        return cls(n, {b: c})

    @classmethod
    def from_matrix(cls, n: int, m) -> "LieElem":
        """Build from a dense n x n matrix (list of rows) or a sparse dict."""
        if not isinstance(m, Mapping):
            m = {(i + 1, j + 1): m[i][j] for i in range(n) for j in range(n)}
        return cls(n, coords_from_matrix(n, m))

    def to_matrix(self) -> list[list[Scalar]]:
        out: list[list[Scalar]] = [[Fraction(0)] * self.n for _ in range(self.n)]
        for b, c in self.coeffs.items():
            for (i, j), v in unit_matrix(b).items():
                out[i - 1][j - 1] = out[i - 1][j - 1] + c * v
        return out

    def _check(self, other: "LieElem") -> None:
        if not isinstance(other, LieElem):
            raise TypeError("expected LieElem")
        if other.n != self.n:
            raise ValueError(f"mismatched ranks sl_{self.n} and sl_{other.n}")

    def __add__(self, other: "LieElem") -> "LieElem":
        self._check(other)
        out = dict(self.coeffs)
        for b, c in other.coeffs.items():
            out[b] = out.get(b, 0) + c
        return LieElem(self.n, out)

    def __neg__(self) -> "LieElem":
        return LieElem(self.n, {b: -c for b, c in self.coeffs.items()})

    def __sub__(self, other: "LieElem") -> "LieElem":
        return self + (-other)

    def __mul__(self, c: Scalar) -> "LieElem":
        return LieElem(self.n, {b: v * c for b, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElem):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        terms = " + ".join(f"({c})*{b}" for b, c in sorted(self.coeffs.items()))
        return f"LieElem(n={self.n}: {terms or '0'})"


# -- structure constants and the trace form -----------------------------

@lru_cache(maxsize=None)
def structure_constants(n: int) -> dict[tuple[BasisIndex, BasisIndex], tuple[tuple[BasisIndex, int], ...]]:
    """``[a, b]`` for every pair of basis elements, as sorted coefficient tuples."""
    table = {}
    for a in basis(n):
        ma = unit_matrix(a)
        for b in basis(n):
            mb = unit_matrix(b)
            comm: dict[tuple[int, int], int] = {}
            for (i, k), u in ma.items():
                for (k2, j), v in mb.items():
                    if k == k2:
                        comm[(i, j)] = comm.get((i, j), 0) + u * v
            for (i, k), u in mb.items():
                for (k2, j), v in ma.items():
                    if k == k2:
                        comm[(i, j)] = comm.get((i, j), 0) - u * v
            coords = coords_from_matrix(n, comm)
            if coords:
                table[(a, b)] = tuple(sorted((c, int(v)) for c, v in coords.items()))
    return table


def basis_bracket(n: int, a: BasisIndex, b: BasisIndex) -> tuple[tuple[BasisIndex, int], ...]:
    return structure_constants(n).get((a, b), ())


def bracket(a: LieElem, b: LieElem) -> LieElem:
    """The commutator ``[a, b] = ab - ba`` expressed in the basis."""
    a._check(b)
    table = structure_constants(a.n)
    out: dict[BasisIndex, Scalar] = {}
    for p, cp in a.coeffs.items():
        for q, cq in b.coeffs.items():
            for r, v in table.get((p, q), ()):
                out[r] = out.get(r, 0) + cp * cq * v
    return LieElem(a.n, out)


@lru_cache(maxsize=None)
def gram(n: int) -> dict[tuple[BasisIndex, BasisIndex], int]:
    """Nonzero entries of the trace-form Gram matrix ``tr(b_p b_q)``."""
    g: dict[tuple[BasisIndex, BasisIndex], int] = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                g[(E(i, j), E(j, i))] = 1
    for k in range(1, n):
        g[(H(k), H(k))] = 2
        if k + 1 < n:
            g[(H(k), H(k + 1))] = -1
            g[(H(k + 1), H(k))] = -1
    return g


@lru_cache(maxsize=None)
def gram_inverse(n: int) -> dict[tuple[BasisIndex, BasisIndex], Fraction]:
    """Nonzero entries of the inverse Gram matrix.

    The Cartan block is the inverse of the A_{n-1} Cartan matrix,
    ``min(k, l) * (n - max(k, l)) / n``.
    """
    g: dict[tuple[BasisIndex, BasisIndex], Fraction] = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                g[(E(i, j), E(j, i))] = Fraction(1)
    for k in range(1, n):
        for l in range(1, n):
            g[(H(k), H(l))] = Fraction(min(k, l) * (n - max(k, l)), n)
    return g


@lru_cache(maxsize=None)
def _gram_rows(n: int, inverse: bool) -> dict[BasisIndex, tuple[tuple[BasisIndex, Scalar], ...]]:
    g = gram_inverse(n) if inverse else gram(n)
    rows: dict[BasisIndex, list] = {}
    for (p, q), v in g.items():
        rows.setdefault(p, []).append((q, v))
    return {p: tuple(sorted(r)) for p, r in rows.items()}


def trace_form(a: LieElem, b: LieElem) -> Scalar:
    """``tr(ab)`` for the represented matrices."""
    a._check(b)
    rows = _gram_rows(a.n, False)
    total: Scalar = Fraction(0)
    for p, cp in a.coeffs.items():
        for q, v in rows[p]:
            cq = b.coeffs.get(q)
            if cq:
                total = total + cp * cq * v
    return total


def dual(n: int, b: BasisIndex) -> LieElem:
    """The trace-dual basis vector ``x^b`` with ``tr(x^b x_c) = delta_{bc}``."""
    return LieElem(n, dict(_gram_rows(n, True)[b]))


def dual_terms(n: int, b: BasisIndex) -> tuple[tuple[BasisIndex, Scalar], ...]:
    return _gram_rows(n, True)[b]


def gram_terms(n: int, b: BasisIndex) -> tuple[tuple[BasisIndex, Scalar], ...]:
    return _gram_rows(n, False)[b]


def casimir(n: int) -> ConstTensor:
    """The Casimir element ``sum_a x_a (x) x^a`` for the trace form."""
    out: ConstTensor = {}
    for a in basis(n):
        for b, v in dual_terms(n, a):
            out[(a, b)] = out.get((a, b), 0) + v
    return {k: v for k, v in out.items() if v}


# -- the Cartan bases built from roots of unity -------------------------

def g_basis(n: int) -> list[LieElem]:
    """``g_j = diag(1, zeta^j, ..., zeta^(j(n-1)))`` for ``j = 1..n-1``."""
    out = []
    for j in range(1, n):
        diag = {(a + 1, a + 1): zeta(n, j * a) for a in range(n)}
        out.append(LieElem(n, coords_from_matrix(n, diag)))
    return out


def g_dual(n: int) -> list[LieElem]:
    """Trace-dual basis of the Cartan subalgebra to :func:`g_basis`.

    Computed by inverting the Gram matrix of the ``g_j``; equals
    ``(1/n) g_{n-j}`` (checked in the test suite).
    """
    gs = g_basis(n)
    m = len(gs)
    gmat = [[trace_form(gs[i], gs[j]) for j in range(m)] for i in range(m)]
    ginv = linalg.inverse(gmat)
    out = []
    for i in range(m):
        acc = LieElem(n)
        for k in range(m):
            if ginv[i][k]:
                acc = acc + gs[k] * ginv[i][k]
        out.append(acc)
    return out


def h_dual(n: int) -> list[LieElem]:
    """Trace-dual basis ``h_1*, ..., h_{n-1}*`` inside the Cartan subalgebra."""
    return [dual(n, H(k)) for k in range(1, n)]


# -- constant tensors ----------------------------------------------------

def tensor_from_pairs(pairs: Iterable[tuple[LieElem, LieElem, Scalar]]) -> ConstTensor:
    """``sum c * (a (x) b)`` for LieElem pairs, expanded in the basis."""
    out: ConstTensor = {}
    for a, b, c in pairs:
        for p, cp in a.coeffs.items():
            for q, cq in b.coeffs.items():
                out[(p, q)] = out.get((p, q), 0) + c * cp * cq
    return {k: v for k, v in out.items() if v}


def wedge(a: LieElem, b: LieElem) -> ConstTensor:
    """``a ^ b = a (x) b - b (x) a``."""
    return tensor_from_pairs([(a, b, 1), (b, a, -1)])


def add_tensors(*ts: Mapping) -> ConstTensor:
    out: dict = {}
    for t in ts:
        for k, v in t.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def scale_tensor(t: Mapping, c: Scalar) -> ConstTensor:
    return {k: v * c for k, v in t.items() if v * c}


def flip_factors(t: Mapping) -> ConstTensor:
    return {(b, a): v for (a, b), v in t.items()}


def tensor_bracket_diagonal(t: Mapping, n: int, f: LieElem) -> ConstTensor:
    """``[t, f (x) 1 + 1 (x) f]`` for a constant 2-tensor ``t``."""
    out: dict = {}
    table = structure_constants(n)
    for (a, b), v in t.items():
        for g, cg in f.coeffs.items():
            for r, s in table.get((a, g), ()):
                out[(r, b)] = out.get((r, b), 0) + v * cg * s
            for r, s in table.get((b, g), ()):
                out[(a, r)] = out.get((a, r), 0) + v * cg * s
    return {k: v for k, v in out.items() if v}


def tensor_to_map(t: Mapping, n: int) -> list[list]:
    """Matrix of ``c -> sum tr(a c) b`` for ``t = sum a (x) b``.

    Column ``q`` holds the coordinates of the image of basis element ``q``.
    Coefficients may be scalars or any ring elements supporting ``+`` and
    ``*`` with scalars.
    """
    pos = basis_position(n)
    d = dim(n)
    out: list[list] = [[Fraction(0)] * d for _ in range(d)]
    for (a, b), v in t.items():
        for c, g in gram_terms(n, a):
            row, col = pos[b], pos[c]
            term = v * g
            out[row][col] = out[row][col] + term if out[row][col] else term
    return out


def map_to_tensor(m, n: int) -> dict:
    """Inverse of :func:`tensor_to_map`: ``sum_c x^c (x) m(x_c)``."""
    bs = basis(n)
    out: dict = {}
    for col, c in enumerate(bs):
        image = [(bs[row], m[row][col]) for row in range(len(bs)) if m[row][col]]
        if not image:
            continue
        for a, g in dual_terms(n, c):
            for b, v in image:
                key = (a, b)
                term = v * g
                out[key] = out[key] + term if key in out else term
    return {k: v for k, v in out.items() if v}

"""Matrix triples, solution spaces, and the residue/evaluation pipeline.

A torsion-free sheaf of rank ``n`` near the singular point of a nodal or
cuspidal cubic is encoded by two ``n x m`` matrices (a *triple*).  Its
global sections of degree at most one form the space ``Sol`` of pairs
``(A, B)`` in sl_n with ``A + zB`` satisfying

* nodal:    ``A T0 = -x T0 C``  and  ``B Tinf = Tinf C``;
* cuspidal: ``B Tc = Tc D``     and  ``A Tc + B Te = (Te - x Tc) D``;

for some ``C`` (resp. ``D``) in gl_m.  The residue map ``res`` and the
evaluation map ``ev_y`` on ``Sol`` give ``r#(x, y) = ev_y o res^{-1}``, and
the trace form turns ``r#`` into the tensor ``r(x, y)``.

All linear algebra is exact over Q(x): systems are solved by fraction-free
elimination over Q[x] (:func:`rmatrix.linalg.bareiss_rref`).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Mapping, Sequence

from . import lie, linalg
from .lie import BasisIndex
from .linalg import UFrac
from .tensor_poly import DesignatedClassError, MLaurent, RatFun, Tensor2
from .upoly import UPoly, gcd

CurveKind = Literal["nodal", "cuspidal"]
CURVES: tuple[str, ...] = ("nodal", "cuspidal")


class SingularityError(ArithmeticError):
    """The residue map is not invertible over Q(x)."""


def check_curve(curve: str) -> str:
    if curve not in CURVES:
        raise ValueError(f"unknown curve kind {curve!r}; expected one of {CURVES}")
    return curve


Matrix = tuple[tuple[Fraction, ...], ...]


def _matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


@dataclass(frozen=True)
class MatTriple:
    """Gluing matrices of a torsion-free sheaf.

    ``first``/``second`` are ``(T0, Tinf)`` for a nodal curve and
    ``(Tc, Te)`` for a cuspidal one, each an ``n x m`` rational matrix.
    """

    n: int
    m: int
    curve: str
    first: Matrix
    second: Matrix

    def __post_init__(self):
        check_curve(self.curve)
        object.__setattr__(self, "first", _matrix(self.first))
        object.__setattr__(self, "second", _matrix(self.second))
        for mat in (self.first, self.second):
            if len(mat) != self.n or any(len(row) != self.m for row in mat):
                raise ValueError(f"triple matrices must be {self.n} x {self.m}")


def canonical_triple(n: int, curve: str) -> MatTriple:
    """The canonical simple triple with ``m = n + 1``.

    With ``L = [0 | I_n]`` and ``R = [I_n | 0]``: nodal ``(T0, Tinf) = (L, R)``,
    cuspidal ``(Tc, Te) = (R, L)``.
    """
    check_curve(curve)
    if n < 2:
        raise ValueError("canonical triples need n >= 2")
    m = n + 1
    left = [[Fraction(int(j == i + 1)) for j in range(m)] for i in range(n)]
    right = [[Fraction(int(j == i)) for j in range(m)] for i in range(n)]
    if curve == "nodal":
        return MatTriple(n, m, curve, left, right)
    return MatTriple(n, m, curve, right, left)


def euler_characteristic(deg: int, n: int, m: int) -> int:
    """Euler characteristic ``deg + (m - n)`` of a sheaf with the given data."""
    return deg + (m - n)


# -- conversions between Q(x) and the designated RatFun class ----------

def upoly_to_mlaurent(p: UPoly, var: str = "x", shift: int = 0) -> MLaurent:
    return MLaurent._raw((var,), {(k + shift,): c for k, c in enumerate(p.coeffs) if c})


def ufrac_to_ratfun(u: UFrac, var: str = "x") -> RatFun:
    """Convert ``num/den`` with ``den = x**k`` to a Laurent RatFun."""
    if not u.num:
        return RatFun.const(0)
    if not u.den.is_monomial():
        raise DesignatedClassError(f"denominator {u.den!r} is not a power of {var}")
    k = u.den.degree
    return RatFun._raw(upoly_to_mlaurent(u.num, var, -k), ())


def ratfun_to_ufrac(r: RatFun, var: str = "x") -> UFrac:
    """Inverse of :func:`ufrac_to_ratfun` for univariate Laurent entries."""
    if r.den or set(r.num.used_vars()) - {var}:
        raise DesignatedClassError("expected a Laurent polynomial in one variable")
    num = r.num.extend((var,)) if r.num.terms else MLaurent._raw((var,), {})
    if not num.terms:
        return UFrac(0)
    low = min(e[0] for e in num.terms)
    shift = min(low, 0)
    coeffs = [Fraction(0)] * (max(e[0] for e in num.terms) - shift + 1)
    for (e,), c in num.terms.items():
        coeffs[e - shift] = c
    return UFrac(UPoly(coeffs), UPoly.monomial(-shift))


# -- the solution space --------------------------------------------------

def _basis_mats(n: int) -> list[dict[tuple[int, int], int]]:
    return [lie.unit_matrix(b) for b in lie.basis(n)]


def sol_system(triple: MatTriple) -> tuple[list[list[UPoly]], list[str]]:
    """The homogeneous linear system over Q[x] defining ``Sol``.

    Unknowns, in order: the entries of ``C`` (or ``D``) row by row, then the
    basis coordinates of ``A``, then those of ``B``.
    """
    n, m = triple.n, triple.m
    dim = lie.dim(n)
    mats = _basis_mats(n)
    nc = m * m
    ncols = nc + 2 * dim
    x = UPoly((0, 1))
    one = UPoly((1,))
    labels = [f"C_{i + 1}_{j + 1}" for i in range(m) for j in range(m)]
    labels += [f"A:{b}" for b in lie.basis(n)] + [f"B:{b}" for b in lie.basis(n)]

    def blank():
        return [[UPoly() for _ in range(ncols)] for _ in range(n * m)]

    def add_left(rows, offset, theta, coef):
        # coefficient rows for (X theta) where X = sum_p u_p M_p, u at offset
        for p, mp in enumerate(mats):
            for (i, k), v in mp.items():
                for j in range(m):
                    t = theta[k - 1][j]
                    if t:
                        r = (i - 1) * m + j
                        rows[r][offset + p] = rows[r][offset + p] + coef * (v * t)

    def add_right(rows, theta, coef):
        # coefficient rows for (theta C)
        for i in range(n):
            for k in range(m):
                t = theta[i][k]
                if t:
                    for j in range(m):
                        r = i * m + j
                        c = k * m + j
                        rows[r][c] = rows[r][c] + coef * t

    a_off, b_off = nc, nc + dim
    t1, t2 = triple.first, triple.second
    eq1, eq2 = blank(), blank()
    if triple.curve == "nodal":
        # A T0 + x T0 C = 0
        add_left(eq1, a_off, t1, one)
        add_right(eq1, t1, x)
        # B Tinf - Tinf C = 0
        add_left(eq2, b_off, t2, one)
        add_right(eq2, t2, -one)
    else:
        # B Tc - Tc D = 0
        add_left(eq1, b_off, t1, one)
        add_right(eq1, t1, -one)
        # A Tc + B Te - Te D + x Tc D = 0
        add_left(eq2, a_off, t1, one)
        add_left(eq2, b_off, t2, one)
        add_right(eq2, t2, -one)
        add_right(eq2, t1, x)
    rows = [r for r in eq1 + eq2 if any(r)]
    return rows, labels


@dataclass(frozen=True)
class SolBasis:
    """Basis of ``Sol``: each vector holds the A-coordinates then B-coordinates."""

    n: int
    curve: str
    vectors: tuple[tuple[UFrac, ...], ...]

    def __len__(self) -> int:
        return len(self.vectors)

    def split(self, v: Sequence[UFrac]) -> tuple[list[UFrac], list[UFrac]]:
        d = lie.dim(self.n)
        return list(v[:d]), list(v[d:])

    def elements(self) -> list[tuple[dict[BasisIndex, RatFun], dict[BasisIndex, RatFun]]]:
        """The pairs ``(A, B)`` as basis-coordinate dicts of RatFun in ``x``."""
        bs = lie.basis(self.n)
        out = []
        for v in self.vectors:
            a, b = self.split(v)
            out.append((
                {bs[i]: ufrac_to_ratfun(c) for i, c in enumerate(a) if c},
                {bs[i]: ufrac_to_ratfun(c) for i, c in enumerate(b) if c},
            ))
        return out

    def specialize(self, x0) -> list[list[Fraction]]:
        """Coordinate vectors at ``x = x0`` (over Q)."""
        return [[c(x0) for c in v] for v in self.vectors]


def _lcm(a: UPoly, b: UPoly) -> UPoly:
    return (a * b).exquo(gcd(a, b)).monic()


def sol_space(n: int, curve: str, triple: MatTriple | None = None) -> SolBasis:
    """Basis of ``Sol`` for the canonical (or a supplied) triple.

    The basis is read off the reduced echelon form: one vector per free
    (A, B)-coordinate, with that coordinate equal to 1.  If some entry would
    have a denominator other than a power of ``x``, the vector is scaled by
    the least common denominator instead, keeping entries polynomial.
    """
    check_curve(curve)
    triple = triple or canonical_triple(n, curve)
    if triple.curve != curve or triple.n != n:
        raise ValueError("triple does not match the requested rank and curve")
    rows, labels = sol_system(triple)
    nc = triple.m * triple.m
    dim = lie.dim(n)
    d, red, pivots = linalg.bareiss_rref(rows)
    ab_rows = [(r, p) for r, p in enumerate(pivots) if p >= nc]
    pivot_set = {p for _, p in ab_rows}
    free = [c for c in range(nc, nc + 2 * dim) if c not in pivot_set]
    vectors = []
    for f in free:
        v = [UFrac(0)] * (2 * dim)
        v[f - nc] = UFrac(1)
        for r, p in ab_rows:
            if red[r][f]:
                v[p - nc] = UFrac(-red[r][f], d)
        if any(c and not c.den.is_monomial() for c in v):
            scale = UPoly((1,))
            for c in v:
                scale = _lcm(scale, c.den)
            v = [c * UFrac(scale) for c in v]
        vectors.append(tuple(v))
    return SolBasis(n, curve, tuple(vectors))


# -- residue and evaluation ---------------------------------------------

def _res_coords(a: Sequence, b: Sequence, curve: str, xval) -> list:
    if curve == "nodal":
        return [(u + xval * w) / xval for u, w in zip(a, b)]
    return [u + xval * w for u, w in zip(a, b)]


def res_map(a: Mapping[BasisIndex, object], b: Mapping[BasisIndex, object], curve: str) -> dict[BasisIndex, RatFun]:
    """Residue of ``A + zB``: ``(A + xB)/x`` (nodal) or ``A + xB`` (cuspidal)."""
    check_curve(curve)
    x = RatFun.var("x")
    out = {}
    for k in set(a) | set(b):
        v = RatFun._coerce(a.get(k, 0)) + x * RatFun._coerce(b.get(k, 0))
        if curve == "nodal":
            v = v * MLaurent.var("x", -1)
        if v:
            out[k] = v
    return out


def ev_map(a: Mapping[BasisIndex, object], b: Mapping[BasisIndex, object], var: str = "y") -> dict[BasisIndex, RatFun]:
    """Evaluation of ``A + zB`` at ``z = var``, divided by ``(var - x)``."""
    y = RatFun.var(var)
    pole = RatFun.inv_diff(var, "x")
    out = {}
    for k in set(a) | set(b):
        v = (RatFun._coerce(a.get(k, 0)) + y * RatFun._coerce(b.get(k, 0))) * pole
        if v:
            out[k] = v
    return out


def res_matrix(sol: SolBasis) -> list[list[UFrac]]:
    """Columns are the residues of the basis vectors of ``Sol``."""
    x = UFrac(UPoly((0, 1)))
    d = lie.dim(sol.n)
    cols = []
    for v in sol.vectors:
        a, b = sol.split(v)
        cols.append(_res_coords(a, b, sol.curve, x))
    return [[cols[j][i] for j in range(len(cols))] for i in range(d)]


def res_determinant(n: int, curve: str) -> UFrac:
    return linalg.det(res_matrix(sol_space(n, curve)))


def _res_inverse(res: list[list[UFrac]]) -> list[list[UFrac]]:
    d = len(res)
    if any(len(row) != d for row in res):
        raise SingularityError("Sol does not have dimension dim(sl_n)")
    lam = []
    for j in range(d):
        s = UPoly((1,))
        for i in range(d):
            if res[i][j]:
                s = _lcm(s, res[i][j].den)
        lam.append(s)
    aug = []
    for i in range(d):
        row = []
        for j in range(d):
            e = res[i][j]
            row.append(e.num * lam[j].exquo(e.den) if e else UPoly())
        row += [UPoly((int(i == j),)) for j in range(d)]
        aug.append(row)
    den, red, pivots = linalg.bareiss_rref(aug)
    if pivots[:d] != list(range(d)):
        raise SingularityError("the residue map is singular over Q(x)")
    return [[UFrac(lam[i] * red[i][d + c], den) for c in range(d)] for i in range(d)]


def rsharp(n: int, curve: str, triple: MatTriple | None = None) -> list[list[RatFun]]:
    """Matrix of ``r#(x, y) = ev_y o res^{-1}`` in the sl_n basis.

    Column ``c`` holds the coordinates of ``r#(basis c)``.
    """
    sol = sol_space(n, curve, triple)
    d = lie.dim(n)
    if len(sol) != d:
        raise SingularityError(f"Sol has dimension {len(sol)}, expected {d}")
    rinv = _res_inverse(res_matrix(sol))
    pole = RatFun.inv_diff("y", "x")
    y = RatFun.var("y")
    out: list[list[RatFun]] = [[RatFun.const(0)] * d for _ in range(d)]
    for c in range(d):
        phi = [UFrac(0)] * (2 * d)
        for j, v in enumerate(sol.vectors):
            coef = rinv[j][c]
            if coef:
                phi = [p + coef * w if w else p for p, w in zip(phi, v)]
        a, b = phi[:d], phi[d:]
        for i in range(d):
            if a[i] or b[i]:
                val = (ufrac_to_ratfun(a[i]) + y * ufrac_to_ratfun(b[i])) * pole
                out[i][c] = val
    return out


def geometric_r(n: int, curve: str, triple: MatTriple | None = None) -> Tensor2:
    """The geometric r-matrix ``r(x, y) = sum_c x^c (x) r#(x_c)``."""
    m = rsharp(n, curve, triple)
    return Tensor2(n, lie.map_to_tensor(m, n))


# -- explicit nodal parametrization --------------------------------------

def nodal_block_parametrization(n: int, x0) -> list[list[Fraction]]:
    """Spanning vectors of nodal ``Sol`` at ``x = x0`` from the block form.

    ``A = -x [[D, 0], [a, beta]]`` and ``B = [[beta, b], [0, D]]`` with
    ``D`` in gl_{n-1}, ``beta = -tr D`` and row vectors ``a, b``.  The result
    uses the same coordinates as :meth:`SolBasis.specialize`.
    """
    x0 = Fraction(x0)
    k = n - 1
    params = []
    for i in range(k):
        for j in range(k):
            params.append(("D", i, j))
    params += [("a", j, 0) for j in range(k)] + [("b", j, 0) for j in range(k)]
    out = []
    for kind, i, j in params:
        dmat = [[Fraction(0)] * k for _ in range(k)]
        arow = [Fraction(0)] * k
        brow = [Fraction(0)] * k
        if kind == "D":
            dmat[i][j] = Fraction(1)
        elif kind == "a":
            arow[i] = Fraction(1)
        else:
            brow[i] = Fraction(1)
        beta = -sum(dmat[t][t] for t in range(k))
        amat = [[Fraction(0)] * n for _ in range(n)]
        bmat = [[Fraction(0)] * n for _ in range(n)]
        for r in range(k):
            for c in range(k):
                amat[r][c] = -x0 * dmat[r][c]
                bmat[r + 1][c + 1] = dmat[r][c]
        for c in range(k):
            amat[n - 1][c] = -x0 * arow[c]
            bmat[0][c + 1] = brow[c]
        amat[n - 1][n - 1] = -x0 * beta
        bmat[0][0] = beta
        ac = lie.LieElem.from_matrix(n, amat).coeffs
        bc = lie.LieElem.from_matrix(n, bmat).coeffs
        out.append([ac.get(b, Fraction(0)) for b in lie.basis(n)] +
                   [bc.get(b, Fraction(0)) for b in lie.basis(n)])
    return out

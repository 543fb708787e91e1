"""Laurent polynomials, restricted rational functions, and sl_n tensors over them.

* :class:`MLaurent` -- sparse multivariate Laurent polynomial with exact
  scalar coefficients.
* :class:`RatFun` -- ``num / prod (a - b)**m`` where every denominator factor
  is a difference of two variables.  Denominators that are powers of a single
  variable are absorbed into the Laurent numerator, so the stored form is
  canonical: the numerator is never divisible by a stored factor, and equal
  values have identical representations.
* :class:`Tensor2`, :class:`Tensor3` -- sparse tensors of sl_n basis indices
  with :class:`RatFun` entries.  A ``None`` slot in a :class:`Tensor3` key
  stands for the identity, which is how slot embeddings are represented.
"""
from __future__ import annotations

import operator
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import lie
from .lie import BasisIndex, ConstTensor
from .scalars import Cyclotomic, Scalar, inv

VARS: tuple[str, ...] = ("x", "y", "z", "x1", "x2", "x3")
_RANK = {v: i for i, v in enumerate(VARS)}


class DesignatedClassError(ValueError):
    """An expression left the designated class of denominators."""


class PoleError(ZeroDivisionError):
    """Evaluation hit a denominator factor that vanishes at the point."""


def _is_scalar(c) -> bool:
    return isinstance(c, (int, Fraction, Cyclotomic))


def _check_vars(names: Iterable[str]) -> tuple[str, ...]:
    names = tuple(names)
    for v in names:
        if v not in _RANK:
            raise ValueError(f"unknown variable {v!r}; allowed: {', '.join(VARS)}")
    if len(set(names)) != len(names):
        raise ValueError(f"repeated variable in {names}")
    return names


def _sorted_vars(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=_RANK.__getitem__))


_add_exp = operator.add


def _exp_add(e1: tuple, e2: tuple) -> tuple:
    return tuple(map(_add_exp, e1, e2))


class MLaurent:
    """Sparse Laurent polynomial in named variables.

    ``vars`` is kept in the fixed global order ``x, y, z, x1, x2, x3``.
    Variables that no term uses may be present; equality and hashing ignore
    them.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Iterable[str] = (), terms: Mapping[tuple, Scalar] | None = None):
        names = _check_vars(vars)
        order = _sorted_vars(names)
        terms = terms or {}
        if order != names:
            perm = [names.index(v) for v in order]
            terms = {tuple(e[p] for p in perm): c for e, c in terms.items()}
        self.vars = order
        clean = {}
        for e, c in terms.items():
            if len(e) != len(order):
                raise ValueError("exponent vector length does not match variables")
            if c:
                clean[tuple(int(k) for k in e)] = c if not isinstance(c, int) else Fraction(c)
        self.terms = clean

    @classmethod
    def _raw(cls, vars: tuple[str, ...], terms: dict) -> "MLaurent":
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    @classmethod
    def const(cls, c: Scalar) -> "MLaurent":
        return cls((), {(): c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MLaurent":
        return cls((name,), {(power,): 1})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], c: Scalar = 1) -> "MLaurent":
        names = _sorted_vars(exps)
        return cls(names, {tuple(exps[v] for v in names): c})

    # -- alignment -----------------------------------------------------
    def extend(self, names: Sequence[str]) -> "MLaurent":
        """Re-express over ``names`` (a superset of the used variables)."""
        names = tuple(names)
        if names == self.vars:
            return self
        idx = []
        for v in names:
            idx.append(self.vars.index(v) if v in self.vars else -1)
        used = set(self.used_vars())
        if not used <= set(names):
            raise ValueError(f"cannot drop variables {sorted(used - set(names))}")
        terms = {tuple(e[i] if i >= 0 else 0 for i in idx): c for e, c in self.terms.items()}
        return MLaurent._raw(names, terms)

    def used_vars(self) -> tuple[str, ...]:
        used = [v for k, v in enumerate(self.vars) if any(e[k] for e in self.terms)]
        return tuple(used)

    def trim(self) -> "MLaurent":
        used = self.used_vars()
        return self if used == self.vars else self.extend(used)

    @staticmethod
    def _align(a: "MLaurent", b: "MLaurent") -> tuple["MLaurent", "MLaurent"]:
        if a.vars == b.vars:
            return a, b
        names = _sorted_vars(a.vars + b.vars)
        return a.extend(names), b.extend(names)

    @staticmethod
    def _coerce(o) -> "MLaurent":
        if isinstance(o, MLaurent):
            return o
        if _is_scalar(o):
            return MLaurent.const(o)
        raise TypeError(f"cannot combine MLaurent with {type(o).__name__}")

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other) -> "MLaurent":
        if isinstance(other, RatFun):
            return NotImplemented
        a, b = self._align(self, self._coerce(other))
        terms = dict(a.terms)
        for e, c in b.terms.items():
            v = terms.get(e)
            if v is None:
                terms[e] = c
            else:
                v = v + c
                if v:
                    terms[e] = v
                else:
                    del terms[e]
        return MLaurent._raw(a.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MLaurent":
        return MLaurent._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MLaurent":
        if isinstance(other, RatFun):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MLaurent":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MLaurent":
        if isinstance(other, RatFun):
            return NotImplemented
        if _is_scalar(other):
            if not other:
                return MLaurent._raw(self.vars, {})
            return MLaurent._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        a, b = self._align(self, self._coerce(other))
        terms: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = _exp_add(e1, e2)
                v = terms.get(e)
                terms[e] = c1 * c2 if v is None else v + c1 * c2
        return MLaurent._raw(a.vars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MLaurent":
        if k < 0:
            if len(self.terms) != 1:
                raise DesignatedClassError("only monomials have Laurent inverses")
            (e, c), = self.terms.items()
            return MLaurent._raw(self.vars, {tuple(x * k for x in e): inv(c) ** (-k)})
        result = MLaurent.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFun):
            return NotImplemented
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._align(self, o)
        return a.terms == b.terms

    def __hash__(self) -> int:
        t = self.trim()
        return hash((t.vars, frozenset(t.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"MLaurent({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.vars, e) if k
            )
            if not mono:
                parts.append(f"({c})")
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    # -- structure -----------------------------------------------------
    def exponent_range(self, name: str) -> tuple[int, int] | None:
        if name not in self.vars or not self.terms:
            return (0, 0) if self.terms else None
        k = self.vars.index(name)
        es = [e[k] for e in self.terms]
        return min(es), max(es)

    def coefficient(self, name: str, power: int) -> "MLaurent":
        """Coefficient of ``name**power`` (a Laurent polynomial without ``name``)."""
        if name not in self.vars:
            return self if power == 0 else MLaurent._raw(self.vars, {})
        k = self.vars.index(name)
        rest = self.vars[:k] + self.vars[k + 1:]
        terms = {e[:k] + e[k + 1:]: c for e, c in self.terms.items() if e[k] == power}
        return MLaurent._raw(rest, terms)

    def rename(self, mapping: Mapping[str, str]) -> "MLaurent":
        """Rename variables; names mapped together have their exponents added."""
        new_names = [mapping.get(v, v) for v in self.vars]
        _check_vars(set(new_names))
        target = _sorted_vars(new_names)
        pos = [target.index(v) for v in new_names]
        terms: dict = {}
        for e, c in self.terms.items():
            ne = [0] * len(target)
            for p, k in zip(pos, e):
                ne[p] += k
            ne = tuple(ne)
            terms[ne] = terms.get(ne, 0) + c
        return MLaurent._raw(target, {e: c for e, c in terms.items() if c})

    def evaluate(self, point: Mapping[str, Scalar]):
        """Substitute scalar values for some variables.

        Returns a scalar when every used variable is assigned, otherwise a
        Laurent polynomial in the remaining variables.
        """
        keep = [k for k, v in enumerate(self.vars) if v not in point]
        vals = [(k, point[v]) for k, v in enumerate(self.vars) if v in point]
        for k, val in vals:
            if val == 0 and any(e[k] < 0 for e in self.terms):
                raise PoleError(f"negative power of {self.vars[k]} evaluated at 0")
        terms: dict = {}
        for e, c in self.terms.items():
            v = c
            for k, val in vals:
                if e[k]:
                    v = v * (val ** e[k] if e[k] > 0 else inv(val) ** (-e[k]))
            key = tuple(e[k] for k in keep)
            terms[key] = terms.get(key, 0) + v
        out = MLaurent._raw(tuple(self.vars[k] for k in keep), {e: c for e, c in terms.items() if c})
        if not out.used_vars():
            return out.terms.get(tuple(0 for _ in keep), Fraction(0))
        return out

    def shift(self, name: str, a: Scalar) -> "MLaurent":
        """Substitute ``name -> name + a`` (requires no negative powers of ``name``)."""
        if not a or name not in self.vars:
            return self
        k = self.vars.index(name)
        if any(e[k] < 0 for e in self.terms):
            raise DesignatedClassError(f"cannot shift {name}: negative powers present")
        from math import comb

        terms: dict = {}
        for e, c in self.terms.items():
            d = e[k]
            for i in range(d + 1):
                ne = e[:k] + (i,) + e[k + 1:]
                terms[ne] = terms.get(ne, 0) + c * comb(d, i) * a ** (d - i)
        return MLaurent._raw(self.vars, {e: c for e, c in terms.items() if c})

    def substitute_diff_root(self, a: str, b: str) -> "MLaurent":
        """Set ``a := b`` (the remainder of division by ``a - b``)."""
        return self.rename({a: b})

    def exquo_diff(self, a: str, b: str) -> "MLaurent | None":
        """``self / (a - b)`` if the division is exact, else ``None``."""
        if not self.terms:
            return self
        if a not in self.vars and b not in self.vars:
            return None
        p = self.extend(_sorted_vars(self.vars + (a, b)))
        ka, kb = p.vars.index(a), p.vars.index(b)
        if p.substitute_diff_root(a, b).terms:
            return None
        low = min(e[ka] for e in p.terms)
        # group by exponent of a: c_k as dicts over the full exponent vector
        groups: dict[int, dict] = {}
        for e, c in p.terms.items():
            k = e[ka] - low
            base = e[:ka] + (0,) + e[ka + 1:]
            groups.setdefault(k, {})[base] = c
        d = max(groups)
        q: dict[int, dict] = {}
        cur: dict = dict(groups.get(d, {}))
        for k in range(d, 0, -1):
            q[k - 1] = cur
            nxt = dict(groups.get(k - 1, {}))
            for e, c in cur.items():
                e2 = e[:kb] + (e[kb] + 1,) + e[kb + 1:]
                v = nxt.get(e2, 0) + c
                if v:
                    nxt[e2] = v
                else:
                    nxt.pop(e2, None)
            cur = nxt
        if any(cur.values()):
            return None
        terms = {}
        for k, g in q.items():
            for e, c in g.items():
                if c:
                    terms[e[:ka] + (k + low,) + e[ka + 1:]] = c
        return MLaurent._raw(p.vars, terms)


# -- rational functions --------------------------------------------------

DenFactor = tuple  # (a, b) meaning (a - b) with a before b in VARS order


def _orient(a: str, b: str) -> tuple[tuple[str, str], int]:
    """Canonical factor for ``a - b`` and the sign relating them."""
    if a == b:
        raise DesignatedClassError("zero denominator factor")
    _check_vars((a, b))
    if _RANK[a] < _RANK[b]:
        return (a, b), 1
    return (b, a), -1


def _den_poly(den: Iterable[tuple[DenFactor, int]]) -> MLaurent:
    out = MLaurent.const(1)
    for (a, b), m in den:
        f = MLaurent.var(a) - MLaurent.var(b)
        out = out * f ** m
    return out


def _merge_den(d1: tuple, d2: tuple) -> tuple:
    if not d1:
        return d2
    if not d2:
        return d1
    m = dict(d1)
    for f, k in d2:
        m[f] = m.get(f, 0) + k
    return tuple(sorted(m.items()))


def _lcm_den(dens: Iterable[tuple]) -> tuple:
    m: dict = {}
    for d in dens:
        for f, k in d:
            if k > m.get(f, 0):
                m[f] = k
    return tuple(sorted(m.items()))


def _den_quotient(big: tuple, small: tuple) -> tuple:
    m = dict(big)
    for f, k in small:
        m[f] -= k
    return tuple(sorted((f, k) for f, k in m.items() if k))


class RatFun:
    """``num / prod(a - b)**m`` with canonical cancellation.

    ``den`` accepts a mapping whose keys are ``(a, b)`` pairs (the factor
    ``a - b``) or single variable names (absorbed into the numerator as a
    negative power).
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den: Mapping | Iterable | None = None):
        num = MLaurent._coerce(num) if not isinstance(num, MLaurent) else num
        factors: dict = {}
        items = den.items() if isinstance(den, Mapping) else (den or ())
        for key, m in items:
            if m < 0:
                raise DesignatedClassError("negative multiplicity")
            if not m:
                continue
            if isinstance(key, str):
                num = num * MLaurent.var(key, -m)
                continue
            f, sign = _orient(*key)
            if sign < 0 and m % 2:
                num = -num
            factors[f] = factors.get(f, 0) + m
        self.num, self.den = _normalize(num, tuple(sorted(factors.items())))

    @classmethod
    def _raw(cls, num: MLaurent, den: tuple) -> "RatFun":
        r = object.__new__(cls)
        r.num = num
        r.den = den
        return r

    @classmethod
    def make(cls, num: MLaurent, den: tuple) -> "RatFun":
        """Build from a canonical-orientation den tuple, normalizing."""
        r = object.__new__(cls)
        r.num, r.den = _normalize(num, den)
        return r

    @classmethod
    def var(cls, name: str) -> "RatFun":
        return cls._raw(MLaurent.var(name), ())

    @classmethod
    def const(cls, c: Scalar) -> "RatFun":
        return cls._raw(MLaurent.const(c), ())

    @classmethod
    def inv_diff(cls, a: str, b: str, m: int = 1) -> "RatFun":
        """``1 / (a - b)**m``."""
        return cls(MLaurent.const(1), {(a, b): m})

    @staticmethod
    def _coerce(o) -> "RatFun":
        if isinstance(o, RatFun):
            return o
        if isinstance(o, MLaurent):
            return RatFun._raw(o, ())
        if _is_scalar(o):
            return RatFun._raw(MLaurent.const(o), ())
        raise TypeError(f"cannot combine RatFun with {type(o).__name__}")

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other) -> "RatFun":
        o = self._coerce(other)
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RatFun.make(self.num + o.num, self.den)
        den = _lcm_den((self.den, o.den))
        n1 = self.num * _den_poly(_den_quotient(den, self.den))
        n2 = o.num * _den_poly(_den_quotient(den, o.den))
        return RatFun.make(n1 + n2, den)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other) -> "RatFun":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFun":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatFun":
        if _is_scalar(other):
            if not other:
                return RatFun._raw(MLaurent._raw((), {}), ())
            return RatFun._raw(self.num * other, self.den)
        o = self._coerce(other)
        return RatFun.make(self.num * o.num, _merge_den(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFun":
        """Division by a scalar or by an element whose numerator factors into
        a monomial times designated differences."""
        if _is_scalar(other):
            return self * inv(other)
        o = self._coerce(other)
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        mono, diffs = designated_factorization(o.num)
        if mono is None:
            raise DesignatedClassError(f"cannot divide by {o.num}: not in the designated class")
        num = self.num * _den_poly(o.den) * mono ** -1
        return RatFun.make(num, _merge_den(self.den, diffs))

    def __rtruediv__(self, other) -> "RatFun":
        return self._coerce(other) / self

    def __pow__(self, k: int) -> "RatFun":
        if k < 0:
            return RatFun.const(1) / self ** (-k)
        out = RatFun.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.den == o.den and self.num == o.num

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def __repr__(self) -> str:
        return f"RatFun({self})"

    def __str__(self) -> str:
        if not self.den:
            return str(self.num)
        den = "*".join(f"({a}-{b})" + (f"^{m}" if m > 1 else "") for (a, b), m in self.den)
        return f"({self.num})/{den}"

    # -- structure -----------------------------------------------------
    def used_vars(self) -> tuple[str, ...]:
        names = set(self.num.used_vars())
        for (a, b), _ in self.den:
            names.update((a, b))
        return _sorted_vars(names)

    def is_constant(self) -> bool:
        return not self.den and not self.num.used_vars()

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError("not a constant")
        return next(iter(self.num.terms.values()), Fraction(0))

    def rename(self, mapping: Mapping[str, str]) -> "RatFun":
        num = self.num.rename(mapping)
        factors: dict = {}
        for (a, b), m in self.den:
            f, sign = _orient(mapping.get(a, a), mapping.get(b, b))
            if sign < 0 and m % 2:
                num = -num
            factors[f] = factors.get(f, 0) + m
        return RatFun.make(num, tuple(sorted(factors.items())))

    def evaluate(self, point: Mapping[str, Scalar]):
        """Substitute scalar values; raises :class:`PoleError` on a pole."""
        den_val: Scalar = Fraction(1)
        rest = []
        for (a, b), m in self.den:
            if a in point and b in point:
                d = point[a] - point[b]
                if not d:
                    raise PoleError(f"pole of ({a}-{b}) at the evaluation point")
                den_val = den_val * d ** m
            else:
                rest.append(((a, b), m))
        num = self.num.evaluate(point)
        if rest:
            if _is_scalar(num):
                num = MLaurent.const(num)
            return RatFun.make(num * inv(den_val), tuple(rest))
        if isinstance(num, MLaurent):
            return RatFun.make(num * inv(den_val), ())
        return num * inv(den_val)

    def shift(self, shifts: Mapping[str, Scalar]) -> "RatFun":
        """Substitute ``v -> v + a`` for each entry; differences must stay fixed."""
        for (a, b), _ in self.den:
            if shifts.get(a, 0) != shifts.get(b, 0):
                raise DesignatedClassError(f"shift moves the factor ({a}-{b})")
        num = self.num
        for v, a in shifts.items():
            num = num.shift(v, a)
        return RatFun.make(num, self.den)

    def pole_order(self, a: str, b: str) -> int:
        f, _ = _orient(a, b)
        return dict(self.den).get(f, 0)


def _normalize(num: MLaurent, den: tuple) -> tuple[MLaurent, tuple]:
    if not num.terms:
        return MLaurent._raw((), {}), ()
    if not den:
        return num, den
    out = []
    for (a, b), m in den:
        while m:
            q = num.exquo_diff(a, b)
            if q is None:
                break
            num = q
            m -= 1
        if m:
            out.append(((a, b), m))
    return num, tuple(out)


def designated_factorization(p: MLaurent) -> tuple[MLaurent | None, tuple]:
    """Write ``p = mono * prod (a - b)**m``; returns ``(None, ())`` if impossible."""
    if not p.terms:
        return None, ()
    names = p.used_vars()
    factors: dict = {}
    changed = True
    while changed and len(p.terms) > 1:
        changed = False
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                q = p.exquo_diff(a, b)
                if q is not None:
                    p = q
                    factors[(a, b)] = factors.get((a, b), 0) + 1
                    changed = True
    if len(p.terms) != 1:
        return None, ()
    return p, tuple(sorted(factors.items()))


X = RatFun.var("x")
Y = RatFun.var("y")


# -- tensors ---------------------------------------------------------------

class _Accumulator:
    """Sums products of RatFuns per key with a single normalization at the end."""

    def __init__(self, names: tuple[str, ...]):
        self.names = names
        self.data: dict = {}

    def add(self, key, num: MLaurent, den: tuple, c: Scalar = 1) -> None:
        if not c or not num.terms:
            return
        slot = self.data.setdefault(key, {}).setdefault(den, {})
        num = num.extend(self.names) if num.vars != self.names else num
        for e, v in num.terms.items():
            w = slot.get(e)
            slot[e] = v * c if w is None else w + v * c

    def result(self) -> dict:
        out = {}
        for key, by_den in self.data.items():
            parts = []
            for den, terms in by_den.items():
                terms = {e: c for e, c in terms.items() if c}
                if terms:
                    parts.append((den, MLaurent._raw(self.names, terms)))
            if not parts:
                continue
            if len(parts) == 1:
                val = RatFun.make(parts[0][1], parts[0][0])
            else:
                den = _lcm_den(d for d, _ in parts)
                num = MLaurent._raw(self.names, {})
                for d, p in parts:
                    num = num + p * _den_poly(_den_quotient(den, d))
                val = RatFun.make(num, den)
            if val.num.terms:
                out[key] = val
        return out


def _coerce_coeff(c) -> RatFun:
    return RatFun._coerce(c)


class _TensorBase:
    __slots__ = ("n", "entries")
    arity = 0

    def __init__(self, n: int, entries: Mapping | None = None):
        self.n = n
        clean = {}
        for k, v in (entries or {}).items():
            if len(k) != self.arity:
                raise ValueError(f"expected keys of length {self.arity}")
            for b in k:
                if b is not None and not b.valid_for(n):
                    raise ValueError(f"{b} is not a basis index of sl_{n}")
            v = _coerce_coeff(v)
            if v:
                clean[k] = v
        self.entries = clean

    @classmethod
    def _raw(cls, n: int, entries: dict):
        t = object.__new__(cls)
        t.n = n
        t.entries = entries
        return t

    def _check(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.n != self.n:
            raise ValueError("mismatched ranks")

    def __add__(self, other):
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            w = out.get(k)
            s = v if w is None else w + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return type(self)._raw(self.n, out)

    def __neg__(self):
        return type(self)._raw(self.n, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = _coerce_coeff(c)
        out = {}
        for k, v in self.entries.items():
            w = v * c
            if w:
                out[k] = w
        return type(self)._raw(self.n, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    __hash__ = None  # mutable-looking container semantics

    def is_zero(self) -> bool:
        return not any(v.num.terms for v in self.entries.values())

    def __len__(self) -> int:
        return len(self.entries)

    def rename(self, mapping: Mapping[str, str]):
        return type(self)._raw(self.n, {k: v.rename(mapping) for k, v in self.entries.items()})

    def map_coeffs(self, f):
        out = {}
        for k, v in self.entries.items():
            w = _coerce_coeff(f(v))
            if w:
                out[k] = w
        return type(self)._raw(self.n, out)

    def sorted_items(self):
        return sorted(self.entries.items(), key=lambda kv: tuple(
            (0, b) if b is not None else (1, ("", 0, 0)) for b in kv[0]))

    def __repr__(self) -> str:
        body = ", ".join(f"{'*'.join(str(b) if b else '1' for b in k)}: {v}" for k, v in self.sorted_items())
        return f"{type(self).__name__}(n={self.n}, {{{body}}})"


class Tensor2(_TensorBase):
    """Element of sl_n (x) sl_n with RatFun coefficients in ``x`` and ``y``."""

    __slots__ = ()
    arity = 2

    @classmethod
    def from_const(cls, n: int, t: Mapping, coeff=1) -> "Tensor2":
        c = _coerce_coeff(coeff)
        return cls(n, {k: c * v for k, v in t.items()})

    def evaluate(self, point: Mapping[str, Scalar]) -> ConstTensor:
        """Constant tensor at a point; every variable must be assigned."""
        out: dict = {}
        for k, v in self.entries.items():
            val = v.evaluate(point)
            if not _is_scalar(val):
                raise ValueError(f"variables {val.used_vars()} left unassigned")
            if val:
                out[k] = val
        return out

    def pole_order(self, a: str = "x", b: str = "y") -> int:
        return max((v.pole_order(a, b) for v in self.entries.values()), default=0)


class Tensor3(_TensorBase):
    """Element of a triple tensor product; ``None`` in a key is the identity."""

    __slots__ = ()
    arity = 3

    def pattern(self) -> frozenset[int] | None:
        """The set of occupied slots shared by all entries (1-based)."""
        pats = {frozenset(i + 1 for i, b in enumerate(k) if b is not None) for k in self.entries}
        if len(pats) > 1:
            raise ValueError("entries occupy different slot patterns")
        return next(iter(pats), None)


_SLOTS = {"12": (0, 1), "13": (0, 2), "23": (1, 2), "32": (2, 1)}


def embed(t: Tensor2, slots: str, vars: Mapping[str, str]) -> Tensor3:
    """Place ``t`` in a triple product.

    ``slots`` is one of ``"12", "13", "23", "32"``; the first tensor factor goes
    to the first named slot.  ``vars`` renames the coefficient variables, e.g.
    ``{"x": "x3", "y": "x2"}`` for ``r^{32}(x3, x2)``.
    """
    try:
        p, q = _SLOTS[str(slots)]
    except KeyError:
        raise ValueError(f"unknown slot specification {slots!r}") from None
    out = {}
    for (a, b), v in t.entries.items():
        key = [None, None, None]
        key[p] = a
        key[q] = b
        out[tuple(key)] = v.rename(vars)
    return Tensor3._raw(t.n, out)


def _bracket_into(acc: _Accumulator, u: Tensor3, v: Tensor3, sign: int = 1) -> None:
    if u.n != v.n:
        raise ValueError("mismatched ranks")
    if not u.entries or not v.entries:
        return
    pu, pv = u.pattern(), v.pattern()
    if len(pu) != 2 or len(pv) != 2 or len(pu & pv) != 1:
        raise ValueError(f"incompatible slot patterns {sorted(pu)} and {sorted(pv)}")
    s = next(iter(pu & pv)) - 1
    table = lie.structure_constants(u.n)
    den_cache: dict = {}
    ventries = list(v.entries.items())
    for ku, cu in u.entries.items():
        a = ku[s]
        nu = cu.num.extend(acc.names) if cu.num.vars != acc.names else cu.num
        for kv, cv in ventries:
            terms = table.get((a, kv[s]))
            if not terms:
                continue
            dk = (cu.den, cv.den)
            den = den_cache.get(dk)
            if den is None:
                den = den_cache[dk] = _merge_den(cu.den, cv.den)
            nv = cv.num.extend(acc.names) if cv.num.vars != acc.names else cv.num
            prod = nu * nv
            base = [ku[i] if ku[i] is not None else kv[i] for i in range(3)]
            for r, c in terms:
                base[s] = r
                acc.add(tuple(base), prod, den, c * sign)


TRIPLE_VARS = ("x1", "x2", "x3")


def bracket_slots(u: Tensor3, v: Tensor3) -> Tensor3:
    """Commutator of two slot embeddings sharing exactly one slot.

    ``[(a (x) b)^{12}, (c (x) d)^{13}] = [a, c] (x) b (x) d``, extended
    bilinearly.
    """
    return bracket_sum([(u, v)])


def bracket_sum(pairs: Iterable[tuple[Tensor3, Tensor3]]) -> Tensor3:
    """Sum of :func:`bracket_slots` over ``pairs`` with one final normalization."""
    pairs = list(pairs)
    names: set[str] = set()
    n = None
    for u, v in pairs:
        n = u.n if n is None else n
        for t in (u, v):
            for c in t.entries.values():
                names.update(c.num.vars)
    acc = _Accumulator(_sorted_vars(names))
    for u, v in pairs:
        _bracket_into(acc, u, v)
    return Tensor3._raw(n if n is not None else 0, acc.result())


def flip(t: Tensor2) -> Tensor2:
    """Swap the tensor factors and the variables ``x`` and ``y``."""
    return Tensor2._raw(t.n, {(b, a): v.rename({"x": "y", "y": "x"}) for (a, b), v in t.entries.items()})


def is_zero(t: _TensorBase) -> bool:
    return t.is_zero()

"""Command-line interface: ``rmatrix <command> ...``.

Exit codes: 0 on success, 1 when an identity check fails (the witness is
printed), 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import catalog, io, manin, sheaf, verify
from .tensor_poly import DesignatedClassError, PoleError, Tensor2

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    """Raised for unreadable or unsuitable input; maps to exit code 2."""


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load(path: str | None):
    try:
        text = sys.stdin.read() if path in (None, "-") else Path(path).read_text(encoding="utf-8")
    except OSError as ex:
        raise InputError(f"cannot read {path}: {ex.strerror or ex}") from None
    try:
        return io.parse(text)
    except io.SchemaError as ex:
        raise InputError(f"{path or '<stdin>'}: {ex}") from None


def _load_tensor2(path: str | None) -> Tensor2:
    v = _load(path)
    if not isinstance(v, Tensor2):
        raise InputError(f"{path or '<stdin>'}: expected a tensor2 document, got {io.kind_of(v)}")
    return v


def _point(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"--at expects 'x,y', got {text!r}")
    try:
        return Fraction(parts[0].strip()), Fraction(parts[1].strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--at expects two rationals, got {text!r}") from None


def _report(verdicts: list[verify.Verdict]) -> int:
    sys.stdout.write(io.serialize(verdicts))
    for v in verdicts:
        if not v.passed:
            print(f"FAIL {v.identity}: {v.witness}", file=sys.stderr)
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_FAIL


def cmd_compute(args) -> int:
    _emit(io.serialize(sheaf.geometric_r(args.n, args.curve)), args.out)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.catalog_command == "list":
        for name in catalog.names():
            print(name)
        return EXIT_OK
    try:
        entry = catalog.get(args.name, args.n)
    except KeyError as ex:
        raise InputError(ex.args[0]) from None
    _emit(io.serialize(entry.tensor), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    r = _load_tensor2(args.input)
    point = _point(args.at) if args.at else (Fraction(1), Fraction(2))
    return _report([verify.check(r, args.identity, point)])


def cmd_expand(args) -> int:
    r = _load_tensor2(args.input)
    s = manin.expand(r, args.order)
    if not s.shape_ok:
        print("note: principal parts differ from z^(-k-1) x^a", file=sys.stderr)
    _emit(io.serialize(s), args.out)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    v = _load(args.input)
    if isinstance(v, Tensor2):
        s = manin.expand(v, args.order)
    elif isinstance(v, manin.SeriesTensor):
        s = v
    else:
        raise InputError(f"expected a tensor2 or series document, got {io.kind_of(v)}")
    w = manin.w_basis(s)
    verdicts = [
        verify.Verdict("coisotropic", manin.coisotropy_check(w)),
        verify.Verdict("lagrangian_complement", manin.lagrangian_complement_check(w)),
    ]
    try:
        same = manin.dual_basis_reconstruct(w) == s
        verdicts.append(verify.Verdict("round_trip", same, None if same else "reconstructed series differs"))
    except manin.DualityError as ex:
        verdicts.append(verify.Verdict("round_trip", False, str(ex)))
    verdicts = [v if v.passed or v.witness else verify.Verdict(v.identity, False, "check failed")
                for v in verdicts]
    return _report(verdicts)


def cmd_compare(args) -> int:
    a, b = _load(args.a), _load(args.b)
    if io.kind_of(a) != io.kind_of(b) or io.kind_of(a) not in ("tensor2", "tensor3"):
        raise InputError("compare needs two tensor documents of the same kind")
    if a.n != b.n:
        return _report([verify.Verdict("equal", False, f"ranks differ: {a.n} vs {b.n}")])
    d = a - b
    return _report([verify.Verdict("equal", d.is_zero(), verify._witness(d))])


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rmatrix", description="Exact r-matrix construction and verification.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="build the geometric r-matrix of the canonical triple")
    c.add_argument("--curve", required=True, choices=sheaf.CURVES)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_compute)

    cat = sub.add_parser("catalog", help="list or emit closed-form solutions")
    csub = cat.add_subparsers(dest="catalog_command", required=True)
    csub.add_parser("list")
    emit = csub.add_parser("emit")
    emit.add_argument("name")
    emit.add_argument("--n", type=int, default=2)
    emit.add_argument("--out")
    cat.set_defaults(func=cmd_catalog)

    v = sub.add_parser("verify", help="check an identity on a tensor document")
    v.add_argument("--in", dest="input")
    v.add_argument("--identity", required=True, choices=("cybe", "gcybe", "skew", "nondeg"))
    v.add_argument("--at", help="evaluation point 'x,y' for nondeg (default 1,2)")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("expand", help="series expansion to a given order")
    e.add_argument("--in", dest="input")
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--out")
    e.set_defaults(func=cmd_expand)

    r = sub.add_parser("reconstruct", help="Manin-triple round trip")
    r.add_argument("--in", dest="input")
    r.add_argument("--order", type=int, default=6)
    r.set_defaults(func=cmd_reconstruct)

    cmp_ = sub.add_parser("compare", help="test whether two tensors are equal")
    cmp_.add_argument("--a", required=True)
    cmp_.add_argument("--b", required=True)
    cmp_.set_defaults(func=cmd_compare)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return EXIT_OK if ex.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except (InputError, ValueError, KeyError, DesignatedClassError, PoleError,
            manin.HigherOrderPoleError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Batch command-line front end over the matrix text format.

Every subcommand reads whitespace-separated decimal matrices (two dimension
tokens, then row-major entries), writes results to stdout or --out, and
reports diagnostics on stderr.  Exit codes: 0 success, 1 algorithm failure
(reserved for randomized engines), 2 mathematical precondition violation,
3 parse or I/O error.
"""

from __future__ import annotations

import argparse
import sys

from . import apps, oracle, relations
from .howell import howell_form
from .intmat import (
    DiagonalModulus,
    HermiteBasis,
    IntMat,
    ParseError,
    PreconditionError,
    format_matrix,
    matmul,
    parse_matrix,
    set_invariant_checks,
)
from .massager import MassagerFail, smith_massager

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PRECONDITION = 2
EXIT_IO = 3


def _read(path: str) -> IntMat:
    try:
        with open(path, "r", encoding="ascii") as fh:
            return parse_matrix(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _emit(mats: list[IntMat], out: str | None) -> None:
    # matrices are separated by exactly one blank line
    text = "\n\n".join(format_matrix(m).rstrip("\n") for m in mats) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        try:
            with open(out, "w", encoding="ascii") as fh:
                fh.write(text)
        except OSError as exc:
            raise ParseError(f"cannot write {out}: {exc}") from exc


def _diag_modulus(m: IntMat) -> DiagonalModulus:
    if not m.is_square():
        raise PreconditionError("modulus matrix must be square")
    for i in range(m.rows):
        for j in range(m.cols):
            if i != j and m[i, j] != 0:
                raise PreconditionError("modulus matrix must be diagonal")
    return DiagonalModulus([m[i, i] for i in range(m.rows)])


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="hnfkit",
                                  description="Hermite bases of integer relations lattices")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, needs_mod=False, needs_rhs=False):
        p.add_argument("--in", dest="inputs", action="append", default=[],
                       metavar="FILE", help="input matrix file (repeatable)")
        if needs_mod:
            p.add_argument("--mod", dest="mod", metavar="FILE", required=True,
                           help="modulus matrix file")
        if needs_rhs:
            p.add_argument("--rhs", dest="rhs", metavar="FILE", required=True,
                           help="right-hand-side matrix file")
        p.add_argument("--out", dest="out", metavar="FILE", default=None,
                       help="write output here instead of stdout")
        p.add_argument("--seed", dest="seed", type=int, default=None,
                       help="enable the randomized pivot fast path")
        p.add_argument("--epsilon", dest="epsilon", type=float, default=0.5,
                       help="failure-probability budget for massager engines")
        p.add_argument("--oracle", dest="use_oracle", action="store_true",
                       help="route through the naive reference path")
        p.add_argument("--debug-invariants", dest="debug", action="store_true",
                       help="enable the runtime assertion suite")
        return p

    common(sub.add_parser("hnf", help="Hermite basis of a full column rank matrix"))
    common(sub.add_parser("massager", help="reduced Smith massager of a nonsingular matrix"))
    common(sub.add_parser("relbasis", help="Hermite basis of a relations lattice"),
           needs_mod=True)
    ph = common(sub.add_parser("howell", help="Howell form and transform over Z/(N)"))
    ph.add_argument("modulus_n", type=int, metavar="N", help="the residue ring modulus")
    common(sub.add_parser("remainder", help="remainder of a matrix modulo a Hermite basis"),
           needs_mod=True)
    common(sub.add_parser("product-hnf", help="Hermite basis of a product (two --in files)"))
    common(sub.add_parser("intersect", help="basis of the intersection of two lattices"))
    common(sub.add_parser("crt", help="multivariable Chinese remainder solver"),
           needs_mod=True, needs_rhs=True)
    common(sub.add_parser("verify", help="re-check the invariants of a claimed result"),
           needs_mod=False)
    return top


def _one_input(args) -> IntMat:
    if len(args.inputs) != 1:
        raise ParseError("this subcommand needs exactly one --in file")
    return _read(args.inputs[0])


def _two_inputs(args) -> tuple[IntMat, IntMat]:
    if len(args.inputs) != 2:
        raise ParseError("this subcommand needs exactly two --in files")
    return _read(args.inputs[0]), _read(args.inputs[1])


def _run(args) -> int:
    if args.debug:
        set_invariant_checks(True)
    try:
        if args.command == "hnf":
            a = _one_input(args)
            h = oracle.naive_hnf(a) if args.use_oracle else apps.hnf(
                a, args.epsilon, seed=args.seed)
            _emit([h.mat], args.out)
        elif args.command == "massager":
            a = _one_input(args)
            mas = smith_massager(a, args.epsilon)
            _emit([mas.s.as_matrix(), mas.f], args.out)
        elif args.command == "relbasis":
            mod = _read(args.mod)
            f = _one_input(args)
            if args.use_oracle:
                h = relations.relations_basis_oracle(mod, f)
            else:
                from .hermite_basis import relations_hermite_basis
                h = relations_hermite_basis(mod, f, args.epsilon, seed=args.seed)
            _emit([h.mat], args.out)
        elif args.command == "howell":
            a = _one_input(args)
            res = howell_form(a, args.modulus_n)
            _emit([res.h, res.u], args.out)
        elif args.command == "remainder":
            mod = HermiteBasis(_read(args.mod))
            f = _one_input(args)
            if args.use_oracle:
                fbar = relations.remainder_with_respect_to(f, mod)
            else:
                fbar = apps.remainder_mod_hermite(f, mod, args.epsilon, seed=args.seed)
            _emit([fbar], args.out)
        elif args.command == "product-hnf":
            a, b = _two_inputs(args)
            if args.use_oracle:
                h = oracle.naive_hnf(matmul(a, b))
            else:
                h = apps.product_hnf(a, b, args.epsilon, seed=args.seed)
            _emit([h.mat], args.out)
        elif args.command == "intersect":
            a, b = _two_inputs(args)
            h = apps.lattice_intersection(a, b, args.epsilon, seed=args.seed)
            _emit([h.mat], args.out)
        elif args.command == "crt":
            mod = _diag_modulus(_read(args.mod))
            a = _one_input(args)
            b = _read(args.rhs)
            hval, x_p, hbar = apps.multivariable_crt(mod, a, b, args.epsilon,
                                                     seed=args.seed)
            _emit([IntMat([[hval]], 1, 1), x_p, hbar.mat], args.out)
        elif args.command == "verify":
            if len(args.inputs) not in (1, 3):
                raise ParseError("verify needs --in H.mat, optionally followed by "
                                 "--in S.mat --in F.mat")
            h = HermiteBasis(_read(args.inputs[0]))   # raises unless valid
            if len(args.inputs) == 3:
                s = _diag_modulus(_read(args.inputs[1]))
                f = _read(args.inputs[2])
                prod = matmul(h.mat, f)
                for row in prod.data:
                    for v, d in zip(row, s.diag):
                        if v % d != 0:
                            raise PreconditionError("claimed basis does not annihilate F modulo S")
            print("ok", file=sys.stderr)
        else:   # pragma: no cover
            raise ParseError(f"unknown command {args.command}")
    finally:
        if args.debug:
            set_invariant_checks(False)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _run(args)
    except MassagerFail as exc:
        print(f"fail: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

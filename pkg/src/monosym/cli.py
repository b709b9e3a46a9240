"""Command-line interface.

Exit codes: 0 success, 1 negative verdict or failed verification, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import oracle, tn
from .parser import DEFAULT_MAX_DEGREE, LoweringError, ParseError, parse_poly
from .polycore import render_terms, to_json_obj
from .symfunc import NotSymmetricError, repr_in_power_sums

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _poly(args):
    return parse_poly(args.expr, args.n, args.max_degree)


def cmd_check(args) -> int:
    verdict = tn.check_membership(_poly(args))
    if verdict:
        print(f"in T_{args.n}")
        return EXIT_OK
    detail = f" (term {verdict.witness})" if verdict.witness else ""
    print(f"NOT in T_{args.n}: {verdict.reason}{detail}")
    return EXIT_FAIL


def cmd_decompose(args) -> int:
    f = _poly(args)
    try:
        parts = tn.decompose_any(f)
    except tn.NotInTnError as exc:
        print(f"NOT in T_{args.n}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.verify:
        rebuilt = sum((dec.expand() for dec in parts), f * 0)
        if rebuilt != f:
            print("self-check failed: re-expanded decomposition differs from input", file=sys.stderr)
            return EXIT_FAIL
    if args.json:
        objs = [dec.to_json_obj() for dec in parts]
        print(json.dumps(objs[0] if len(objs) == 1 else objs))
    else:
        terms = [(pp.render() if pp.degree else "", c) for dec in parts for pp, c in dec.terms()]
        print(render_terms(terms))
    return EXIT_OK


def cmd_dim(args) -> int:
    proper = tn.dim_Tn(args.n, args.d)
    if not args.oracle:
        print(f"proper={proper}")
        return EXIT_OK
    kernel = oracle.dim_kernel(args.n, args.d)
    ok = kernel == proper
    print(f"proper={proper} kernel={kernel} {'OK' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_basis(args) -> int:
    basis = tn.enumerate_proper_products(args.n, args.d)
    if args.json:
        print(json.dumps([pp.to_json_obj() for pp in basis]))
    else:
        for pp in basis:
            print(pp.render())
    return EXIT_OK


def cmd_repr(args) -> int:
    try:
        E = repr_in_power_sums(_poly(args))
    except NotSymmetricError:
        print("input is not symmetric", file=sys.stderr)
        return EXIT_FAIL
    print(json.dumps(E.to_json_obj()) if args.json else E.render())
    return EXIT_OK


def cmd_expand(args) -> int:
    f = _poly(args)
    print(json.dumps(to_json_obj(f)) if args.json else str(f))
    return EXIT_OK


def cmd_verify(args) -> int:
    config = oracle.default_config(args.nmax, args.dmax, args.seed)
    if args.claims:
        wanted = [c.strip() for c in args.claims.split(",") if c.strip()]
        unknown = [c for c in wanted if c not in oracle.CLAIMS]
        if unknown:
            print(f"unknown claims: {', '.join(unknown)}; known: {', '.join(oracle.CLAIMS)}", file=sys.stderr)
            return EXIT_USAGE
        config = [e for e in config if e.claim in wanted]
    sink = open(args.jsonl, "w") if args.jsonl else None
    try:
        def progress(cert):
            if sink:
                sink.write(cert.to_json() + "\n")
            if cert.status == oracle.FAILED:
                print(f"FAILED {cert.claim} {cert.params}: {cert.evidence}", file=sys.stderr)

        certs = oracle.run_suite(config, progress)
    finally:
        if sink:
            sink.close()
    print(oracle.summary_table(certs))
    return EXIT_OK if all(c.ok for c in certs) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _ArgParser(prog="monosym", description="Monotypically supersymmetric polynomials.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    def with_expr(name, help_, func):
        s = sub.add_parser(name, help=help_)
        s.add_argument("-n", type=int, required=True, help="number of variables")
        s.add_argument("expr", help='polynomial expression, e.g. "p3^2 - p1*p5"')
        s.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
        s.set_defaults(func=func)
        return s

    with_expr("check", "membership test for T_n", cmd_check)
    s = with_expr("decompose", "coefficients on the proper-product basis", cmd_decompose)
    s.add_argument("--json", action="store_true")
    s.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True,
                   help="re-expand and compare with the input (default on)")
    s = with_expr("repr", "power-sum representation of a symmetric polynomial", cmd_repr)
    s.add_argument("--json", action="store_true")
    s = with_expr("expand", "print the expanded polynomial", cmd_expand)
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("dim", help="dimension of T_n^d")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-d", type=int, required=True)
    s.add_argument("--oracle", action="store_true", help="also compute the kernel dimension from scratch")
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("basis", help="ordered proper products of degree d")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-d", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("verify", help="run the verification suite")
    s.add_argument("--claims", help=f"comma-separated subset of: {', '.join(oracle.CLAIMS)}")
    s.add_argument("--nmax", type=int, default=6)
    s.add_argument("--dmax", type=int, default=12)
    s.add_argument("--seed", type=int, default=None, help="default: $MONOSYM_SEED or a fixed seed")
    s.add_argument("--jsonl", help="write one certificate per line to this file")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "n", 2) < (2 if args.command in ("dim", "basis") else 1):
        print("error: n is too small for this command", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (ParseError, LoweringError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

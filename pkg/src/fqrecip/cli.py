"""Command-line entry point.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or validation
error, 3 parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import FqError, ParseError, ValidationError
from .field import FieldSpec, check_d, eta_of
from .polyparse import format_element, format_poly, parse_field_spec, parse_poly
from .polyring import IrreduciblePoly, monic_irreducibles
from .residue import check_reciprocity, power_residue_symbol
from .rousseau import verify_proof
from .sweep import (
    DEFAULT_PROOF_CAP,
    SweepConfig,
    csv_header,
    format_record,
    proof_fields,
    run_sweep,
    select_ds,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3


def load_field(source: str) -> FieldSpec:
    """A path to a field-spec file, or the spec text itself."""
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            return parse_field_spec(fh.read())
    return parse_field_spec(source)


def _prime(text: str, spec: FieldSpec, name: str) -> IrreduciblePoly:
    f = parse_poly(text, spec)
    try:
        return IrreduciblePoly(f)
    except ValidationError as exc:
        raise ValidationError("%s = %s: not irreducible (%s)" % (name, format_poly(f), exc)) from None


def _d(spec: FieldSpec, text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise ValidationError("--d must be an integer, got %r" % text) from None
    check_d(spec, d)
    return d


def _el(spec, x):
    return format_element(spec, x.code)


def _emit(args, payload: dict, lines: list[str]):
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print("\n".join(lines))


def cmd_symbol(args) -> int:
    spec = load_field(args.field)
    d = _d(spec, args.d)
    a = parse_poly(args.a, spec)
    P = _prime(args.P, spec, "P")
    sym = power_residue_symbol(a, P, d)
    eta = eta_of(spec, d)
    value = "0" if sym.zero else _el(spec, sym.value)
    _emit(
        args,
        {"a": format_poly(a), "P": format_poly(P), "d": d, "zero": sym.zero,
         "value": value, "exponent": sym.exponent, "eta": _el(spec, eta)},
        ["value = %s" % value,
         "exponent = %s" % ("-" if sym.zero else sym.exponent),
         "eta = %s" % _el(spec, eta)],
    )
    return EXIT_OK


def cmd_reciprocity(args) -> int:
    spec = load_field(args.field)
    d = _d(spec, args.d)
    P, Q = _prime(args.P, spec, "P"), _prime(args.Q, spec, "Q")
    rc = check_reciprocity(P, Q, d)
    _emit(
        args,
        {"P": format_poly(P), "Q": format_poly(Q), "d": d,
         "symbol_PQ": _el(spec, rc.symbol_PQ.value), "symbol_QP": _el(spec, rc.symbol_QP.value),
         "lhs": _el(spec, rc.lhs), "rhs": _el(spec, rc.rhs), "pass": rc.passed},
        ["(P/Q)_d = %s" % _el(spec, rc.symbol_PQ.value),
         "(Q/P)_d = %s" % _el(spec, rc.symbol_QP.value),
         "lhs = %s" % _el(spec, rc.lhs),
         "rhs = %s" % _el(spec, rc.rhs),
         "PASS" if rc.passed else "FAIL"],
    )
    return EXIT_OK if rc.passed else EXIT_FAIL


def cmd_verify_proof(args) -> int:
    spec = load_field(args.field)
    d = _d(spec, args.d)
    P, Q = _prime(args.P, spec, "P"), _prime(args.Q, spec, "Q")
    rep = verify_proof(P, Q, d)
    fields = proof_fields(rep)
    payload = {"P": format_poly(P), "Q": format_poly(Q), "d": d, **fields, "pass": rep.passed}
    lines = ["P = %s" % format_poly(P), "Q = %s" % format_poly(Q), "d = %d" % d]
    lines += ["%s = %s" % (name, str(rep.flags[name]).lower()) for name in rep.flags]
    lines += [
        "pi_S1 = (%s mod P, %s mod Q)" % (fields["pi_S1_P"], fields["pi_S1_Q"]),
        "pi_S2 = (%s mod P, %s mod Q)" % (fields["pi_S2_P"], fields["pi_S2_Q"]),
        "u_witness = %s" % ("none" if rep.u_witness is None else rep.u_witness),
        "derived_lhs = %s" % (fields["derived_lhs"] or "none"),
        "expected_rhs = %s" % fields["expected_rhs"],
        "PASS" if rep.passed else "FAIL",
    ]
    _emit(args, payload, lines)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_sweep(args) -> int:
    spec = load_field(args.field)
    config = SweepConfig(
        spec=spec,
        ds=select_ds(spec, args.d),
        max_deg=args.max_deg,
        fmt=args.format,
        jobs=args.jobs,
        proof_cap=args.proof_cap,
    )
    out = sys.stdout
    if config.fmt == "csv":
        out.write(csv_header() + "\n")
    cases = proofs = failures = 0
    for rec in run_sweep(config):
        out.write(format_record(rec, config.fmt) + "\n")
        out.flush()
        cases += 1
        proofs += rec["kind"] == "proof"
        failures += not rec["pass"]
    print("%d cases, %d proofs, %d failures" % (cases, proofs, failures), file=sys.stderr)
    return EXIT_FAIL if failures else EXIT_OK


def cmd_irreducibles(args) -> int:
    spec = load_field(args.field)
    for n in range(1, args.max_deg + 1):
        for P in monic_irreducibles(spec, n):
            print(format_poly(P))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fqrecip",
        description="Power residue symbols and reciprocity in F_q[t].",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_choices=("text", "json"), default="text"):
        p.add_argument("--field", "--q", dest="field", required=True,
                       help="field-spec file, or inline text such as 'p=3' or 'p=3;k=2;modulus=[1,0,1]'")
        p.add_argument("--format", choices=fmt_choices, default=default)

    p = sub.add_parser("symbol", help="compute (a/P)_d")
    common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--P", required=True)
    p.add_argument("--d", required=True)
    p.set_defaults(func=cmd_symbol)

    p = sub.add_parser("reciprocity", help="check the reciprocity law for one pair")
    common(p)
    p.add_argument("--P", required=True)
    p.add_argument("--Q", required=True)
    p.add_argument("--d", required=True)
    p.set_defaults(func=cmd_reciprocity)

    p = sub.add_parser("verify-proof", help="replay the coset-product proof for one pair")
    common(p)
    p.add_argument("--P", required=True)
    p.add_argument("--Q", required=True)
    p.add_argument("--d", required=True)
    p.set_defaults(func=cmd_verify_proof)

    p = sub.add_parser("sweep", help="check every pair of monic irreducibles up to a degree bound")
    common(p, ("json", "csv"), "json")
    p.add_argument("--d", default="all", help="a divisor of q-1, or 'all'")
    p.add_argument("--max-deg", type=int, required=True, help="bound on deg P + deg Q")
    p.add_argument("--proof-cap", type=int, default=DEFAULT_PROOF_CAP,
                   help="replay the proof only when |PQ| <= this")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("irreducibles", help="list monic irreducibles up to a degree")
    p.add_argument("--field", "--q", dest="field", required=True)
    p.add_argument("--max-deg", type=int, required=True)
    p.set_defaults(func=cmd_irreducibles)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except FqError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_FAIL
    except BrokenPipeError:
        # downstream reader closed early (e.g. `| head`); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

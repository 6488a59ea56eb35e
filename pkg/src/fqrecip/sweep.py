"""Exhaustive reciprocity sweeps with deterministic, machine-readable records."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Iterator

from .errors import ValidationError
from .field import FieldSpec, check_d, divisors
from .polyparse import format_element, format_poly
from .polyring import IrreduciblePoly, Poly, monic_irreducibles, norm
from .residue import check_reciprocity
from .rousseau import FLAG_NAMES, ProofReport, verify_proof

DEFAULT_PROOF_CAP = 10**6

BASE_FIELDS = ("kind", "q", "p", "k", "modulus", "d", "P", "Q", "lhs", "rhs", "pass")
PROOF_FIELDS = FLAG_NAMES + (
    "pi_S1_P", "pi_S1_Q", "pi_S2_P", "pi_S2_Q", "u_witness", "derived_lhs", "expected_rhs",
)
CSV_FIELDS = BASE_FIELDS + PROOF_FIELDS


@dataclass(frozen=True)
class SweepConfig:
    spec: FieldSpec
    ds: tuple[int, ...]
    max_deg: int
    fmt: str = "json"
    jobs: int = 1
    proof_cap: int = DEFAULT_PROOF_CAP

    def __post_init__(self):
        for d in self.ds:
            check_d(self.spec, d)
        if self.max_deg < 0:
            raise ValidationError("--max-deg must be non-negative")
        if self.fmt not in ("json", "csv"):
            raise ValidationError("format must be json or csv")


def select_ds(spec: FieldSpec, selector: str | int) -> tuple[int, ...]:
    """``"all"`` gives every positive divisor of q - 1; otherwise one validated d."""
    if selector == "all":
        return tuple(divisors(spec.q - 1))
    d = int(selector)
    check_d(spec, d)
    return (d,)


def iter_cases(config: SweepConfig) -> Iterator[tuple[int, IrreduciblePoly, IrreduciblePoly]]:
    """(d, P, Q) ordered by d, deg P, P, deg Q, Q; P != Q, deg P + deg Q <= max_deg."""
    spec = config.spec
    by_deg = {n: monic_irreducibles(spec, n) for n in range(1, config.max_deg)}
    for d in config.ds:
        for dp in range(1, config.max_deg):
            for P in by_deg[dp]:
                for dq in range(1, config.max_deg - dp + 1):
                    for Q in by_deg[dq]:
                        if Q != P:
                            yield d, P, Q


def _modulus(spec: FieldSpec):
    return list(spec.modulus) if spec.modulus is not None else None


def record_for(spec: FieldSpec, d: int, P: Poly, Q: Poly, proof_cap: int) -> dict:
    """One sweep record: always the reciprocity check, the proof replay when |PQ| <= cap."""
    rc = check_reciprocity(P, Q, d)
    el = lambda x: None if x is None else format_element(spec, x.code)
    rec = {
        "kind": "reciprocity",
        "q": spec.q,
        "p": spec.p,
        "k": spec.k,
        "modulus": _modulus(spec),
        "d": d,
        "P": format_poly(P),
        "Q": format_poly(Q),
        "lhs": el(rc.lhs),
        "rhs": el(rc.rhs),
        "pass": rc.passed,
    }
    if norm(P) * norm(Q) <= proof_cap:
        rep = verify_proof(P, Q, d)
        rec["kind"] = "proof"
        rec["pass"] = rc.passed and rep.passed
        rec.update(proof_fields(rep))
    return rec


def proof_fields(rep: ProofReport) -> dict:
    spec = rep.P.spec
    out = dict(rep.flags)
    out.update(
        pi_S1_P=format_poly(rep.pi_S1[0]),
        pi_S1_Q=format_poly(rep.pi_S1[1]),
        pi_S2_P=format_poly(rep.pi_S2[0]),
        pi_S2_Q=format_poly(rep.pi_S2[1]),
        u_witness=rep.u_witness,
        derived_lhs=None if rep.derived_lhs is None else format_element(spec, rep.derived_lhs.code),
        expected_rhs=format_element(spec, rep.expected_rhs.code),
    )
    return out


def _work(args):
    spec, d, pc, qc, cap = args
    return record_for(spec, d, Poly.from_codes(spec, pc), Poly.from_codes(spec, qc), cap)


def run_sweep(config: SweepConfig) -> Iterator[dict]:
    """Records in case order, whatever the worker count."""
    tasks = ((config.spec, d, P.codes, Q.codes, config.proof_cap) for d, P, Q in iter_cases(config))
    if config.jobs <= 1:
        yield from map(_work, tasks)
        return
    with get_context("spawn").Pool(config.jobs) as pool:
        yield from pool.imap(_work, tasks, chunksize=8)


def format_record(rec: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rec)
    buf = io.StringIO()
    row = {k: _csv_cell(rec.get(k)) for k in CSV_FIELDS}
    csv.DictWriter(buf, CSV_FIELDS, lineterminator="\n").writerow(row)
    return buf.getvalue().rstrip("\n")


def csv_header() -> str:
    return ",".join(CSV_FIELDS)


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return json.dumps(v)
    return v

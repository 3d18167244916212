"""Command-line interface.

Exit codes: 0 success, 1 a verification did not pass, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from importlib import resources

from . import o4, published
from .cg import cg
from .conventions import Convention
from .errors import DomainError
from .exact import sum_to_json, to_float
from .halfint import HalfInt, parse_halfint
from .oracle import IrrepSpec
from .recurrence import (
    FAIL,
    INCONSISTENT,
    T_PLUS_T_MINUS,
    derive_relation,
    format_relation,
    stretched_states,
    relation_to_json,
    symmetrize,
    verify_closed_form,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CG_NAMES = ("j1", "m1", "j2", "m2", "j", "m")


class UsageError(Exception):
    pass


def _halfint(text: str) -> HalfInt:
    try:
        return parse_halfint(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _twice(text: str) -> HalfInt:
    try:
        return HalfInt(int(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"doubled value must be an integer, got {text!r}") from None


def _spec(text: str) -> IrrepSpec:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"--spec needs 'j1,j2', got {text!r}")
    try:
        return IrrepSpec(parse_halfint(parts[0]), parse_halfint(parts[1]))
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# cg

def run_cg(args) -> tuple[int, str]:
    values = {}
    for name in CG_NAMES:
        plain, doubled = getattr(args, name), getattr(args, f"two_{name}")
        if plain is not None and doubled is not None:
            raise UsageError(f"give --{name} or --two-{name}, not both")
        value = plain if plain is not None else doubled
        if value is None:
            raise UsageError(f"missing --{name}")
        values[name] = value
    try:
        value = cg(*(values[n] for n in CG_NAMES))
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    approx = to_float(value)
    if args.format == "json":
        out = _emit_json({
            "args": {n: str(values[n]) for n in CG_NAMES},
            "value": sum_to_json(value),
            "exact": str(value),
            "approx": approx,
        })
    elif args.format == "csv":
        out = _emit_csv(list(CG_NAMES) + ["exact", "approx"],
                        [[str(values[n]) for n in CG_NAMES] + [str(value), f"{approx:.12g}"]])
    else:
        out = f"{value}\napprox {approx:.8f}\n"
    return EXIT_OK, out


# check-o4

def load_golden() -> dict:
    text = resources.files("o4tensor").joinpath("data/o4_golden.json").read_text()
    return {r["variant"]: r for r in json.loads(text)["reports"]}


def run_check_o4(args) -> tuple[int, str]:
    variants = list(o4.Variant) if args.variant == "both" else [o4.Variant(args.variant)]
    golden = load_golden()
    reports, matches = [], []
    for v in variants:
        gens = o4.build_generators(v)
        for name in args.flip_generator or ():
            gens = o4.flip_sign(gens, name)
        report = o4.check_relations(gens)
        reports.append(report)
        matches.append(report.to_json() == golden.get(v.value))
    status = EXIT_OK if all(matches) else EXIT_FAIL
    if args.format == "json":
        out = o4.report_json(reports)
    elif args.format == "csv":
        rows = [[r.variant.value, rec.block, rec.relation_id, "pass" if rec.passes else "fail",
                 len(rec.residual.nonzero_entries())]
                for r in reports for rec in r.records]
        out = _emit_csv(["variant", "block", "id", "result", "residual_nonzero"], rows)
    else:
        lines = []
        for report, ok in zip(reports, matches):
            lines.append(f"variant {report.variant.value}")
            for rec in report.records:
                lines.append(f"  {'PASS' if rec.passes else 'FAIL'}  {rec.block:<10} {rec.relation_id}")
            for u in report.undefined:
                lines.append(f"  UNDEF {u}")
            lines.append(f"  golden report: {'match' if ok else 'MISMATCH'}")
        out = "\n".join(lines) + "\n"
    return status, out


# derive

def run_derive(args) -> tuple[int, str]:
    l = args.l
    if l.twice < 2:
        raise UsageError(f"--l must be at least 1, got {l}")
    convention = Convention(args.convention)
    relation = derive_relation(T_PLUS_T_MINUS, stretched_states(l), convention)
    if args.symmetrize:
        relation = symmetrize(relation)
    payload = relation_to_json(relation)
    if args.format == "json":
        return EXIT_OK, _emit_json(payload)
    if args.format == "csv":
        rows = [[str(t.coefficient), " ".join(map(str, t.factors))] for t in relation.terms]
        return EXIT_OK, _emit_csv(["coefficient", "factors"], rows)
    lines = [
        f"[T+1, T-1] = -J0 between <{l - 1},{l - 1}| and |{l},{l - 1}>, {convention.value} convention"
        + (", symmetrized" if args.symmetrize else ""),
        "terms by intermediate state:",
        "  " + format_relation(relation, relation.contributions),
        "merged:",
        "  " + format_relation(relation),
        "json:",
        json.dumps(payload, sort_keys=True),
    ]
    return EXIT_OK, "\n".join(lines) + "\n"


# verify

def run_verify(args) -> tuple[int, str]:
    if args.lmin < 1 or args.lmax < args.lmin:
        raise UsageError(f"need 1 <= --lmin <= --lmax, got {args.lmin}, {args.lmax}")
    if args.spec is not None:
        for l in range(args.lmin, args.lmax + 1):
            if not (args.spec.contains(l - 1) and args.spec.contains(l)):
                raise UsageError(f"irrep {args.spec} has multiplets {', '.join(map(str, args.spec.ls))}; "
                                 f"l={l} needs both {l - 1} and {l}")
    rows = verify_closed_form(args.lmin, args.lmax, args.convention, args.symmetrize, args.spec)
    status = EXIT_FAIL if any(r.engine_vs_oracle in (FAIL, INCONSISTENT) for r in rows) else EXIT_OK
    if args.format == "json":
        return status, _emit_json({"rows": [r.to_json() for r in rows]})
    if args.format == "csv":
        table = [[str(r.l), r.spec, r.engine_vs_oracle, r.printed_ratio,
                  "" if r.implied_ratio is None else str(r.implied_ratio), format_relation(r.relation)]
                 for r in rows]
        return status, _emit_csv(["l", "spec", "engine_vs_oracle", "printed_ratio", "implied_ratio",
                                  "relation"], table)
    lines = [f"{'l':>3}  {'irrep':<10} {'engine/oracle':<13} {'printed ratio':<13} implied R(l,l)/R(l-1,l-1)"]
    for r in rows:
        implied = "-" if r.implied_ratio is None else str(r.implied_ratio)
        lines.append(f"{str(r.l):>3}  {r.spec:<10} {r.engine_vs_oracle:<13} {r.printed_ratio:<13} {implied}")
        lines.append(f"     {format_relation(r.relation)}")
        if r.note:
            lines.append(f"     note: {r.note}")
    return status, "\n".join(lines) + "\n"


# reproduce

def run_reproduce(args) -> tuple[int, str]:
    if args.lmin < 2 or args.lmax < args.lmin:
        raise UsageError(f"need 2 <= --lmin <= --lmax, got {args.lmin}, {args.lmax}")
    ls = range(args.lmin, args.lmax + 1)
    if args.format == "json":
        return EXIT_OK, published.report_json(ls)
    report = published.reproduction_report(ls)
    lines = ["coefficients (printed vs Racah sum):"]
    by_slot: dict[str, list] = {}
    for rec in report["coefficients"]:
        by_slot.setdefault((rec["slot"], rec["bracket"], rec["contributes"]), []).append(rec)
    for (slot, bracket, contributes), recs in by_slot.items():
        bad = [str(r["l"]) for r in recs if r["status"] != published.MATCH]
        statuses = sorted({r["status"] for r in recs})
        tag = "enters relation" if contributes else "does not enter"
        detail = f" at l={','.join(bad)}" if bad else ""
        lines.append(f"  {slot} {bracket:<24} {'/'.join(statuses)}{detail}  ({tag})")
    lines.append("relation terms (printed vs derived, paper convention):")
    by_term: dict[int, list] = {}
    for rec in report["relation_terms"]:
        by_term.setdefault(rec["index"], []).append(rec)
    for index, recs in by_term.items():
        bad = [str(r["l"]) for r in recs if r["status"] != published.MATCH]
        statuses = sorted({r["status"] for r in recs})
        detail = f" at l={','.join(bad)}" if bad else ""
        lines.append(f"  term {index}: {'/'.join(statuses)}{detail}")
    lines.append("flags:")
    lines.extend(f"  {f}" for f in report["flags"])
    return EXIT_OK, "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="o4tensor", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("cg", help="exact Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m>")
    for name in CG_NAMES:
        p.add_argument(f"--{name}", type=_halfint, help="value such as 1, 3/2 or 1.5")
        p.add_argument(f"--two-{name}", dest=f"two_{name}", type=_twice, help=f"twice {name}")
    fmt(p)
    p.set_defaults(func=run_cg)

    p = sub.add_parser("check-o4", help="check the so(4) commutation relations exactly")
    p.add_argument("--variant", choices=("as-printed", "imaginary-t", "both"), default="both")
    p.add_argument("--flip-generator", action="append", help=argparse.SUPPRESS,
                   choices=("J0", "Jp1", "Jm1", "T0", "Tp1", "Tm1"))
    fmt(p)
    p.set_defaults(func=run_check_o4)

    p = sub.add_parser("derive", help="derive the [T+1,T-1] = -J0 recurrence at one l")
    p.add_argument("--l", type=_halfint, required=True)
    p.add_argument("--convention", choices=[c.value for c in Convention], default="standard")
    p.add_argument("--symmetrize", action="store_true")
    fmt(p)
    p.set_defaults(func=run_derive)

    p = sub.add_parser("verify", help="sweep l and check derived relations against the oracle")
    p.add_argument("--lmin", type=int, default=2)
    p.add_argument("--lmax", type=int, default=12)
    p.add_argument("--spec", type=_spec, help="oracle irrep 'j1,j2' (default: one per l)")
    p.add_argument("--convention", choices=[c.value for c in Convention], default="standard")
    p.add_argument("--symmetrize", action="store_true")
    fmt(p)
    p.set_defaults(func=run_verify)

    p = sub.add_parser("reproduce", help="compare printed coefficients and terms with exact values")
    p.add_argument("--lmin", type=int, default=2)
    p.add_argument("--lmax", type=int, default=10)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=run_reproduce)
    return parser


_NEGATIVE_VALUE = re.compile(r"^-(\d+(/\d+)?|\d*\.\d+)$")


def _attach_negative_values(argv: list[str]) -> list[str]:
    # argparse would read "-1/2" as an option name; glue it to its flag instead
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEGATIVE_VALUE.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    try:
        status, out = args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())

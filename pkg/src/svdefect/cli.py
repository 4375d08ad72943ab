"""Command-line interface: ``check``, ``verify``, ``families`` and ``search``.

Exit codes: 0 success or certified, 2 usage error, 3 conditions not met,
4 capacity error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Callable, Iterable, Sequence

from svdefect import families as fam
from svdefect.criteria import Certificate, ConditionReport, F_value, certify, check_conditions
from svdefect.errors import CapacityError, RangeError
from svdefect.gf import DEFAULT_PRIME, FieldSpec
from svdefect.ms_tensor import Shape, dim_sum
from svdefect.search import SearchBounds, Verification, cross_verify, enumerate_defective
from svdefect.segre_veronese import (
    DEFAULT_MAX_CELLS,
    DEFAULT_TRIALS,
    Splitting,
    rank_upper_bound,
    terracini_rank,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONDITIONS = 3
EXIT_CAPACITY = 4

CSV_COLUMNS = ["k", "n", "d", "e0", "e1", "s", "F", "expected", "defect_lb", "provenance"]
VERIFY_COLUMNS = ["rank", "trials", "prime", "seed", "consistent"]


class UsageError(Exception):
    pass


def int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def int_range(text: str) -> range:
    """``lo..hi`` inclusive, or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or lo..hi, got {text!r}") from None
    return range(value, value + 1)


def _join(values: Sequence[int]) -> str:
    return ",".join(str(v) for v in values)


def _record(cert: Certificate, ver: Verification | None = None, field: FieldSpec | None = None,
            trials: int | None = None, seed: int | None = None) -> dict[str, Any]:
    rec = cert.to_record()
    if ver is not None:
        rec["rank"] = ver.rank
        rec["trials"] = trials
        rec["prime"] = field.p
        rec["seed"] = seed
        rec["consistent"] = ver.consistent
        if ver.error:
            rec["error"] = ver.error
    return rec


def _csv_row(rec: dict[str, Any]) -> list[Any]:
    row = [len(rec["n"]), _join(rec["n"]), _join(rec["d"]), _join(rec["e0"]), _join(rec["e1"]),
           rec["s"], rec["F"], rec["expected"], rec["defect_lb"], rec["provenance"]]
    if "rank" in rec:
        row += [rec[c] for c in VERIFY_COLUMNS]
    return row


def render(records: list[dict[str, Any]], fmt: str) -> str:
    verified = bool(records) and "rank" in records[0]
    if fmt == "json":
        return json.dumps(records, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS + (VERIFY_COLUMNS if verified else []))
        for rec in records:
            writer.writerow(_csv_row(rec))
        return buf.getvalue()
    header = CSV_COLUMNS + (VERIFY_COLUMNS if verified else [])
    rows = [[str(x) for x in _csv_row(rec)] for rec in records]
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def _shape(args) -> Shape:
    try:
        return Shape(args.n, args.d)
    except ValueError as exc:
        raise UsageError(f"--n/--d: {exc}") from None


def _split(shape: Shape, e0) -> Splitting:
    try:
        return Splitting.from_e0(shape, e0)
    except ValueError as exc:
        raise UsageError(f"--e0: {exc}") from None


def _field(args) -> FieldSpec:
    try:
        return FieldSpec(args.prime)
    except ValueError as exc:
        raise UsageError(f"--prime: {exc}") from None


def _format_report(report: ConditionReport) -> str:
    lines = ["conditions:"]
    for key, value in report.to_dict().items():
        lines.append(f"  {key}: {value}")
    return "\n".join(lines)


def cmd_check(args, out) -> int:
    shape = _shape(args)
    split = _split(shape, args.e0)
    if args.s < 1:
        raise UsageError("--s: must be >= 1")
    cert = certify(shape, split, args.s)
    if args.json:
        payload = {
            "certified": cert is not None,
            "conditions": check_conditions(shape, split, args.s).to_dict(),
            "certificate": cert.to_record() if cert else None,
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(f"n={_join(shape.n)} d={_join(shape.d)} e0={_join(split.e0)} e1={_join(split.e1)} s={args.s}\n")
        out.write(_format_report(check_conditions(shape, split, args.s)) + "\n")
        if cert is None:
            out.write("not certified: conditions not met\n")
        else:
            out.write(
                f"certified defective: F={cert.F} expected={cert.expected} "
                f"defect_lb={cert.defect_lb} via {cert.path}\n"
            )
    return EXIT_OK if cert is not None else EXIT_CONDITIONS


def cmd_verify(args, out) -> int:
    shape = _shape(args)
    field = _field(args)
    if args.s < 1 or args.trials < 1:
        raise UsageError("--s and --trials must be >= 1")
    split = _split(shape, args.e0) if args.e0 is not None else None
    r = terracini_rank(shape, args.s, field, args.trials, args.seed, args.max_cells)
    bound = rank_upper_bound(shape, args.s)
    verdict = "nondefective (certified)" if r == bound else f"rank deficit {bound - r}"
    result: dict[str, Any] = {
        "n": list(shape.n),
        "d": list(shape.d),
        "s": args.s,
        "rank": r,
        "expected_rank": bound,
        "expected": bound - 1,
        "dim_lower_bound": r - 1,
        "verdict": verdict,
        "prime": field.p,
        "trials": args.trials,
        "seed": args.seed,
    }
    if split is not None:
        F = F_value(shape, split, args.s)
        result["e0"] = list(split.e0)
        result["F"] = F
        result["conditions_hold"] = certify(shape, split, args.s) is not None
        result["consistent"] = r <= F + 1
    if args.json:
        out.write(json.dumps(result, indent=2) + "\n")
        return EXIT_OK
    out.write(f"n={_join(shape.n)} d={_join(shape.d)} s={args.s} D={dim_sum(shape)}\n")
    out.write(f"prime={field.p} trials={args.trials} seed={args.seed}\n")
    out.write(f"terracini rank: {r}\n")
    out.write(f"expected rank: {bound} (expected dimension {bound - 1})\n")
    out.write(f"verdict: {verdict}\n")
    if split is not None:
        note = "" if result["conditions_hold"] else " (conditions not met; F is not a proven bound)"
        out.write(f"F = {result['F']}, rank - 1 = {r - 1}{note}\n")
        out.write(f"consistent with F bound: {'yes' if result['consistent'] else 'no'}\n")
    return EXIT_OK


def _family_jobs(args) -> list[tuple[dict[str, int], Callable[[], Iterable[fam.FamilyCase]]]]:
    def need(name: str) -> range:
        value = getattr(args, name)
        if value is None:
            raise UsageError(f"--{name}: required for --family {args.family}")
        return value

    jobs = []
    if args.family == "cgg":
        for a in need("a"):
            jobs.append(({"a": a}, lambda a=a: fam.cgg_family(a)))
        return jobs
    for n in need("n"):
        for d in need("d"):
            if args.family == "four":
                ks = args.k if args.k is not None else fam.four_factor_k_range(n, d)
                for k in ks:
                    jobs.append(({"n": n, "d": d, "k": k},
                                 lambda n=n, d=d, k=k: [fam.four_factor_family(n, d, k)]))
                continue
            make = fam.even_family if args.family == "even" else fam.odd_family
            a_default = fam.even_a_range if args.family == "even" else fam.odd_a_range
            k_default = fam.even_k_range if args.family == "even" else fam.odd_k_range
            a_values = args.a if args.a is not None else a_default(n, d)
            for a in a_values:
                ks = args.k if args.k is not None else k_default(n, d, a)
                for k in ks:
                    jobs.append(({"n": n, "d": d, "a": a, "k": k},
                                 lambda n=n, d=d, a=a, k=k, make=make: [make(n, d, a, k)]))
    return jobs


def cmd_families(args, out, err) -> int:
    cases: list[fam.FamilyCase] = []
    for params, job in _family_jobs(args):
        try:
            cases.extend(job())
        except RangeError as exc:
            err.write(f"range error {params}: {exc}\n")
    certs = [case.certificate for case in cases]
    records = _verified_records(certs, args) if args.cross_verify else [c.to_record() for c in certs]
    out.write(render(records, args.format))
    return EXIT_OK if cases else EXIT_CONDITIONS


def _verified_records(certs: list[Certificate], args) -> list[dict[str, Any]]:
    field = _field(args)
    vers = cross_verify(certs, field, args.trials, args.seed, args.max_cells)
    return [_record(v.certificate, v, field, args.trials, args.seed) for v in vers]


def cmd_search(args, out) -> int:
    try:
        bounds = SearchBounds(args.max_factors, args.max_n, args.max_deg, args.max_s, args.max_space)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    certs = enumerate_defective(bounds)
    records = _verified_records(certs, args) if args.cross_verify else [c.to_record() for c in certs]
    out.write(render(records, args.format))
    return EXIT_OK


def _add_verify_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="svdefect",
        description="Defectivity certificates for secant varieties of Segre-Veronese varieties.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate the conditions and certify one case")
    p.add_argument("--n", type=int_list, required=True)
    p.add_argument("--d", type=int_list, required=True)
    p.add_argument("--e0", type=int_list, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="Terracini rank over GF(p)")
    p.add_argument("--n", type=int_list, required=True)
    p.add_argument("--d", type=int_list, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--e0", type=int_list)
    p.add_argument("--json", action="store_true")
    _add_verify_options(p)

    p = sub.add_parser("families", help="generate the known defective families")
    p.add_argument("--family", choices=["cgg", "even", "odd", "four"], required=True)
    for name in ("a", "n", "d", "k"):
        p.add_argument(f"--{name}", type=int_range)
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.add_argument("--cross-verify", action="store_true")
    _add_verify_options(p)

    p = sub.add_parser("search", help="enumerate all certifiable cases within bounds")
    p.add_argument("--max-factors", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("--max-s", type=int, required=True)
    p.add_argument("--max-space", type=int)
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.add_argument("--cross-verify", action="store_true")
    _add_verify_options(p)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "check":
            return cmd_check(args, out)
        if args.command == "verify":
            return cmd_verify(args, out)
        if args.command == "families":
            return cmd_families(args, out, err)
        return cmd_search(args, out)
    except UsageError as exc:
        err.write(f"svdefect {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except CapacityError as exc:
        err.write(f"svdefect {args.command}: capacity error: {exc}\n")
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())

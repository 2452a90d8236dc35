"""Command line front end.

    polhilb analyze <t>
    polhilb survey <t_min> <t_max>
    polhilb pell <d> <n>
    polhilb check <t_max>

Exit codes: 0 on success, 1 for bad input or a t without a square-2
polarisation, 2 when an internal invariant fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .arith import DomainError
from .checks import run_checks
from .pell import DEFAULT_SCAN_BOUND, solve_pell_type
from .picard import aut_is_nontrivial
from .report import CSV_COLUMNS, build_report, csv_row, render_text, to_dict

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _report_job(args):
    t, full_range, bound = args
    return build_report(t, full_range=full_range, bound=bound)


def cmd_analyze(args, out) -> int:
    try:
        rep = build_report(args.t, full_range=args.full_range, bound=args.bound)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (AssertionError, RuntimeError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    if args.format == "json":
        print(json.dumps(to_dict(rep), indent=2), file=out)
    elif args.format == "csv":
        print(_csv([csv_row(rep)], CSV_COLUMNS), file=out)
    else:
        print(render_text(rep), file=out)
    if not rep.aut:
        return EXIT_INPUT
    if not rep.checks_passed:
        for c in rep.checks:
            if not c.passed:
                print(f"invariant {c.name} failed at t={c.t}: {c.detail}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_survey(args, out) -> int:
    if not 2 <= args.t_min <= args.t_max:
        print(f"error: need 2 <= t_min <= t_max, got {args.t_min}..{args.t_max}", file=sys.stderr)
        return EXIT_INPUT
    ts = [t for t in range(args.t_min, args.t_max + 1) if aut_is_nontrivial(t, bound=args.bound)]
    jobs = [(t, args.full_range, args.bound) for t in ts]
    try:
        if args.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                reports = list(pool.map(_report_job, jobs))
        else:
            reports = [_report_job(j) for j in jobs]
    except (AssertionError, RuntimeError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    rows = [csv_row(r) for r in reports]
    if args.format == "json":
        print(json.dumps(rows, indent=2), file=out)
    elif args.format == "csv":
        print(_csv(rows, CSV_COLUMNS), file=out)
    else:
        cols = ["t", "a", "b", "c", "d", "mu", "nu", "omega", "irreducible", "checks_passed"]
        table = [cols] + [[str(r[c]) for c in cols] for r in rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(cols))]
        for row in table:
            print("  ".join(v.rjust(w) for v, w in zip(row, widths)), file=out)
        print(f"{len(rows)} admissible value(s) of t in [{args.t_min}, {args.t_max}]", file=out)
    return EXIT_OK if all(r.checks_passed for r in reports) else EXIT_INVARIANT


def cmd_pell(args, out) -> int:
    try:
        res = solve_pell_type(args.d, args.n, bound=args.bound, method=args.method)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    reps = res.class_representatives()
    mp = res.minimal_positive
    if args.format == "json":
        doc = {
            "d": res.d,
            "n": res.n,
            "solvable": bool(res),
            "method": res.method,
            "classes": [list(p) for p in reps],
            "minimal_positive": list(mp.pair()) if mp else None,
        }
        print(json.dumps(doc, indent=2), file=out)
    elif args.format == "csv":
        print(_csv([{"x": x, "y": y} for x, y in reps], ["x", "y"]), file=out)
    else:
        print(f"x^2 - {res.d}y^2 = {res.n}: {len(reps)} class(es) [{res.method}]", file=out)
        for x, y in reps:
            print(f"  fundamental solution ({x}, {y})", file=out)
        if mp:
            print(f"  minimal positive solution {mp.pair()}", file=out)
    return EXIT_OK


def cmd_check(args, out) -> int:
    if args.t_max < 2:
        print("error: t_max must be at least 2", file=sys.stderr)
        return EXIT_INPUT
    suite = run_checks(args.t_max, full_range=args.full_range, fault=args.inject_fault)
    if args.format == "json":
        doc = {
            "passed": suite.passed,
            "count": len(suite.results),
            "failures": [{"name": f.name, "t": f.t, "detail": f.detail} for f in suite.failures],
        }
        print(json.dumps(doc, indent=2), file=out)
    elif args.format == "csv":
        rows = [{"name": r.name, "t": "" if r.t is None else r.t, "passed": str(r.passed).lower(), "detail": r.detail} for r in suite.results]
        print(_csv(rows, ["name", "t", "passed", "detail"]), file=out)
    else:
        names = sorted({r.name for r in suite.results})
        for name in names:
            rs = [r for r in suite.results if r.name == name]
            bad = [r for r in rs if not r.passed]
            status = "ok" if not bad else "FAIL"
            print(f"{status:4}  {name}  ({len(rs) - len(bad)}/{len(rs)})", file=out)
    for f in suite.failures:
        where = "" if f.t is None else f" at t={f.t}"
        print(f"invariant {f.name} failed{where}: {f.detail}", file=sys.stderr)
    return EXIT_OK if suite.passed else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--full-range", action="store_true", help="scan both halves of the k window")
    common.add_argument("--bound", type=int, default=DEFAULT_SCAN_BOUND, help="Nagell window size above which LMM is used")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for survey")

    p = _Parser(prog="polhilb", description="Hilbert squares of degree-2t K3 surfaces: Pell data, cones, [F], irreducibility.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="full report for one t")
    a.add_argument("t", type=int)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("survey", parents=[common], help="admissible t in a range")
    s.add_argument("t_min", type=int)
    s.add_argument("t_max", type=int)
    s.set_defaults(func=cmd_survey)

    q = sub.add_parser("pell", parents=[common], help="solve x^2 - d y^2 = n")
    q.add_argument("d", type=int)
    q.add_argument("n", type=int)
    q.add_argument("--method", choices=("auto", "nagell", "lmm"), default="auto")
    q.set_defaults(func=cmd_pell)

    c = sub.add_parser("check", parents=[common], help="run the invariant suite")
    c.add_argument("t_max", type=int)
    c.add_argument("--inject-fault", default=None, help=argparse.SUPPRESS)
    c.set_defaults(func=cmd_check)
    return p


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args, out or sys.stdout)


if __name__ == "__main__":
    sys.exit(main())

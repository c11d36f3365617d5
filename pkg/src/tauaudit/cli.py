"""Command-line entry point: ``tauaudit <subcommand> ...``.

Exit codes: 0 every requested claim holds, 2 some verdict is ``fails``,
3 something is ``undetermined`` but nothing fails, 1 usage or resource error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from typing import Sequence

from .arith import FactorBudget
from .cache import cached_sigma
from .claims import digit_profile, dlog_tower, find_factor_above, gap_set, lehmer_scan, lemma1_scan, periodicity_audit
from .config import RunConfig
from .errors import DomainError, ResourceError, UnavailableError
from .matrix import (
    build_row1,
    census_of,
    census_reports,
    check_majority_inequality,
    gcd_analysis,
    gcd_reports,
    group_classify,
    row_properties,
    weighted_sums,
)
from .report import ClaimReport, Verdict, exit_code, sort_reports, verdict_of
from .tables import reproduce_table1, reproduce_table2, table1_csv, table2_csv
from .tau import ENGINES, compute_tau

log = logging.getLogger("tauaudit")

EXIT_USAGE = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tauaudit", description="Exact tau(n) engines and audits of claims about A(p), B(p).")
    parser.add_argument("--format", choices=("json", "csv", "text"), default="json")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--cache-dir", default=None, help="sigma table cache (default: $TAU_CACHE_DIR)")
    parser.add_argument("--memory-budget", type=int, default=None, help="bytes")
    parser.add_argument("--op-budget", type=int, default=None)
    parser.add_argument("--scan-bound", type=int, default=None)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("tau", help="print tau(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--engine", choices=ENGINES, default="eta")

    p = sub.add_parser("verify-engines", help="the three engines agree on 1..N")
    p.add_argument("--max", type=int, default=2000)

    p = sub.add_parser("scan", help="tau(n) != 0 for n <= N")
    p.add_argument("--max", type=int, default=None)

    p = sub.add_parser("lemma1", help="691 | A(p) iff p = -1 mod 691, all primes <= P")
    p.add_argument("--max", type=int, required=True)

    p = sub.add_parser("claims", help="digit, discrete-log tower and large-factor audits at p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--trial-bound", type=int, default=FactorBudget().trial_bound)
    p.add_argument("--rho-iterations", type=int, default=FactorBudget().rho_iterations)
    p.add_argument("--big-modulus", action="store_true")

    for name, text in (
        ("matrix", "structural laws of the residue histogram"),
        ("census", "census of row 1 and the majority inequality"),
        ("group", "order of the group generated by C_1 mod q"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--q", type=int, required=True)
        if name == "matrix":
            p.add_argument("--full", action="store_true", help="all q-1 weighted sums if within --op-budget")

    p = sub.add_parser("gcd", help="gcd(A(p), B(p)) and the split of A(p) at p")
    p.add_argument("--p", type=int, required=True)

    sub.add_parser("table1", help="recompute the published census rows for seven (p, q) pairs")
    p = sub.add_parser("table2", help="recompute the published gcd(A(p), B(p)) factorizations (first three rows unless --full)")
    p.add_argument("--full", action="store_true")

    p = sub.add_parser("periodicity", help="691 | A(p^(alpha + k(alpha+1))) for k <= K")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("gapset", help="alpha <= A whose alpha+1 has no prime factor dividing 690")
    p.add_argument("--max", type=int, required=True)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(format=args.format, jobs=args.jobs)
    if args.cache_dir:
        cfg.cache_dir = args.cache_dir
    if args.memory_budget:
        cfg.memory_budget_bytes = args.memory_budget
    if args.op_budget:
        cfg.op_budget = args.op_budget
    if args.scan_bound:
        cfg.scan_bound = args.scan_bound
    RunConfig.__post_init__(cfg)
    return cfg


def _sigma(cfg: RunConfig, k: int, n: int):
    return cached_sigma(k, n, None, cfg.ensure_cache_dir(), cfg.memory_budget_bytes)


def _render_reports(reports: list[ClaimReport], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.to_json() for r in reports], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["claim", "verdict", "inputs", "witness"])
        for r in reports:
            d = r.to_json()
            w.writerow([d["claim"], d["verdict"], json.dumps(d["inputs"]), json.dumps(d["witness"])])
        return buf.getvalue()
    lines = []
    for r in reports:
        args = " ".join(f"{k}={v}" for k, v in r.inputs.items())
        lines.append(f"{r.verdict.value:<22} {r.claim:<22} {args}")
    return "\n".join(lines) + "\n"


def _run(args: argparse.Namespace, cfg: RunConfig) -> tuple[str, list[ClaimReport]]:
    """Output text and the reports whose verdicts decide the exit code."""
    cmd = args.command
    fmt = cfg.format

    if cmd == "tau":
        if args.n < 1:
            raise DomainError("--n must be >= 1")
        value = compute_tau(args.n, args.engine)[args.n]
        if fmt == "json":
            return json.dumps({"n": str(args.n), "engine": args.engine, "tau": str(value)}) + "\n", []
        if fmt == "csv":
            return f"n,engine,tau\n{args.n},{args.engine},{value}\n", []
        return f"{value}\n", []

    if cmd == "verify-engines":
        series = [compute_tau(args.max, e) for e in ENGINES]
        bad = [n for n in range(1, args.max + 1) if len({s[n] for s in series}) != 1]
        witness = {"tau_1": series[0][1], "tau_2": series[0][2] if args.max >= 2 else None}
        if bad:
            witness["first_disagreement"] = bad[0]
        reports = [ClaimReport("ENGINES_AGREE", {"N": args.max}, verdict_of(not bad), witness)]
    elif cmd == "scan":
        n = args.max or cfg.scan_bound
        s5, s11 = (_sigma(cfg, k, n) for k in (5, 11))
        reports = [lehmer_scan(n, s5=s5, s11=s11)]
    elif cmd == "lemma1":
        reports = [lemma1_scan(args.max)]
    elif cmd == "claims":
        budget = FactorBudget(args.trial_bound, args.rho_iterations)
        reports = []
        if args.p > 3:
            reports += digit_profile(args.p, args.alpha)[1]
        if args.p > 2 and args.alpha == 1:
            reports += dlog_tower(args.p, args.big_modulus)[1]
        reports.append(find_factor_above(args.p, args.alpha, budget))
    elif cmd == "matrix":
        reports = row_properties(args.p, args.q)
        reports += weighted_sums(args.p, args.q, full=args.full, op_budget=cfg.op_budget)[1]
    elif cmd == "census":
        c = census_of(build_row1(args.p, args.q))
        reports = census_reports(c) + [check_majority_inequality(c)]
    elif cmd == "group":
        reports = group_classify(args.p, args.q)
    elif cmd == "gcd":
        ga = gcd_analysis(args.p, s5=_sigma(cfg, 5, args.p), memory_budget=cfg.memory_budget_bytes)
        reports = gcd_reports(ga)
    elif cmd == "table1":
        rows, reports = reproduce_table1(jobs=cfg.jobs)
        if fmt in ("csv", "text"):
            return table1_csv(rows), reports
    elif cmd == "table2":
        rows, reports = reproduce_table2(full=args.full, jobs=cfg.jobs)
        if fmt in ("csv", "text"):
            return table2_csv(rows), reports
    elif cmd == "periodicity":
        reports = periodicity_audit(args.p, args.alpha, args.k)
    elif cmd == "gapset":
        values = gap_set(args.max)
        if fmt == "csv":
            return "alpha\n" + "".join(f"{a}\n" for a in values), []
        if fmt == "text":
            return " ".join(map(str, values)) + "\n", []
        reports = [ClaimReport("GAP_SET", {"max": args.max}, Verdict.HOLDS, {"alphas": values})]
    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(f"unknown command {cmd}")
    reports = sort_reports(reports)
    return _render_reports(reports, fmt), reports


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = _config(args)
        start = time.perf_counter()
        out, reports = _run(args, cfg)
    except (DomainError, ResourceError, UnavailableError, ValueError) as exc:
        sys.stderr.write(f"tauaudit: error: {exc}\n")
        return EXIT_USAGE
    log.info("%s finished in %.2fs", args.command, time.perf_counter() - start)
    sys.stdout.write(out)
    return exit_code(reports)


if __name__ == "__main__":
    raise SystemExit(main())

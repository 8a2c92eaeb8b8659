"""``mkpbound`` command line."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from .errors import MkpBoundError
from .fixtures import example, fixture_inst1, fixture_inst2, fixture_inst3
from .generators import GenSpec, generate
from .harness import (
    BOUNDS,
    SUITE_NODE_BUDGET,
    SuiteConfig,
    SuiteRow,
    csv_record,
    format_table,
    read_config,
    run_instance,
    run_suite,
    summarize,
    write_csv_header,
)
from .lpfile import export_lp_with_cut
from .model import read_instance, render_decimal, write_instance
from .oracles import OracleLimits, bnb_mkp, brute_force_mkp
from .relaxations import (
    SEED_RULES,
    SequenceParams,
    sequential_bound,
    tighten_capacities,
)

FIXTURES = {
    "example": example,
    "inst1": fixture_inst1,
    "inst2": fixture_inst2,
    "inst3": fixture_inst3,
}


def _seq_params(args) -> SequenceParams:
    return SequenceParams(q_max=args.q_max, l_max=args.l_max, it_max=args.it_max)


def _add_seq_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q-max", type=int, default=10, help="largest divisor tried for the reference size")
    p.add_argument("--l-max", type=int, default=5, help="sizes per sequence")
    p.add_argument("--it-max", type=int, default=10, help="seed items tried")
    p.add_argument("--seed-rule", choices=SEED_RULES, default="index")


def _load(path: str):
    if path in FIXTURES:
        return FIXTURES[path]()
    return read_instance(path)


def cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for r in range(args.count):
        spec = GenSpec(args.family, args.n, args.m, args.corr, args.seed + r, R=args.R,
                       sigma=None if args.sigma is None else Fraction(args.sigma))
        path = out / spec.filename
        write_instance(generate(spec), path)
        print(path)
    return 0


def _report_json(report) -> dict:
    def dec(x):
        return None if x is None else render_decimal(x, 6)

    def frac(x):
        return None if x is None else str(Fraction(x))

    return {
        "z_seq": dec(report.z_seq),
        "z_seq_exact": frac(report.z_seq),
        "z_surr": report.z_surr,
        "z_lp": dec(report.z_lp),
        "z_lp_exact": frac(report.z_lp),
        "opt": report.opt,
        "exact_opt": report.exact_opt,
        "t_seq_ms": None if report.t_seq is None else round(report.t_seq * 1000, 3),
        "t_surr_ms": None if report.t_surr is None else round(report.t_surr * 1000, 3),
        "t_lp_ms": None if report.t_lp is None else round(report.t_lp * 1000, 3),
        "gap_se": dec(report.gap_se),
        "gap_su": dec(report.gap_su),
        "gap_lp": dec(report.gap_lp),
        "g_se_lp": dec(report.g_se_lp),
        "g_su_lp": dec(report.g_su_lp),
        "errors": report.errors,
    }


def cmd_bound(args) -> int:
    instance = _load(args.instance)
    config = SuiteConfig(
        bounds=tuple(args.bounds.split(",")),
        opt=args.opt,
        limits=OracleLimits(node_budget=args.node_budget, time_budget=args.opt_time),
        tighten=not args.no_tighten,
        params=_seq_params(args),
        seed_rule=args.seed_rule,
    )
    report = run_instance(instance, config)
    if args.format == "json":
        print(json.dumps({"instance": instance.name, "n": instance.n, "m": instance.m, **_report_json(report)}, indent=2))
    else:
        writer = write_csv_header(sys.stdout)
        spec = _AdHocSpec(instance)
        writer.writerow(csv_record(SuiteRow(spec, report)))
    return 0


class _AdHocSpec:
    """Stand-in for a GenSpec when the instance came from a file."""

    def __init__(self, instance):
        self.family = "file"
        self.correlation = ""
        self.n = instance.n
        self.m = instance.m
        self.range_label = ""
        self.seed = ""


def cmd_suite(args) -> int:
    config = read_config(args.config)
    if args.threads is not None:
        config = replace(config, threads=args.threads)
    if args.csv == "-":
        rows = run_suite(config, sys.stdout)
    else:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            rows = run_suite(config, fh)
    table = format_table(summarize(rows))
    if args.table:
        Path(args.table).write_text(table, encoding="utf-8")
    else:
        sys.stderr.write(table)
    return 0


def cmd_oracle(args) -> int:
    instance = _load(args.instance)
    if args.method == "brute":
        sol = brute_force_mkp(instance, OracleLimits(max_items=args.max_items))
        result = {"value": sol.value, "exact": True, "assignment": list(sol.assignment)}
    else:
        res = bnb_mkp(instance, OracleLimits(node_budget=args.node_budget, time_budget=args.time))
        result = {
            "value": res.value, "lower": res.lower, "upper": res.upper, "exact": res.exact,
            "nodes": res.nodes, "assignment": list(res.solution.assignment),
        }
    print(json.dumps(result))
    return 0


def cmd_export_lp(args) -> int:
    instance = _load(args.instance)
    if args.no_cut:
        z = None
    elif args.z_seq is not None:
        z = Fraction(args.z_seq)
    else:
        z = sequential_bound(tighten_capacities(instance), _seq_params(args), seed_rule=args.seed_rule).z_seq
    export_lp_with_cut(instance, z, sys.stdout if args.out == "-" else args.out)
    return 0


def cmd_fixtures(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    names = args.names or list(FIXTURES)
    unknown = [n for n in names if n not in FIXTURES]
    if unknown:
        raise ValueError(f"unknown fixtures {unknown}")
    for name in names:
        path = out / f"{name}.mkp"
        write_instance(FIXTURES[name](), path)
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mkpbound", description="Upper bounds for the 0-1 multiple knapsack problem.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write generated instances")
    p.add_argument("--family", choices=("pisinger", "small"), required=True)
    p.add_argument("--corr", required=True, help="uncorrelated, weakly, strongly or subset_sum")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-R", type=int, help="weight range (pisinger)")
    p.add_argument("--sigma", help="capacity share 0.25, 0.5 or 0.75 (small)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1, help="instances, seeds seed .. seed+count-1")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bound", help="bounds for one instance")
    p.add_argument("instance", help="instance file or fixture name (" + ", ".join(FIXTURES) + ")")
    p.add_argument("--bounds", default=",".join(BOUNDS))
    p.add_argument("--opt", action="store_true", help="also compute the optimum by branch and bound")
    p.add_argument("--node-budget", type=int, default=SUITE_NODE_BUDGET, help="branch-and-bound nodes for --opt")
    p.add_argument("--opt-time", type=float, default=None, help="seconds for --opt")
    p.add_argument("--no-tighten", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    _add_seq_options(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("suite", help="run a suite config, write CSV and a summary table")
    p.add_argument("config")
    p.add_argument("--csv", default="-", help="CSV output path (default stdout)")
    p.add_argument("--table", help="Markdown table path (default stderr)")
    p.add_argument("--threads", type=int, help="worker processes (MKPB_THREADS overrides)")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("oracle", help="exact optimum by enumeration or branch and bound")
    p.add_argument("instance")
    p.add_argument("--method", choices=("brute", "bnb"), default="bnb")
    p.add_argument("--max-items", type=int, default=12)
    p.add_argument("--node-budget", type=int, default=2_000_000)
    p.add_argument("--time", type=float, default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("export-lp", help="CPLEX LP model with the profit cut")
    p.add_argument("instance")
    p.add_argument("--out", default="-")
    p.add_argument("--z-seq", help="cut value (rational); computed when omitted")
    p.add_argument("--no-cut", action="store_true")
    _add_seq_options(p)
    p.set_defaults(func=cmd_export_lp)

    p = sub.add_parser("fixtures", help="write the built-in instances")
    p.add_argument("names", nargs="*", help="any of " + ", ".join(FIXTURES) + " (default all)")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (MkpBoundError, ValueError, OSError) as exc:
        print(f"mkpbound: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Benchmark harness: bounds per instance, suites of generated instances, tables.

Suite configuration is a flat ``key = value`` text file. Global keys::

    bounds     = seq, surr, lp      # any subset
    opt        = yes                # compute optima with bnb_mkp
    node_budget = 5000              # branch-and-bound nodes per instance
    opt_time   = 0                  # optional seconds per instance; 0 = none
    tighten    = yes
    threads    = 1                  # MKPB_THREADS overrides
    q_max = 10 / l_max = 5 / it_max = 10 / seed_rule = index

and one ``group`` line per setting, with space-separated ``key=value``
fields (``corr`` may list several classes separated by commas)::

    group = family=pisinger corr=unc,str n=60 m=30 R=1000 reps=20 seed=1
    group = family=small corr=wea n=40 m=10 sigma=0.5 reps=10 seed=7

Instance ``r`` of a group (``r = 0 .. reps-1``) uses RNG seed ``seed + r``.

The optimum search is cut by a node budget so that reruns agree exactly;
a time limit (``opt_time``) makes ``opt`` depend on machine speed.
"""

from __future__ import annotations

import csv
import io
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, TextIO

from .errors import MkpBoundError
from .generators import GenSpec, generate, normalize_correlation
from .model import BoundReport, MkpInstance, percent_gap, render_decimal
from .oracles import OracleLimits, bnb_mkp
from .relaxations import (
    SequenceParams,
    lp_bound,
    sequential_bound,
    surrogate_bound,
    tighten_capacities,
)

log = logging.getLogger(__name__)

CSV_VERSION = "mkpbound-suite-csv/1"
CSV_COLUMNS = (
    "family", "corr", "n", "m", "R_or_sigma", "seed",
    "z_seq", "t_seq_ms", "z_surr", "t_surr_ms", "z_lp", "t_lp_ms",
    "opt", "exact_opt", "gap_se", "gap_su", "gap_lp", "g_se_lp", "g_su_lp",
    "errors",
)
TIMING_COLUMNS = ("t_seq_ms", "t_surr_ms", "t_lp_ms")
BOUNDS = ("seq", "surr", "lp")
SUITE_NODE_BUDGET = 5_000
CORR_LABELS = {"uncorrelated": "unc.", "weakly": "wea.", "strongly": "str.", "subset_sum": "s-s"}


@dataclass(frozen=True)
class GroupSpec:
    family: str
    correlation: str
    n: int
    m: int
    reps: int = 1
    seed: int = 0
    R: int | None = None
    sigma: Fraction | None = None

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError("reps must be >= 1")
        # validates the remaining fields
        self.spec(0)

    def spec(self, r: int) -> GenSpec:
        return GenSpec(self.family, self.n, self.m, self.correlation, self.seed + r, R=self.R, sigma=self.sigma)

    def specs(self) -> list[GenSpec]:
        return [self.spec(r) for r in range(self.reps)]


@dataclass(frozen=True)
class SuiteConfig:
    groups: tuple[GroupSpec, ...] = ()
    bounds: tuple[str, ...] = BOUNDS
    opt: bool = True
    limits: OracleLimits = field(default_factory=lambda: OracleLimits(node_budget=SUITE_NODE_BUDGET))
    tighten: bool = True
    params: SequenceParams = field(default_factory=SequenceParams)
    seed_rule: str = "index"
    threads: int = 1

    def __post_init__(self):
        bad = set(self.bounds) - set(BOUNDS)
        if bad:
            raise ValueError(f"unknown bounds {sorted(bad)}")


def _flag(value: str) -> bool:
    v = value.strip().lower()
    if v in ("1", "yes", "true", "on"):
        return True
    if v in ("0", "no", "false", "off"):
        return False
    raise ValueError(f"not a yes/no value: {value!r}")


def _parse_group(text: str) -> list[GroupSpec]:
    fields = {}
    for token in text.split():
        key, sep, value = token.partition("=")
        if not sep:
            raise ValueError(f"group field without '=': {token!r}")
        fields[key.strip()] = value.strip()
    try:
        family = fields.pop("family")
        corrs = fields.pop("corr")
        n = int(fields.pop("n"))
        m = int(fields.pop("m"))
    except KeyError as exc:
        raise ValueError(f"group is missing {exc.args[0]!r}") from None
    reps = int(fields.pop("reps", 1))
    seed = int(fields.pop("seed", 0))
    R = int(fields.pop("R")) if "R" in fields else None
    sigma = Fraction(fields.pop("sigma")) if "sigma" in fields else None
    if fields:
        raise ValueError(f"unknown group fields {sorted(fields)}")
    return [
        GroupSpec(family, normalize_correlation(c), n, m, reps, seed, R, sigma)
        for c in corrs.split(",") if c.strip()
    ]


def parse_config(text: str) -> SuiteConfig:
    groups: list[GroupSpec] = []
    kw: dict = {}
    limits = {"node_budget": SUITE_NODE_BUDGET}
    params = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"line {lineno}: expected key = value")
        key, value = key.strip(), value.strip()
        if key == "group":
            groups.extend(_parse_group(value))
        elif key == "bounds":
            kw["bounds"] = tuple(b.strip() for b in value.split(",") if b.strip())
        elif key in ("opt", "tighten"):
            kw[key] = _flag(value)
        elif key == "opt_time":
            limits["time_budget"] = float(value) if float(value) > 0 else None
        elif key == "node_budget":
            limits["node_budget"] = int(value)
        elif key == "max_items":
            limits["max_items"] = int(value)
        elif key in ("q_max", "l_max", "it_max"):
            params[key] = int(value)
        elif key == "seed_rule":
            kw["seed_rule"] = value
        elif key == "threads":
            kw["threads"] = int(value)
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    return SuiteConfig(
        groups=tuple(groups), limits=OracleLimits(**limits), params=SequenceParams(**params), **kw
    )


def read_config(path) -> SuiteConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def effective_threads(config: SuiteConfig) -> int:
    env = os.environ.get("MKPB_THREADS")
    if env:
        return max(1, int(env))
    return max(1, config.threads)


# -- one instance -------------------------------------------------------------


def run_instance(instance: MkpInstance, config: SuiteConfig = SuiteConfig()) -> BoundReport:
    """Compute the configured bounds (and optimum) for one instance.

    Errors from any single computation are recorded in ``report.errors``
    and leave that field empty.
    """
    report = BoundReport()
    if config.tighten:
        instance = tighten_capacities(instance)
    if "seq" in config.bounds:
        t0 = time.perf_counter()
        try:
            report.z_seq = sequential_bound(instance, config.params, seed_rule=config.seed_rule).z_seq
        except MkpBoundError as exc:
            report.errors["seq"] = str(exc)
        report.t_seq = time.perf_counter() - t0
    if "surr" in config.bounds:
        t0 = time.perf_counter()
        try:
            report.z_surr = surrogate_bound(instance)
        except MkpBoundError as exc:
            report.errors["surr"] = str(exc)
        report.t_surr = time.perf_counter() - t0
    if "lp" in config.bounds:
        t0 = time.perf_counter()
        try:
            report.z_lp = lp_bound(instance)
        except MkpBoundError as exc:
            report.errors["lp"] = str(exc)
        report.t_lp = time.perf_counter() - t0
    if config.opt:
        try:
            res = bnb_mkp(instance, config.limits)
            report.opt = res.value
            report.exact_opt = res.exact
        except MkpBoundError as exc:
            report.errors["opt"] = str(exc)
    report.fill_gaps()
    return report


# -- suites -------------------------------------------------------------------


@dataclass
class SuiteRow:
    spec: GenSpec
    report: BoundReport


def _run_spec(args) -> BoundReport:
    spec, config = args
    return run_instance(generate(spec), config)


def _fmt(x, places: int = 6) -> str:
    return "" if x is None else render_decimal(x, places)


def _ms(seconds) -> str:
    return "" if seconds is None else f"{seconds * 1000:.3f}"


def csv_record(row: SuiteRow) -> dict:
    s, r = row.spec, row.report
    return {
        "family": s.family,
        "corr": s.correlation,
        "n": s.n,
        "m": s.m,
        "R_or_sigma": s.range_label,
        "seed": s.seed,
        "z_seq": _fmt(r.z_seq),
        "t_seq_ms": _ms(r.t_seq),
        "z_surr": "" if r.z_surr is None else r.z_surr,
        "t_surr_ms": _ms(r.t_surr),
        "z_lp": _fmt(r.z_lp),
        "t_lp_ms": _ms(r.t_lp),
        "opt": "" if r.opt is None else r.opt,
        "exact_opt": int(r.exact_opt) if r.opt is not None else "",
        "gap_se": _fmt(r.gap_se),
        "gap_su": _fmt(r.gap_su),
        "gap_lp": _fmt(r.gap_lp),
        "g_se_lp": _fmt(r.g_se_lp),
        "g_su_lp": _fmt(r.g_su_lp),
        "errors": "; ".join(f"{k}: {v}" for k, v in sorted(r.errors.items())),
    }


def write_csv_header(out: TextIO) -> csv.DictWriter:
    out.write(f"# {CSV_VERSION}\n")
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    return writer


def run_suite(config: SuiteConfig, out: TextIO | None = None) -> list[SuiteRow]:
    """Run every instance of every group; rows come back (and are written) in config order."""
    tasks = [(spec, config) for group in config.groups for spec in group.specs()]
    writer = write_csv_header(out) if out is not None else None
    threads = effective_threads(config)
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            reports = pool.map(_run_spec, tasks)
            rows = _collect(tasks, reports, writer)
    else:
        rows = _collect(tasks, map(_run_spec, tasks), writer)
    return rows


def _collect(tasks, reports: Iterable[BoundReport], writer) -> list[SuiteRow]:
    rows = []
    for (spec, _), report in zip(tasks, reports):
        row = SuiteRow(spec, report)
        rows.append(row)
        if writer is not None:
            writer.writerow(csv_record(row))
    return rows


@dataclass
class GroupSummary:
    family: str
    correlation: str
    n: int
    m: int
    range_label: str
    count: int
    z_seq: Fraction | None
    z_surr: Fraction | None
    z_lp: Fraction | None
    opt: Fraction | None
    t_seq: float | None
    t_surr: float | None
    t_lp: float | None

    @property
    def gap_se(self):
        return percent_gap(self.z_seq, self.opt)

    @property
    def gap_su(self):
        return percent_gap(self.z_surr, self.opt)

    @property
    def gap_lp(self):
        return percent_gap(self.z_lp, self.opt)

    @property
    def g_se_lp(self):
        return percent_gap(self.z_lp, self.z_seq)

    @property
    def g_su_lp(self):
        return percent_gap(self.z_lp, self.z_surr)


def _mean(values) -> Fraction | None:
    values = list(values)
    if not values or any(v is None for v in values):
        return None
    return sum((Fraction(v) for v in values), Fraction(0)) / len(values)


def _mean_time(values) -> float | None:
    values = [v for v in values if v is not None]
    return sum(values) / len(values) if values else None


def summarize(rows: list[SuiteRow]) -> list[GroupSummary]:
    """Average per setting; gaps of a setting are computed from its averages."""
    groups: dict[tuple, list[SuiteRow]] = {}
    for row in rows:
        s = row.spec
        groups.setdefault((s.family, s.correlation, s.n, s.m, s.range_label), []).append(row)
    out = []
    for (family, corr, n, m, label), members in groups.items():
        reps = [r.report for r in members]
        opts = [r.opt if r.exact_opt else None for r in reps]
        out.append(
            GroupSummary(
                family, corr, n, m, label, len(members),
                _mean(r.z_seq for r in reps),
                _mean(r.z_surr for r in reps),
                _mean(r.z_lp for r in reps),
                _mean(opts),
                _mean_time(r.t_seq for r in reps),
                _mean_time(r.t_surr for r in reps),
                _mean_time(r.t_lp for r in reps),
            )
        )
    return out


def format_table(summaries: list[GroupSummary]) -> str:
    """Markdown table, one row per setting, values at 2 decimals, ``-`` when unknown."""
    header = [
        "m", "n", "n/m", "R", "Corr.", "z_seq", "t_seq (ms)", "z_surr", "t_surr (ms)",
        "z_LP", "t_LP (ms)", "opt", "gap_se", "gap_su", "gap_LP", "g_se-LP", "g_su-LP",
    ]
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]

    def dec(x):
        return "-" if x is None else render_decimal(x, 2)

    def ms(x):
        return "-" if x is None else f"{x * 1000:.3f}"

    for g in summaries:
        cells = [
            str(g.m), str(g.n), render_decimal(Fraction(g.n, g.m), 2), g.range_label,
            CORR_LABELS[g.correlation],
            dec(g.z_seq), ms(g.t_seq), dec(g.z_surr), ms(g.t_surr), dec(g.z_lp), ms(g.t_lp),
            dec(g.opt), dec(g.gap_se), dec(g.gap_su), dec(g.gap_lp), dec(g.g_se_lp), dec(g.g_su_lp),
        ]
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def strip_timings(csv_text: str) -> str:
    """The CSV with timing columns blanked, for determinism comparisons."""
    lines = csv_text.splitlines(keepends=True)
    head = [l for l in lines if l.startswith("#")]
    body = "".join(l for l in lines if not l.startswith("#"))
    reader = csv.DictReader(io.StringIO(body))
    out = io.StringIO()
    out.writelines(head)
    writer = csv.DictWriter(out, fieldnames=reader.fieldnames, lineterminator="\n")
    writer.writeheader()
    for rec in reader:
        for col in TIMING_COLUMNS:
            rec[col] = ""
        writer.writerow(rec)
    return out.getvalue()


def with_threads(config: SuiteConfig, threads: int) -> SuiteConfig:
    return replace(config, threads=threads)

"""Batch experiments: heuristics vs exact (fig6) and uni- vs bidirectional (fig7)."""

from __future__ import annotations

import csv
import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from html import escape
from typing import Iterable, Sequence

from .errors import EmptyResultError, MTFRError
from .randgen import GenConfig, derive_seed, gen_cycle_sampled, to_bidirectional
from .solvers import Budget, bidir_node_mtfr, exact_node_mtfr, greedy_cycle_mtfr, greedy_degree

FIG6_METHODS = ("exact", "greedy-cycle", "greedy-degree")
FIG7_METHODS = ("unidirectional", "bidirectional")
EXACT_METHODS = frozenset({"exact", "unidirectional", "bidirectional"})
CSV_COLUMNS = ("N", "trial", "seed", "method", "size", "optimal", "runtime_ms")
# Above this many cycles greedy-cycle switches to per-node cycle counting,
# which picks the same nodes and is faster on dense instances.
GREEDY_CYCLE_CAP = 1000


@dataclass(frozen=True)
class Row:
    N: int
    trial: int
    seed: int
    method: str
    size: int
    optimal: bool
    runtime_ms: float


@dataclass(frozen=True)
class Aggregate:
    mean: float
    std: float
    count: int


@dataclass
class ExperimentResult:
    name: str
    methods: tuple[str, ...]
    rows: list[Row]
    aggregates: dict[tuple[int, str], Aggregate] = field(default_factory=dict)
    excluded_trials: dict[int, int] = field(default_factory=dict)

    @property
    def sizes(self) -> list[int]:
        return sorted({r.N for r in self.rows})

    def mean(self, n: int, method: str) -> float:
        return self.aggregates[(n, method)].mean


def aggregate(rows: Sequence[Row]) -> tuple[dict[tuple[int, str], Aggregate], dict[int, int]]:
    """Per-(N, method) mean and population std.

    Trials in which an exact method ran out of budget are left out of every
    method's aggregate and counted per N instead.
    """
    bad = {(r.N, r.trial) for r in rows if r.method in EXACT_METHODS and not r.optimal}
    excluded: dict[int, int] = {}
    for n, _ in bad:
        excluded[n] = excluded.get(n, 0) + 1
    groups: dict[tuple[int, str], list[int]] = {}
    for r in rows:
        if (r.N, r.trial) in bad:
            continue
        groups.setdefault((r.N, r.method), []).append(r.size)
    aggs = {
        key: Aggregate(statistics.fmean(vals), statistics.pstdev(vals), len(vals))
        for key, vals in groups.items()
    }
    return aggs, excluded


def _instance(n: int, trial: int, seed: int):
    s = derive_seed(seed, n, trial)
    return s, gen_cycle_sampled(GenConfig(n_per_side=n, max_cycle_len=6, seed=s))


def _row(n, trial, s, method, report) -> Row:
    if not report.verified_total_failure:
        raise MTFRError(f"{method} returned a removal that is not a total failure (N={n}, trial={trial})")
    return Row(n, trial, s, method, report.size, report.optimal, report.stats["runtime_s"] * 1000.0)


def _fig6_trial(args) -> list[Row]:
    n, trial, seed, budget = args
    s, spec = _instance(n, trial, seed)
    return [
        _row(n, trial, s, "exact", exact_node_mtfr(spec, budget)),
        _row(n, trial, s, "greedy-cycle", greedy_cycle_mtfr(spec, GREEDY_CYCLE_CAP)),
        _row(n, trial, s, "greedy-degree", greedy_degree(spec)),
    ]


def _fig7_trial(args) -> list[Row]:
    n, trial, seed, budget = args
    s, spec = _instance(n, trial, seed)
    return [
        _row(n, trial, s, "unidirectional", exact_node_mtfr(spec, budget)),
        _row(n, trial, s, "bidirectional", bidir_node_mtfr(to_bidirectional(spec))),
    ]


def _run(name, methods, worker, sizes, trials, seed, jobs, budget) -> ExperimentResult:
    tasks = [(n, t, seed, budget) for n in sizes for t in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(worker, tasks, chunksize=8))
    else:
        chunks = [worker(t) for t in tasks]
    rows = [r for chunk in chunks for r in chunk]
    order = {m: i for i, m in enumerate(methods)}
    rows.sort(key=lambda r: (r.N, r.trial, order[r.method]))
    aggs, excluded = aggregate(rows)
    return ExperimentResult(name, methods, rows, aggs, excluded)


def run_heuristic_comparison(sizes: Iterable[int], trials: int, seed: int, *, jobs: int = 1,
                             budget: Budget | None = None) -> ExperimentResult:
    return _run("fig6", FIG6_METHODS, _fig6_trial, list(sizes), trials, seed, jobs, budget or Budget())


def run_model_comparison(sizes: Iterable[int], trials: int, seed: int, *, jobs: int = 1,
                         budget: Budget | None = None) -> ExperimentResult:
    return _run("fig7", FIG7_METHODS, _fig7_trial, list(sizes), trials, seed, jobs, budget or Budget())


# ---------------------------------------------------------------------------
# trend checks


def check_trends(result: ExperimentResult) -> list[str]:
    """Human-readable list of failed trend assertions (empty when all hold)."""
    failures = []
    by_trial: dict[tuple[int, int], dict[str, Row]] = {}
    for r in result.rows:
        by_trial.setdefault((r.N, r.trial), {})[r.method] = r
    # a budget-limited incumbent is not a valid bound for the per-row checks
    by_trial = {
        key: rs for key, rs in by_trial.items()
        if all(r.optimal for m, r in rs.items() if m in EXACT_METHODS)
    }
    if result.name == "fig6":
        for (n, t), rs in sorted(by_trial.items()):
            for h in ("greedy-cycle", "greedy-degree"):
                if rs[h].size < rs["exact"].size:
                    failures.append(f"N={n} trial={t}: {h} size {rs[h].size} < exact {rs['exact'].size}")
        for n in result.sizes:
            e, c, d = (result.mean(n, m) for m in FIG6_METHODS)
            if not (e <= c <= d):
                failures.append(f"N={n}: means exact={e:.3f} greedy-cycle={c:.3f} greedy-degree={d:.3f} out of order")
    else:
        for (n, t), rs in sorted(by_trial.items()):
            if rs["unidirectional"].size > rs["bidirectional"].size:
                failures.append(f"N={n} trial={t}: unidirectional size exceeds bidirectional")
        for n in result.sizes:
            u, b = (result.mean(n, m) for m in FIG7_METHODS)
            if not b > u:
                failures.append(f"N={n}: mean bidirectional {b:.3f} not above unidirectional {u:.3f}")
    return failures


# ---------------------------------------------------------------------------
# output


def emit_csv(result: ExperimentResult, path: str) -> None:
    if not result.rows:
        raise EmptyResultError("experiment produced no rows")
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_COLUMNS)
            for r in result.rows:
                w.writerow([r.N, r.trial, r.seed, r.method, r.size,
                            "true" if r.optimal else "false", f"{r.runtime_ms:.3f}"])
    except OSError as exc:
        raise MTFRError(f"cannot write CSV to {path}: {exc.strerror or exc}", code="IO") from exc


def read_csv(path: str) -> list[Row]:
    with open(path, newline="", encoding="utf-8") as fh:
        return [
            Row(int(d["N"]), int(d["trial"]), int(d["seed"]), d["method"], int(d["size"]),
                d["optimal"] == "true", float(d["runtime_ms"]))
            for d in csv.DictReader(fh)
        ]


_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def render_svg(result: ExperimentResult, title: str | None = None) -> str:
    """Mean size vs N per method, with one-std error bars."""
    if not result.rows:
        raise EmptyResultError("experiment produced no rows")
    W, H = 640, 420
    left, right, top, bottom = 60, 150, 40, 50
    xs = result.sizes
    pts = [(n, m, result.aggregates[(n, m)]) for m in result.methods for n in xs
           if (n, m) in result.aggregates]
    y_hi = max(a.mean + a.std for _, _, a in pts)
    y_max = max(1.0, math.ceil(y_hi))
    x_lo, x_hi = min(xs), max(xs)
    span = (x_hi - x_lo) or 1

    def px(n: float) -> float:
        return left + (n - x_lo) / span * (W - left - right)

    def py(v: float) -> float:
        return H - bottom - v / y_max * (H - top - bottom)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{W / 2:.1f}" y="22" text-anchor="middle" font-size="15">'
        f'{escape(title or result.name)}</text>',
        f'<line x1="{left}" y1="{H - bottom}" x2="{W - right}" y2="{H - bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{H - bottom}" stroke="black"/>',
        f'<text x="{(left + W - right) / 2:.1f}" y="{H - 12}" text-anchor="middle" font-size="12">N (nodes per side)</text>',
        f'<text x="16" y="{(top + H - bottom) / 2:.1f}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 16 {(top + H - bottom) / 2:.1f})">mean removals</text>',
    ]
    for n in xs:
        out.append(f'<text x="{px(n):.1f}" y="{H - bottom + 16}" text-anchor="middle" font-size="11">{n}</text>')
    ticks = 5
    for i in range(ticks + 1):
        v = y_max * i / ticks
        out.append(f'<text x="{left - 6}" y="{py(v) + 4:.1f}" text-anchor="end" font-size="11">{v:g}</text>')
    for k, m in enumerate(result.methods):
        color = _COLORS[k % len(_COLORS)]
        series = [(n, result.aggregates[(n, m)]) for n in xs if (n, m) in result.aggregates]
        coords = " ".join(f"{px(n):.1f},{py(a.mean):.1f}" for n, a in series)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{coords}">'
                   f'<title>{escape(m)}</title></polyline>')
        for n, a in series:
            x = px(n)
            out.append(f'<line x1="{x:.1f}" y1="{py(a.mean - a.std):.1f}" x2="{x:.1f}" '
                       f'y2="{py(a.mean + a.std):.1f}" stroke="{color}"/>')
            out.append(f'<circle cx="{x:.1f}" cy="{py(a.mean):.1f}" r="3" fill="{color}"/>')
        ly = top + 10 + 18 * k
        out.append(f'<line x1="{W - right + 10}" y1="{ly}" x2="{W - right + 30}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{W - right + 36}" y="{ly + 4}" font-size="12">{escape(m)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plot(result: ExperimentResult, path: str, title: str | None = None) -> None:
    svg = render_svg(result, title)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except OSError as exc:
        raise MTFRError(f"cannot write SVG to {path}: {exc.strerror or exc}", code="IO") from exc

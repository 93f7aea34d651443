"""Command-line front end.

Every subcommand writes CSV or JSON to stdout (or ``--output``). Floats are
printed with 12 significant digits so identical configs give identical bytes.
Errors go to stderr as ``{"error", "message", "exit_code"}`` JSON with exit
code 2 (config) or 3 (numerical contract).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .connectivity import connectivity_report
from .dynamics import Schedule, SearchSystem, TimeSeries, find_peak, overlap_spectrum, run_schedule
from .errors import ConfigError, QwalkError
from .graphs import Graph, graph_to_dict, graph_to_edgelist, load_graph, parse_graph_spec
from .oracle import compare, predictions_for, schedule_for
from .spectral import MODES, hermitian_eig

__all__ = ["ExperimentConfig", "main", "parse_graph_spec", "run", "run_experiment"]

SIG_DIGITS = 12


def fmt(x: float) -> str:
    return f"{x:.{SIG_DIGITS}g}"


def _clean(obj):
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return float(fmt(x)) if math.isfinite(x) else None
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_clean(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(x) for x in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_clean(obj), indent=2) + "\n"


def to_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) if isinstance(x, (float, np.floating)) else x for x in row])
    return buf.getvalue()


@dataclass
class ExperimentConfig:
    """A search or schedule run: exactly one of ``schedule`` or ``gamma``+``tmax``."""

    graph: str
    marked: int | None = None
    mode: str = "adjacency"
    schedule: Schedule | None = None
    gamma: float | None = None
    tmax: float | None = None
    dt: float | None = None
    observables: list[str] = field(default_factory=lambda: ["a"])
    out_format: str = "csv"
    output: str | None = None
    reduced: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        has_pair = self.gamma is not None or self.tmax is not None
        if (self.schedule is None) == (not has_pair):
            raise ConfigError("give exactly one of a schedule or gamma with tmax")
        if has_pair and (self.gamma is None or self.tmax is None):
            raise ConfigError("gamma and tmax must be given together")
        if self.out_format not in ("csv", "json"):
            raise ConfigError(f"output format must be csv or json, got {self.out_format!r}")
        if self.dt is not None and not self.dt > 0:
            raise ConfigError(f"dt must be positive, got {self.dt}")

    def resolved_schedule(self) -> Schedule:
        if self.schedule is not None:
            return self.schedule
        return Schedule(((self.gamma, self.tmax),))


def default_marked(g: Graph) -> int:
    # vertex 0 is off the bridge for joined graphs; the other families are vertex-transitive
    return 0


def run_experiment(cfg: ExperimentConfig) -> tuple[Graph, TimeSeries]:
    g = load_graph(cfg.graph)
    marked = default_marked(g) if cfg.marked is None else cfg.marked
    system = SearchSystem(g, marked, cfg.mode, reduced=cfg.reduced)
    schedule = cfg.resolved_schedule()
    dt = cfg.dt if cfg.dt is not None else schedule.stages[0][1] / 2000
    return g, run_schedule(system, schedule, dt, cfg.observables)


def render_time_series(g: Graph, cfg: ExperimentConfig, ts: TimeSeries) -> str:
    if cfg.out_format == "csv":
        rows = ([t, *p] for t, p in zip(ts.times, ts.probabilities))
        return to_csv(["time", *ts.labels], rows)
    peaks = {}
    for lb in ts.labels:
        t, p = find_peak(ts, lb)
        peaks[lb] = {"time": t, "probability": p}
    return dumps({
        "graph": str(g.family) if g.family else cfg.graph,
        "marked": default_marked(g) if cfg.marked is None else cfg.marked,
        "mode": cfg.mode,
        "stages": [list(s) for s in cfg.resolved_schedule().stages],
        "times": ts.times,
        "probabilities": {lb: ts.column(lb) for lb in ts.labels},
        "peaks": peaks,
    })


def _graph_label(g: Graph, ref: str) -> str:
    return str(g.family) if g.family else ref


def cmd_graph(args) -> str:
    g = load_graph(args.graph)
    if args.format == "edges":
        return graph_to_edgelist(g)
    return json.dumps(graph_to_dict(g)) + "\n"


def cmd_connectivity(args) -> str:
    reports = [connectivity_report(load_graph(ref)) for ref in args.graph]
    if args.table:
        fields = list(reports[0].to_dict())
        return to_csv(fields, ([r.to_dict()[f] for f in fields] for r in reports))
    if len(reports) == 1:
        return dumps(reports[0].to_dict())
    return dumps([r.to_dict() for r in reports])


def _system(args) -> tuple[Graph, SearchSystem, int]:
    g = load_graph(args.graph)
    marked = default_marked(g) if args.marked is None else args.marked
    return g, SearchSystem(g, marked, args.mode, reduced=not args.full), marked


def cmd_spectrum(args) -> str:
    g, system, marked = _system(args)
    dec = hermitian_eig(system.hamiltonian(args.gamma))
    overlaps = {
        p: np.abs(dec.eigenvectors.conj().T @ system.probe(p)) ** 2 for p in args.probes
    }
    cells = [
        {"label": lb, "size": len(c)} for lb, c in zip(system.partition.labels, system.partition.cells)
    ]
    return dumps({
        "graph": _graph_label(g, args.graph),
        "marked": marked,
        "gamma": args.gamma,
        "mode": args.mode,
        "reduced": not args.full,
        "dim": system.dim,
        "cells": cells,
        "eigenvalues": dec.eigenvalues,
        "overlaps": overlaps,
    })


def parse_gammas(text: str) -> np.ndarray:
    parts = text.split(":")
    try:
        if len(parts) == 3:
            lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
            if steps < 1 or not 0 < lo <= hi:
                raise ValueError
            return np.linspace(lo, hi, steps)
        return np.array([float(x) for x in text.split(",")])
    except ValueError:
        raise ConfigError(f"bad gamma range {text!r}: expected lo:hi:steps with 0 < lo <= hi") from None


def cmd_sweep(args) -> str:
    g, system, _ = _system(args)
    table = overlap_spectrum(system, parse_gammas(args.gammas), probes=args.probes)
    header = ["gamma", "k", "E_k", *(f"overlap_{p}" for p in table.overlaps)]
    return to_csv(header, table.rows())


def _experiment_from_args(args, schedule: Schedule | None) -> ExperimentConfig:
    return ExperimentConfig(
        graph=args.graph,
        marked=args.marked,
        mode=args.mode,
        schedule=schedule,
        gamma=getattr(args, "gamma", None),
        tmax=getattr(args, "tmax", None),
        dt=args.dt,
        observables=args.observables,
        out_format=args.out,
        reduced=not args.full,
    )


def cmd_search(args) -> str:
    cfg = _experiment_from_args(args, None)
    g, ts = run_experiment(cfg)
    return render_time_series(g, cfg, ts)


def cmd_schedule(args) -> str:
    if (args.stages is None) == (not args.auto):
        raise ConfigError("give exactly one of --stages or --auto")
    if args.auto:
        schedule = schedule_for(load_graph(args.graph), exact_gamma=args.exact_gamma)
    else:
        schedule = Schedule.parse(args.stages)
    cfg = _experiment_from_args(args, schedule)
    g, ts = run_experiment(cfg)
    return render_time_series(g, cfg, ts)


def cmd_predict(args) -> str:
    g = load_graph(args.graph)
    if g.family is None:
        raise ConfigError("predict needs a family spec, not a graph file")
    preds = predictions_for(g.family)
    return dumps({
        "graph": str(g.family),
        "predictions": [p.to_dict() for p in preds],
        "schedule": [list(s) for s in schedule_for(g.family, exact_gamma=args.exact_gamma).stages],
    })


def cmd_compare(args) -> str:
    g = load_graph(args.graph)
    marked = default_marked(g) if args.marked is None else args.marked
    return dumps(compare(g, marked, args.mode))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _csv_list(text: str) -> list[str]:
    items = [x.strip() for x in text.split(",") if x.strip()]
    if not items:
        raise argparse.ArgumentTypeError("expected a comma-separated list")
    return items


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qwalk", description="Quantum-walk search on graph families.")
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_arg(sp, multiple=False):
        help_ = 'family spec such as "simplex_complete:M=5", or @file (.json or edge list)'
        if multiple:
            sp.add_argument("--graph", action="append", required=True, help=help_)
        else:
            sp.add_argument("--graph", required=True, help=help_)

    def system_args(sp):
        sp.add_argument("--marked", type=int, default=None)
        sp.add_argument("--mode", choices=MODES, default="adjacency")
        sp.add_argument("--full", action="store_true", help="simulate the full vertex space")

    sp = sub.add_parser("graph", help="export a graph")
    graph_arg(sp)
    sp.add_argument("--format", choices=("json", "edges"), default="json")
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("connectivity", help="connectivity report")
    graph_arg(sp, multiple=True)
    sp.add_argument("--table", action="store_true", help="emit one CSV row per graph")
    sp.set_defaults(func=cmd_connectivity)

    sp = sub.add_parser("spectrum", help="eigenvalues and probe overlaps at one gamma")
    graph_arg(sp)
    system_args(sp)
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--probes", type=_csv_list, default=["s", "a"])
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("sweep", help="overlap spectrum over a gamma range (CSV)")
    graph_arg(sp)
    system_args(sp)
    sp.add_argument("--gammas", required=True, help="lo:hi:steps or a comma list")
    sp.add_argument("--probes", type=_csv_list, default=["s", "a"])
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("search", help="success probability at fixed gamma")
    graph_arg(sp)
    system_args(sp)
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--tmax", type=float, required=True)
    sp.add_argument("--dt", type=float, default=None)
    sp.add_argument("--observables", type=_csv_list, default=["a"])
    sp.add_argument("--out", choices=("csv", "json"), default="csv")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("schedule", help="piecewise-constant gamma schedule")
    graph_arg(sp)
    system_args(sp)
    sp.add_argument("--stages", help='"g1:t1,g2:t2"')
    sp.add_argument("--auto", action="store_true", help="use the predicted schedule")
    sp.add_argument("--exact-gamma", action="store_true", help="exact first-stage rate for simplex")
    sp.add_argument("--dt", type=float, default=None)
    sp.add_argument("--observables", type=_csv_list, default=["a"])
    sp.add_argument("--out", choices=("csv", "json"), default="csv")
    sp.set_defaults(func=cmd_schedule)

    sp = sub.add_parser("predict", help="closed-form predictions (JSON)")
    graph_arg(sp)
    sp.add_argument("--exact-gamma", action="store_true")
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("compare", help="predicted vs numeric (JSON)")
    graph_arg(sp)
    sp.add_argument("--marked", type=int, default=None)
    sp.add_argument("--mode", choices=MODES, default="adjacency")
    sp.set_defaults(func=cmd_compare)
    return p


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        text = args.func(args)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            stdout.write(text)
        return 0
    except QwalkError as exc:
        stderr.write(json.dumps({"error": exc.kind, "message": str(exc), "exit_code": exc.exit_code}) + "\n")
        return exc.exit_code
    except OSError as exc:
        stderr.write(json.dumps({"error": "config_error", "message": str(exc), "exit_code": 2}) + "\n")
        return 2


def main() -> None:
    sys.exit(run())

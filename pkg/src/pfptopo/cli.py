"""Command-line front end: generate, analyze, compare, sweep.

Exit codes: 0 success, 1 usage or invalid input, 2 I/O error, 3 comparison failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from pfptopo import __version__
from pfptopo.generators import MODELS, GrowthConfig, grow
from pfptopo.io_formats import (
    REPORT_KEYS,
    FormatError,
    read_config_values,
    read_edge_list,
    read_id_map,
    read_report,
    read_reports,
    write_edge_list,
    write_report,
    write_series,
)
from pfptopo.metrics import DisconnectedGraphError, analyze, default_fit_range
from pfptopo.reference import DEFAULT_TOLERANCES, REFERENCES, compare, format_comparison, load_tolerances

log = logging.getLogger("pfptopo")

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_COMPARE = 0, 1, 2, 3

SERIES_SUFFIXES = (
    "pdf", "ccdf", "rank", "richclub", "l_ccdf", "l_vs_k", "kt_ccdf", "kt_vs_k",
    "kq_ccdf", "kq_vs_k", "knn_ccdf", "knn_vs_k", "cb_ccdf", "cb_vs_k",
)
SWEEP_PARAMS = ("delta", "alpha", "p", "q", "m")

# flag name -> GrowthConfig field
_CONFIG_FLAGS = {
    "model": "model", "n": "target_n", "m": "m", "p": "p", "q": "q", "alpha": "alpha",
    "delta": "delta", "seed": "rng_seed", "seed_nodes": "seed_nodes", "seed_extra_edges": "seed_extra_edges",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _write_manifest(path: Path, command: str, started: float, **fields) -> None:
    manifest = {"command": command, "version": __version__, **fields, "duration_s": round(time.time() - started, 3)}
    path.write_text(json.dumps(manifest, indent=2, sort_keys=False) + "\n")


def _load_config_source(path: str) -> dict:
    text = Path(path).read_text()
    if path.endswith(".json"):
        data = json.loads(text)
        return dict(data.get("config", data))
    return read_config_values(io.StringIO(text))


def build_config(args) -> GrowthConfig:
    """Defaults, then flags, then the config file (which wins)."""
    values = {}
    for flag, key in _CONFIG_FLAGS.items():
        value = getattr(args, flag, None)
        if value is not None:
            values[key] = value
    if getattr(args, "config", None):
        values.update(_load_config_source(args.config))
    values.setdefault("model", "pfp")
    try:
        return GrowthConfig.from_dict(values)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def graph_filename(config: GrowthConfig) -> str:
    return f"{config.model}_n{config.target_n}_seed{config.rng_seed}.edges"


def generate_runs(base: GrowthConfig, runs: int, out: Path) -> list[Path]:
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for i in range(runs):
        started = time.time()
        config = GrowthConfig.from_dict(base.to_dict() | {"rng_seed": base.rng_seed + i})
        g = grow(config)
        path = out / graph_filename(config)
        with open(path, "w") as fh:
            write_edge_list(g, fh, config)
        _write_manifest(
            path.with_suffix(".manifest.json"), "generate", started,
            config=config.to_dict(), inputs=[], outputs=[path.name],
            skipped_links=g.meta.get("skipped_links", 0),
        )
        log.info("wrote %s (N=%d, L=%d)", path, g.node_count, g.edge_count)
        paths.append(path)
    return paths


def analyze_file(path: Path, out: Path, fit: tuple | None, lenient: bool, fmt: str,
                 id_map: dict | None = None, parallel: bool = False) -> Path:
    started = time.time()
    with open(path) as fh:
        g = read_edge_list(fh, strict=not lenient, id_map=id_map)
    fit_range = None
    if fit is not None and (fit[0] is not None or fit[1] is not None):
        lo, hi = default_fit_range(g)
        fit_range = (fit[0] if fit[0] is not None else lo, fit[1] if fit[1] is not None else hi)
    result = analyze(g, fit_range, parallel=parallel)
    out.mkdir(parents=True, exist_ok=True)
    stem = path.name[: -len(".edges")] if path.name.endswith(".edges") else path.stem
    report_path = out / f"{stem}.report.{fmt}"
    with open(report_path, "w") as fh:
        write_report(result.report, fmt, fh)
    outputs = [report_path.name]
    for suffix in SERIES_SUFFIXES:
        series_path = out / f"{stem}.{suffix}.dat"
        with open(series_path, "w") as fh:
            write_series(result.series[suffix], fh, name=suffix)
        outputs.append(series_path.name)
    _write_manifest(
        out / f"{stem}.analyze.manifest.json", "analyze", started,
        inputs=[str(path)], outputs=outputs, fit_kmin=result.fit_range[0], fit_kupper=result.fit_range[1],
        skipped_lines=g.meta.get("skipped_lines", 0),
    )
    log.info("analyzed %s: l*=%.4f gamma=%.4f", path, result.report.l_star, result.report.gamma)
    return report_path


def cmd_generate(args) -> int:
    config = build_config(args)
    if args.runs < 1:
        raise UsageError("--runs must be at least 1")
    generate_runs(config, args.runs, Path(args.out))
    return EXIT_OK


def cmd_analyze(args) -> int:
    id_map = None
    if args.id_map:
        with open(args.id_map) as fh:
            id_map = read_id_map(fh)
    for name in args.inputs:
        analyze_file(Path(name), Path(args.out), (args.fit_kmin, args.fit_kupper), args.lenient,
                     args.format, id_map, args.parallel)
    return EXIT_OK


def _collect_reports(paths: list[str]) -> list:
    reports = []
    for name in paths:
        p = Path(name)
        files = sorted(p.glob("*.report.json")) + sorted(p.glob("*.report.csv")) if p.is_dir() else [p]
        for f in files:
            with open(f) as fh:
                reports.extend(read_reports(fh, "csv" if f.suffix == ".csv" else "json"))
    if not reports:
        raise UsageError("no reports found")
    return reports


def cmd_compare(args) -> int:
    reports = _collect_reports(args.inputs)
    if args.reference in REFERENCES:
        reference = REFERENCES[args.reference]
        tolerances = dict(DEFAULT_TOLERANCES[args.reference])
    elif Path(args.reference).is_file():
        with open(args.reference) as fh:
            reference = read_report(fh, "csv" if args.reference.endswith(".csv") else "json").to_dict()
        tolerances = {}
    else:
        raise UsageError(f"unknown reference {args.reference!r}; use one of {sorted(REFERENCES)} or a report file")
    if args.tolerances:
        with open(args.tolerances) as fh:
            tolerances = load_tolerances(fh)
    rows = compare(reports, reference, tolerances)
    print(f"{len(reports)} report(s) vs reference {args.reference}")
    print(format_comparison(rows))
    failed = [r.metric for r in rows if r.passed is False]
    if failed:
        print(f"FAIL: {', '.join(failed)}")
        return EXIT_COMPARE
    print("PASS")
    return EXIT_OK


def parse_grid(specs: list[str]) -> dict[str, list[float]]:
    grid: dict[str, list[float]] = {}
    for spec in specs or []:
        key, sep, values = spec.partition("=")
        key = key.strip()
        if not sep or key not in SWEEP_PARAMS:
            raise UsageError(f"grid entries look like 'delta=0,0.048,0.1' over {SWEEP_PARAMS}, got {spec!r}")
        try:
            grid[key] = [int(v) if key == "m" else float(v) for v in values.split(",") if v.strip()]
        except ValueError:
            raise UsageError(f"non-numeric value in grid entry {spec!r}") from None
        if not grid[key]:
            raise UsageError(f"grid entry {spec!r} has no values")
    if not grid:
        raise UsageError("empty parameter grid")
    return grid


def _run_point(task):
    base, runs, point_dir, fit, parallel = task
    reports = []
    for path in generate_runs(base, runs, point_dir):
        report_path = analyze_file(path, point_dir, fit, False, "json", parallel=parallel)
        with open(report_path) as fh:
            reports.append(read_report(fh))
    return reports


def cmd_sweep(args) -> int:
    grid = parse_grid(args.grid)
    base = build_config(args)
    if args.runs < 1:
        raise UsageError("--runs must be at least 1")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    keys = list(grid)
    points = list(itertools.product(*(grid[k] for k in keys)))
    tasks = []
    for i, values in enumerate(points):
        try:
            config = GrowthConfig.from_dict(base.to_dict() | dict(zip(keys, values)))
        except ValueError as exc:
            raise UsageError(f"grid point {dict(zip(keys, values))}: {exc}") from None
        tasks.append((config, args.runs, out / f"point_{i:03d}", (args.fit_kmin, args.fit_kupper), False))
    started = time.time()
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_run_point, tasks))
    else:
        results = [_run_point(t) for t in tasks]
    summary = out / "sweep.csv"
    with open(summary, "w") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["point", *keys, "runs", *REPORT_KEYS])
        for i, (values, reports) in enumerate(zip(points, results)):
            means = [sum(getattr(r, k) for r in reports) / len(reports) for k in REPORT_KEYS]
            writer.writerow([i, *map(repr, values), len(reports), *map(repr, means)])
    _write_manifest(out / "sweep.manifest.json", "sweep", started, config=base.to_dict(),
                    grid=grid, runs=args.runs, outputs=[summary.name])
    print(summary)
    return EXIT_OK


def _add_growth_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", choices=MODELS)
    p.add_argument("--n", type=int, help="target number of nodes (default 11122)")
    p.add_argument("--m", type=int, help="links per new node (ba)")
    p.add_argument("--p", type=float, help="branch probability (ig, test, pfp)")
    p.add_argument("--q", type=float, help="second branch probability (pfp)")
    p.add_argument("--alpha", type=float, help="fixed preference exponent (test)")
    p.add_argument("--delta", type=float, help="positive-feedback strength (pfp)")
    p.add_argument("--seed", type=int, help="RNG seed of the first run")
    p.add_argument("--seed-nodes", type=int)
    p.add_argument("--seed-extra-edges", type=int)
    p.add_argument("--config", help="key = value file or run manifest; overrides flags")
    p.add_argument("--runs", type=int, default=1)


def _add_fit_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--fit-kmin", type=int)
    p.add_argument("--fit-kupper", type=int)


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pfptopo", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="grow synthetic topologies")
    _add_growth_flags(p)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="compute the metrics report and series for edge lists")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--out", default=".")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--lenient", action="store_true", help="skip self-loops and duplicate edges")
    p.add_argument("--id-map", help="two-column external_id dense_id file")
    p.add_argument("--parallel", action="store_true", help="parallel betweenness accumulation")
    _add_fit_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare", help="average reports and compare with a reference column")
    p.add_argument("inputs", nargs="+", help="report files or directories")
    p.add_argument("--reference", default="pfp", help="as, pfp, ig, ba or a report file")
    p.add_argument("--tolerances", help="JSON tolerance file")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", help="generate and analyze over a parameter grid")
    _add_growth_flags(p)
    p.add_argument("--grid", action="append", help="e.g. delta=0,0.048,0.1 (repeatable)")
    p.add_argument("--out", default="sweep")
    p.add_argument("--jobs", type=int, default=1)
    _add_fit_flags(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, DisconnectedGraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, FormatError, json.JSONDecodeError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Text formats: edge lists, id maps, metric reports, series files and growth configs.

All writers are byte-stable and locale-independent: integers are written
plainly and floats with ``repr`` (shortest round-tripping form).
"""

from __future__ import annotations

import csv
import json
import logging
import math
from typing import IO, Iterable

import numpy as np

from pfptopo.generators import GrowthConfig
from pfptopo.graph import Graph
from pfptopo.metrics import DistributionSeries, MetricsReport, SERIES_KINDS

log = logging.getLogger(__name__)

REPORT_KEYS = MetricsReport.keys()
_INT_FIELDS = {"n", "links", "k_max", "max_kt", "max_kq"}


class FormatError(ValueError):
    """Malformed input file; the message names the offending line."""


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if value.is_integer() and abs(value) < 2**53:
        return str(int(value))
    return repr(value)


def _data_lines(stream: IO[str]) -> Iterable[tuple[int, list[str]]]:
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def read_id_map(stream: IO[str]) -> dict[str, int]:
    """Two-column ``external_id dense_id`` mapping, e.g. AS number to node id."""
    mapping: dict[str, int] = {}
    for lineno, tokens in _data_lines(stream):
        if len(tokens) != 2:
            raise FormatError(f"line {lineno}: expected 'external_id dense_id'")
        try:
            dense = int(tokens[1])
        except ValueError:
            raise FormatError(f"line {lineno}: dense id {tokens[1]!r} is not an integer") from None
        if dense < 0:
            raise FormatError(f"line {lineno}: negative dense id {dense}")
        if tokens[0] in mapping:
            raise FormatError(f"line {lineno}: external id {tokens[0]} mapped twice")
        mapping[tokens[0]] = dense
    return mapping


def read_edge_list(stream: IO[str], strict: bool = True, id_map: dict[str, int] | None = None) -> Graph:
    """Parse ``u v`` lines into a Graph with N = max id + 1.

    In strict mode self-loops and repeated edges raise :class:`FormatError`;
    in lenient mode they are skipped and counted in ``g.meta["skipped_lines"]``.
    """
    edges: list[tuple[int, int, int]] = []
    max_id = -1
    for lineno, tokens in _data_lines(stream):
        if len(tokens) < 2:
            raise FormatError(f"line {lineno}: expected two node ids")
        ids = []
        for tok in tokens[:2]:
            if id_map is not None:
                if tok not in id_map:
                    raise FormatError(f"line {lineno}: id {tok} missing from id map")
                ids.append(id_map[tok])
                continue
            try:
                value = int(tok)
            except ValueError:
                raise FormatError(f"line {lineno}: {tok!r} is not an integer node id") from None
            if value < 0:
                raise FormatError(f"line {lineno}: negative node id {value}")
            ids.append(value)
        u, v = ids
        max_id = max(max_id, u, v)
        edges.append((lineno, u, v))

    g = Graph(max_id + 1)
    skipped = 0
    for lineno, u, v in edges:
        if g.add_edge(u, v):
            continue
        if strict:
            what = "self-loop" if u == v else "duplicate edge"
            raise FormatError(f"line {lineno}: {what} {u} {v}")
        skipped += 1
    if skipped:
        log.warning("skipped %d self-loop/duplicate line(s)", skipped)
    g.meta["skipped_lines"] = skipped
    return g


def write_edge_list(g: Graph, stream: IO[str], config: GrowthConfig | None = None) -> None:
    """Each edge once as ``u v`` with u < v, lexicographically sorted."""
    stream.write(f"# nodes {g.node_count} links {g.edge_count}\n")
    if config is None and "config" in g.meta:
        config = GrowthConfig.from_dict(g.meta["config"])
    if config is not None:
        stream.write(f"# config-hash {config.digest()}\n")
    for u, v in g.edges():
        stream.write(f"{u} {v}\n")


def write_report(report: MetricsReport, fmt: str, stream: IO[str]) -> None:
    write_reports([report], fmt, stream)


def write_reports(reports: list[MetricsReport], fmt: str, stream: IO[str]) -> None:
    if fmt == "json":
        # NaN (an unfittable exponent) becomes null to keep the JSON standard
        rows = [{k: None if isinstance(v, float) and math.isnan(v) else v for k, v in r.to_dict().items()}
                for r in reports]
        json.dump(rows[0] if len(rows) == 1 else rows, stream, indent=2)
        stream.write("\n")
    elif fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(REPORT_KEYS)
        for report in reports:
            row = report.to_dict()
            writer.writerow([_fmt(row[k]) for k in REPORT_KEYS])
    else:
        raise ValueError(f"unknown report format {fmt!r}")


def report_from_dict(d: dict) -> MetricsReport:
    missing = [k for k in REPORT_KEYS if k not in d]
    if missing:
        raise FormatError(f"report is missing fields {missing}")
    values = {}
    for k in REPORT_KEYS:
        if d[k] is None or d[k] == "":
            values[k] = float("nan")
        else:
            values[k] = int(d[k]) if k in _INT_FIELDS else float(d[k])
    return MetricsReport(**values)


def read_report(stream: IO[str], fmt: str = "json") -> MetricsReport:
    reports = read_reports(stream, fmt)
    if len(reports) != 1:
        raise FormatError(f"expected one report, found {len(reports)}")
    return reports[0]


def read_reports(stream: IO[str], fmt: str = "json") -> list[MetricsReport]:
    if fmt == "json":
        data = json.load(stream)
        rows = data if isinstance(data, list) else [data]
    elif fmt == "csv":
        rows = list(csv.DictReader(stream))
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    return [report_from_dict(row) for row in rows]


def write_series(series: DistributionSeries, stream: IO[str], name: str | None = None) -> None:
    stream.write(f"# kind {series.kind}\n")
    if name:
        stream.write(f"# series {name}\n")
    for x, y in zip(series.x, series.y):
        stream.write(f"{_fmt(x)} {_fmt(y)}\n")


def read_series(stream: IO[str]) -> DistributionSeries:
    kind = None
    xs, ys = [], []
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if line.startswith("# kind"):
            kind = line.split()[2]
            continue
        if not line or line.startswith("#"):
            continue
        try:
            x, y = (float(t) for t in line.split())
        except ValueError:
            raise FormatError(f"line {lineno}: expected 'x y'") from None
        xs.append(x)
        ys.append(y)
    if kind not in SERIES_KINDS:
        raise FormatError("series file lacks a '# kind' header")
    return DistributionSeries(np.array(xs), np.array(ys), kind)


CONFIG_KEYS = ("model", "target_n", "m", "p", "q", "alpha", "delta", "seed_nodes", "seed_extra_edges", "rng_seed")


def read_config_values(stream: IO[str]) -> dict[str, str]:
    """Flat ``key = value`` lines; '#' starts a comment."""
    values: dict[str, str] = {}
    for lineno, line in enumerate(stream, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise FormatError(f"line {lineno}: expected 'key = value'")
        if key not in CONFIG_KEYS:
            raise FormatError(f"line {lineno}: unknown config key {key!r}")
        values[key] = value.strip()
    return values


def read_config(stream: IO[str]) -> GrowthConfig:
    return GrowthConfig.from_dict(read_config_values(stream))


def write_config(config: GrowthConfig, stream: IO[str]) -> None:
    d = config.to_dict()
    for key in CONFIG_KEYS:
        stream.write(f"{key} = {_fmt(d[key]) if key != 'model' else d[key]}\n")

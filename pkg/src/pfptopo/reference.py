"""Published reference statistics (AS graph and three models at N = 11122) and tolerance bands."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO

from pfptopo.metrics import MetricsReport

_KEYS = MetricsReport.keys()


def _column(*values) -> dict[str, float]:
    return dict(zip(_KEYS, values))


REFERENCES: dict[str, dict[str, float]] = {
    #            n      links  <k>  gamma  phi    kmax  P1    P2    P3    l*    <kt>  kt_max <kq>   kq_max <knn> <cb> cb_max
    "as": _column(11122, 30054, 5.4, 2.22, 0.27, 2839, 0.26, 0.38, 0.14, 3.13, 12.7, 7482, 277, 9648, 660, 4.13, 3237),
    "pfp": _column(11122, 30151, 5.4, 2.22, 0.30, 2785, 0.28, 0.36, 0.12, 3.14, 12, 8611, 247, 9431, 482, 4.14, 3419),
    "ig": _column(11122, 33349, 6.0, 2.22, 0.32, 700, 0.26, 0.34, 0.11, 3.6, 10.4, 4123, 105.4, 8780, 103, 4.6, 1002),
    "ba": _column(11122, 33349, 6.0, 3.0, 0.045, 292, 0.0, 0.0, 0.40, 4.3, 0.1, 64, 1.3, 527, 20, 5.3, 1064),
}


@dataclass(frozen=True)
class Tolerance:
    """Either a symmetric band ``abs`` around the reference or a fixed ``[lo, hi]`` range."""

    abs: float | None = None
    lo: float | None = None
    hi: float | None = None

    def bounds(self, reference: float) -> tuple[float, float]:
        if self.abs is not None:
            return reference - self.abs, reference + self.abs
        return self.lo, self.hi

    def accepts(self, value: float, reference: float) -> bool:
        lo, hi = self.bounds(reference)
        return lo <= value <= hi

    @classmethod
    def parse(cls, spec) -> "Tolerance":
        if isinstance(spec, (int, float)):
            return cls(abs=float(spec))
        if isinstance(spec, (list, tuple)) and len(spec) == 2:
            return cls(lo=float(spec[0]), hi=float(spec[1]))
        if isinstance(spec, dict):
            if "abs" in spec:
                return cls(abs=float(spec["abs"]))
            if "range" in spec:
                return cls.parse(spec["range"])
        raise ValueError(f"cannot parse tolerance {spec!r}")


_PFP_BANDS = {
    "links": Tolerance(lo=29700, hi=30600),
    "gamma": Tolerance(abs=0.08),
    "k_max": Tolerance(lo=2000, hi=3600),
    "phi_1pct": Tolerance(abs=0.05),
    "l_star": Tolerance(abs=0.20),
    "mean_kt": Tolerance(abs=4),
    "mean_kq": Tolerance(abs=80),
    "mean_cb": Tolerance(abs=0.25),
}

DEFAULT_TOLERANCES: dict[str, dict[str, Tolerance]] = {
    "pfp": _PFP_BANDS,
    # the AS column is judged with the PFP bands
    "as": _PFP_BANDS,
    "ig": {
        "links": Tolerance(abs=100),
        "gamma": Tolerance(abs=0.10),
        "k_max": Tolerance(lo=300, hi=1400),
    },
    "ba": {
        "gamma": Tolerance(abs=0.15),
        "phi_1pct": Tolerance(abs=0.02),
        "k_max": Tolerance(lo=150, hi=600),
        "p_k1": Tolerance(abs=0.0),
        "p_k2": Tolerance(abs=0.0),
        "p_k3": Tolerance(abs=0.05),
    },
}


def load_tolerances(stream: IO[str]) -> dict[str, Tolerance]:
    """JSON object mapping field name to ``0.1``, ``[lo, hi]``, ``{"abs": x}`` or ``{"range": [lo, hi]}``."""
    data = json.load(stream)
    unknown = set(data) - set(_KEYS)
    if unknown:
        raise ValueError(f"tolerances name unknown fields {sorted(unknown)}")
    return {k: Tolerance.parse(v) for k, v in data.items()}


def mean_report(reports: list[MetricsReport]) -> dict[str, float]:
    if not reports:
        raise ValueError("no reports to average")
    return {k: sum(getattr(r, k) for r in reports) / len(reports) for k in _KEYS}


@dataclass
class ComparisonRow:
    metric: str
    value: float
    reference: float
    deviation: float
    tolerance: Tolerance | None
    passed: bool | None


def compare(
    reports: list[MetricsReport], reference: dict[str, float], tolerances: dict[str, Tolerance]
) -> list[ComparisonRow]:
    """Field-wise mean of ``reports`` against ``reference``; only toleranced fields get a verdict."""
    means = mean_report(reports)
    rows = []
    for key in _KEYS:
        ref = float(reference[key])
        value = means[key]
        tol = tolerances.get(key)
        rows.append(ComparisonRow(key, value, ref, value - ref, tol, None if tol is None else tol.accepts(value, ref)))
    return rows


def format_comparison(rows: list[ComparisonRow]) -> str:
    lines = [f"{'metric':<12} {'mean':>14} {'reference':>12} {'deviation':>12} {'band':>22}  result"]
    for row in rows:
        if row.tolerance is None:
            band, verdict = "-", "-"
        else:
            lo, hi = row.tolerance.bounds(row.reference)
            band = f"[{lo:.4g}, {hi:.4g}]"
            verdict = "pass" if row.passed else "FAIL"
        lines.append(
            f"{row.metric:<12} {row.value:>14.6g} {row.reference:>12.6g} {row.deviation:>12.4g} {band:>22}  {verdict}"
        )
    return "\n".join(lines)

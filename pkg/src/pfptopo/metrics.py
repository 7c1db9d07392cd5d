"""Topological statistics used to validate AS-level topology models.

All functions take a finished (immutable) :class:`~pfptopo.graph.Graph`.
Per-node results are numpy arrays indexed by node id; plot-ready curves
are :class:`DistributionSeries`.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields

import numpy as np

from pfptopo import _kernels
from pfptopo.graph import Graph

PDF = "pdf"
CCDF = "ccdf"
RANK = "rank"
RICHCLUB = "richclub"
PER_DEGREE_MEAN = "per_degree_mean"
SERIES_KINDS = (PDF, CCDF, RANK, RICHCLUB, PER_DEGREE_MEAN)


class DisconnectedGraphError(ValueError):
    """Raised by all-pairs metrics on graphs with more than one component."""


@dataclass
class DistributionSeries:
    x: np.ndarray
    y: np.ndarray
    kind: str

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=np.float64)
        self.y = np.asarray(self.y, dtype=np.float64)
        if self.x.shape != self.y.shape:
            raise ValueError("x and y must have the same length")
        if self.kind not in SERIES_KINDS:
            raise ValueError(f"unknown series kind {self.kind!r}")

    def __len__(self) -> int:
        return len(self.x)

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.y.tolist()))

    def at(self, x: float) -> float:
        i = np.searchsorted(self.x, x)
        if i == len(self.x) or self.x[i] != x:
            raise KeyError(x)
        return float(self.y[i])


@dataclass
class MetricsReport:
    """One column of the network-parameter table."""

    n: int
    links: int
    mean_degree: float
    gamma: float
    phi_1pct: float
    k_max: int
    p_k1: float
    p_k2: float
    p_k3: float
    l_star: float
    mean_kt: float
    max_kt: int
    mean_kq: float
    max_kq: int
    mean_knn: float
    mean_cb: float
    max_cb: float

    @classmethod
    def keys(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def to_dict(self) -> dict:
        return asdict(self)


def ccdf_of(values) -> DistributionSeries:
    """Fraction of entries >= x, evaluated at every distinct value."""
    values = np.sort(np.asarray(values, dtype=np.float64))
    xs, first = np.unique(values, return_index=True)
    return DistributionSeries(xs, 1.0 - first / len(values), CCDF)


def per_degree_mean(degrees: np.ndarray, values) -> DistributionSeries:
    """Average of ``values`` over nodes sharing a degree; only degrees that occur."""
    degrees = np.asarray(degrees)
    values = np.asarray(values, dtype=np.float64)
    ks, inverse, counts = np.unique(degrees, return_inverse=True, return_counts=True)
    sums = np.zeros(len(ks))
    np.add.at(sums, inverse, values)
    return DistributionSeries(ks, sums / counts, PER_DEGREE_MEAN)


def _require_nodes(g: Graph) -> None:
    if g.node_count == 0:
        raise ValueError("graph has no nodes")


def degree_distribution(g: Graph) -> tuple[DistributionSeries, DistributionSeries]:
    """P(k) and P(degree >= k) over the degrees that occur."""
    _require_nodes(g)
    deg = g.degrees()
    ks, counts = np.unique(deg, return_counts=True)
    pdf = DistributionSeries(ks, counts / len(deg), PDF)
    return pdf, ccdf_of(deg)


def loglog_slope(series: DistributionSeries, x_min: float, x_max: float) -> float:
    """Least-squares slope of log10(y) against log10(x) for x in [x_min, x_max]."""
    sel = (series.x >= x_min) & (series.x <= x_max) & (series.x > 0) & (series.y > 0)
    if sel.sum() < 3:
        raise ValueError(f"need at least 3 points in [{x_min}, {x_max}], found {int(sel.sum())}")
    slope, _ = np.polyfit(np.log10(series.x[sel]), np.log10(series.y[sel]), 1)
    return float(slope)


def fit_powerlaw_gamma(ccdf: DistributionSeries, k_min: float, k_upper: float) -> float:
    """Exponent of P(k) ~ k**-gamma from the slope of the cumulative distribution."""
    return 1.0 + abs(loglog_slope(ccdf, k_min, k_upper))


def default_fit_range(g: Graph, min_tail: int = 10) -> tuple[int, int]:
    """(1, largest k with at least ``min_tail`` nodes of degree >= k)."""
    deg = np.sort(g.degrees())[::-1]
    return 1, int(deg[min(min_tail, len(deg)) - 1])


def rank_order(g: Graph) -> np.ndarray:
    """Node ids by decreasing degree, ties by ascending id."""
    return np.lexsort((np.arange(g.node_count), -g.degrees()))


def degree_rank(g: Graph) -> DistributionSeries:
    _require_nodes(g)
    order = rank_order(g)
    return DistributionSeries(np.arange(1, g.node_count + 1), g.degrees()[order], RANK)


def rank_exponent(rank: DistributionSeries, r_max: int = 10) -> float:
    """Exponent b of k ~ r**-b fitted over ranks 1..r_max."""
    return -loglog_slope(rank, 1, r_max)


def rich_club(g: Graph, order: np.ndarray | None = None) -> DistributionSeries:
    """phi(r/N): link density among the top-r nodes, for r = 2..N.

    ``order`` overrides the default degree ranking (used to probe tie effects).
    """
    n = g.node_count
    if n < 2:
        raise ValueError("rich-club connectivity needs at least 2 nodes")
    if order is None:
        order = rank_order(g)
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(1, n + 1)
    indptr, indices = g.csr()
    src = np.repeat(np.arange(n), np.diff(indptr))
    upper = src < indices
    entry = np.maximum(rank[src[upper]], rank[indices[upper]])
    inside = np.cumsum(np.bincount(entry, minlength=n + 1))[2:]
    r = np.arange(2, n + 1)
    return DistributionSeries(r / n, inside / (r * (r - 1) / 2.0), RICHCLUB)


def rich_club_at(g: Graph, fraction: float = 0.01, series: DistributionSeries | None = None) -> float:
    """phi at rank r = round(fraction * N), clipped to at least 2."""
    n = g.node_count
    if series is None:
        series = rich_club(g)
    r = max(2, int(round(fraction * n)))
    return float(series.y[r - 2])


def _check_connected(g: Graph, reached: np.ndarray) -> None:
    n = g.node_count
    if n and reached[0] != n:
        indptr, indices = g.csr()
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        stack = [0]
        while stack:
            v = stack.pop()
            for w in indices[indptr[v]:indptr[v + 1]]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(int(w))
        far = int(np.flatnonzero(~seen)[0])
        raise DisconnectedGraphError(f"graph is disconnected: node {far} is unreachable from node 0")


def _path_products(g: Graph, dist_sums: np.ndarray):
    n = g.node_count
    per_node = dist_sums / (n - 1)
    l_star = float(per_node.mean())
    deg = g.degrees()
    return per_node, l_star, ccdf_of(per_node), per_degree_mean(deg, per_node)


def shortest_path_stats(g: Graph):
    """Per-node mean distance l(v), characteristic path length l*, its ccdf and l-vs-k.

    Raises :class:`DisconnectedGraphError` if some pair is unreachable.
    """
    _require_nodes(g)
    if g.node_count < 2:
        raise ValueError("path lengths need at least 2 nodes")
    indptr, indices = g.csr()
    sums, reached = _kernels.bfs_distance_sums(indptr, indices)
    _check_connected(g, reached)
    return _path_products(g, sums)


def triangle_coefficients(g: Graph) -> np.ndarray:
    """k_t(v): number of triangles containing v."""
    return _kernels.triangle_counts(*g.csr())


def quadrangle_coefficients(g: Graph) -> np.ndarray:
    """k_q(v): number of simple 4-cycles containing v, chorded ones included."""
    return _kernels.quadrangle_counts(*g.csr())


def clustering_coefficient(k: int, k_t: int) -> float:
    if k < 2:
        return 0.0
    return 2.0 * k_t / (k * (k - 1))


def knn(g: Graph):
    """Nearest-neighbor average degree: per node, per degree, and the node average."""
    deg = g.degrees()
    if g.node_count == 0 or deg.min() == 0:
        raise ValueError("k_nn is undefined for degree-0 nodes")
    indptr, indices = g.csr()
    per_node = np.add.reduceat(deg[indices], indptr[:-1]) / deg
    return per_node, per_degree_mean(deg, per_node), float(per_node.mean())


def _betweenness_raw(g: Graph, parallel: bool = False, chunk: int = _kernels.SOURCE_CHUNK):
    indptr, indices = g.csr()
    driver = _kernels.brandes_parallel if parallel else _kernels.brandes_serial
    acc, dist_sums, reached = driver(indptr, indices, chunk)
    _check_connected(g, reached)
    inner = np.zeros(g.node_count)
    for row in acc:
        inner += row
    n = g.node_count
    # every node is an endpoint of 2(N-1) ordered pairs
    cb_star = (inner + 2.0 * (n - 1)) / n
    return cb_star, dist_sums


def betweenness(g: Graph, parallel: bool = False):
    """Normalised endpoint-inclusive betweenness C_B*(w) over ordered pairs.

    Returns per-node values, their ccdf and their per-degree means.
    """
    _require_nodes(g)
    if g.node_count < 2:
        raise ValueError("betweenness needs at least 2 nodes")
    cb_star, _ = _betweenness_raw(g, parallel)
    return cb_star, ccdf_of(cb_star), per_degree_mean(g.degrees(), cb_star)


def betweenness_slope(ccdf: DistributionSeries, n: int, min_tail: int = 10) -> float:
    """Log-log slope of the betweenness ccdf over its transit-dominated body.

    The window starts at twice the endpoint-only floor 2(N-1)/N, i.e. nodes
    whose transit load at least matches their own endpoint load, and ends at
    the largest value still held by ``min_tail`` nodes.
    """
    floor = 2.0 * (n - 1) / n
    held = ccdf.x[ccdf.y * n >= min_tail - 1e-9]
    return loglog_slope(ccdf, 2.0 * floor, float(held.max()))


def _gamma_or_nan(ccdf: DistributionSeries, fit_range) -> float:
    try:
        return fit_powerlaw_gamma(ccdf, *fit_range)
    except ValueError:
        return float("nan")


@dataclass
class Analysis:
    """Everything computed for one graph: the report plus the series and per-node vectors."""

    report: MetricsReport
    series: dict
    per_node: dict
    fit_range: tuple[int, int]


def analyze(g: Graph, fit_range: tuple[int, int] | None = None, parallel: bool = False) -> Analysis:
    _require_nodes(g)
    if g.node_count < 2:
        raise ValueError("analysis needs at least 2 nodes")
    if fit_range is None:
        fit_range = default_fit_range(g)
    deg = g.degrees()
    n = g.node_count
    pdf, ccdf = degree_distribution(g)
    rank = degree_rank(g)
    rc = rich_club(g)
    cb_star, dist_sums = _betweenness_raw(g, parallel)
    l_node, l_star, l_ccdf, l_vs_k = _path_products(g, dist_sums)
    kt = triangle_coefficients(g)
    kq = quadrangle_coefficients(g)
    knn_node, knn_vs_k, mean_knn = knn(g)
    counts = np.bincount(deg, minlength=4)

    report = MetricsReport(
        n=n,
        links=g.edge_count,
        mean_degree=2.0 * g.edge_count / n,
        gamma=_gamma_or_nan(ccdf, fit_range),
        phi_1pct=rich_club_at(g, 0.01, rc),
        k_max=int(deg.max()),
        p_k1=float(counts[1] / n),
        p_k2=float(counts[2] / n),
        p_k3=float(counts[3] / n),
        l_star=l_star,
        mean_kt=float(kt.mean()),
        max_kt=int(kt.max()),
        mean_kq=float(kq.mean()),
        max_kq=int(kq.max()),
        mean_knn=mean_knn,
        mean_cb=float(cb_star.mean()),
        max_cb=float(cb_star.max()),
    )
    series = {
        "pdf": pdf,
        "ccdf": ccdf,
        "rank": rank,
        "richclub": rc,
        "l_ccdf": l_ccdf,
        "l_vs_k": l_vs_k,
        "kt_ccdf": ccdf_of(kt),
        "kt_vs_k": per_degree_mean(deg, kt),
        "kq_ccdf": ccdf_of(kq),
        "kq_vs_k": per_degree_mean(deg, kq),
        "knn_ccdf": ccdf_of(knn_node),
        "knn_vs_k": knn_vs_k,
        "cb_ccdf": ccdf_of(cb_star),
        "cb_vs_k": per_degree_mean(deg, cb_star),
    }
    per_node = {"k": deg, "l": l_node, "kt": kt, "kq": kq, "knn": knn_node, "cb": cb_star}
    return Analysis(report, series, per_node, tuple(int(k) for k in fit_range))


def full_report(g: Graph, fit_range: tuple[int, int] | None = None, parallel: bool = False) -> MetricsReport:
    """All table statistics for a connected graph."""
    return analyze(g, fit_range, parallel).report

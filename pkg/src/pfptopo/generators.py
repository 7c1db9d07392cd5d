"""Preferential-attachment growth models for AS-level topologies.

Four models share one growth loop:

* ``ba``   -- each new node links to ``m`` old nodes, linear preference.
* ``ig``   -- Interactive Growth: new nodes plus internal links from their
  host nodes to peer nodes, linear preference.
* ``test`` -- Interactive Growth with the fixed-exponent kernel ``k**alpha``.
* ``pfp``  -- Positive-Feedback Preference: three-branch Interactive Growth
  with the kernel ``k**(1 + delta*log10(k))``.

All preference weights inside one time step come from the degree snapshot
taken at the start of that step.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from pfptopo.graph import Graph

log = logging.getLogger(__name__)

MODELS = ("ba", "ig", "test", "pfp")

LINEAR = "linear"
FIXED_EXPONENT = "fixed_exponent"
POSITIVE_FEEDBACK = "positive_feedback"


@dataclass(frozen=True)
class PreferenceScheme:
    kind: str = LINEAR
    alpha: float = 1.0
    delta: float = 0.0

    def __post_init__(self):
        if self.kind not in (LINEAR, FIXED_EXPONENT, POSITIVE_FEEDBACK):
            raise ValueError(f"unknown preference kind {self.kind!r}")
        if self.kind == FIXED_EXPONENT and not self.alpha > 1.0:
            raise ValueError(f"fixed-exponent preference needs alpha > 1, got {self.alpha}")
        if self.kind == POSITIVE_FEEDBACK and not 0.0 <= self.delta <= 1.0:
            raise ValueError(f"positive-feedback preference needs 0 <= delta <= 1, got {self.delta}")

    @classmethod
    def linear(cls) -> "PreferenceScheme":
        return cls(LINEAR)

    @classmethod
    def fixed_exponent(cls, alpha: float) -> "PreferenceScheme":
        return cls(FIXED_EXPONENT, alpha=alpha)

    @classmethod
    def positive_feedback(cls, delta: float) -> "PreferenceScheme":
        return cls(POSITIVE_FEEDBACK, delta=delta)

    def weights(self, degrees: np.ndarray) -> np.ndarray:
        """Vectorised :func:`preference_weight` over an array of degrees (all >= 1)."""
        k = np.asarray(degrees, dtype=np.float64)
        if k.size and k.min() < 1:
            raise ValueError("preference weights are only defined for degree >= 1")
        if self.kind == LINEAR:
            return k.copy()
        if self.kind == FIXED_EXPONENT:
            return k**self.alpha
        return k ** (1.0 + self.delta * np.log10(k))


def preference_weight(k: int, scheme: PreferenceScheme) -> float:
    """Unnormalised attachment weight of a node with degree ``k``."""
    if k <= 0:
        raise ValueError(f"degree must be positive to carry a preference weight, got {k}")
    if scheme.kind == LINEAR:
        return float(k)
    if scheme.kind == FIXED_EXPONENT:
        return float(k) ** scheme.alpha
    return float(k) ** (1.0 + scheme.delta * math.log10(k))


_MODEL_DEFAULTS = {
    "ba": dict(m=3),
    "ig": dict(p=0.4),
    "test": dict(p=0.4, alpha=1.15),
    "pfp": dict(p=0.3, q=0.1, delta=0.048),
}


@dataclass
class GrowthConfig:
    """Everything needed to reproduce one generated graph.

    ``alpha`` is read only by the ``test`` model and ``delta`` only by ``pfp``;
    ``m`` only by ``ba``; ``q`` only by ``pfp``.
    """

    model: str = "pfp"
    target_n: int = 11122
    m: int = 3
    p: float = 0.3
    q: float = 0.1
    alpha: float = 1.15
    delta: float = 0.048
    seed_nodes: int = 10
    seed_extra_edges: int = 5
    rng_seed: int = 0

    def __post_init__(self):
        self.validate()

    @classmethod
    def defaults(cls, model: str, **overrides) -> "GrowthConfig":
        if model not in MODELS:
            raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")
        params = dict(model=model)
        params.update(_MODEL_DEFAULTS[model])
        params.update(overrides)
        return cls(**params)

    def validate(self) -> None:
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected one of {MODELS}")
        if self.seed_nodes < 3:
            raise ValueError("seed_nodes must be at least 3")
        if self.target_n <= self.seed_nodes:
            raise ValueError("target_n must exceed seed_nodes")
        max_extra = self.seed_nodes * (self.seed_nodes - 1) // 2 - (self.seed_nodes - 1)
        if not 0 <= self.seed_extra_edges <= max_extra:
            raise ValueError(f"seed_extra_edges must lie in [0, {max_extra}] for {self.seed_nodes} seed nodes")
        if self.model == "ba":
            if self.m < 1:
                raise ValueError("m must be at least 1")
            if self.m >= self.seed_nodes:
                raise ValueError("m must be smaller than the seed network size")
        if self.model in ("ig", "test") and not 0.0 < self.p < 1.0:
            raise ValueError("IG-style models need 0 < p < 1")
        if self.model == "pfp":
            if not 0.0 <= self.p <= 1.0:
                raise ValueError("p must lie in [0, 1]")
            if not 0.0 <= self.q <= 1.0 - self.p + 1e-12:
                raise ValueError("q must lie in [0, 1 - p]")
        self.scheme  # raises on out-of-range alpha/delta

    @property
    def scheme(self) -> PreferenceScheme:
        if self.model == "test":
            return PreferenceScheme.fixed_exponent(self.alpha)
        if self.model == "pfp":
            return PreferenceScheme.positive_feedback(self.delta)
        return PreferenceScheme.linear()

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "GrowthConfig":
        known = {f.name: f.type for f in fields(cls)}
        unknown = set(d) - set(known)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        base = dict(_MODEL_DEFAULTS.get(d.get("model", "pfp"), {}))
        base.update(d)
        return cls(**_coerce(base))

    def digest(self) -> str:
        """Stable hash of the configuration, recorded in edge-list headers."""
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


_INT_KEYS = {"target_n", "m", "seed_nodes", "seed_extra_edges", "rng_seed"}
_FLOAT_KEYS = {"p", "q", "alpha", "delta"}


def _coerce(d: dict) -> dict:
    out = {}
    for key, value in d.items():
        if key in _INT_KEYS:
            out[key] = int(value)
        elif key in _FLOAT_KEYS:
            out[key] = float(value)
        else:
            out[key] = str(value).lower()
    return out


@dataclass
class DegreeTrajectory:
    """Degree of one node as the network grows.

    ``samples`` holds ``(network_size, degree)`` pairs: one at birth, one at
    every step that changed the degree, and one at the final size.
    """

    node: int
    samples: list[tuple[int, int]] = field(default_factory=list)

    def degree_at(self, size: int) -> int:
        degree = 0
        for n, k in self.samples:
            if n > size:
                break
            degree = k
        return degree


def _draw(weights: np.ndarray, count: int, rng: np.random.Generator) -> list[int]:
    """Sequential weighted draws without replacement; returns positions into ``weights``.

    Removed items are skipped by shifting the uniform variate past their
    interval, so the cumulative sum is built once per call.
    """
    cum = np.cumsum(weights)
    total = float(cum[-1])
    chosen: list[int] = []
    removed = 0.0
    last = len(weights) - 1
    for _ in range(count):
        u = rng.random() * (total - removed)
        for i in sorted(chosen):
            if u >= cum[i] - weights[i]:
                u += weights[i]
            else:
                break
        idx = int(np.searchsorted(cum, u, side="right"))
        if idx > last or idx in chosen:
            # u rounded onto an interval edge; fall back to the nearest unchosen item
            idx = next(j for j in range(min(idx, last), -1, -1) if j not in chosen)
        chosen.append(idx)
        removed += float(weights[idx])
    return chosen


def sample_distinct(candidates, weights, count: int, rng: np.random.Generator) -> list[int]:
    """Draw ``count`` distinct candidates, each draw proportional to the remaining weights."""
    weights = np.asarray(weights, dtype=np.float64)
    if len(candidates) != len(weights):
        raise ValueError("candidates and weights must be aligned")
    if count > len(candidates):
        raise ValueError(f"cannot draw {count} distinct items from {len(candidates)} candidates")
    if count < 0:
        raise ValueError("count must be non-negative")
    if len(weights) and not np.all(weights > 0):
        raise ValueError("all weights must be positive")
    if count == 0:
        return []
    return [candidates[i] for i in _draw(weights, count, rng)]


def seed_network(n0: int, extra_edges: int, rng: np.random.Generator) -> Graph:
    """Random recursive tree on ``n0`` nodes plus ``extra_edges`` random extra edges."""
    if n0 < 3:
        raise ValueError("seed network needs at least 3 nodes")
    max_extra = n0 * (n0 - 1) // 2 - (n0 - 1)
    if not 0 <= extra_edges <= max_extra:
        raise ValueError(f"cannot add {extra_edges} extra edges to a {n0}-node tree (max {max_extra})")
    g = Graph(n0)
    for v in range(1, n0):
        g.add_edge(v, int(rng.integers(v)))
    if extra_edges:
        non_edges = [(u, v) for u in range(n0) for v in range(u + 1, n0) if not g.has_edge(u, v)]
        for i in sorted(rng.choice(len(non_edges), size=extra_edges, replace=False)):
            g.add_edge(*non_edges[i])
    return g


# (new-node links, internal links) per branch
_ONE_HOST_ONE_PEER = (1, 1)
_ONE_HOST_TWO_PEERS = (1, 2)
_TWO_HOSTS_ONE_PEER = (2, 1)


def _branch(config: GrowthConfig, rng: np.random.Generator) -> tuple[int, int]:
    u = rng.random()
    if config.model == "pfp":
        if u < config.p:
            return _ONE_HOST_ONE_PEER
        if u < config.p + config.q:
            return _ONE_HOST_TWO_PEERS
        return _TWO_HOSTS_ONE_PEER
    return _ONE_HOST_TWO_PEERS if u < config.p else _TWO_HOSTS_ONE_PEER


def _grow(config: GrowthConfig, rng: np.random.Generator, watch_every: int | None = None):
    config.validate()
    scheme = config.scheme
    g = seed_network(config.seed_nodes, config.seed_extra_edges, rng)
    deg = np.zeros(config.target_n, dtype=np.int64)
    deg[: g.node_count] = g.degrees()
    w = np.zeros(config.target_n, dtype=np.float64)
    w[: g.node_count] = scheme.weights(deg[: g.node_count])
    skipped = 0
    watched: dict[int, DegreeTrajectory] = {}

    while g.node_count < config.target_n:
        n_old = g.node_count
        weights = w[:n_old]
        new = g.add_node()
        if config.model == "ba":
            if config.m >= n_old + 1:
                raise ValueError(f"m={config.m} needs more than {n_old} old nodes")
            hosts = _draw(weights, config.m, rng)
            links = [(new, h) for h in hosts]
            expected = config.m
        else:
            n_hosts, n_peers = _branch(config, rng)
            hosts = _draw(weights, n_hosts, rng)
            origin = hosts[0] if n_hosts == 1 else hosts[int(rng.integers(2))]
            links = [(new, h) for h in hosts]
            expected = n_hosts + n_peers
            peer_w = weights.copy()
            peer_w[origin] = 0.0
            peer_w[g.neighbors(origin)] = 0.0
            candidates = np.flatnonzero(peer_w)
            take = min(n_peers, len(candidates))
            if take < n_peers:
                skipped += n_peers - take
                log.warning("host %d is adjacent to every old node; skipped %d internal link(s)", origin, n_peers - take)
            if take:
                peers = sample_distinct(candidates, peer_w[candidates], take, rng)
                links.extend((origin, int(pr)) for pr in peers)
            expected -= n_peers - take

        added = 0
        for u, v in links:
            added += g.add_edge(u, int(v))
            deg[u] += 1
            deg[v] += 1
        assert added == expected, f"step adding node {new}: {added} edges, expected {expected}"
        touched = np.unique(np.array(links, dtype=np.int64))
        w[touched] = scheme.weights(deg[touched])

        if watch_every is not None:
            size = g.node_count
            for v in touched:
                traj = watched.get(int(v))
                if traj is not None:
                    traj.samples.append((size, int(deg[v])))
            if (new - config.seed_nodes) % watch_every == 0:
                watched[new] = DegreeTrajectory(new, [(size, int(deg[new]))])

    g.meta["skipped_links"] = skipped
    g.meta["config"] = config.to_dict()
    if skipped:
        log.warning("%d internal link(s) skipped for empty peer sets", skipped)
    if watch_every is None:
        return g
    trajectories = []
    for traj in watched.values():
        if traj.samples[-1][0] != g.node_count:
            traj.samples.append((g.node_count, traj.samples[-1][1]))
        trajectories.append(traj)
    return g, trajectories


def _rng_for(config: GrowthConfig, rng: np.random.Generator | None) -> np.random.Generator:
    return rng if rng is not None else np.random.default_rng(config.rng_seed)


def _require(config: GrowthConfig, model: str) -> None:
    if config.model != model:
        raise ValueError(f"config is for model {config.model!r}, not {model!r}")


def grow_ba(config: GrowthConfig, rng: np.random.Generator | None = None) -> Graph:
    _require(config, "ba")
    return _grow(config, _rng_for(config, rng))


def grow_ig(config: GrowthConfig, rng: np.random.Generator | None = None) -> Graph:
    _require(config, "ig")
    return _grow(config, _rng_for(config, rng))


def grow_test_star(config: GrowthConfig, rng: np.random.Generator | None = None) -> Graph:
    _require(config, "test")
    return _grow(config, _rng_for(config, rng))


def grow_pfp(config: GrowthConfig, rng: np.random.Generator | None = None) -> Graph:
    _require(config, "pfp")
    return _grow(config, _rng_for(config, rng))


def grow(config: GrowthConfig, rng: np.random.Generator | None = None) -> Graph:
    """Run whichever model ``config.model`` names. Without ``rng``, seeds from ``config.rng_seed``."""
    return _grow(config, _rng_for(config, rng))


def record_trajectories(
    config: GrowthConfig, watch_every: int, rng: np.random.Generator | None = None
) -> tuple[Graph, list[DegreeTrajectory]]:
    """Grow a graph while tracking the degree of every ``watch_every``-th new node."""
    if watch_every < 1:
        raise ValueError("watch_every must be at least 1")
    return _grow(config, _rng_for(config, rng), watch_every=watch_every)

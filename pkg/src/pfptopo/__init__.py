"""Synthetic AS-level topology growth (BA, IG, Test*, PFP) and validation metrics."""

from pfptopo.graph import Graph, InvalidNodeError
from pfptopo.generators import (
    GrowthConfig,
    PreferenceScheme,
    DegreeTrajectory,
    grow,
    grow_ba,
    grow_ig,
    grow_pfp,
    grow_test_star,
    preference_weight,
    record_trajectories,
    sample_distinct,
    seed_network,
)
from pfptopo.metrics import DistributionSeries, MetricsReport, full_report

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "InvalidNodeError",
    "GrowthConfig",
    "PreferenceScheme",
    "DegreeTrajectory",
    "grow",
    "grow_ba",
    "grow_ig",
    "grow_pfp",
    "grow_test_star",
    "preference_weight",
    "record_trajectories",
    "sample_distinct",
    "seed_network",
    "DistributionSeries",
    "MetricsReport",
    "full_report",
]

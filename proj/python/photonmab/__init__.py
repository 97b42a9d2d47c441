"""Hierarchical photon-routing bandit simulator."""

from ._core import (
    ConfigError,
    best_arm,
    best_group,
    branch_prob_left,
    leaf_distribution,
    pos_angle,
    round_clamp,
    run_experiment,
    sweep_resolutions,
    __version__,
)

__all__ = [
    "ConfigError",
    "best_arm",
    "best_group",
    "branch_prob_left",
    "leaf_distribution",
    "pos_angle",
    "round_clamp",
    "run_experiment",
    "sweep_resolutions",
    "__version__",
]

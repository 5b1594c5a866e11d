"""Detector configuration shared by the pipelines, the benchmark and the CLI."""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_FIELD_LABEL = 1
DEFAULT_POST_LABEL = 2


@dataclass(frozen=True)
class DetectorConfig:
    """Knobs for both detection pipelines.

    The RANSAC parameters default to the values that proved robust on
    real robot footage (k=50, n=6, d=5.0, m=3). ``rho`` is the single
    permissiveness scalar the pair-matching tolerances derive from,
    tuned on the synthetic suite.
    """

    field_label: int = DEFAULT_FIELD_LABEL
    post_label: int = DEFAULT_POST_LABEL
    spacing: int = 4
    border_consecutive: int = 3
    length_sigma_mult: float = 2.0
    n_bins: int = 20
    gamma: float = 20.0
    ransac_d_inlier: float = 5.0
    ransac_k: int = 50
    ransac_n_min: int = 6
    ransac_m_max: int = 3
    rho: float = 0.35

    def __post_init__(self) -> None:
        if self.spacing < 1:
            raise ValueError("spacing must be >= 1")
        if self.border_consecutive < 1:
            raise ValueError("border_consecutive must be >= 1")
        if self.length_sigma_mult <= 0:
            raise ValueError("length_sigma_mult must be > 0")
        if self.n_bins < 1:
            raise ValueError("n_bins must be >= 1")
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError("rho must lie in [0, 1]")

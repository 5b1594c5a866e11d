"""Multi-model RANSAC line fitting.

Repeatedly proposes lines through random point pairs, keeps the proposal
with the largest consensus set, refits it by total least squares, removes
its inliers and goes again, until the maximum model count is reached, too
few points remain, or a full round of attempts produces nothing
acceptable. Deterministic given the seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


@dataclass(frozen=True)
class RansacParams:
    """Tuning for one multi-line extraction.

    d_inlier: maximum point-line distance for consensus membership
    k: line-fitting attempts per model
    n_min: minimum consensus size for an acceptable model
    m_max: maximum number of models to return
    """

    d_inlier: float = 5.0
    k: int = 50
    n_min: int = 6
    m_max: int = 3
    seed: int = 0

    def __post_init__(self) -> None:
        if self.d_inlier <= 0:
            raise ValueError("d_inlier must be > 0")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.n_min < 2:
            raise ValueError("n_min must be >= 2")
        if self.m_max < 1:
            raise ValueError("m_max must be >= 1")


class FittedLine(NamedTuple):
    """Infinite line through ``point`` along unit ``direction``."""

    point: np.ndarray
    direction: np.ndarray


@dataclass(frozen=True, eq=False)
class LineSegment:
    """A fitted line clipped to its consensus set.

    Endpoints are the extreme projections of the consensus points onto the
    refit line. Consensus points are the inliers of the sampled line that
    produced the model (each within d_inlier of it); the refit can shift
    the final line by up to another d_inlier.
    """

    p_a: np.ndarray
    p_b: np.ndarray
    direction: np.ndarray
    consensus_points: np.ndarray  # (n, 2)

    @property
    def consensus_count(self) -> int:
        return int(self.consensus_points.shape[0])

    @property
    def length(self) -> float:
        return float(np.hypot(*(self.p_b - self.p_a)))

    @property
    def midpoint(self) -> np.ndarray:
        return (self.p_a + self.p_b) / 2.0


def point_line_distance(
    point: tuple[float, float],
    line_a: tuple[float, float],
    line_b: tuple[float, float],
) -> float:
    """Perpendicular distance from ``point`` to the line through a and b."""
    ax, ay = float(line_a[0]), float(line_a[1])
    bx, by = float(line_b[0]), float(line_b[1])
    dx, dy = bx - ax, by - ay
    norm = math.hypot(dx, dy)
    if norm == 0.0:
        raise ValueError("line defined by coincident points is degenerate")
    return abs(dx * (point[1] - ay) - dy * (point[0] - ax)) / norm


def fit_line_least_squares(points: np.ndarray) -> FittedLine:
    """Total-least-squares (orthogonal regression) line fit.

    The line passes through the centroid along the principal eigenvector
    of the point covariance, so vertical edges fit as well as horizontal
    ones. Direction sign is canonical: y component positive, or x positive
    when the line is horizontal.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if pts.shape[0] < 2:
        raise ValueError("need at least two points to fit a line")
    centroid = pts.mean(axis=0)
    centred = pts - centroid
    if not centred.any():
        raise ValueError("all points coincident; line fit is degenerate")
    cov = centred.T @ centred
    _, vecs = np.linalg.eigh(cov)
    direction = vecs[:, -1]
    if direction[1] < 0 or (direction[1] == 0 and direction[0] < 0):
        direction = -direction
    return FittedLine(point=centroid, direction=direction)


def _segment_from_consensus(consensus: np.ndarray) -> LineSegment:
    line = fit_line_least_squares(consensus)
    t = (consensus - line.point) @ line.direction
    p_a = line.point + t.min() * line.direction
    p_b = line.point + t.max() * line.direction
    return LineSegment(p_a=p_a, p_b=p_b, direction=line.direction, consensus_points=consensus)


def ransac_multi_line(points: np.ndarray, params: RansacParams) -> list[LineSegment]:
    """Extract up to m_max line segments from a 2-D point cloud.

    Per model: k attempts each fit a line through a random distinct-index
    point pair and collect the points strictly within d_inlier; the
    largest consensus wins (ties to the earliest attempt; coincident-point
    pairs waste their attempt). An acceptable winner (>= n_min points) is
    refit and its consensus removed from the pool; a round with no
    acceptable winner ends the search. Consensus sets of the returned
    segments are pairwise disjoint.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    rng = np.random.default_rng(params.seed)
    remaining = pts
    found: list[LineSegment] = []
    while remaining.shape[0] >= params.n_min and len(found) < params.m_max:
        n = remaining.shape[0]
        ii = rng.integers(0, n, size=params.k)
        jj = rng.integers(0, n - 1, size=params.k)
        jj = jj + (jj >= ii)
        a = remaining[ii]
        delta = remaining[jj] - a
        norms = np.hypot(delta[:, 0], delta[:, 1])
        valid = norms > 0.0
        safe = np.where(valid, norms, 1.0)
        nx = -delta[:, 1] / safe
        ny = delta[:, 0] / safe
        dist = np.abs(
            (remaining[:, 0][None, :] - a[:, 0][:, None]) * nx[:, None]
            + (remaining[:, 1][None, :] - a[:, 1][:, None]) * ny[:, None]
        )
        inliers = dist < params.d_inlier
        counts = inliers.sum(axis=1)
        counts[~valid] = 0
        best = int(np.argmax(counts))
        if counts[best] < params.n_min:
            break
        mask = inliers[best]
        found.append(_segment_from_consensus(remaining[mask]))
        remaining = remaining[~mask]
    return found


def success_probability(q: float, k: int) -> float:
    """Probability that k pair draws hit at least one all-model pair.

    ``q`` is the fraction of points belonging to the model; one attempt
    succeeds with probability q**2, so p = 1 - (1 - q**2)**k.
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must lie in [0, 1]")
    if k < 1:
        raise ValueError("k must be >= 1")
    return 1.0 - (1.0 - q * q) ** k

"""Shared small geometry types."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class Quad:
    """Four corners of a detected goalpost plus the width used for ranging.

    Corners are ordered top-left, top-right, bottom-right, bottom-left.
    ``width_px`` is the detector's width estimate: the bounding-box edge
    length for the histogram detector, the perpendicular separation of the
    paired edge lines for the RANSAC detector.
    """

    corners: np.ndarray  # (4, 2) float
    width_px: float

    def __post_init__(self) -> None:
        corners = np.asarray(self.corners, dtype=float)
        if corners.shape != (4, 2):
            raise ValueError("quad needs exactly four (x, y) corners")
        object.__setattr__(self, "corners", corners)

    @property
    def centre(self) -> np.ndarray:
        return self.corners.mean(axis=0)


def rotate_points(points: np.ndarray, angle_rad: float, centre: tuple[float, float]) -> np.ndarray:
    """Rotate (n, 2) points about ``centre`` in image coordinates (y down)."""
    pts = np.asarray(points, dtype=float)
    c, s = np.cos(angle_rad), np.sin(angle_rad)
    rel = pts - np.asarray(centre, dtype=float)
    out = np.empty_like(rel)
    out[..., 0] = c * rel[..., 0] - s * rel[..., 1]
    out[..., 1] = s * rel[..., 0] + c * rel[..., 1]
    return out + centre

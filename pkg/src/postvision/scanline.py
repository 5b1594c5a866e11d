"""Scan-line machinery: line generation, field border, segments, candidates.

Processing only the pixels on a sparse grid of vertical and horizontal
scan-lines keeps per-frame cost low while retaining full-resolution
positions. Each scan-line is partitioned into maximal same-label runs
("colour segments"); segment endpoints on horizontal lines provide the
left-edge and right-edge point clouds that line fitting consumes, and the
first sustained run of field colour per vertical line anchors the field
border hull.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .config import DetectorConfig

VERTICAL = "vertical"
HORIZONTAL = "horizontal"
LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True, eq=False)
class ScanLineSet:
    """Equidistant vertical/horizontal scan-line coordinates."""

    vertical_xs: np.ndarray
    horizontal_ys: np.ndarray
    spacing: int


class ColourSegment(NamedTuple):
    """Maximal same-label pixel run along one scan-line.

    ``start``/``centre``/``end`` are (x, y) pixel coordinates; the centre
    is the integer midpoint and ``length`` the inclusive pixel count.
    """

    start: tuple[int, int]
    centre: tuple[int, int]
    end: tuple[int, int]
    length: int
    label: int
    orientation: str


class CandidatePoint(NamedTuple):
    """A segment endpoint hypothesised to lie on a goalpost edge."""

    position: tuple[int, int]
    edge_side: str  # LEFT | RIGHT
    source_segment: ColourSegment


@dataclass(frozen=True, eq=False)
class FieldBorder:
    """Upper convex hull of field-colour onsets, in image coordinates.

    Vertices have strictly increasing x; between vertices the border is
    linearly interpolated, and beyond the first/last vertex it is clamped
    to the end heights. An empty hull imposes no constraint.
    """

    hull: tuple[tuple[int, int], ...]

    @property
    def is_empty(self) -> bool:
        return len(self.hull) == 0

    def y_at(self, x: float) -> float:
        if self.is_empty:
            raise ValueError("empty field border has no height")
        xs = np.array([p[0] for p in self.hull], dtype=float)
        ys = np.array([p[1] for p in self.hull], dtype=float)
        return float(np.interp(x, xs, ys))

    def is_strictly_below(self, point: tuple[float, float]) -> bool:
        """True when ``point`` lies strictly below the border polyline."""
        if self.is_empty:
            return False
        return point[1] > self.y_at(point[0])


def generate_scanlines(width: int, height: int, spacing: int) -> ScanLineSet:
    """Vertical lines at x = 0, spacing, 2*spacing, ... < width; same for rows."""
    if spacing < 1:
        raise ValueError(f"spacing must be >= 1, got {spacing}")
    if width < 1 or height < 1:
        raise ValueError("image dimensions must be >= 1")
    return ScanLineSet(
        vertical_xs=np.arange(0, width, spacing),
        horizontal_ys=np.arange(0, height, spacing),
        spacing=spacing,
    )


def upper_convex_hull(points: Iterable[tuple[int, int]]) -> FieldBorder:
    """Minimal chain with every input point on or below it (image coords).

    Image y grows downward, so "above" means smaller y. Collinear interior
    vertices are dropped; of several points sharing an x only the uppermost
    can be a vertex. Empty input yields an empty border.
    """
    best_per_x: dict[int, int] = {}
    for x, y in points:
        x, y = int(x), int(y)
        if x not in best_per_x or y < best_per_x[x]:
            best_per_x[x] = y
    pts = sorted(best_per_x.items())
    chain: list[tuple[int, int]] = []
    for x, y in pts:
        # pop while the previous vertex sits on or below the segment from
        # its predecessor to (x, y); keeps only strict upward corners
        while len(chain) >= 2:
            x0, y0 = chain[-2]
            x1, y1 = chain[-1]
            if (x1 - x0) * (y - y0) - (x - x0) * (y1 - y0) <= 0:
                chain.pop()
            else:
                break
        chain.append((x, y))
    return FieldBorder(tuple(chain))


def _runs(labels: np.ndarray) -> list[tuple[int, int, int]]:
    """Maximal same-value runs of a 1-D array as (start, end, value)."""
    n = labels.size
    if n == 0:
        return []
    breaks = np.flatnonzero(labels[1:] != labels[:-1])
    starts = np.concatenate(([0], breaks + 1))
    ends = np.concatenate((breaks, [n - 1]))
    return list(zip(starts.tolist(), ends.tolist(), labels[starts].tolist()))


def detect_field_border(
    image: np.ndarray,
    lines: ScanLineSet,
    field_label: int,
    consecutive_threshold: int,
) -> FieldBorder:
    """Field border from the first sustained field-colour run per vertical line.

    Scanning each vertical line top-down, the first run of more than
    ``consecutive_threshold`` field pixels contributes its uppermost pixel;
    the border is the upper convex hull of those points. Lines with no
    qualifying run contribute nothing, and no qualifying run anywhere
    yields an empty border.
    """
    if consecutive_threshold < 1:
        raise ValueError("consecutive_threshold must be >= 1")
    points: list[tuple[int, int]] = []
    for x in lines.vertical_xs.tolist():
        for start, end, label in _runs(image[:, x]):
            if label == field_label and (end - start + 1) > consecutive_threshold:
                points.append((x, start))
                break
    return upper_convex_hull(points)


def extract_segments(image: np.ndarray, lines: ScanLineSet) -> list[ColourSegment]:
    """Partition every scan-line into colour segments.

    Per line, segment lengths sum to the line's pixel count and adjacent
    segments carry different labels. Vertical lines come first (by x),
    then horizontal lines (by y), runs in scan order.
    """
    segments: list[ColourSegment] = []
    for x in lines.vertical_xs.tolist():
        for start, end, label in _runs(image[:, x]):
            segments.append(
                ColourSegment(
                    start=(x, start),
                    centre=(x, (start + end) // 2),
                    end=(x, end),
                    length=end - start + 1,
                    label=label,
                    orientation=VERTICAL,
                )
            )
    for y in lines.horizontal_ys.tolist():
        for start, end, label in _runs(image[y, :]):
            segments.append(
                ColourSegment(
                    start=(start, y),
                    centre=((start + end) // 2, y),
                    end=(end, y),
                    length=end - start + 1,
                    label=label,
                    orientation=HORIZONTAL,
                )
            )
    return segments


def length_filter_mask(lengths: np.ndarray, sigma_mult: float) -> np.ndarray:
    """Keep lengths within mean + sigma_mult * stddev of the population.

    Rejects only oversized outliers (e.g. a crossbar run); short segments
    always pass.
    """
    lengths = np.asarray(lengths, dtype=float)
    if lengths.size == 0:
        return np.zeros(0, dtype=bool)
    return lengths <= lengths.mean() + sigma_mult * lengths.std()


def candidate_points(
    segments: list[ColourSegment],
    post_label: int,
    border: FieldBorder,
    length_sigma_mult: float,
) -> list[CandidatePoint]:
    """Left/right goalpost edge candidates from horizontal post segments.

    A horizontal segment of the post colour whose length passes the
    standard-deviation check emits a left candidate at its start and a
    right candidate at its end, provided a neighbouring segment exists on
    that side (runs are maximal, so any neighbour is a colour transition).
    Candidates strictly below the field border are discarded: goalposts
    rise above the field, while balls and lines sit below the border.
    """
    if length_sigma_mult <= 0:
        raise ValueError("length_sigma_mult must be > 0")
    rows: dict[int, list[ColourSegment]] = {}
    post_lengths: list[int] = []
    for seg in segments:
        if seg.orientation != HORIZONTAL:
            continue
        rows.setdefault(seg.start[1], []).append(seg)
        if seg.label == post_label:
            post_lengths.append(seg.length)
    if not post_lengths:
        return []
    arr = np.asarray(post_lengths, dtype=float)
    cutoff = arr.mean() + length_sigma_mult * arr.std()
    out: list[CandidatePoint] = []
    for row in rows.values():
        last = len(row) - 1
        for idx, seg in enumerate(row):
            if seg.label != post_label or seg.length > cutoff:
                continue
            if idx > 0 and not border.is_strictly_below(seg.start):
                out.append(CandidatePoint(seg.start, LEFT, seg))
            if idx < last and not border.is_strictly_below(seg.end):
                out.append(CandidatePoint(seg.end, RIGHT, seg))
    return out


class ScanResult(NamedTuple):
    """Scan-line stage outputs shared by both detectors."""

    lines: ScanLineSet
    border: FieldBorder
    segments: list[ColourSegment]


def scan_image(image: np.ndarray, cfg: DetectorConfig) -> ScanResult:
    """Run scan-line generation, border detection and segment extraction."""
    image = np.asarray(image)
    height, width = image.shape[:2]
    lines = generate_scanlines(width, height, cfg.spacing)
    border = detect_field_border(image, lines, cfg.field_label, cfg.border_consecutive)
    segments = extract_segments(image, lines)
    return ScanResult(lines, border, segments)

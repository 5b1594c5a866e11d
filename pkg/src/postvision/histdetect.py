"""Baseline goalpost detector: 1-D histogram of segment lengths over columns.

Post-coloured segment lengths are accumulated into N equal-width column
bins keyed by segment centre x. Bins holding at least ``gamma`` pixels of
mass become peak candidates, maximal runs of adjacent candidates merge
into intervals, and each interval's contributing segments yield an
axis-aligned bounding-box quad. Because the box is always perpendicular
to the ground, a tilted post inflates the measured width.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import DetectorConfig
from .geometry import Quad
from .scanline import ColourSegment, length_filter_mask, scan_image


@dataclass(frozen=True, eq=False)
class Histogram:
    """Column histogram over [0, image_width) split into equal bins.

    Bin i (0-based) covers [i*w/N, (i+1)*w/N); ranges are half-open, so a
    centre exactly on a boundary belongs to the right-hand bin. Counts are
    summed segment lengths in pixels. Bin membership uses integer
    arithmetic (x*N // w) so boundaries never suffer float drift.
    """

    counts: np.ndarray  # (n_bins,) int64
    image_width: int

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.ndim != 1 or counts.size < 1:
            raise ValueError("histogram needs at least one bin")
        if self.image_width < counts.size:
            raise ValueError("image width must be >= number of bins")
        object.__setattr__(self, "counts", counts)

    @property
    def n_bins(self) -> int:
        return int(self.counts.size)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def bin_of(self, x: int) -> int:
        if not 0 <= x < self.image_width:
            raise ValueError(f"x={x} outside [0, {self.image_width})")
        return int(x) * self.n_bins // self.image_width

    def bin_range(self, index: int) -> tuple[float, float]:
        w, n = self.image_width, self.n_bins
        return index * w / n, (index + 1) * w / n


class PeakInterval(NamedTuple):
    """A maximal run of adjacent peak bins, as bin indices and x range."""

    bin_lo: int
    bin_hi: int  # inclusive
    x_start: float
    x_end: float
    n_bins: int
    image_width: int

    def contains_x(self, x: int) -> bool:
        return self.bin_lo <= int(x) * self.n_bins // self.image_width <= self.bin_hi


def build_histogram(
    segments: list[ColourSegment],
    post_label: int,
    n_bins: int,
    image_width: int,
    length_sigma_mult: float,
) -> Histogram:
    """Accumulate post-coloured segment lengths into column bins.

    Both orientations contribute; each segment passing the
    standard-deviation length check adds its length to the bin containing
    its centre x. Everything else is ignored.
    """
    if n_bins < 1:
        raise ValueError("n_bins must be >= 1")
    if image_width < n_bins:
        raise ValueError("image_width must be >= n_bins")
    counts = np.zeros(n_bins, dtype=np.int64)
    post = [s for s in segments if s.label == post_label]
    if post:
        keep = length_filter_mask(np.array([s.length for s in post]), length_sigma_mult)
        for seg, ok in zip(post, keep):
            if ok:
                counts[seg.centre[0] * n_bins // image_width] += seg.length
    return Histogram(counts, image_width)


def peak_candidates(histogram: Histogram, gamma: float) -> set[int]:
    """Indices of bins whose count reaches the gamma threshold."""
    return {i for i, c in enumerate(histogram.counts.tolist()) if c >= gamma}


def group_peaks(histogram: Histogram, candidates: set[int]) -> list[PeakInterval]:
    """Merge maximal runs of adjacent peak-candidate bins into intervals."""
    n = histogram.n_bins
    for c in candidates:
        if not 0 <= c < n:
            raise ValueError(f"candidate bin {c} outside 0..{n - 1}")
    ordered = sorted(candidates)
    intervals: list[PeakInterval] = []
    i = 0
    while i < len(ordered):
        j = i
        while j + 1 < len(ordered) and ordered[j + 1] == ordered[j] + 1:
            j += 1
        lo, hi = ordered[i], ordered[j]
        intervals.append(
            PeakInterval(
                bin_lo=lo,
                bin_hi=hi,
                x_start=histogram.bin_range(lo)[0],
                x_end=histogram.bin_range(hi)[1],
                n_bins=n,
                image_width=histogram.image_width,
            )
        )
        i = j + 1
    return intervals


def peaks_to_posts(
    intervals: list[PeakInterval],
    segments: list[ColourSegment],
    post_label: int,
) -> list[Quad]:
    """Bounding-box quad per interval from the segments it contains.

    A segment contributes when it carries the post label and its centre x
    lies in the interval; the quad is the min/max envelope of contributing
    start/end coordinates. Intervals with no contributing segments, or a
    degenerate zero-width envelope, yield no quad.
    """
    quads: list[Quad] = []
    for interval in intervals:
        xs: list[int] = []
        ys: list[int] = []
        for seg in segments:
            if seg.label != post_label or not interval.contains_x(seg.centre[0]):
                continue
            xs.extend((seg.start[0], seg.end[0]))
            ys.extend((seg.start[1], seg.end[1]))
        if not xs:
            continue
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
        if x1 <= x0:
            continue
        corners = np.array([(x0, y0), (x1, y0), (x1, y1), (x0, y1)], dtype=float)
        quads.append(Quad(corners=corners, width_px=float(x1 - x0)))
    return quads


def histogram_quads(
    segments: list[ColourSegment],
    border,
    image_width: int,
    cfg: DetectorConfig,
) -> list[Quad]:
    """Histogram pipeline over pre-scanned segments.

    Only post-coloured segments whose centres are not below the field
    border enter the histogram; the same filtered-and-length-checked set
    feeds the bounding boxes.
    """
    relevant = [
        s
        for s in segments
        if s.label == cfg.post_label and not border.is_strictly_below(s.centre)
    ]
    hist = build_histogram(
        relevant, cfg.post_label, cfg.n_bins, image_width, cfg.length_sigma_mult
    )
    intervals = group_peaks(hist, peak_candidates(hist, cfg.gamma))
    if not relevant:
        return []
    keep = length_filter_mask(
        np.array([s.length for s in relevant]), cfg.length_sigma_mult
    )
    kept = [s for s, ok in zip(relevant, keep) if ok]
    return peaks_to_posts(intervals, kept, cfg.post_label)


def detect_histogram(image: np.ndarray, cfg: DetectorConfig) -> list[Quad]:
    """Full histogram detector: scan-lines -> segments -> histogram -> quads."""
    scan = scan_image(image, cfg)
    return histogram_quads(scan.segments, scan.border, image.shape[1], cfg)

"""Pairing left-edge and right-edge lines into goalpost quads.

Two fitted edge lines form a post when they are near-parallel, of similar
length, close together and of similar consensus weight. All four
tolerances derive from one permissiveness scalar rho in [0, 1], so a
single knob trades precision against recall.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .geometry import Quad
from .ransac import LineSegment


@dataclass(frozen=True)
class Permissiveness:
    """rho plus the frame size the distance bound is scaled by."""

    rho: float
    image_width: int
    image_height: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError("rho must lie in [0, 1]")


@dataclass(frozen=True)
class EpsilonBounds:
    """Upper bounds for the four pair-similarity conditions."""

    eps_theta: float  # radians
    eps_len: float    # pixels
    eps_dist: float   # pixels
    eps_n: float      # consensus count


class PairDecision(NamedTuple):
    passed: bool
    angle_ok: bool
    length_ok: bool
    distance_ok: bool
    consensus_ok: bool


@dataclass(frozen=True, eq=False)
class PostPair:
    """A matched left/right edge pair and the quad its endpoints define."""

    left: LineSegment
    right: LineSegment
    quad: Quad
    width_px: float


def epsilon_bounds(perm: Permissiveness, l1: LineSegment, l2: LineSegment) -> EpsilonBounds:
    """Scale all four bounds from rho and the pair's own magnitudes."""
    return EpsilonBounds(
        eps_theta=perm.rho * math.pi / 2.0,
        eps_len=perm.rho * max(l1.length, l2.length),
        eps_dist=perm.rho * math.hypot(perm.image_width, perm.image_height),
        eps_n=perm.rho * max(l1.consensus_count, l2.consensus_count),
    )


def _acute_angle(l1: LineSegment, l2: LineSegment) -> float:
    cosang = abs(float(np.dot(l1.direction, l2.direction)))
    return math.acos(min(1.0, cosang))


def mean_endpoint_distance(l1: LineSegment, l2: LineSegment) -> float:
    """Mean of the two per-endpoint nearest-endpoint distances.

    For near-parallel segments this measures how close together they run;
    it is symmetric under swapping the two segments.
    """
    d1 = min(
        float(np.hypot(*(l1.p_a - l2.p_a))),
        float(np.hypot(*(l1.p_a - l2.p_b))),
    )
    d2 = min(
        float(np.hypot(*(l1.p_b - l2.p_a))),
        float(np.hypot(*(l1.p_b - l2.p_b))),
    )
    return (d1 + d2) / 2.0


def pair_conditions(l1: LineSegment, l2: LineSegment, eps: EpsilonBounds) -> PairDecision:
    """Evaluate the four strict similarity inequalities."""
    angle_ok = _acute_angle(l1, l2) < eps.eps_theta
    length_ok = abs(l1.length - l2.length) < eps.eps_len
    distance_ok = mean_endpoint_distance(l1, l2) < eps.eps_dist
    consensus_ok = abs(l1.consensus_count - l2.consensus_count) < eps.eps_n
    return PairDecision(
        passed=angle_ok and length_ok and distance_ok and consensus_ok,
        angle_ok=angle_ok,
        length_ok=length_ok,
        distance_ok=distance_ok,
        consensus_ok=consensus_ok,
    )


def _upper_lower(seg: LineSegment) -> tuple[np.ndarray, np.ndarray]:
    a, b = seg.p_a, seg.p_b
    if (a[1], a[0]) <= (b[1], b[0]):
        return a, b
    return b, a


def _pair_width(l1: LineSegment, l2: LineSegment) -> float:
    """Separation of the two segments perpendicular to their mean direction."""
    d2 = l2.direction if float(np.dot(l1.direction, l2.direction)) >= 0 else -l2.direction
    mean_dir = l1.direction + d2
    norm = float(np.hypot(*mean_dir))
    if norm == 0.0:
        return 0.0
    u = mean_dir / norm
    delta = l2.midpoint - l1.midpoint
    return abs(float(u[0] * delta[1] - u[1] * delta[0]))


def _build_pair(left: LineSegment, right: LineSegment) -> PostPair | None:
    width = _pair_width(left, right)
    if width <= 0.0:
        return None  # coincident lines carry no width information
    top_l, bot_l = _upper_lower(left)
    top_r, bot_r = _upper_lower(right)
    quad = Quad(corners=np.array([top_l, top_r, bot_r, bot_l]), width_px=width)
    return PostPair(left=left, right=right, quad=quad, width_px=width)


def match_posts(
    left_lines: list[LineSegment],
    right_lines: list[LineSegment],
    perm: Permissiveness,
) -> list[PostPair]:
    """Greedy one-to-one matching of passing pairs, nearest pairs first.

    Every (left, right) combination is tested against the four conditions;
    passing pairs are accepted in order of ascending mean endpoint
    distance as long as neither line is already used. Quad corners come
    from the four segment endpoints, ordered top-left, top-right,
    bottom-right, bottom-left.
    """
    passing: list[tuple[float, int, int]] = []
    for i, left in enumerate(left_lines):
        for j, right in enumerate(right_lines):
            eps = epsilon_bounds(perm, left, right)
            if pair_conditions(left, right, eps).passed:
                passing.append((mean_endpoint_distance(left, right), i, j))
    passing.sort()
    used_left: set[int] = set()
    used_right: set[int] = set()
    pairs: list[PostPair] = []
    for _, i, j in passing:
        if i in used_left or j in used_right:
            continue
        pair = _build_pair(left_lines[i], right_lines[j])
        if pair is None:
            continue
        used_left.add(i)
        used_right.add(j)
        pairs.append(pair)
    return pairs

"""Exemplar search: SSD criterion and the distance-augmented score."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .core import Coordinate, InpaintMask, PatchGeometry, RasterImage, State, clip_patch
from .errors import InputError, NoCandidateError


class Variant(str, Enum):
    CLASSIC = "classic"
    IMPROVED = "improved"


class SourcePolicy(str, Enum):
    ORIGINAL_KNOWN_ONLY = "original-known-only"
    KNOWN_OR_FILLED = "known-or-filled"


@dataclass(frozen=True)
class MatchConfig:
    """Matcher knobs.

    ``m`` scales the SSD term of the improved score. ``search_radius`` bounds
    the Euclidean distance between target and candidate centers (0 disables
    the bound). ``cube_root`` applies the cube root to the raw squared-error
    sum; ``None`` means on for the classic variant and off for the improved
    one, whose ``m`` range is calibrated against raw sums. ``normalize_ssd``
    divides the raw sum by the number of compared pixels.
    """

    m: float = 0.0095
    search_radius: int = 60
    source_policy: SourcePolicy = SourcePolicy.ORIGINAL_KNOWN_ONLY
    cube_root: Optional[bool] = None
    normalize_ssd: bool = False

    def uses_cube_root(self, variant) -> bool:
        if self.cube_root is None:
            return Variant(variant) is Variant.CLASSIC
        return bool(self.cube_root)

    def __post_init__(self):
        if not (self.m >= 0 and math.isfinite(self.m)):
            raise InputError(f"m must be a finite value >= 0, got {self.m!r}")
        if int(self.search_radius) != self.search_radius or self.search_radius < 0:
            raise InputError(f"search_radius must be an integer >= 0, got {self.search_radius!r}")
        object.__setattr__(self, "source_policy", SourcePolicy(self.source_policy))


@dataclass(frozen=True)
class MatchResult:
    source_center: Coordinate
    ssd: float
    distance: float
    score: float
    candidates_scanned: int


def euclidean_distance(p: Coordinate, q: Coordinate) -> float:
    dc = p[0] - q[0]
    dr = p[1] - q[1]
    return math.sqrt(dc * dc + dr * dr)


def combined_score(ssd_value: float, distance: float, m: float) -> float:
    return ssd_value * m + distance


def _eligible_states(states: np.ndarray, policy: SourcePolicy) -> np.ndarray:
    if policy is SourcePolicy.ORIGINAL_KNOWN_ONLY:
        return states == State.KNOWN
    return states != State.MISSING


def _finish_ssd(raw, count, config: MatchConfig, variant):
    value = raw / count if config.normalize_ssd and count else raw
    return np.cbrt(value) if config.uses_cube_root(variant) else value


def ssd(
    target_center: Coordinate,
    candidate_center: Coordinate,
    image: RasterImage,
    mask: InpaintMask,
    geom: PatchGeometry,
    config: MatchConfig = MatchConfig(),
    variant: Variant = Variant.CLASSIC,
) -> float:
    """Squared RGB error between the target's available cells and the candidate.

    The candidate patch must lie fully inside the image and consist of
    eligible source pixels under ``config.source_policy``. With the default
    classic settings the cube root of the sum is returned.
    """
    side, h = geom.side, geom.half
    cc, cr = candidate_center
    if not (h <= cc < image.width - h and h <= cr < image.height - h):
        raise InputError(f"candidate patch at {tuple(candidate_center)} leaves the image")
    eligible = _eligible_states(mask.states, config.source_policy)
    if not eligible[cr - h:cr + h + 1, cc - h:cc + h + 1].all():
        raise InputError(f"candidate patch at {tuple(candidate_center)} has ineligible pixels")
    win = clip_patch(PatchGeometry(target_center, side), image.width, image.height)
    tc, tr = target_center
    tgt = image.pixels[win.slices()].astype(np.int64)
    src = image.pixels[
        win.row_start - tr + cr:win.row_stop - tr + cr,
        win.col_start - tc + cc:win.col_stop - tc + cc,
    ].astype(np.int64)
    used = mask.available[win.slices()]
    raw = int((((tgt - src) ** 2).sum(axis=2) * used).sum())
    return float(_finish_ssd(raw, int(used.sum()), config, variant))


def _box_sum(values: np.ndarray, side: int) -> np.ndarray:
    """Sums over every fully-inside ``side x side`` window, indexed by its top-left."""
    ii = np.zeros((values.shape[0] + 1, values.shape[1] + 1), dtype=np.int64)
    ii[1:, 1:] = values.astype(np.int64).cumsum(0).cumsum(1)
    return ii[side:, side:] - ii[:-side, side:] - ii[side:, :-side] + ii[:-side, :-side]


def find_best_match(
    target: PatchGeometry,
    image: RasterImage,
    mask: InpaintMask,
    config: MatchConfig = MatchConfig(),
    variant: Variant = Variant.IMPROVED,
) -> MatchResult:
    """Exhaustive search for the best source patch.

    Scores are the SSD (classic) or ``SSD * m + distance`` (improved).
    Ties resolve to the row-major first candidate center.
    """
    return _search(image.pixels, mask.states, target, config, Variant(variant))


def _search(pixels, states, target: PatchGeometry, config: MatchConfig, variant: Variant):
    height, width = states.shape
    side, h = target.side, target.half
    tc, tr = target.center
    if width < side or height < side:
        raise NoCandidateError("image is smaller than one patch")

    # candidate centers span [h, width - h) x [h, height - h); narrow to the radius box
    c_lo, c_hi, r_lo, r_hi = h, width - h, h, height - h
    radius = int(config.search_radius)
    if radius > 0:
        c_lo, c_hi = max(c_lo, tc - radius), min(c_hi, tc + radius + 1)
        r_lo, r_hi = max(r_lo, tr - radius), min(r_hi, tr + radius + 1)
    if c_lo >= c_hi or r_lo >= r_hi:
        raise NoCandidateError(f"no candidate within radius {radius} of {tuple(target.center)}")

    bad = ~_eligible_states(states, config.source_policy)
    clean = _box_sum(bad, side)[r_lo - h:r_hi - h, c_lo - h:c_hi - h] == 0
    d_col = np.arange(c_lo, c_hi) - tc
    d_row = np.arange(r_lo, r_hi) - tr
    dist2 = d_row[:, None] ** 2 + d_col[None, :] ** 2
    if radius > 0:
        clean &= dist2 <= radius * radius
    n_scanned = int(clean.sum())
    if n_scanned == 0:
        raise NoCandidateError(f"no eligible candidate for target {tuple(target.center)}")

    win = clip_patch(target, width, height)
    avail = states[win.slices()] != State.MISSING
    px = pixels.astype(np.int32)
    raw = np.zeros(clean.shape, dtype=np.int64)
    for r, c in zip(*np.nonzero(avail)):
        dr = win.row_start + r - tr
        dc = win.col_start + c - tc
        ref = px[tr + dr, tc + dc]
        block = px[r_lo + dr:r_hi + dr, c_lo + dc:c_hi + dc]
        raw += ((block - ref) ** 2).sum(axis=2)
    values = _finish_ssd(raw.astype(np.float64), int(avail.sum()), config, variant)
    distance = np.sqrt(dist2.astype(np.float64))
    if variant is Variant.IMPROVED:
        score = combined_score(values, distance, config.m)
    else:
        score = values
    score = np.where(clean, score, np.inf)
    k = int(np.argmin(score))
    i, j = divmod(k, score.shape[1])
    return MatchResult(
        source_center=Coordinate(c_lo + j, r_lo + i),
        ssd=float(values[i, j]),
        distance=float(distance[i, j]),
        score=float(score[i, j]),
        candidates_scanned=n_scanned,
    )

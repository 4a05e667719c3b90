"""The repair loop: front, priority, match, fill, confidence update."""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np

from .core import (
    Coordinate,
    InpaintMask,
    PatchGeometry,
    RasterImage,
    State,
    clip_patch,
    front_mask,
)
from .errors import InputError, InvariantError, NoCandidateError, UnprocessableError
from .matcher import MatchConfig, MatchResult, Variant, _search
from .priority import DEFAULT_EPSILON, ConfidenceMap, PriorityRecord, _select, init_confidence

log = logging.getLogger(__name__)


class FillMode(str, Enum):
    PATCH = "patch"
    CENTER = "center"


@dataclass(frozen=True)
class InpaintConfig:
    """Job configuration.

    ``normalize_confidence`` of ``None`` resolves per variant: on for
    classic, off for improved.
    """

    variant: Variant = Variant.IMPROVED
    patch_side: int = 9
    fill_mode: FillMode = FillMode.PATCH
    match: MatchConfig = field(default_factory=MatchConfig)
    normalize_confidence: Optional[bool] = None
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "fill_mode", FillMode(self.fill_mode))
        side = self.patch_side
        if not isinstance(side, (int, np.integer)) or side < 3 or side % 2 == 0:
            raise InputError(f"patch_side must be an odd integer >= 3, got {side!r}")
        if not (self.epsilon >= 0 and math.isfinite(self.epsilon)):
            raise InputError(f"epsilon must be a finite value >= 0, got {self.epsilon!r}")

    @property
    def improved(self) -> bool:
        return self.variant is Variant.IMPROVED

    @property
    def normalize(self) -> bool:
        if self.normalize_confidence is None:
            return not self.improved
        return bool(self.normalize_confidence)


@dataclass(frozen=True)
class IterationRecord:
    target: Coordinate
    confidence_term: float
    data_term: float
    priority: float
    source: Coordinate
    score: float
    filled: int
    search_radius: int


@dataclass
class RepairTrace:
    records: List[IterationRecord] = field(default_factory=list)
    duration_s: float = 0.0

    @property
    def iterations(self) -> int:
        return len(self.records)

    @property
    def pixels_filled(self) -> int:
        return sum(r.filled for r in self.records)


def fill_patch(
    target: PatchGeometry,
    source_center: Coordinate,
    image: RasterImage,
    mask: InpaintMask,
    fill_mode: FillMode = FillMode.PATCH,
) -> List[Coordinate]:
    """Copy source pixels into Missing target cells in place; returns the cells written."""
    pixels, states = image.pixels, mask.states
    tc, tr = target.center
    sc, sr = source_center
    if FillMode(fill_mode) is FillMode.CENTER:
        if states[tr, tc] != State.MISSING:
            return []
        pixels[tr, tc] = pixels[sr, sc]
        states[tr, tc] = State.FILLED
        return [Coordinate(tc, tr)]
    win = clip_patch(target, mask.width, mask.height)
    rows, cols = np.nonzero(states[win.slices()] == State.MISSING)
    rows = rows + win.row_start
    cols = cols + win.col_start
    pixels[rows, cols] = pixels[rows - tr + sr, cols - tc + sc]
    states[rows, cols] = State.FILLED
    return [Coordinate(int(c), int(r)) for r, c in zip(rows, cols)]


def update_confidence(
    target: Coordinate,
    filled_cells: Sequence[Coordinate],
    confidence_term: float,
    conf: ConfidenceMap,
) -> ConfidenceMap:
    """Newly filled cells inherit the target's confidence term (in place)."""
    for c, r in filled_cells:
        conf[r, c] = confidence_term
    return conf


class Inpainter:
    """Stateful repair job; ``step`` runs one iteration, ``run`` runs to completion.

    The input image and mask are copied; the caller's arrays are never touched.
    """

    def __init__(self, image: RasterImage, mask: InpaintMask, config: InpaintConfig = None):
        self.config = config or InpaintConfig()
        mask.check_matches(image)
        if np.any(mask.states == State.FILLED):
            raise InputError("input mask must not contain Filled cells")
        if mask.missing.any() and not mask.known.any():
            raise UnprocessableError("mask marks every pixel Missing; nothing to copy from")
        self.image = image.copy()
        self.mask = mask.copy()
        self.confidence = init_confidence(mask)
        self.trace = RepairTrace()
        self.initial_missing = int(mask.missing.sum())
        height, width = mask.states.shape
        self._diagonal = math.hypot(width, height)

    @property
    def done(self) -> bool:
        return not self.mask.missing.any()

    def step(self) -> IterationRecord:
        cfg = self.config
        rows, cols = np.nonzero(front_mask(self.mask.states))
        if rows.size == 0:
            raise InvariantError(
                f"fill front empty with {int(self.mask.missing.sum())} Missing pixels left"
            )
        prio: PriorityRecord = _select(
            self.image.pixels, self.mask.states, self.confidence, rows, cols, cfg
        )
        geom = PatchGeometry(prio.target, cfg.patch_side)
        match, radius = self._match(geom)
        filled = fill_patch(geom, match.source_center, self.image, self.mask, cfg.fill_mode)
        if not filled:
            raise InvariantError(f"iteration at {tuple(prio.target)} filled nothing")
        update_confidence(prio.target, filled, prio.confidence_term, self.confidence)
        record = IterationRecord(
            target=prio.target,
            confidence_term=prio.confidence_term,
            data_term=prio.data_term,
            priority=prio.priority,
            source=match.source_center,
            score=match.score,
            filled=len(filled),
            search_radius=radius,
        )
        self.trace.records.append(record)
        return record

    def _match(self, geom: PatchGeometry) -> tuple[MatchResult, int]:
        cfg = self.config
        match_cfg = cfg.match
        while True:
            try:
                result = _search(
                    self.image.pixels, self.mask.states, geom, match_cfg, cfg.variant
                )
                return result, match_cfg.search_radius
            except NoCandidateError:
                radius = match_cfg.search_radius
                if radius == 0:
                    raise UnprocessableError(
                        f"no fully known {cfg.patch_side}x{cfg.patch_side} source patch "
                        f"exists for target {tuple(geom.center)}"
                    ) from None
                radius *= 2
                if radius >= self._diagonal:
                    radius = 0
                log.debug("widening search radius to %s for %s", radius or "global", geom.center)
                match_cfg = replace(match_cfg, search_radius=radius)

    def run(self) -> tuple[RasterImage, RepairTrace]:
        start = time.perf_counter()
        while not self.done:
            self.step()
            if self.trace.iterations > self.initial_missing:
                raise InvariantError("more iterations than initially Missing pixels")
        self.trace.duration_s = time.perf_counter() - start
        return self.image, self.trace


def inpaint(
    image: RasterImage, mask: InpaintMask, config: InpaintConfig = None
) -> tuple[RasterImage, RepairTrace]:
    """Repair every Missing pixel of ``image``; returns the new image and a trace."""
    return Inpainter(image, mask, config).run()

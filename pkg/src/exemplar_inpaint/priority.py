"""Fill-order priority on the fill front.

Priority is the product of a confidence term and a data term. Two confidence
terms are available: the classic mean confidence over the patch, and the
Manhattan-weighted sum where every neighbour contributes half its Manhattan
distance to the patch center times its own confidence.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .core import (
    Coordinate,
    InpaintMask,
    PatchGeometry,
    RasterImage,
    State,
    clip_patch,
    luma_array,
)
from .errors import InputError

ALPHA = 255.0
DEFAULT_EPSILON = 1e-3

ConfidenceMap = np.ndarray


@dataclass(frozen=True)
class PriorityRecord:
    target: Coordinate
    confidence_term: float
    data_term: float
    priority: float


def init_confidence(mask: InpaintMask) -> ConfidenceMap:
    if np.any(mask.states == State.FILLED):
        raise InputError("cannot initialise confidence from a mask with Filled cells")
    return np.where(mask.states == State.KNOWN, 1.0, 0.0)


def manhattan_distance(p: Coordinate, q: Coordinate) -> int:
    return abs(p[0] - q[0]) + abs(p[1] - q[1])


def weight(p: Coordinate, q: Coordinate) -> float:
    """Confidence weight of ``q`` inside the patch centered at ``p``."""
    return manhattan_distance(p, q) / 2


def weight_kernel(side: int) -> np.ndarray:
    """``side x side`` grid of :func:`weight` values around the center."""
    h = side // 2
    d = np.abs(np.arange(-h, h + 1))
    return (d[:, None] + d[None, :]) / 2


_MISSING = int(State.MISSING)


@lru_cache(maxsize=None)
def _cached_kernel(side: int) -> np.ndarray:
    k = weight_kernel(side)
    k.flags.writeable = False
    return k


def _patch_sum(p, conf, mask, geom, weight_fn) -> tuple[float, int]:
    states = mask.states
    height, width = states.shape
    c, r = p
    if not (0 <= c < width and 0 <= r < height):
        raise InputError(f"patch center {tuple(p)} outside {width}x{height} image")
    h = geom.side // 2
    r0, r1 = max(r - h, 0), min(r + h + 1, height)
    c0, c1 = max(c - h, 0), min(c + h + 1, width)
    area = (r1 - r0) * (c1 - c0)
    avail = states[r0:r1, c0:c1] != _MISSING
    if weight_fn is None:
        return float(np.dot(conf[r0:r1, c0:c1].ravel(), avail.ravel())), area
    if weight_fn is weight:
        k = _cached_kernel(geom.side)[r0 - r + h:r1 - r + h, c0 - c + h:c1 - c + h]
        return float(((conf[r0:r1, c0:c1] * avail) * k).sum()), area
    win = clip_patch(PatchGeometry(p, geom.side), width, height)
    total = 0.0
    for rr in win.rows:
        for cc in win.cols:
            if avail[rr - r0, cc - c0]:
                total += weight_fn(p, Coordinate(cc, rr)) * conf[rr, cc]
    return total, win.area


def classic_confidence(
    p: Coordinate,
    conf: ConfidenceMap,
    mask: InpaintMask,
    geom: PatchGeometry,
    normalize: bool = True,
) -> float:
    """Sum of neighbour confidences over the clipped patch, per unit area."""
    total, area = _patch_sum(p, conf, mask, geom, None)
    return total / area if normalize else total


def weighted_confidence(
    p: Coordinate,
    conf: ConfidenceMap,
    mask: InpaintMask,
    geom: PatchGeometry,
    normalize: bool = False,
    weight_fn: Callable[[Coordinate, Coordinate], float] = weight,
) -> float:
    """Manhattan-weighted confidence sum; ``weight_fn`` is overridable for tests."""
    total, area = _patch_sum(p, conf, mask, geom, weight_fn)
    return total / area if normalize else total


def _shifted(values: np.ndarray, dr: int, dc: int, rows, cols, fill):
    """``values[rows + dr, cols + dc]`` with out-of-bounds positions set to ``fill``."""
    h, w = values.shape
    rr = rows + dr
    cc = cols + dc
    ok = (rr >= 0) & (rr < h) & (cc >= 0) & (cc < w)
    out = np.full(rows.shape, fill, dtype=values.dtype)
    out[ok] = values[rr[ok], cc[ok]]
    return out


def _axis_gradient(lum, avail, rows, cols, dr, dc):
    """Derivative along ``(dr, dc)`` using only available pixels.

    Central difference across the point when both neighbours are available,
    otherwise a one-sided difference on whichever side has two available
    pixels in a row, otherwise zero. The point itself is never sampled.
    """
    a_m1 = _shifted(avail, -dr, -dc, rows, cols, False)
    a_p1 = _shifted(avail, dr, dc, rows, cols, False)
    a_m2 = _shifted(avail, -2 * dr, -2 * dc, rows, cols, False)
    a_p2 = _shifted(avail, 2 * dr, 2 * dc, rows, cols, False)
    l_m1 = _shifted(lum, -dr, -dc, rows, cols, 0.0)
    l_p1 = _shifted(lum, dr, dc, rows, cols, 0.0)
    l_m2 = _shifted(lum, -2 * dr, -2 * dc, rows, cols, 0.0)
    l_p2 = _shifted(lum, 2 * dr, 2 * dc, rows, cols, 0.0)
    return np.select(
        [a_m1 & a_p1, a_m1 & a_m2, a_p1 & a_p2],
        [(l_p1 - l_m1) / 2, l_m1 - l_m2, l_p2 - l_p1],
        default=0.0,
    )


def luma_gradients(lum: np.ndarray, avail: np.ndarray, rows, cols):
    """``(d/dcol, d/drow)`` luma derivatives at the given points."""
    rows = np.asarray(rows, dtype=np.intp)
    cols = np.asarray(cols, dtype=np.intp)
    g_col = _axis_gradient(lum, avail, rows, cols, 0, 1)
    g_row = _axis_gradient(lum, avail, rows, cols, 1, 0)
    return g_col, g_row


def front_normals(avail: np.ndarray, rows, cols):
    """Unit normals of the mask indicator; zero vectors where undefined."""
    rows = np.asarray(rows, dtype=np.intp)
    cols = np.asarray(cols, dtype=np.intp)
    h, w = avail.shape
    ind = avail.astype(np.float64)
    n_col = (ind[rows, np.minimum(cols + 1, w - 1)] - ind[rows, np.maximum(cols - 1, 0)]) / 2
    n_row = (ind[np.minimum(rows + 1, h - 1), cols] - ind[np.maximum(rows - 1, 0), cols]) / 2
    norm = np.hypot(n_col, n_row)
    safe = np.where(norm > 0, norm, 1.0)
    return np.where(norm > 0, n_col / safe, 0.0), np.where(norm > 0, n_row / safe, 0.0)


def data_terms(lum, avail, rows, cols, epsilon=DEFAULT_EPSILON) -> np.ndarray:
    g_col, g_row = luma_gradients(lum, avail, rows, cols)
    # isophote = gradient rotated by 90 degrees, in (col, row) components
    iso_col, iso_row = -g_row, g_col
    n_col, n_row = front_normals(avail, rows, cols)
    return np.abs(iso_col * n_col + iso_row * n_row) / ALPHA + epsilon


def data_term(
    p: Coordinate, image: RasterImage, mask: InpaintMask, epsilon: float = DEFAULT_EPSILON
) -> float:
    """Isophote strength flowing into the front at ``p``."""
    lum = luma_array(image.pixels)
    out = data_terms(lum, mask.available, [p[1]], [p[0]], epsilon)
    return float(out[0])


def confidence_terms(conf, avail, rows, cols, side, weights=None, normalize=True):
    """Vectorised patch confidence for many centers at once.

    ``weights`` is a ``side x side`` kernel (ones when omitted). Normalisation
    divides by the clipped patch area.
    """
    rows = np.asarray(rows, dtype=np.intp)
    cols = np.asarray(cols, dtype=np.intp)
    h = side // 2
    height, width = conf.shape
    masked = np.pad(np.where(avail, conf, 0.0), h)
    windows = np.lib.stride_tricks.sliding_window_view(masked, (side, side))[rows, cols]
    if weights is None:
        weights = np.ones((side, side))
    sums = np.einsum("kij,ij->k", windows, weights)
    if not normalize:
        return sums
    area = (np.minimum(cols + h, width - 1) - np.maximum(cols - h, 0) + 1) * (
        np.minimum(rows + h, height - 1) - np.maximum(rows - h, 0) + 1
    )
    return sums / area


def select_target(
    front: Sequence[Coordinate],
    image: RasterImage,
    mask: InpaintMask,
    conf: ConfidenceMap,
    config,
) -> PriorityRecord:
    """Front pixel with the highest priority; ties go to the row-major first.

    ``config`` is an :class:`~exemplar_inpaint.engine.InpaintConfig`.
    """
    if len(front) == 0:
        raise InputError("cannot select a target from an empty fill front")
    cols = np.fromiter((p[0] for p in front), dtype=np.intp, count=len(front))
    rows = np.fromiter((p[1] for p in front), dtype=np.intp, count=len(front))
    order = np.lexsort((cols, rows))
    cols, rows = cols[order], rows[order]
    return _select(image.pixels, mask.states, conf, rows, cols, config)


def _select(pixels, states, conf, rows, cols, config) -> PriorityRecord:
    avail = states != State.MISSING
    side = config.patch_side
    weights = weight_kernel(side) if config.improved else None
    c_terms = confidence_terms(
        conf, avail, rows, cols, side, weights=weights, normalize=config.normalize
    )
    d_terms = data_terms(luma_array(pixels), avail, rows, cols, config.epsilon)
    priorities = c_terms * d_terms
    k = int(np.argmax(priorities))
    return PriorityRecord(
        target=Coordinate(int(cols[k]), int(rows[k])),
        confidence_term=float(c_terms[k]),
        data_term=float(d_terms[k]),
        priority=float(priorities[k]),
    )

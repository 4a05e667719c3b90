"""Raster image, mask and patch geometry primitives.

Coordinates are ``(col, row)`` pairs: ``col`` is the horizontal index and
``row`` the vertical one. Arrays are indexed ``[row, col]`` as usual in numpy.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import List, NamedTuple

import numpy as np

from .errors import InputError


class State(IntEnum):
    KNOWN = 0
    MISSING = 1
    FILLED = 2


class Coordinate(NamedTuple):
    col: int
    row: int


class Window(NamedTuple):
    """Half-open rectangle ``[col_start, col_stop) x [row_start, row_stop)``."""

    col_start: int
    col_stop: int
    row_start: int
    row_stop: int

    @property
    def cols(self) -> range:
        return range(self.col_start, self.col_stop)

    @property
    def rows(self) -> range:
        return range(self.row_start, self.row_stop)

    @property
    def area(self) -> int:
        return (self.col_stop - self.col_start) * (self.row_stop - self.row_start)

    def slices(self):
        return slice(self.row_start, self.row_stop), slice(self.col_start, self.col_stop)


@dataclass(frozen=True)
class RasterImage:
    """8-bit RGB image backed by a ``(height, width, 3)`` uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        px = self.pixels
        if not isinstance(px, np.ndarray) or px.ndim != 3 or px.shape[2] != 3:
            raise InputError("RasterImage needs a (height, width, 3) array")
        if px.shape[0] < 1 or px.shape[1] < 1:
            raise InputError("RasterImage must be at least 1x1")
        if px.dtype != np.uint8:
            raise InputError(f"RasterImage pixels must be uint8, got {px.dtype}")

    @classmethod
    def from_array(cls, array) -> "RasterImage":
        """Build from any integer array, checking the [0, 255] range."""
        arr = np.asarray(array)
        if arr.dtype != np.uint8:
            if not np.issubdtype(arr.dtype, np.integer):
                raise InputError("pixel values must be integers")
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise InputError("pixel values must lie in [0, 255]")
            arr = arr.astype(np.uint8)
        return cls(np.array(arr, copy=True))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def copy(self) -> "RasterImage":
        return RasterImage(self.pixels.copy())


@dataclass(frozen=True)
class InpaintMask:
    """Per-pixel region state backed by a ``(height, width)`` uint8 array of :class:`State`."""

    states: np.ndarray

    def __post_init__(self):
        st = self.states
        if not isinstance(st, np.ndarray) or st.ndim != 2:
            raise InputError("InpaintMask needs a 2-D array")
        if st.shape[0] < 1 or st.shape[1] < 1:
            raise InputError("InpaintMask must be at least 1x1")
        if st.dtype != np.uint8:
            raise InputError(f"InpaintMask states must be uint8, got {st.dtype}")
        if st.size and st.max() > State.FILLED:
            raise InputError("InpaintMask contains unknown state values")

    @classmethod
    def from_missing(cls, missing) -> "InpaintMask":
        """Build from a boolean array where True marks a Missing pixel."""
        missing = np.asarray(missing, dtype=bool)
        return cls(np.where(missing, State.MISSING, State.KNOWN).astype(np.uint8))

    @property
    def width(self) -> int:
        return self.states.shape[1]

    @property
    def height(self) -> int:
        return self.states.shape[0]

    @property
    def missing(self) -> np.ndarray:
        return self.states == State.MISSING

    @property
    def known(self) -> np.ndarray:
        return self.states == State.KNOWN

    @property
    def available(self) -> np.ndarray:
        """Known-or-Filled indicator."""
        return self.states != State.MISSING

    def copy(self) -> "InpaintMask":
        return InpaintMask(self.states.copy())

    def check_matches(self, image: RasterImage) -> None:
        if (self.width, self.height) != (image.width, image.height):
            raise InputError(
                f"mask is {self.width}x{self.height} but image is "
                f"{image.width}x{image.height}"
            )


@dataclass(frozen=True)
class PatchGeometry:
    center: Coordinate
    side: int = 9

    def __post_init__(self):
        if not isinstance(self.side, (int, np.integer)) or self.side < 3 or self.side % 2 == 0:
            raise InputError(f"patch side must be an odd integer >= 3, got {self.side!r}")
        object.__setattr__(self, "center", Coordinate(int(self.center[0]), int(self.center[1])))

    @property
    def half(self) -> int:
        return self.side // 2


def clip_patch(geom: PatchGeometry, width: int, height: int) -> Window:
    """Intersect the ``side x side`` window around ``geom.center`` with the image."""
    c, r = geom.center
    if not (0 <= c < width and 0 <= r < height):
        raise InputError(f"patch center {geom.center} outside {width}x{height} image")
    h = geom.half
    return Window(max(c - h, 0), min(c + h + 1, width), max(r - h, 0), min(r + h + 1, height))


def luma(pixel) -> float:
    """Rec.601 luma of one RGB triple."""
    r, g, b = (int(v) for v in pixel)
    return (299 * r + 587 * g + 114 * b) / 1000


def luma_array(pixels: np.ndarray) -> np.ndarray:
    """Rec.601 luma for a ``(..., 3)`` array; bit-identical to :func:`luma`."""
    px = pixels.astype(np.int64)
    return (299 * px[..., 0] + 587 * px[..., 1] + 114 * px[..., 2]) / 1000


def front_mask(states: np.ndarray) -> np.ndarray:
    """Boolean map of Missing cells with at least one available 4-neighbour."""
    avail = states != State.MISSING
    touch = np.zeros_like(avail)
    touch[1:, :] |= avail[:-1, :]
    touch[:-1, :] |= avail[1:, :]
    touch[:, 1:] |= avail[:, :-1]
    touch[:, :-1] |= avail[:, 1:]
    return touch & ~avail


def extract_fill_front(mask: InpaintMask) -> List[Coordinate]:
    """Fill front in row-major order."""
    rows, cols = np.nonzero(front_mask(mask.states))
    return [Coordinate(int(c), int(r)) for r, c in zip(rows, cols)]

"""Deterministic synthetic test scenes for variant comparison.

Every case is a 128x128 RGB image with a 24x24 square hole. The generators
are pure functions of their arguments so the corpus can be rebuilt anywhere.
"""
from __future__ import annotations

from pathlib import Path
from typing import Callable, Dict, NamedTuple

import numpy as np

from .core import InpaintMask, RasterImage

SIZE = 128
HOLE = 24


class Case(NamedTuple):
    name: str
    image: RasterImage
    mask: InpaintMask


def _rgb(gray: np.ndarray, tint=(1.0, 1.0, 1.0)) -> np.ndarray:
    chans = [np.clip(np.rint(gray * t), 0, 255) for t in tint]
    return np.stack(chans, axis=-1).astype(np.uint8)


def ramp_stripes(size: int = SIZE) -> np.ndarray:
    """Period-8 vertical stripes whose brightness ramps from top to bottom."""
    rows, cols = np.mgrid[0:size, 0:size]
    base = 40 + 160 * rows / (size - 1)
    stripe = np.where(cols % 8 < 4, 1.0, 0.45)
    return _rgb(base * stripe, (1.0, 0.9, 0.75))


def checkerboard(size: int = SIZE, cell: int = 8) -> np.ndarray:
    rows, cols = np.mgrid[0:size, 0:size]
    on = ((rows // cell) + (cols // cell)) % 2 == 0
    img = np.empty((size, size, 3), dtype=np.uint8)
    img[on] = (210, 60, 40)
    img[~on] = (30, 90, 200)
    return img


def two_textures(size: int = SIZE, seed: int = 3) -> np.ndarray:
    """Horizontal stripes on the left half, speckled noise on the right half."""
    rng = np.random.default_rng(seed)
    rows, cols = np.mgrid[0:size, 0:size]
    left = np.where(rows % 6 < 3, 200.0, 70.0)
    right = 120 + rng.integers(-25, 26, size=(size, size))
    gray = np.where(cols < size // 2, left, right)
    return _rgb(gray, (0.8, 1.0, 0.7))


def diagonal_edge(size: int = SIZE) -> np.ndarray:
    rows, cols = np.mgrid[0:size, 0:size]
    upper = cols > rows
    img = np.empty((size, size, 3), dtype=np.uint8)
    img[upper] = (235, 200, 90)
    img[~upper] = (50, 70, 60)
    return img


def dotted(size: int = SIZE, spacing: int = 8) -> np.ndarray:
    """Uniform background with a regular grid of 2x2 dots."""
    rows, cols = np.mgrid[0:size, 0:size]
    dot = (rows % spacing < 2) & (cols % spacing < 2)
    img = np.empty((size, size, 3), dtype=np.uint8)
    img[:] = (150, 170, 190)
    img[dot] = (20, 20, 30)
    return img


GENERATORS: Dict[str, Callable[[], np.ndarray]] = {
    "ramp_stripes": ramp_stripes,
    "checkerboard": checkerboard,
    "two_textures": two_textures,
    "diagonal_edge": diagonal_edge,
    "dotted": dotted,
}


def square_hole(size: int = SIZE, hole: int = HOLE) -> InpaintMask:
    missing = np.zeros((size, size), dtype=bool)
    start = (size - hole) // 2
    missing[start:start + hole, start:start + hole] = True
    return InpaintMask.from_missing(missing)


def build_corpus() -> list[Case]:
    mask = square_hole()
    return [Case(name, RasterImage(gen()), mask) for name, gen in GENERATORS.items()]


def write_corpus(directory) -> list[Path]:
    """Write ``<name>.png`` (reference) and ``<name>_mask.png`` for every case."""
    from .pngio import write_image, write_mask

    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for case in build_corpus():
        ref = out / f"{case.name}.png"
        msk = out / f"{case.name}_mask.png"
        write_image(ref, case.image)
        write_mask(msk, case.mask)
        written += [ref, msk]
    return written

"""PNG reading and writing for images and masks."""
from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .core import InpaintMask, RasterImage
from .errors import InputError

MASK_THRESHOLD = 128


def _open_png(path) -> Image.Image:
    try:
        im = Image.open(path)
        im.load()
    except (OSError, UnidentifiedImageError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if im.format != "PNG":
        raise InputError(f"{path} is {im.format}, expected PNG")
    return im


def read_image(path) -> RasterImage:
    im = _open_png(path)
    if im.mode != "RGB":
        raise InputError(f"{path} has mode {im.mode}, expected 8-bit RGB")
    return RasterImage(np.array(im, dtype=np.uint8))


def read_mask(path) -> InpaintMask:
    """Grayscale PNG; values >= 128 mark Missing pixels."""
    im = _open_png(path)
    if im.mode != "L":
        raise InputError(f"{path} has mode {im.mode}, expected 8-bit grayscale")
    return InpaintMask.from_missing(np.array(im) >= MASK_THRESHOLD)


def write_image(path, image: RasterImage) -> None:
    Image.fromarray(image.pixels).save(Path(path), format="PNG")


def write_mask(path, mask: InpaintMask) -> None:
    gray = np.where(mask.missing, 255, 0).astype(np.uint8)
    Image.fromarray(gray).save(Path(path), format="PNG")

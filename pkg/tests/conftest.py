import numpy as np
import pytest

from exemplar_inpaint.core import InpaintMask, RasterImage, State

CRITERIA_LINES = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA_LINES:
            terminalreporter.write_line(line)


def gray_image(values):
    """RGB image whose luma equals ``values`` exactly (gray pixels)."""
    v = np.asarray(values, dtype=np.uint8)
    return RasterImage(np.repeat(v[..., None], 3, axis=2))


def stripe_image(size=64, period=8):
    cols = np.arange(size)
    row = np.where(cols % period < period // 2, 0, 255).astype(np.uint8)
    return gray_image(np.tile(row, (size, 1)))


def center_hole(size=64, hole=16):
    miss = np.zeros((size, size), dtype=bool)
    s = (size - hole) // 2
    miss[s:s + hole, s:s + hole] = True
    return InpaintMask.from_missing(miss)


def blob_missing(rng, size=48, max_fraction=0.3):
    """Union of up to four random disks, capped at ``max_fraction`` Missing."""
    rows, cols = np.mgrid[0:size, 0:size]
    miss = np.zeros((size, size), dtype=bool)
    for _ in range(int(rng.integers(1, 5))):
        r, c = rng.integers(0, size, 2)
        rad = int(rng.integers(2, 9))
        grown = miss | ((rows - r) ** 2 + (cols - c) ** 2 <= rad * rad)
        if grown.mean() > max_fraction:
            break
        miss = grown
    if not miss.any():
        miss[size // 2, size // 2] = True
    return miss


def random_states(rng, shape, p_missing=0.4, p_filled=0.0):
    u = rng.random(shape)
    states = np.full(shape, State.KNOWN, dtype=np.uint8)
    states[u < p_missing] = State.MISSING
    states[(u >= p_missing) & (u < p_missing + p_filled)] = State.FILLED
    return states


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

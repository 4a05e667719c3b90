import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from exemplar_inpaint.core import (
    Coordinate,
    InpaintMask,
    PatchGeometry,
    RasterImage,
    State,
    clip_patch,
    extract_fill_front,
    luma,
    luma_array,
)
from exemplar_inpaint.errors import InputError

from . import oracles


def test_front_of_all_known_mask_is_empty():
    assert extract_fill_front(InpaintMask.from_missing(np.zeros((4, 4), bool))) == []


def test_single_missing_pixel_is_its_own_front():
    miss = np.zeros((5, 5), bool)
    miss[2, 2] = True
    assert extract_fill_front(InpaintMask.from_missing(miss)) == [Coordinate(2, 2)]


def test_front_of_3x3_block_is_its_ring():
    miss = np.zeros((5, 5), bool)
    miss[1:4, 1:4] = True
    front = extract_fill_front(InpaintMask.from_missing(miss))
    assert front == oracles.front_scan(InpaintMask.from_missing(miss).states)
    assert len(front) == 8
    assert Coordinate(2, 2) not in front


def test_all_missing_has_empty_front():
    assert extract_fill_front(InpaintMask.from_missing(np.ones((6, 7), bool))) == []


@settings(max_examples=200, deadline=None)
@given(arrays(np.uint8, st.tuples(st.integers(1, 32), st.integers(1, 32)), elements=st.integers(0, 2)))
def test_front_matches_brute_force(states):
    assert extract_fill_front(InpaintMask(states)) == oracles.front_scan(states)


def test_filled_cells_count_as_neighbours():
    states = np.array([[State.FILLED, State.MISSING, State.MISSING]], dtype=np.uint8)
    assert extract_fill_front(InpaintMask(states)) == [Coordinate(1, 0)]


@pytest.mark.parametrize(
    "center, side, expected",
    [
        ((5, 5), 3, (range(4, 7), range(4, 7))),
        ((0, 0), 3, (range(0, 2), range(0, 2))),
        ((10, 5), 5, (range(8, 11), range(3, 8))),
    ],
)
def test_clip_patch(center, side, expected):
    win = clip_patch(PatchGeometry(Coordinate(*center), side), 11, 11)
    assert (win.cols, win.rows) == expected


@given(
    st.integers(1, 40), st.integers(1, 40), st.integers(0, 39), st.integers(0, 39),
    st.sampled_from([3, 5, 7, 9, 11]),
)
def test_clip_patch_contains_center(width, height, c, r, side):
    c, r = c % width, r % height
    win = clip_patch(PatchGeometry(Coordinate(c, r), side), width, height)
    assert c in win.cols and r in win.rows
    assert win.area >= 1


def test_clip_patch_rejects_out_of_bounds_center():
    with pytest.raises(InputError):
        clip_patch(PatchGeometry(Coordinate(11, 0), 3), 11, 11)


@pytest.mark.parametrize("side", [0, 1, 2, 4, 10])
def test_patch_side_must_be_odd_and_at_least_3(side):
    with pytest.raises(InputError):
        PatchGeometry(Coordinate(0, 0), side)


def test_luma_values():
    assert luma((0, 0, 0)) == 0.0
    assert luma((255, 255, 255)) == 255.0
    assert luma((255, 0, 0)) == pytest.approx(76.245, abs=1e-12)


def test_luma_array_is_bit_identical_to_scalar(rng):
    px = rng.integers(0, 256, (8, 8, 3), dtype=np.uint8)
    lum = luma_array(px)
    for r in range(8):
        for c in range(8):
            assert lum[r, c] == luma(px[r, c])


def test_image_validation():
    with pytest.raises(InputError):
        RasterImage(np.zeros((4, 4), np.uint8))
    with pytest.raises(InputError):
        RasterImage(np.zeros((4, 4, 3), np.float64))
    with pytest.raises(InputError):
        RasterImage.from_array(np.full((2, 2, 3), 256))
    assert RasterImage.from_array(np.full((2, 3, 3), 7)).width == 3


def test_mask_dimension_check():
    img = RasterImage(np.zeros((4, 5, 3), np.uint8))
    with pytest.raises(InputError):
        InpaintMask.from_missing(np.zeros((5, 4), bool)).check_matches(img)
    with pytest.raises(InputError):
        InpaintMask(np.full((2, 2), 7, np.uint8))

"""Full-reference quality metrics: PSNR and SSIM."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import signal

from .core import RasterImage, luma_array
from .errors import InputError

PEAK = 255.0
SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_K1 = 0.01
SSIM_K2 = 0.03


@dataclass(frozen=True)
class MetricReport:
    psnr_db: float
    ssim: float
    width: int
    height: int


def _check_same_size(a: RasterImage, b: RasterImage) -> None:
    if a.pixels.shape != b.pixels.shape:
        raise InputError(
            f"image sizes differ: {a.width}x{a.height} vs {b.width}x{b.height}"
        )


def psnr(a: RasterImage, b: RasterImage) -> float:
    """PSNR in dB with the MSE taken over all pixels and channels; ``inf`` when equal."""
    _check_same_size(a, b)
    diff = a.pixels.astype(np.int64) - b.pixels.astype(np.int64)
    sq = int((diff * diff).sum())
    if sq == 0:
        return math.inf
    mse = sq / diff.size
    return 10 * math.log10(PEAK * PEAK / mse)


def gaussian_window(size: int = SSIM_WINDOW, sigma: float = SSIM_SIGMA) -> np.ndarray:
    x = np.arange(size) - (size - 1) / 2
    g = np.exp(-(x * x) / (2 * sigma * sigma))
    w = np.outer(g, g)
    return w / w.sum()


def ssim(a: RasterImage, b: RasterImage) -> float:
    """Mean SSIM of the luma planes over every fully-inside Gaussian window."""
    _check_same_size(a, b)
    if min(a.width, a.height) < SSIM_WINDOW:
        raise InputError(f"SSIM needs images of at least {SSIM_WINDOW}x{SSIM_WINDOW}")
    x = luma_array(a.pixels)
    y = luma_array(b.pixels)
    w = gaussian_window()

    def filt(v):
        return signal.correlate2d(v, w, mode="valid")

    mu_x, mu_y = filt(x), filt(y)
    var_x = filt(x * x) - mu_x * mu_x
    var_y = filt(y * y) - mu_y * mu_y
    cov = filt(x * y) - mu_x * mu_y
    c1 = (SSIM_K1 * PEAK) ** 2
    c2 = (SSIM_K2 * PEAK) ** 2
    num = (2 * mu_x * mu_y + c1) * (2 * cov + c2)
    den = (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
    return float(np.mean(num / den))


def evaluate(a: RasterImage, b: RasterImage) -> MetricReport:
    return MetricReport(psnr(a, b), ssim(a, b), a.width, a.height)


def format_psnr(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.6f}"


def format_ssim(value: float) -> str:
    return f"{value:.6f}"

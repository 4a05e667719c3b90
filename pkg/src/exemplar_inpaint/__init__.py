"""Exemplar-based image inpainting with classic and distance-aware variants."""
from .core import (
    Coordinate,
    InpaintMask,
    PatchGeometry,
    RasterImage,
    State,
    clip_patch,
    extract_fill_front,
    luma,
)
from .engine import FillMode, InpaintConfig, Inpainter, RepairTrace, inpaint
from .errors import (
    InpaintError,
    InputError,
    InvariantError,
    NoCandidateError,
    UnprocessableError,
)
from .matcher import MatchConfig, MatchResult, SourcePolicy, Variant, find_best_match
from .metrics import MetricReport, psnr, ssim

__version__ = "0.1.0"

__all__ = [
    "Coordinate",
    "FillMode",
    "InpaintConfig",
    "InpaintError",
    "InpaintMask",
    "Inpainter",
    "InputError",
    "InvariantError",
    "MatchConfig",
    "MatchResult",
    "MetricReport",
    "NoCandidateError",
    "PatchGeometry",
    "RasterImage",
    "RepairTrace",
    "SourcePolicy",
    "State",
    "UnprocessableError",
    "Variant",
    "clip_patch",
    "extract_fill_front",
    "find_best_match",
    "inpaint",
    "luma",
    "psnr",
    "ssim",
]

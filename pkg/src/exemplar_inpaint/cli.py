"""Command-line entry point.

Exit codes: 0 success, 1 bad input, 2 unprocessable input.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .engine import FillMode, InpaintConfig, inpaint
from .errors import InputError, UnprocessableError
from .matcher import MatchConfig, SourcePolicy, Variant
from .metrics import format_psnr, format_ssim, psnr, ssim
from .pngio import read_image, read_mask, write_image

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_UNPROCESSABLE = 2

CSV_COLUMNS = [
    "input",
    "variant",
    "patch_side",
    "m",
    "search_radius",
    "fill_mode",
    "normalize_confidence",
    "iterations",
    "duration_ms",
    "psnr_db",
    "ssim",
    "epsilon",
    "source_policy",
]

log = logging.getLogger("exemplar_inpaint")


class _Parser(argparse.ArgumentParser):
    """Argument errors are bad input (exit 1), not argparse's default 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


@dataclass
class JobSpec:
    input: str
    mask: str
    output: str
    config: InpaintConfig
    reference: Optional[str] = None
    report: Optional[str] = None


def _odd_patch(text: str) -> int:
    value = int(text)
    if value < 3 or value % 2 == 0:
        raise argparse.ArgumentTypeError(f"patch size must be odd and >= 3, got {value}")
    return value


def _non_negative_float(text: str) -> float:
    value = float(text)
    if not value >= 0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"expected a finite value >= 0, got {text}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {text}")
    return value


def _on_off(text: str) -> bool:
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError(f"expected 'on' or 'off', got {text!r}")
    return text == "on"


def _add_job_flags(p: argparse.ArgumentParser, with_variant: bool) -> None:
    p.add_argument("input", help="8-bit RGB PNG to repair")
    p.add_argument("mask", help="8-bit grayscale PNG; values >= 128 are repaired")
    p.add_argument("-o", "--output", required=True, help="output PNG path")
    if with_variant:
        p.add_argument("--variant", choices=[v.value for v in Variant], default="improved")
    p.add_argument("--patch-size", type=_odd_patch, default=9)
    p.add_argument("--m", type=_non_negative_float, default=MatchConfig.m)
    p.add_argument("--search-radius", type=_non_negative_int, default=MatchConfig.search_radius,
                   help="0 searches the whole image")
    p.add_argument("--fill-mode", choices=[f.value for f in FillMode], default="patch")
    p.add_argument("--normalize-confidence", type=_on_off, default=None,
                   help="on|off; default on for classic, off for improved")
    p.add_argument("--epsilon", type=_non_negative_float, default=1e-3)
    p.add_argument("--source-policy", choices=[s.value for s in SourcePolicy],
                   default=SourcePolicy.ORIGINAL_KNOWN_ONLY.value)
    p.add_argument("--reference", help="ground-truth PNG for PSNR/SSIM")
    p.add_argument("--report", help="CSV file to append metric rows to")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="exemplar-inpaint", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("inpaint", help="repair one image with one variant")
    _add_job_flags(p, with_variant=True)

    p = sub.add_parser("compare", help="run both variants and report PSNR/SSIM")
    _add_job_flags(p, with_variant=False)

    p = sub.add_parser("metrics", help="print PSNR and SSIM of two images")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("make-corpus", help="write the synthetic comparison corpus")
    p.add_argument("directory")
    return parser


def _config(args, variant) -> InpaintConfig:
    return InpaintConfig(
        variant=variant,
        patch_side=args.patch_size,
        fill_mode=args.fill_mode,
        match=MatchConfig(
            m=args.m,
            search_radius=args.search_radius,
            source_policy=args.source_policy,
        ),
        normalize_confidence=args.normalize_confidence,
        epsilon=args.epsilon,
    )


def _job(args, variant, output) -> JobSpec:
    return JobSpec(
        input=args.input,
        mask=args.mask,
        output=str(output),
        config=_config(args, variant),
        reference=args.reference,
        report=args.report,
    )


def csv_row(spec: JobSpec, iterations: int, duration_s: float, psnr_db, ssim_value) -> dict:
    cfg = spec.config
    return {
        "input": spec.input,
        "variant": cfg.variant.value,
        "patch_side": cfg.patch_side,
        "m": repr(cfg.match.m),
        "search_radius": cfg.match.search_radius,
        "fill_mode": cfg.fill_mode.value,
        "normalize_confidence": "on" if cfg.normalize else "off",
        "iterations": iterations,
        "duration_ms": f"{duration_s * 1000:.3f}",
        "psnr_db": "" if psnr_db is None else format_psnr(psnr_db),
        "ssim": "" if ssim_value is None else format_ssim(ssim_value),
        "epsilon": repr(cfg.epsilon),
        "source_policy": cfg.match.source_policy.value,
    }


def append_rows(path, rows) -> None:
    path = Path(path)
    new = not path.exists() or path.stat().st_size == 0
    with path.open("a", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
        if new:
            writer.writeheader()
        writer.writerows(rows)


def _run_job(spec: JobSpec, image, mask, reference) -> dict:
    repaired, trace = inpaint(image, mask, spec.config)
    write_image(spec.output, repaired)
    print(
        f"{spec.config.variant.value}: {trace.iterations} iterations, "
        f"{trace.duration_s * 1000:.1f} ms -> {spec.output}"
    )
    p = s = None
    if reference is not None:
        p, s = psnr(reference, repaired), ssim(reference, repaired)
    return csv_row(spec, trace.iterations, trace.duration_s, p, s)


def _load(spec: JobSpec):
    image = read_image(spec.input)
    mask = read_mask(spec.mask)
    mask.check_matches(image)
    reference = None
    if spec.reference:
        reference = read_image(spec.reference)
        if reference.pixels.shape != image.pixels.shape:
            raise InputError("reference size differs from the input image")
    return image, mask, reference


def cmd_inpaint(spec: JobSpec) -> int:
    image, mask, reference = _load(spec)
    row = _run_job(spec, image, mask, reference)
    if reference is not None:
        if spec.report:
            append_rows(spec.report, [row])
        else:
            writer = csv.DictWriter(sys.stdout, fieldnames=CSV_COLUMNS, lineterminator="\n")
            writer.writeheader()
            writer.writerow(row)
    return EXIT_OK


def compare_outputs(output) -> tuple[Path, Path]:
    out = Path(output)
    suffix = out.suffix or ".png"
    return (
        out.with_name(f"{out.stem}_classic{suffix}"),
        out.with_name(f"{out.stem}_improved{suffix}"),
    )


def cmd_compare(specs: Sequence[JobSpec], report) -> int:
    """Run each spec (one per variant) on the same inputs and write one CSV."""
    if not specs[0].reference:
        raise InputError("compare needs --reference")
    image, mask, reference = _load(specs[0])
    rows = [_run_job(spec, image, mask, reference) for spec in specs]
    append_rows(report, rows)
    for row in rows:
        print(f"{row['variant']}: PSNR {row['psnr_db']} dB, SSIM {row['ssim']}")
    return EXIT_OK


def cmd_metrics(a_path, b_path) -> int:
    a, b = read_image(a_path), read_image(b_path)
    print(f"{format_psnr(psnr(a, b))},{format_ssim(ssim(a, b))}")
    return EXIT_OK


def _dispatch(args) -> int:
    if args.command == "inpaint":
        return cmd_inpaint(_job(args, args.variant, args.output))
    if args.command == "compare":
        outs = compare_outputs(args.output)
        specs = [_job(args, v, o) for v, o in zip(("classic", "improved"), outs)]
        report = args.report or str(Path(args.output).with_suffix(".csv"))
        return cmd_compare(specs, report)
    if args.command == "metrics":
        return cmd_metrics(args.a, args.b)
    if args.command == "make-corpus":
        from .corpus import write_corpus

        for path in write_corpus(args.directory):
            print(path)
        return EXIT_OK
    raise AssertionError(args.command)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return _dispatch(args)
    except UnprocessableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNPROCESSABLE
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())

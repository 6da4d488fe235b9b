"""Command-line front end.

Subcommands: metric, refine, upsample-mask, distort, bench. All
randomness flows from an explicit --seed; identical invocations
produce byte-identical outputs. Exit codes: 0 success, 1 I/O error,
2 contract violation, 3 benchmark ordering failure.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bench import DEFAULT_STRENGTHS, KINDS, DistortionSpec, apply_distortion, run_bench
from .image_io import load_image, save_image
from .losses import SplParams, total_loss
from .mask_upsample import UpsampleConfig, upsample_mask
from .refine import RefineConfig, refine


def _dump_json(obj, fp=None):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if fp is None:
        sys.stdout.write(text)
    else:
        Path(fp).write_text(text)


def _add_spl_flags(p):
    p.add_argument("--window", type=int, default=11, help="window size (odd, default 11)")
    p.add_argument("--rho", type=float, default=1e-4, help="fit regularizer")
    p.add_argument(
        "--lambda", dest="lambda_cpl", type=float, default=1e-4, help="CPL weight"
    )


def _spl_params(args):
    if args.window < 3 or args.window % 2 == 0:
        raise ValueError("--window must be an odd number >= 3")
    return SplParams(radius=args.window // 2, rho=args.rho, lambda_cpl=args.lambda_cpl)


def _load_mask(path, shape):
    if path is None:
        return None
    mask = load_image(path)
    if mask.ndim == 3:
        mask = mask.mean(axis=2)
    if mask.shape != shape:
        raise ValueError(f"mask size {mask.shape} does not match image {shape}")
    return mask


def _load_pair(source_path, edit_path):
    source = load_image(source_path)
    edit = load_image(edit_path)
    if source.shape != edit.shape:
        raise ValueError(
            f"image sizes differ: {source.shape} vs {edit.shape}"
        )
    return source, edit


def cmd_metric(args):
    source, edit = _load_pair(args.source, args.edit)
    mask = _load_mask(args.mask, source.shape[:2])
    report = total_loss(edit, source, _spl_params(args), mask)
    payload = {"spl": report.spl, "cpl": report.cpl, "total": report.total}
    if args.map_out:
        save_image(np.clip(report.spl_map, 0.0, 1.0), args.map_out + "_spl.png")
        save_image(np.clip(report.cpl_map, 0.0, 1.0), args.map_out + "_cpl.png")
    if args.json:
        _dump_json(payload)
    else:
        print(f"spl={report.spl:.9g} cpl={report.cpl:.9g} total={report.total:.9g}")
    return 0


def cmd_refine(args):
    source, edit = _load_pair(args.source, args.edit)
    mask = _load_mask(args.mask, source.shape[:2])
    config = RefineConfig(
        iterations=args.iters,
        learning_rate=args.lr,
        momentum=args.momentum,
        spl_params=_spl_params(args),
    )
    refined, trace = refine(source, edit, mask, config)
    save_image(refined, args.out)
    print(
        f"initial: spl={trace.initial.spl:.9g} total={trace.initial.total:.9g}\n"
        f"final:   spl={trace.final.spl:.9g} total={trace.final.total:.9g}"
    )
    return 0


def cmd_upsample_mask(args):
    coarse = load_image(args.coarse)
    if coarse.ndim == 3:
        coarse = coarse.mean(axis=2)
    guide = load_image(args.guide)
    config = UpsampleConfig(
        binarize_threshold=args.threshold,
        initial_radius=args.radius0,
        radius_increment=args.radius_step,
        guided_eps=args.eps,
        target_size=args.target_size,
    )
    save_image(upsample_mask(coarse, guide, config), args.out)
    return 0


def cmd_distort(args):
    img = load_image(args.image)
    if img.ndim != 3:
        raise ValueError("distort expects a color image")
    strength = args.strength if args.strength is not None else DEFAULT_STRENGTHS[args.kind]
    spec = DistortionSpec(kind=args.kind, strength=strength, seed=args.seed)
    save_image(np.clip(apply_distortion(img, spec), 0.0, 1.0), args.out)
    return 0


def cmd_bench(args):
    corpus_dir = Path(args.corpus)
    images = []
    for path in sorted(corpus_dir.glob("*.png")):
        img = load_image(path)
        if img.ndim == 3 and min(img.shape[:2]) >= 11:
            images.append((path.name, img))
    if not images:
        raise ValueError(f"no usable color PNGs in {corpus_dir}")
    specs = []
    for i, k in enumerate(KINDS):
        strength = getattr(args, k)
        if strength is None:
            strength = DEFAULT_STRENGTHS[k]
        specs.append(DistortionSpec(kind=k, strength=strength, seed=args.seed + i))
    report = run_bench(images, specs, _spl_params(args))
    _dump_json(report, args.out)
    ordering = report["summary"]["ordering_pass"]
    print(f"ordering: {'PASS' if ordering else 'FAIL'}")
    return 0 if ordering else 3


def build_parser():
    parser = argparse.ArgumentParser(
        prog="splkit",
        description="Structure-preservation metrics, refinement, mask upsampling, and benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("metric", help="compute SPL/CPL between two images")
    p.add_argument("source")
    p.add_argument("edit")
    p.add_argument("--mask")
    p.add_argument("--json", action="store_true")
    p.add_argument("--map-out", help="prefix for per-pixel error map PNGs")
    _add_spl_flags(p)
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("refine", help="gradient-descent refinement of an edit")
    p.add_argument("source")
    p.add_argument("edit")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--mask")
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--lr", type=float, default=1.0)
    p.add_argument("--momentum", type=float, default=0.9)
    _add_spl_flags(p)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("upsample-mask", help="iterative guided mask upsampling")
    p.add_argument("coarse")
    p.add_argument("guide")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--target-size", type=int, default=None)
    p.add_argument("--threshold", type=float, default=0.4)
    p.add_argument("--radius0", type=int, default=2)
    p.add_argument("--radius-step", type=int, default=2)
    p.add_argument("--eps", type=float, default=1e-4)
    p.set_defaults(func=cmd_upsample_mask)

    p = sub.add_parser("distort", help="apply one distortion to an image")
    p.add_argument("image")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--strength", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_distort)

    p = sub.add_parser("bench", help="distortion benchmark over a corpus directory")
    p.add_argument("corpus")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    for kind in KINDS:
        p.add_argument(
            f"--{kind.replace('_', '-')}",
            dest=kind,
            type=float,
            default=None,
            help=f"{kind} strength (default {DEFAULT_STRENGTHS[kind]})",
        )
    _add_spl_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, PermissionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

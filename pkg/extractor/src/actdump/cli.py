"""actdump command line: plan, extract, softmax."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import ActdumpError
from .extract import ExtractionConfig, extract
from .hooks import plan_hooks
from .softmax import dump_softmax


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="actdump",
        description="Dump per-layer activation tensors of pretrained vision models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="list capture points for a model")
    p.add_argument("model")

    for name, help_text in (
        ("extract", "dump per-layer activation tensors plus a manifest"),
        ("softmax", "dump the softmax matrix for the LEEP baseline"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("model")
        p.add_argument("--images", required=True, metavar="DIR",
                       help="image folder; subdirectories are class labels")
        p.add_argument("--out", required=True, metavar="DIR")
        p.add_argument("--per-class", type=int, default=1,
                       help="sample size per class (default 1)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--resize", type=int, default=256)
        p.add_argument("--crop", type=int, default=224)
        p.add_argument("--batch-size", type=int, default=8)
        p.add_argument("--dataset-id", default=None)
        p.add_argument("--no-pretrained", action="store_true",
                       help="use a seeded random init instead of downloading weights")
    return parser


def config_from(args) -> ExtractionConfig:
    return ExtractionConfig(
        model_id=args.model,
        image_dir=Path(args.images),
        out_dir=Path(args.out),
        resize_edge=args.resize,
        crop_size=args.crop,
        per_class=args.per_class,
        seed=args.seed,
        pretrained=not args.no_pretrained,
        batch_size=args.batch_size,
        dataset_id=args.dataset_id,
    )


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "plan":
            plan = plan_hooks(args.model)
            for i, point in enumerate(plan.points):
                print(f"{i:3d}  {point.granularity:<10}  {point.name:<24}  "
                      f"{point.module_path}")
            return 0
        if args.command == "extract":
            path = extract(config_from(args))
            print(f"wrote {path}")
            return 0
        path = dump_softmax(config_from(args))
        print(f"wrote {path}")
        return 0
    except ActdumpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

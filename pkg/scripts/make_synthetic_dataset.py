#!/usr/bin/env python3
"""Generate a synthetic ring/blob dataset plus a staged layer manifest.

The output directory is directly consumable by `cubetopo omega`:

    python3 scripts/make_synthetic_dataset.py --out /tmp/synth --images 40
    cubetopo omega /tmp/synth/manifest.json --eta 0.5 --out /tmp/synth/results
"""

import argparse

from cubetopo.synthetic import shape_dataset, stage_pipeline, write_stage_manifest


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", required=True)
    ap.add_argument("--images", type=int, default=40)
    ap.add_argument("--size", type=int, default=32)
    ap.add_argument("--stages", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    batch, labels = shape_dataset(args.images, args.size, seed=args.seed)
    stages = stage_pipeline(batch, n_stages=args.stages)
    path = write_stage_manifest(
        args.out, stages,
        model_id=f"synthetic-{args.stages}stage",
        dataset_id=f"rings-blobs-{args.size}px-seed{args.seed}",
    )
    print(f"wrote {path} ({args.images} images, {args.stages} stages, "
          f"{labels.count('ring')} rings / {labels.count('blob')} blobs)")


if __name__ == "__main__":
    main()

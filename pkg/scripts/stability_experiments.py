#!/usr/bin/env python3
"""Desk-scale stability experiments: subsampling and input resolution.

Computes per-image complexity for a synthetic shape dataset, then reports
(1) how the dataset mean moves under balanced subsampling and (2) how the
stage trajectory compares across raster resolutions. Both effects should
be small; the acceptance suite asserts the same properties with pinned
tolerances.
"""

import argparse

import numpy as np

from cubetopo import ScalarGrid, betti_at, diagram_of_grid, pearson
from cubetopo.synthetic import shape_dataset, stage_pipeline


def omega_values(batch, eta):
    return np.array(
        [sum(betti_at(diagram_of_grid(ScalarGrid(img)), eta)) for img in batch],
        dtype=float,
    )


def subsampling(args):
    batch, labels = shape_dataset(args.images, args.size, seed=args.seed)
    omegas = omega_values(batch, args.eta)
    full = omegas.mean()
    print(f"full set: n={args.images}  omega_mean={full:.4f}")
    by_class = {
        label: np.array([i for i, l in enumerate(labels) if l == label])
        for label in ("ring", "blob")
    }
    half = args.images // 4  # per class, half of the half-size subsample
    for seed in range(args.subsample_seeds):
        rng = np.random.default_rng(seed)
        pick = np.concatenate(
            [rng.choice(idx, size=half, replace=False) for idx in by_class.values()]
        )
        sub = omegas[pick].mean()
        print(
            f"subsample seed {seed}: n={pick.size}  omega_mean={sub:.4f}  "
            f"rel_err={abs(sub - full) / full:.3%}"
        )


def resolution(args):
    trajectories = {}
    for size in args.resolutions:
        batch, _ = shape_dataset(args.images, size, seed=args.seed)
        stages = stage_pipeline(batch, n_stages=args.stages)
        trajectories[size] = [float(omega_values(st, args.eta).mean()) for st in stages]
        pretty = ", ".join(f"{v:.3f}" for v in trajectories[size])
        print(f"{size}x{size}: omega trajectory = [{pretty}]")
    sizes = list(trajectories)
    for a, b in zip(sizes, sizes[1:]):
        r = pearson(trajectories[a], trajectories[b])
        print(f"pearson({a} vs {b}) = {r:.4f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--images", type=int, default=80)
    ap.add_argument("--size", type=int, default=32)
    ap.add_argument("--stages", type=int, default=3)
    ap.add_argument("--eta", type=float, default=0.5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--subsample-seeds", type=int, default=5)
    ap.add_argument("--resolutions", type=int, nargs="+", default=[32, 64])
    args = ap.parse_args()

    print("== subsampling stability ==")
    subsampling(args)
    print("\n== resolution stability ==")
    resolution(args)


if __name__ == "__main__":
    main()

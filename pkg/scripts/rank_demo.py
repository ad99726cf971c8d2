#!/usr/bin/env python3
"""End-to-end ranking demo on synthetic models with known decay rates.

Builds several 5-layer "models" whose complexity decays at different
speeds, attaches fake fine-tuned accuracies that reward faster decay, and
runs the rank command. Expect a strongly negative correlation in the
footer.
"""

import argparse
import sys
from pathlib import Path

from cubetopo.cli import main as cubetopo_main
from cubetopo.synthetic import scatter_image, write_stage_manifest

MODELS = {
    # model_id: (per-layer dark-pixel counts, fake fine-tuned accuracy)
    "fast-decay": ([9, 6, 4, 2, 1], 0.92),
    "mid-decay": ([9, 8, 6, 5, 4], 0.85),
    "slow-decay": ([9, 9, 8, 8, 7], 0.78),
    "flat": ([9, 9, 9, 9, 9], 0.70),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", required=True)
    ap.add_argument("--degree", type=int, default=1)
    args = ap.parse_args()

    out = Path(args.out)
    manifests = []
    for model_id, (counts, accuracy) in MODELS.items():
        stages = [scatter_image(11, c)[None, ...] for c in counts]
        manifests.append(
            write_stage_manifest(out / model_id, stages, model_id=model_id,
                                 dataset_id="synthetic", accuracy=accuracy)
        )

    code = cubetopo_main([
        "rank", *map(str, manifests),
        "--eta", "0.5", "--degree", str(args.degree),
        "--out", str(out / "results"), "--reproducible",
    ])
    if code == 0:
        print((out / "results" / "ranking.csv").read_text(), end="")
    return code


if __name__ == "__main__":
    sys.exit(main())

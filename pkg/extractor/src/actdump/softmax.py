"""Source-model prediction dumps for the LEEP baseline.

One CSV row per image: image_id followed by the full softmax over the
source label space (1000 classes for the ImageNet heads used here), plus
a labels.csv mapping image ids to their target-class folder names.
"""

from __future__ import annotations

from pathlib import Path

import torch

from .extract import ExtractionConfig, load_batches, sample_images, seeded_model


def dump_softmax(config: ExtractionConfig) -> Path:
    """Writes <model_id>.csv (softmax rows) and labels.csv; returns the former."""
    model = seeded_model(config)
    picked = sample_images(config)
    batches, kept = load_batches(config, picked)

    probs = []
    with torch.no_grad():
        for batch in batches:
            logits = model(batch)
            probs.append(torch.softmax(logits, dim=1))
    matrix = torch.cat(probs, dim=0).double()
    # renormalize so each row sums to 1 at float64 despite float32 softmax
    matrix = matrix / matrix.sum(dim=1, keepdim=True)

    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    n_classes = matrix.shape[1]
    header = "image_id," + ",".join(f"p{z}" for z in range(n_classes))
    lines = [header]
    for (image_id, _), row in zip(kept, matrix):
        lines.append(image_id + "," + ",".join(repr(float(v)) for v in row))
    softmax_path = out_dir / f"{config.model_id}.csv"
    softmax_path.write_text("\n".join(lines) + "\n")

    labels_path = out_dir / "labels.csv"
    label_lines = ["image_id,label"] + [f"{i},{l}" for i, l in kept]
    labels_path.write_text("\n".join(label_lines) + "\n")
    return softmax_path

"""Activation extraction: images -> per-layer tensor files + manifest.

Sampled images run through the network in eval mode with forward hooks on
the planned capture points. Per layer, activations are stacked into one
(N, H, W, C) float32 tensor file (channels moved last, matching the volume
convention downstream) and a manifest binds layer order, names and shapes.
Everything is deterministic given the seed.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch
from PIL import Image
from torchvision import models, transforms

from .errors import EmptyDataset, ImageDecodeError, WeightsUnavailable
from .hooks import HookPlan, plan_hooks

log = logging.getLogger("actdump")

IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg", ".bmp", ".ppm", ".webp")
IMAGENET_MEAN = (0.485, 0.456, 0.406)
IMAGENET_STD = (0.229, 0.224, 0.225)


@dataclass(frozen=True)
class ExtractionConfig:
    model_id: str
    image_dir: Path
    out_dir: Path
    resize_edge: int = 256
    crop_size: int = 224
    per_class: int = 1
    seed: int = 0
    pretrained: bool = True
    batch_size: int = 8
    dataset_id: str | None = None

    def resolved_dataset_id(self) -> str:
        return self.dataset_id or Path(self.image_dir).name


def load_pretrained(model_id: str) -> torch.nn.Module:
    try:
        return models.get_model(model_id, weights="DEFAULT")
    except Exception as exc:
        raise WeightsUnavailable(
            f"could not load pretrained weights for {model_id}: {exc}"
        ) from exc


def seeded_model(config: ExtractionConfig) -> torch.nn.Module:
    # the seed pins the random init when running without pretrained weights
    torch.manual_seed(config.seed)
    if config.pretrained:
        model = load_pretrained(config.model_id)
    else:
        model = models.get_model(config.model_id, weights=None)
    model.eval()
    return model


def sample_images(config: ExtractionConfig) -> list[tuple[str, str, Path]]:
    """Balanced per-class sample; returns (image_id, label, path) triples.

    Class = immediate subdirectory of the image folder; a flat folder is
    treated as a single class. File order is sorted before sampling so a
    fixed seed always picks the same subset.
    """
    root = Path(config.image_dir)
    if not root.is_dir():
        raise EmptyDataset(f"image folder not found: {root}")
    class_dirs = sorted(p for p in root.iterdir() if p.is_dir())
    if not class_dirs:
        class_dirs = [root]
    rng = np.random.default_rng(config.seed)
    picked = []
    for class_dir in class_dirs:
        files = sorted(
            p for p in class_dir.iterdir()
            if p.suffix.lower() in IMAGE_SUFFIXES and p.is_file()
        )
        if not files:
            continue
        k = min(config.per_class, len(files))
        index = rng.choice(len(files), size=k, replace=False)
        label = class_dir.name if class_dir != root else "all"
        for i in sorted(int(v) for v in index):
            picked.append((str(files[i].relative_to(root)), label, files[i]))
    if not picked:
        raise EmptyDataset(f"no images under {root}")
    return picked


def build_transform(config: ExtractionConfig):
    return transforms.Compose([
        transforms.Resize(config.resize_edge),
        transforms.CenterCrop(config.crop_size),
        transforms.ToTensor(),
        transforms.Normalize(IMAGENET_MEAN, IMAGENET_STD),
    ])


def load_batches(config: ExtractionConfig, picked):
    """Decode and preprocess images; undecodable files are skipped with a warning."""
    transform = build_transform(config)
    tensors, kept = [], []
    skipped = 0
    for image_id, label, path in picked:
        try:
            with Image.open(path) as img:
                tensor = transform(img.convert("RGB"))
        except Exception as exc:
            skipped += 1
            log.warning("skipping %s: %s", path, ImageDecodeError(str(exc)))
            continue
        tensors.append(tensor)
        kept.append((image_id, label))
    if not tensors:
        raise EmptyDataset("every image failed to decode")
    if skipped:
        log.warning("skipped %d undecodable image(s)", skipped)
    batches = [
        torch.stack(tensors[i : i + config.batch_size])
        for i in range(0, len(tensors), config.batch_size)
    ]
    return batches, kept


def _run_with_hooks(model: torch.nn.Module, plan: HookPlan, batches):
    """Forward all batches; returns per-point activations stacked over images."""
    captured: dict[str, list[torch.Tensor]] = {p.module_path: [] for p in plan.points}
    handles = []

    def _recorder(path):
        def hook(_module, _inputs, output):
            # clone: later in-place ReLUs may overwrite this buffer
            captured[path].append(output.detach().clone())
        return hook

    for point in plan.points:
        module = model.get_submodule(point.module_path)
        handles.append(module.register_forward_hook(_recorder(point.module_path)))
    try:
        with torch.no_grad():
            for batch in batches:
                model(batch)
    finally:
        for h in handles:
            h.remove()
    return {path: torch.cat(chunks, dim=0) for path, chunks in captured.items()}


def extract(config: ExtractionConfig) -> Path:
    """Run the model over the sampled images and dump tensors + manifest.

    Writes one (N, H, W, C) float32 NPY per capture point and a
    manifest.json binding the layer order; returns the manifest path.
    """
    plan = plan_hooks(config.model_id)
    model = seeded_model(config)
    picked = sample_images(config)
    batches, kept = load_batches(config, picked)

    activations = _run_with_hooks(model, plan, batches)

    out_dir = Path(config.out_dir)
    tensor_dir = out_dir / "tensors"
    tensor_dir.mkdir(parents=True, exist_ok=True)
    layers = []
    for index, point in enumerate(plan.points):
        stacked = activations[point.module_path]  # (N, C, H, W)
        volume = stacked.permute(0, 2, 3, 1).contiguous().numpy().astype(np.float32)
        filename = f"layer{index:02d}_{point.name}.npy"
        np.save(tensor_dir / filename, volume)
        layers.append({
            "index": index,
            "name": point.name,
            "tensor": f"tensors/{filename}",
            "shape": list(volume.shape),
        })

    manifest = {
        "model_id": config.model_id,
        "dataset_id": config.resolved_dataset_id(),
        "finetuned_accuracy": None,
        "layers": layers,
    }
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")

    labels_path = out_dir / "labels.csv"
    lines = ["image_id,label"] + [f"{image_id},{label}" for image_id, label in kept]
    labels_path.write_text("\n".join(lines) + "\n")
    return manifest_path

"""Layer manifests: the JSON index binding a model's dumped tensors.

Schema:
    { "model_id": str, "dataset_id": str, "finetuned_accuracy": number|null,
      "layers": [ { "index": int, "name": str, "tensor": relative-path,
                    "shape": [int...] } ] }

Tensor paths are resolved relative to the manifest file. Loading verifies
that every tensor exists and its container header matches the declared
shape, so downstream stages can trust the manifest.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import MissingTensorFile, NonMonotoneLayerIndex, SchemaViolation
from .npyio import read_header


@dataclass(frozen=True)
class ManifestLayer:
    index: int
    name: str
    tensor: Path  # resolved, absolute
    shape: tuple[int, ...]


@dataclass(frozen=True)
class LayerManifest:
    model_id: str
    dataset_id: str
    layers: tuple[ManifestLayer, ...]
    finetuned_accuracy: float | None = None


def _require(cond: bool, msg: str):
    if not cond:
        raise SchemaViolation(msg)


def load_manifest(path) -> LayerManifest:
    path = Path(path)
    if not path.is_file():
        raise MissingTensorFile(f"manifest not found: {path}")
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"{path}: not valid JSON: {exc}") from exc

    _require(isinstance(doc, dict), f"{path}: top level must be an object")
    _require(isinstance(doc.get("model_id"), str), f"{path}: model_id must be a string")
    _require(isinstance(doc.get("dataset_id"), str), f"{path}: dataset_id must be a string")
    acc = doc.get("finetuned_accuracy")
    if acc is not None:
        _require(
            isinstance(acc, (int, float)) and not isinstance(acc, bool) and 0.0 <= acc <= 1.0,
            f"{path}: finetuned_accuracy must be a number in [0, 1] or null",
        )
        acc = float(acc)
    raw_layers = doc.get("layers")
    _require(isinstance(raw_layers, list), f"{path}: layers must be a list")

    base = path.parent
    layers = []
    last_index = None
    for pos, entry in enumerate(raw_layers):
        _require(isinstance(entry, dict), f"{path}: layers[{pos}] must be an object")
        idx = entry.get("index")
        _require(
            isinstance(idx, int) and not isinstance(idx, bool),
            f"{path}: layers[{pos}].index must be an integer",
        )
        name = entry.get("name")
        _require(isinstance(name, str), f"{path}: layers[{pos}].name must be a string")
        rel = entry.get("tensor")
        _require(isinstance(rel, str), f"{path}: layers[{pos}].tensor must be a path string")
        shape = entry.get("shape")
        _require(
            isinstance(shape, list)
            and all(isinstance(s, int) and not isinstance(s, bool) and s > 0 for s in shape),
            f"{path}: layers[{pos}].shape must be a list of positive ints",
        )
        if last_index is not None and idx <= last_index:
            raise NonMonotoneLayerIndex(
                f"{path}: layer index {idx} follows {last_index}; indices must strictly increase"
            )
        last_index = idx

        tensor_path = (base / rel).resolve()
        if not tensor_path.is_file():
            raise MissingTensorFile(f"{path}: layer {idx} tensor missing: {tensor_path}")
        header, _ = read_header(tensor_path)
        if header.shape != tuple(shape):
            raise SchemaViolation(
                f"{path}: layer {idx} declares shape {tuple(shape)} "
                f"but tensor holds {header.shape}"
            )
        layers.append(ManifestLayer(idx, name, tensor_path, tuple(shape)))

    return LayerManifest(doc["model_id"], doc["dataset_id"], tuple(layers), acc)


def write_manifest(path, manifest: LayerManifest) -> None:
    """Serialize a manifest with tensor paths relative to the output file."""
    path = Path(path)
    base = path.parent.resolve()
    doc = {
        "model_id": manifest.model_id,
        "dataset_id": manifest.dataset_id,
        "finetuned_accuracy": manifest.finetuned_accuracy,
        "layers": [
            {
                "index": layer.index,
                "name": layer.name,
                "tensor": str(Path(layer.tensor).resolve().relative_to(base)),
                "shape": list(layer.shape),
            }
            for layer in manifest.layers
        ],
    }
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(json.dumps(doc, indent=2) + "\n")
    tmp.replace(path)

"""Synthetic image/volume generators for experiments and tests.

Shapes are drawn dark on a bright background so they live in early
sublevel sets: a ring contributes one component and one loop, a blob one
component, speckle noise extra short-lived components. A small "network"
of progressively stronger smoothing stages mimics how depth washes
features out, which is all the desk-scale stability experiments need.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .manifest import LayerManifest, ManifestLayer, write_manifest
from .npyio import write_tensor

BACKGROUND = 1.0
DARK = 0.1
SPECKLE = 0.2


def _radial(size: int, center: tuple[float, float]) -> np.ndarray:
    ys, xs = np.mgrid[0:size, 0:size]
    return np.hypot(ys - center[0], xs - center[1])


def ring_image(
    size: int,
    rng: np.random.Generator,
    *,
    speckles: int = 0,
) -> np.ndarray:
    """Annulus of dark pixels; radius, thickness and center vary per draw."""
    radius = rng.uniform(0.22, 0.34) * size
    thickness = max(1.5, 0.08 * size)
    center = (
        rng.uniform(0.42, 0.58) * size,
        rng.uniform(0.42, 0.58) * size,
    )
    img = np.full((size, size), BACKGROUND)
    dist = _radial(size, center)
    img[np.abs(dist - radius) <= thickness] = DARK
    _add_speckles(img, rng, speckles)
    return img


def blob_image(
    size: int,
    rng: np.random.Generator,
    *,
    speckles: int = 0,
) -> np.ndarray:
    """Filled disk of dark pixels."""
    radius = rng.uniform(0.16, 0.28) * size
    center = (
        rng.uniform(0.42, 0.58) * size,
        rng.uniform(0.42, 0.58) * size,
    )
    img = np.full((size, size), BACKGROUND)
    img[_radial(size, center) <= radius] = DARK
    _add_speckles(img, rng, speckles)
    return img


def _add_speckles(img: np.ndarray, rng: np.random.Generator, count: int):
    size = img.shape[0]
    for _ in range(count):
        y = int(rng.integers(1, size - 1))
        x = int(rng.integers(1, size - 1))
        img[y, x] = SPECKLE


def scatter_image(size: int, count: int) -> np.ndarray:
    """Deterministic image with exactly ``count`` isolated dark pixels.

    Pixels sit on a coarse lattice so no two are orthogonally adjacent;
    at any threshold below BACKGROUND the complexity is exactly ``count``.
    """
    img = np.full((size, size), BACKGROUND)
    placed = 0
    for y in range(1, size - 1, 2):
        for x in range(1, size - 1, 2):
            if placed == count:
                return img
            img[y, x] = DARK
            placed += 1
    if placed < count:
        raise ValueError(f"cannot place {count} isolated pixels on a {size}x{size} image")
    return img


def smooth(img: np.ndarray, passes: int = 1) -> np.ndarray:
    """Separable binomial [1 2 1]/4 blur with edge padding."""
    out = np.asarray(img, dtype=np.float64)
    for _ in range(passes):
        for axis in (0, 1):
            p = np.pad(
                out,
                [(1, 1) if a == axis else (0, 0) for a in range(out.ndim)],
                mode="edge",
            )
            sl = [slice(None)] * out.ndim
            lo, mid, hi = list(sl), list(sl), list(sl)
            lo[axis] = slice(0, -2)
            mid[axis] = slice(1, -1)
            hi[axis] = slice(2, None)
            out = 0.25 * p[tuple(lo)] + 0.5 * p[tuple(mid)] + 0.25 * p[tuple(hi)]
    return out


def shape_dataset(
    n_images: int, size: int, seed: int
) -> tuple[np.ndarray, list[str]]:
    """Balanced ring/blob batch (N, size, size) with speckle noise."""
    rng = np.random.default_rng(seed)
    images = []
    labels = []
    for i in range(n_images):
        label = "ring" if i % 2 == 0 else "blob"
        maker = ring_image if label == "ring" else blob_image
        speckles = int(rng.integers(2, 6))
        images.append(maker(size, rng, speckles=speckles))
        labels.append(label)
    return np.stack(images), labels


def fade_stage(batch: np.ndarray, passes: int, attenuation: float) -> np.ndarray:
    """One synthetic "layer": smooth each image, then pull it toward background."""
    out = np.empty_like(batch)
    for i in range(batch.shape[0]):
        blurred = smooth(batch[i], passes)
        out[i] = BACKGROUND + attenuation * (blurred - BACKGROUND)
    return out


def stage_pipeline(batch: np.ndarray, n_stages: int = 3) -> list[np.ndarray]:
    """Progressively smoothed/attenuated copies of the batch, stage 0 = raw.

    Blur passes scale with resolution so single-pixel noise fades
    comparably at different raster sizes. The final stage attenuates by
    0.5, which pulls every value strictly above BACKGROUND / 2 regardless
    of resolution, so at that threshold the last stage is featureless.
    """
    size = batch.shape[1]
    unit = max(1, size // 32)
    stages = [batch.astype(np.float64)]
    for k in range(1, n_stages):
        attenuation = 0.5 if k == n_stages - 1 else 0.85**k
        stages.append(fade_stage(batch, passes=2 * k * unit, attenuation=attenuation))
    return stages


def write_stage_manifest(
    out_dir,
    stages: list[np.ndarray],
    *,
    model_id: str,
    dataset_id: str,
    accuracy: float | None = None,
    stage_names: list[str] | None = None,
) -> Path:
    """Dump per-stage batch tensors plus a manifest; returns the manifest path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    layers = []
    for k, batch in enumerate(stages):
        arr = batch[..., np.newaxis] if batch.ndim == 3 else batch  # N,H,W -> N,H,W,1
        name = stage_names[k] if stage_names else f"stage{k}"
        tensor_path = out_dir / f"{name}.npy"
        write_tensor(tensor_path, arr)
        layers.append(ManifestLayer(k, name, tensor_path, tuple(arr.shape)))
    manifest = LayerManifest(model_id, dataset_id, tuple(layers), accuracy)
    path = out_dir / "manifest.json"
    write_manifest(path, manifest)
    return path

"""Scalar grids: the voxel field whose sublevel sets get filtered.

A grid is a dense 2D (H x W) or 3D (H x W x C) array of finite float64
filtration values. Activation volumes keep channels as the third axis by
default; ``mean`` and ``select:k`` collapse them to a single plane.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadChannelIndex, NonFiniteGridValue
from .npyio import Tensor

VOLUME = "volume"
MEAN = "mean"


@dataclass(frozen=True)
class ScalarGrid:
    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        if v.ndim not in (2, 3):
            raise ValueError(f"grid must have 2 or 3 axes, got {v.ndim}")
        if any(s < 1 for s in v.shape):
            raise ValueError(f"grid has an empty axis: {v.shape}")
        if not np.isfinite(v).all():
            raise NonFiniteGridValue("grid contains NaN or Inf values")
        object.__setattr__(self, "values", v)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.values.shape

    @property
    def ndim(self) -> int:
        return self.values.ndim


def parse_channel_policy(text: str) -> tuple[str, int | None]:
    """Parse "volume" | "mean" | "select:<k>" into (kind, k)."""
    if text in (VOLUME, MEAN):
        return text, None
    if text.startswith("select:"):
        try:
            k = int(text.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad channel index in policy {text!r}") from None
        if k < 0:
            raise ValueError(f"channel index must be >= 0, got {k}")
        return "select", k
    raise ValueError(f"unknown channel policy {text!r}")


def to_grid(tensor: Tensor | np.ndarray, policy: str = VOLUME) -> ScalarGrid:
    """Turn one tensor (batch axis already stripped) into a ScalarGrid.

    ``volume`` keeps channels as a third grid axis, ``mean`` averages them
    away, ``select:k`` picks a single channel. Tensors without a channel
    axis pass through unchanged under every policy.
    """
    values = tensor.values if isinstance(tensor, Tensor) else np.asarray(tensor)
    if values.ndim not in (2, 3):
        raise ValueError(
            f"expected 2 or 3 axes (strip the batch axis first), got {values.ndim}"
        )
    kind, k = parse_channel_policy(policy)
    if values.ndim == 2:
        return ScalarGrid(values)
    if kind == VOLUME:
        return ScalarGrid(values)
    if kind == MEAN:
        return ScalarGrid(values.mean(axis=2))
    c = values.shape[2]
    if k >= c:
        raise BadChannelIndex(f"channel {k} out of range for {c} channels")
    return ScalarGrid(values[:, :, k])


def split_batch(tensor: Tensor | np.ndarray) -> list[np.ndarray]:
    """Split an N x H x W x C batch into per-image arrays; pass through otherwise."""
    values = tensor.values if isinstance(tensor, Tensor) else np.asarray(tensor)
    if values.ndim == 4:
        return [values[i] for i in range(values.shape[0])]
    return [values]


def iter_grids(tensor: Tensor | np.ndarray, policy: str = VOLUME) -> list[ScalarGrid]:
    return [to_grid(arr, policy) for arr in split_batch(tensor)]


def downsample(grid: ScalarGrid, factor: int, mode: str = "stride") -> ScalarGrid:
    """Reduce the spatial axes by ``factor`` (ceiling division).

    The channel axis of a 3D grid is untouched. ``stride`` keeps every
    factor-th sample; ``max_pool`` takes block maxima over ragged-edge
    blocks. factor 1 is the identity.
    """
    if factor < 1:
        raise ValueError(f"factor must be >= 1, got {factor}")
    if mode not in ("stride", "max_pool"):
        raise ValueError(f"unknown downsample mode {mode!r}")
    if factor == 1:
        return grid
    v = grid.values
    if mode == "stride":
        return ScalarGrid(v[::factor, ::factor])
    starts0 = np.arange(0, v.shape[0], factor)
    starts1 = np.arange(0, v.shape[1], factor)
    pooled = np.maximum.reduceat(v, starts0, axis=0)
    pooled = np.maximum.reduceat(pooled, starts1, axis=1)
    return ScalarGrid(pooled)

"""Betti curves, threshold selection, and the complexity measures.

Per image, the complexity is the sum of the first three Betti numbers at a
threshold eta; per layer, the dataset-level value is the arithmetic mean
over images. One eta is shared by a whole trajectory so values stay
comparable across depth; the automatic rule picks the smallest candidate
at which every first-layer image has all three Betti numbers >= 1.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .cubical import build_complex
from .errors import EmptyGrid, NoValidThreshold
from .grids import ScalarGrid, downsample, iter_grids
from .manifest import LayerManifest
from .npyio import read_tensor
from .persistence import PersistenceDiagram, betti_at, reduce_with_clearing

DEFAULT_ETA_CANDIDATES = 256


@dataclass(frozen=True)
class BettiCurve:
    thresholds: tuple[float, ...]
    values: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class ComplexityRecord:
    layer_index: int
    layer_name: str
    eta: float
    omega_values: tuple[int, ...]  # per-image Betti sums
    omega_mean: float


@dataclass(frozen=True)
class OmegaTrajectory:
    model_id: str
    dataset_id: str
    records: tuple[ComplexityRecord, ...]

    def __post_init__(self):
        indices = [r.layer_index for r in self.records]
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise ValueError(f"layer indices must strictly increase, got {indices}")


def betti_curve(diagram: PersistenceDiagram, eta_grid: Sequence[float]) -> BettiCurve:
    if len(eta_grid) == 0:
        raise EmptyGrid("eta grid is empty")
    grid = [float(e) for e in eta_grid]
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("eta grid must be ascending")
    return BettiCurve(tuple(grid), tuple(betti_at(diagram, e) for e in grid))


def _eta_candidates(diagrams: Sequence[PersistenceDiagram], candidates: int) -> np.ndarray:
    births = [p.birth for d in diagrams for p in d.pairs]
    deaths = [p.death for d in diagrams for p in d.pairs if np.isfinite(p.death)]
    if not births:
        raise NoValidThreshold("no intervals in any diagram")
    if not deaths:
        raise NoValidThreshold("no finite deaths to bound the candidate range")
    return np.linspace(min(births), max(deaths), candidates)


def select_eta(
    first_layer_diagrams: Sequence[PersistenceDiagram],
    candidates: int = DEFAULT_ETA_CANDIDATES,
) -> float:
    """Smallest candidate at which every image has b0, b1, b2 >= 1.

    Candidates are evenly spaced over [min birth, max finite death] across
    the diagrams. Raises NoValidThreshold when no candidate qualifies
    (e.g. some image never acquires a void).
    """
    if len(first_layer_diagrams) == 0:
        raise ValueError("need at least one diagram")
    if candidates < 2:
        raise ValueError("need at least two candidates")
    for eta in _eta_candidates(first_layer_diagrams, candidates):
        eta = float(eta)
        if all(
            min(betti_at(d, eta)) >= 1 for d in first_layer_diagrams
        ):
            return eta
    raise NoValidThreshold(
        "no candidate threshold gives three non-zero Betti numbers on every image"
    )


def best_effort_eta(
    first_layer_diagrams: Sequence[PersistenceDiagram],
    candidates: int = DEFAULT_ETA_CANDIDATES,
) -> float:
    """Fallback rule: the eta maximizing the worst Betti number over images."""
    best = None
    for eta in _eta_candidates(first_layer_diagrams, candidates):
        eta = float(eta)
        score = min(min(betti_at(d, eta)) for d in first_layer_diagrams)
        if best is None or score > best[0]:
            best = (score, eta)
    return best[1]


def omega_for_image(diagram: PersistenceDiagram, eta: float) -> int:
    b0, b1, b2 = betti_at(diagram, eta)
    return b0 + b1 + b2


def diagram_of_grid(grid: ScalarGrid) -> PersistenceDiagram:
    return reduce_with_clearing(build_complex(grid))


def _omega_task(args):
    index, values, eta = args
    diagram = diagram_of_grid(ScalarGrid(values))
    return index, omega_for_image(diagram, eta)


def omega_for_layer(
    grids: Iterable[ScalarGrid],
    eta: float,
    *,
    layer_index: int = 0,
    layer_name: str = "",
    workers: int = 1,
) -> ComplexityRecord:
    """Diagram per grid, omega per image, and the dataset mean.

    Image jobs are independent; with workers > 1 they run in a process
    pool and are re-ordered by index, so the record is deterministic
    regardless of scheduling.
    """
    grids = list(grids)
    if not grids:
        raise ValueError("need at least one grid")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    omegas: list[int | None] = [None] * len(grids)
    if workers == 1 or len(grids) == 1:
        for i, g in enumerate(grids):
            try:
                omegas[i] = omega_for_image(diagram_of_grid(g), eta)
            except Exception as exc:
                raise type(exc)(f"image {i}: {exc}") from exc
    else:
        tasks = [(i, g.values, eta) for i, g in enumerate(grids)]
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            for i, omega in pool.map(_omega_task, tasks):
                omegas[i] = omega
    return ComplexityRecord(
        layer_index=layer_index,
        layer_name=layer_name,
        eta=float(eta),
        omega_values=tuple(int(w) for w in omegas),
        omega_mean=float(np.mean(omegas)),
    )


def _layer_grids(layer, channel_policy, factor, mode) -> list[ScalarGrid]:
    tensor = read_tensor(layer.tensor)
    grids = iter_grids(tensor, channel_policy)
    if factor > 1:
        grids = [downsample(g, factor, mode) for g in grids]
    return grids


def trajectory(
    manifest: LayerManifest,
    eta: float | str = "auto",
    *,
    channel_policy: str = "volume",
    downsample_factor: int = 1,
    downsample_mode: str = "stride",
    eta_candidates: int = DEFAULT_ETA_CANDIDATES,
    workers: int = 1,
) -> OmegaTrajectory:
    """One ComplexityRecord per manifest layer, all at the same eta.

    eta is either a number or "auto", which applies the first-layer
    selection rule and reuses those diagrams for the first record.
    """
    if not manifest.layers:
        return OmegaTrajectory(manifest.model_id, manifest.dataset_id, ())

    records = []
    start = 0
    if eta == "auto":
        first = manifest.layers[0]
        try:
            grids = _layer_grids(first, channel_policy, downsample_factor, downsample_mode)
            diagrams = [diagram_of_grid(g) for g in grids]
        except Exception as exc:
            raise type(exc)(f"layer {first.index} ({first.name}): {exc}") from exc
        eta = select_eta(diagrams, eta_candidates)
        omegas = [omega_for_image(d, eta) for d in diagrams]
        records.append(
            ComplexityRecord(
                layer_index=first.index,
                layer_name=first.name,
                eta=float(eta),
                omega_values=tuple(int(w) for w in omegas),
                omega_mean=float(np.mean(omegas)),
            )
        )
        start = 1
    else:
        eta = float(eta)

    for layer in manifest.layers[start:]:
        try:
            grids = _layer_grids(layer, channel_policy, downsample_factor, downsample_mode)
            record = omega_for_layer(
                grids,
                eta,
                layer_index=layer.index,
                layer_name=layer.name,
                workers=workers,
            )
        except Exception as exc:
            raise type(exc)(f"layer {layer.index} ({layer.name}): {exc}") from exc
        records.append(record)
    return OmegaTrajectory(manifest.model_id, manifest.dataset_id, tuple(records))

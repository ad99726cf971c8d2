"""Transferability ranking: decay-slope measure, LEEP baseline, Pearson.

The slope measure fits a polynomial to the per-layer complexity values
over a layer axis normalized to [0, 1] (so models of different depth are
comparable) and reports the derivative at the domain midpoint. Lower
(more negative) slope means faster decay and predicts higher fine-tuned
accuracy, hence entries are ranked ascending.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    DegenerateFit,
    InsufficientLayers,
    LengthMismatch,
    RowNotNormalized,
    ZeroVariance,
)
from .metrics import OmegaTrajectory

MIDPOINT = 0.5


@dataclass(frozen=True)
class FittedPolynomial:
    degree: int
    coefficients: tuple[float, ...]  # ascending powers
    domain: tuple[float, float] = (0.0, 1.0)

    def __call__(self, t: float) -> float:
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def derivative(self, t: float) -> float:
        acc = 0.0
        for k in range(len(self.coefficients) - 1, 0, -1):
            acc = acc * t + k * self.coefficients[k]
        return acc


@dataclass(frozen=True)
class TTPResult:
    model_id: str
    theta: float
    polynomial: FittedPolynomial
    midpoint: float = MIDPOINT


@dataclass(frozen=True)
class RankingEntry:
    model_id: str
    theta: float
    accuracy: float | None
    leep: float | None


@dataclass(frozen=True)
class RankingReport:
    entries: tuple[RankingEntry, ...]  # ascending theta
    pearson_theta: float
    pearson_leep: float | None
    excluded: tuple[str, ...]  # models without an accuracy


def fit_values(
    layer_indices: Sequence[float], omega_means: Sequence[float], degree: int = 3
) -> FittedPolynomial:
    """Least-squares polynomial over layer positions rescaled to [0, 1]."""
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    idx = np.asarray(layer_indices, dtype=np.float64)
    y = np.asarray(omega_means, dtype=np.float64)
    if idx.shape != y.shape:
        raise LengthMismatch(f"{idx.shape[0]} indices vs {y.shape[0]} values")
    if idx.shape[0] < degree + 1:
        raise InsufficientLayers(
            f"degree {degree} fit needs {degree + 1} layers, got {idx.shape[0]}"
        )
    span = idx.max() - idx.min()
    if span == 0.0:
        raise DegenerateFit("all layer indices identical")
    t = (idx - idx.min()) / span
    # Vandermonde least squares via SVD (numpy polyfit convention, ascending)
    coeffs = np.polynomial.polynomial.polyfit(t, y, degree)
    return FittedPolynomial(degree, tuple(float(c) for c in coeffs))


def fit_polynomial(trajectory: OmegaTrajectory, degree: int = 3) -> FittedPolynomial:
    return fit_values(
        [r.layer_index for r in trajectory.records],
        [r.omega_mean for r in trajectory.records],
        degree,
    )


def ttp_from_values(
    model_id: str,
    layer_indices: Sequence[float],
    omega_means: Sequence[float],
    degree: int = 3,
) -> TTPResult:
    poly = fit_values(layer_indices, omega_means, degree)
    return TTPResult(model_id, float(poly.derivative(MIDPOINT)), poly)


def ttp(trajectory: OmegaTrajectory, degree: int = 3) -> TTPResult:
    """Decay slope: derivative of the fitted polynomial at the domain midpoint."""
    return ttp_from_values(
        trajectory.model_id,
        [r.layer_index for r in trajectory.records],
        [r.omega_mean for r in trajectory.records],
        degree,
    )


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    xs = np.asarray(x, dtype=np.float64)
    ys = np.asarray(y, dtype=np.float64)
    if xs.shape != ys.shape:
        raise LengthMismatch(f"{xs.shape[0]} vs {ys.shape[0]} samples")
    if xs.shape[0] < 3:
        raise LengthMismatch(f"need at least 3 samples, got {xs.shape[0]}")
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    sx = float(np.dot(dx, dx))
    sy = float(np.dot(dy, dy))
    if sx == 0.0 or sy == 0.0:
        raise ZeroVariance("pearson undefined for a constant sequence")
    r = float(np.dot(dx, dy) / np.sqrt(sx * sy))
    # rounding can push |r| infinitesimally past 1
    return min(1.0, max(-1.0, r))


def leep(source_softmax: np.ndarray, target_labels: Sequence[int]) -> float:
    """Log expected empirical prediction of target labels from source softmax.

    Builds the empirical joint over (target label, source class), conditions
    on the source class, and scores each image's own label likelihood under
    its softmax row. Always <= 0; equals 0 only for perfectly confident,
    perfectly aligned predictions.
    """
    s = np.asarray(source_softmax, dtype=np.float64)
    labels = np.asarray(target_labels)
    if s.ndim != 2 or s.shape[0] < 1:
        raise ValueError(f"softmax matrix must be n x Z with n >= 1, got {s.shape}")
    if labels.shape[0] != s.shape[0]:
        raise LengthMismatch(f"{labels.shape[0]} labels vs {s.shape[0]} softmax rows")
    row_sums = s.sum(axis=1)
    bad = np.nonzero(np.abs(row_sums - 1.0) > 1e-6)[0]
    if bad.size:
        raise RowNotNormalized(
            f"softmax row {bad[0]} sums to {row_sums[bad[0]]!r}, not 1"
        )

    classes, y = np.unique(labels, return_inverse=True)
    n, n_z = s.shape
    joint = np.zeros((classes.shape[0], n_z))
    np.add.at(joint, y, s)
    joint /= n
    marginal = joint.sum(axis=0)
    cond = np.zeros_like(joint)
    nonzero = marginal > 0.0  # empty source classes are skipped
    cond[:, nonzero] = joint[:, nonzero] / marginal[nonzero]

    per_image = np.einsum("iz,iz->i", cond[y], s)
    # the likelihood is bounded by the softmax row sum; cap rounding spill
    per_image = np.minimum(per_image, 1.0)
    return float(np.mean(np.log(per_image)))


def rank_models(
    trajectories: Sequence[OmegaTrajectory],
    accuracies: Mapping[str, float],
    leep_values: Mapping[str, float] | None = None,
    degree: int = 3,
) -> RankingReport:
    """Rank by ascending slope and correlate against fine-tuned accuracy.

    Models without an accuracy are still ranked but excluded from the
    correlations (and listed in the report). Requires >= 3 models with
    accuracies.
    """
    results = [ttp(t, degree) for t in trajectories]
    entries = sorted(
        (
            RankingEntry(
                r.model_id,
                r.theta,
                accuracies.get(r.model_id),
                (leep_values or {}).get(r.model_id),
            )
            for r in results
        ),
        key=lambda e: (e.theta, e.model_id),
    )
    scored = [e for e in entries if e.accuracy is not None]
    excluded = tuple(e.model_id for e in entries if e.accuracy is None)
    pearson_theta = pearson([e.theta for e in scored], [e.accuracy for e in scored])
    pearson_leep = None
    with_leep = [e for e in scored if e.leep is not None]
    if len(with_leep) >= 3:
        pearson_leep = pearson(
            [e.leep for e in with_leep], [e.accuracy for e in with_leep]
        )
    return RankingReport(tuple(entries), pearson_theta, pearson_leep, excluded)

"""CSV serialization and atomic file writes.

Floats are printed with repr (shortest representation that round-trips
exactly, up to 17 significant digits); infinite deaths become the literal
"inf". Files are written to a temp name and renamed, so a failed run never
leaves a truncated table behind.
"""

from __future__ import annotations

import math
import os
from pathlib import Path

from .metrics import BettiCurve, ComplexityRecord, OmegaTrajectory
from .persistence import PersistenceDiagram
from .ranking import RankingReport


def fmt(x: float) -> str:
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", newline="") as fh:
        fh.write(text)
        fh.flush()
        os.fsync(fh.fileno())
    tmp.replace(path)


def diagram_csv(diagram: PersistenceDiagram) -> str:
    lines = ["dim,birth,death"]
    for p in diagram.pairs:
        lines.append(f"{p.k},{fmt(p.birth)},{fmt(p.death)}")
    return "\n".join(lines) + "\n"


def betti_csv(curve: BettiCurve) -> str:
    lines = ["eta,b0,b1,b2"]
    for eta, (b0, b1, b2) in zip(curve.thresholds, curve.values):
        lines.append(f"{fmt(eta)},{b0},{b1},{b2}")
    return "\n".join(lines) + "\n"


def _omega_stats(record: ComplexityRecord) -> tuple[float, float, float]:
    ws = record.omega_values
    mean = record.omega_mean
    var = sum((w - mean) ** 2 for w in ws) / len(ws)
    return math.sqrt(var), min(ws), max(ws)


def omega_csv(trajectory: OmegaTrajectory) -> str:
    lines = ["layer_index,layer_name,eta,n_images,omega_mean,omega_std,omega_min,omega_max"]
    for r in trajectory.records:
        std, lo, hi = _omega_stats(r)
        name = r.layer_name
        if "," in name or '"' in name:
            name = '"' + name.replace('"', '""') + '"'
        lines.append(
            f"{r.layer_index},{name},{fmt(r.eta)},{len(r.omega_values)},"
            f"{fmt(r.omega_mean)},{fmt(std)},{fmt(lo)},{fmt(hi)}"
        )
    return "\n".join(lines) + "\n"


def ranking_csv(report: RankingReport) -> str:
    lines = ["model_id,theta,accuracy,leep"]
    for e in report.entries:
        acc = fmt(e.accuracy) if e.accuracy is not None else ""
        lp = fmt(e.leep) if e.leep is not None else ""
        lines.append(f"{e.model_id},{fmt(e.theta)},{acc},{lp}")
    lines.append(f"pearson_ttp={fmt(report.pearson_theta)}")
    if report.pearson_leep is not None:
        lines.append(f"pearson_leep={fmt(report.pearson_leep)}")
    if report.excluded:
        lines.append("excluded_from_pearson=" + ";".join(report.excluded))
    return "\n".join(lines) + "\n"

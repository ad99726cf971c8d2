"""Static SVG 1.1 charts, generated without any plotting dependency.

Output is plain text with one element per data point, so tests can assert
on substring containment. All coordinates are formatted to fixed precision
and inputs are processed in deterministic order; the only varying part is
an optional timestamp comment, suppressed for reproducible runs.
"""

from __future__ import annotations

import math
import time

from .metrics import BettiCurve, OmegaTrajectory
from .persistence import PersistenceDiagram
from .ranking import RankingReport

WIDTH = 520
HEIGHT = 400
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 58, 16, 34, 44

SERIES_COLORS = {"h0": "#1f77b4", "h1": "#ff7f0e", "h2": "#2ca02c"}


def _f(x: float) -> str:
    return f"{x:.2f}"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


class _Frame:
    """Maps data coordinates into the plot rectangle."""

    def __init__(self, xlo, xhi, ylo, yhi):
        self.xlo, self.xhi = float(xlo), float(xhi)
        self.ylo, self.yhi = float(ylo), float(yhi)
        if self.xhi == self.xlo:
            self.xhi = self.xlo + 1.0
        if self.yhi == self.ylo:
            self.yhi = self.ylo + 1.0

    def x(self, v: float) -> float:
        t = (v - self.xlo) / (self.xhi - self.xlo)
        return MARGIN_L + t * (WIDTH - MARGIN_L - MARGIN_R)

    def y(self, v: float) -> float:
        t = (v - self.ylo) / (self.yhi - self.ylo)
        return HEIGHT - MARGIN_B - t * (HEIGHT - MARGIN_T - MARGIN_B)

    def axes(self, xlabel: str, ylabel: str) -> list[str]:
        x0, x1 = MARGIN_L, WIDTH - MARGIN_R
        y0, y1 = HEIGHT - MARGIN_B, MARGIN_T
        parts = [
            f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}" '
            f'fill="none" stroke="#444" stroke-width="1"/>'
        ]
        for v in _ticks(self.xlo, self.xhi):
            px = self.x(v)
            parts.append(
                f'<line x1="{_f(px)}" y1="{y0}" x2="{_f(px)}" y2="{y0 + 4}" stroke="#444"/>'
            )
            parts.append(
                f'<text x="{_f(px)}" y="{y0 + 16}" font-size="10" text-anchor="middle">'
                f"{v:.4g}</text>"
            )
        for v in _ticks(self.ylo, self.yhi):
            py = self.y(v)
            parts.append(
                f'<line x1="{x0 - 4}" y1="{_f(py)}" x2="{x0}" y2="{_f(py)}" stroke="#444"/>'
            )
            parts.append(
                f'<text x="{x0 - 7}" y="{_f(py + 3)}" font-size="10" text-anchor="end">'
                f"{v:.4g}</text>"
            )
        parts.append(
            f'<text x="{(x0 + x1) / 2:.1f}" y="{HEIGHT - 8}" font-size="11" '
            f'text-anchor="middle">{xlabel}</text>'
        )
        parts.append(
            f'<text x="14" y="{(y0 + y1) / 2:.1f}" font-size="11" text-anchor="middle" '
            f'transform="rotate(-90 14 {(y0 + y1) / 2:.1f})">{ylabel}</text>'
        )
        return parts


def _document(title: str, body: list[str], reproducible: bool) -> str:
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
    ]
    if not reproducible:
        head.append(f"<!-- generated {time.strftime('%Y-%m-%dT%H:%M:%S')} -->")
    head.append(f'<title>{title}</title>')
    head.append(
        f'<text x="{WIDTH / 2:.1f}" y="20" font-size="13" text-anchor="middle">{title}</text>'
    )
    return "\n".join(head + body + ["</svg>"]) + "\n"


def _marker(kind: str, x: float, y: float, cls: str) -> str:
    color = SERIES_COLORS.get(cls, "#333")
    if kind == "circle":
        return f'<circle class="{cls}" cx="{_f(x)}" cy="{_f(y)}" r="3" fill="{color}"/>'
    if kind == "rect":
        return (
            f'<rect class="{cls}" x="{_f(x - 3)}" y="{_f(y - 3)}" width="6" height="6" '
            f'fill="{color}"/>'
        )
    return (
        f'<path class="{cls}" d="M {_f(x)} {_f(y - 4)} L {_f(x + 3.5)} {_f(y + 3)} '
        f'L {_f(x - 3.5)} {_f(y + 3)} Z" fill="{color}"/>'
    )


def diagram_svg(
    diagram: PersistenceDiagram, title: str = "persistence diagram", reproducible: bool = False
) -> str:
    finite = [p for p in diagram.pairs if math.isfinite(p.death)]
    births = [p.birth for p in diagram.pairs]
    values = births + [p.death for p in finite]
    lo = min(values) if values else 0.0
    hi = max(values) if values else 1.0
    if hi == lo:
        hi = lo + 1.0
    pad = 0.05 * (hi - lo)
    # reserve headroom above the finite range for the infinity band
    frame = _Frame(lo - pad, hi + pad, lo - pad, hi + pad + 0.18 * (hi - lo))
    inf_y = frame.y(hi + pad + 0.12 * (hi - lo))

    body = frame.axes("birth", "death")
    body.append(
        f'<line x1="{_f(frame.x(frame.xlo))}" y1="{_f(frame.y(frame.xlo))}" '
        f'x2="{_f(frame.x(frame.xhi))}" y2="{_f(frame.y(frame.xhi))}" '
        f'stroke="#999" stroke-dasharray="4 3"/>'
    )
    body.append(
        f'<line x1="{MARGIN_L}" y1="{_f(inf_y)}" x2="{WIDTH - MARGIN_R}" y2="{_f(inf_y)}" '
        f'stroke="#bbb" stroke-dasharray="2 3"/>'
    )
    body.append(
        f'<text x="{WIDTH - MARGIN_R - 4}" y="{_f(inf_y - 4)}" font-size="10" '
        f'text-anchor="end">inf</text>'
    )
    kinds = {0: "circle", 1: "rect", 2: "triangle"}
    for p in diagram.pairs:
        y = inf_y if math.isinf(p.death) else frame.y(p.death)
        body.append(_marker(kinds[p.k], frame.x(p.birth), y, f"h{p.k}"))
    for i, (cls, color) in enumerate(SERIES_COLORS.items()):
        x = MARGIN_L + 10 + 60 * i
        body.append(_marker(kinds[i], x, MARGIN_T + 10, cls))
        body.append(
            f'<text x="{x + 8}" y="{MARGIN_T + 14}" font-size="10">H{i}</text>'
        )
    return _document(title, body, reproducible)


def _polyline(points: list[tuple[float, float]], cls: str, color: str) -> str:
    coords = " ".join(f"{_f(x)},{_f(y)}" for x, y in points)
    return (
        f'<polyline class="{cls}" points="{coords}" fill="none" '
        f'stroke="{color}" stroke-width="1.6"/>'
    )


def betti_curve_svg(
    curve: BettiCurve, title: str = "Betti curves", reproducible: bool = False
) -> str:
    etas = curve.thresholds
    top = max(max(v) for v in curve.values)
    frame = _Frame(min(etas), max(etas), 0.0, max(top, 1))
    body = frame.axes("eta", "Betti number")
    for k, cls in enumerate(("b0", "b1", "b2")):
        color = SERIES_COLORS[f"h{k}"]
        pts = [(frame.x(e), frame.y(v[k])) for e, v in zip(etas, curve.values)]
        body.append(_polyline(pts, cls, color))
        body.append(
            f'<text x="{MARGIN_L + 10 + 50 * k}" y="{MARGIN_T + 14}" font-size="10" '
            f'fill="{color}">b{k}</text>'
        )
    return _document(title, body, reproducible)


def trajectory_svg(
    trajectory: OmegaTrajectory, title: str | None = None, reproducible: bool = False
) -> str:
    records = trajectory.records
    xs = [r.layer_index for r in records]
    ys = [r.omega_mean for r in records]
    if title is None:
        eta = records[0].eta if records else float("nan")
        title = (
            f"complexity vs depth: {trajectory.model_id} on {trajectory.dataset_id} "
            f"(eta={eta:.6g})"
        )
    frame = _Frame(min(xs), max(xs), min(min(ys), 0.0), max(ys))
    body = frame.axes("layer index", "mean complexity")
    pts = [(frame.x(x), frame.y(y)) for x, y in zip(xs, ys)]
    if len(pts) > 1:
        body.append(_polyline(pts, "omega", "#1f77b4"))
    for (px, py), x, y in zip(pts, xs, ys):
        body.append(
            f'<circle class="omega" cx="{_f(px)}" cy="{_f(py)}" r="3" fill="#1f77b4"/>'
        )
    return _document(title, body, reproducible)


def ranking_svg(
    report: RankingReport, title: str = "decay slope vs fine-tuned accuracy",
    reproducible: bool = False,
) -> str:
    scored = [e for e in report.entries if e.accuracy is not None]
    xs = [e.theta for e in scored]
    ys = [e.accuracy for e in scored]
    frame = _Frame(min(xs), max(xs), min(ys), max(ys))
    body = frame.axes("theta", "accuracy")
    # least-squares trend line over the scored models
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx > 0:
        slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx
        y0 = my + slope * (frame.xlo - mx)
        y1 = my + slope * (frame.xhi - mx)
        body.append(
            f'<line class="trend" x1="{_f(frame.x(frame.xlo))}" y1="{_f(frame.y(y0))}" '
            f'x2="{_f(frame.x(frame.xhi))}" y2="{_f(frame.y(y1))}" '
            f'stroke="#d62728" stroke-dasharray="5 3"/>'
        )
    for e in scored:
        px, py = frame.x(e.theta), frame.y(e.accuracy)
        body.append(
            f'<circle class="model" cx="{_f(px)}" cy="{_f(py)}" r="4" fill="#1f77b4"/>'
        )
        body.append(
            f'<text x="{_f(px + 6)}" y="{_f(py - 5)}" font-size="9">{e.model_id}</text>'
        )
    return _document(title, body, reproducible)

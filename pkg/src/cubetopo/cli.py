"""Command-line surface: diagram, betti, omega, rank.

Each command writes CSV tables plus an SVG chart into --out, atomically.
Exit codes: 0 success, 1 computation error, 2 usage/IO error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import output, svgplot
from .cubical import build_complex
from .errors import ComputationError, CubetopoError, EmptyGrid, NoValidThreshold, UsageError
from .grids import downsample, split_batch, to_grid
from .manifest import load_manifest
from .metrics import OmegaTrajectory, betti_curve, trajectory
from .npyio import read_tensor
from .persistence import reduce_with_clearing
from .ranking import leep as leep_score
from .ranking import rank_models


def _add_grid_flags(p: argparse.ArgumentParser):
    p.add_argument("--channels", default="volume",
                   help="channel policy: volume | mean | select:<k> (default volume)")
    p.add_argument("--downsample", type=int, default=1, metavar="N",
                   help="spatial downsample factor (default 1 = off)")
    p.add_argument("--pool", choices=("stride", "max"), default="stride",
                   help="downsample mode (default stride)")


def _add_common_flags(p: argparse.ArgumentParser):
    p.add_argument("--out", required=True, metavar="DIR", help="output directory")
    p.add_argument("--reproducible", action="store_true",
                   help="omit timestamps so outputs are byte-identical across runs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubetopo",
        description="Cubical persistent homology of scalar grids and "
                    "embedding-complexity model ranking",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagram", help="persistence diagram of one tensor")
    p.add_argument("tensor", help="tensor file")
    p.add_argument("--index", type=int, default=0,
                   help="image index for batch tensors (default 0)")
    _add_grid_flags(p)
    _add_common_flags(p)

    p = sub.add_parser("betti", help="Betti curves of one tensor")
    p.add_argument("tensor", help="tensor file")
    p.add_argument("--grid", required=True, metavar="MIN:MAX:COUNT",
                   help="threshold grid specification")
    p.add_argument("--index", type=int, default=0)
    _add_grid_flags(p)
    _add_common_flags(p)

    p = sub.add_parser("omega", help="per-layer complexity trajectory of a manifest")
    p.add_argument("manifest", help="manifest JSON file")
    p.add_argument("--eta", default="auto",
                   help='threshold: "auto" (first-layer rule) or a number (default auto)')
    p.add_argument("--workers", type=int, default=1)
    _add_grid_flags(p)
    _add_common_flags(p)

    p = sub.add_parser("rank", help="rank models by decay slope")
    p.add_argument("manifests", nargs="+",
                   help="manifest JSON files, or a directory containing them")
    p.add_argument("--accuracies", metavar="CSV",
                   help="model_id,accuracy table (overrides manifest values)")
    p.add_argument("--softmax-dir", metavar="DIR",
                   help="directory of <model_id>.csv softmax dumps for the LEEP baseline")
    p.add_argument("--labels", metavar="CSV",
                   help="image_id,label table for the LEEP baseline")
    p.add_argument("--degree", type=int, default=3, help="polynomial degree (default 3)")
    p.add_argument("--eta", default="auto")
    p.add_argument("--workers", type=int, default=1)
    _add_grid_flags(p)
    _add_common_flags(p)

    return parser


def _load_grid(args):
    tensor = read_tensor(args.tensor)
    arrays = split_batch(tensor)
    if not 0 <= args.index < len(arrays):
        raise UsageError(f"--index {args.index} out of range for batch of {len(arrays)}")
    grid = to_grid(arrays[args.index], args.channels)
    mode = "max_pool" if args.pool == "max" else "stride"
    return downsample(grid, args.downsample, mode)


def _parse_eta(text: str):
    if text == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise UsageError(f'--eta must be "auto" or a number, got {text!r}') from None


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _emit(path: Path, text: str):
    output.atomic_write_text(path, text)
    print(f"wrote {path}")


def cmd_diagram(args) -> int:
    diagram = reduce_with_clearing(build_complex(_load_grid(args)))
    out = _out_dir(args)
    _emit(out / "diagram.csv", output.diagram_csv(diagram))
    _emit(out / "diagram.svg",
          svgplot.diagram_svg(diagram, title=Path(args.tensor).name,
                              reproducible=args.reproducible))
    return 0


def _parse_grid_spec(spec: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 3:
        raise UsageError(f"--grid must be MIN:MAX:COUNT, got {spec!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"--grid must be MIN:MAX:COUNT, got {spec!r}") from None
    if count < 2:
        raise EmptyGrid(f"--grid needs at least 2 points, got {count}")
    if hi < lo:
        raise UsageError(f"--grid range is descending: {spec!r}")
    return np.linspace(lo, hi, count)


def cmd_betti(args) -> int:
    etas = _parse_grid_spec(args.grid)
    diagram = reduce_with_clearing(build_complex(_load_grid(args)))
    curve = betti_curve(diagram, etas)
    out = _out_dir(args)
    _emit(out / "betti.csv", output.betti_csv(curve))
    _emit(out / "betti.svg",
          svgplot.betti_curve_svg(curve, title=Path(args.tensor).name,
                                  reproducible=args.reproducible))
    return 0


def cmd_omega(args) -> int:
    manifest = load_manifest(args.manifest)
    mode = "max_pool" if args.pool == "max" else "stride"
    traj = trajectory(
        manifest,
        _parse_eta(args.eta),
        channel_policy=args.channels,
        downsample_factor=args.downsample,
        downsample_mode=mode,
        workers=args.workers,
    )
    out = _out_dir(args)
    _emit(out / "omega.csv", output.omega_csv(traj))
    _emit(out / "omega.svg", svgplot.trajectory_svg(traj, reproducible=args.reproducible))
    return 0


def _collect_manifests(paths: list[str]) -> list[Path]:
    found = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            found.extend(sorted(p.glob("*.json")))
        else:
            found.append(p)
    return found


def _read_accuracies(path) -> dict[str, float]:
    table = {}
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0] == "model_id":
                continue
            if len(row) < 2:
                raise UsageError(f"{path}: expected model_id,accuracy rows")
            table[row[0]] = float(row[1])
    return table


def _read_labels(path) -> dict[str, str]:
    labels = {}
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0] == "image_id":
                continue
            if len(row) < 2:
                raise UsageError(f"{path}: expected image_id,label rows")
            labels[row[0]] = row[1]
    return labels


def _read_softmax(path) -> tuple[list[str], np.ndarray]:
    ids, rows = [], []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0] == "image_id":
                continue
            ids.append(row[0])
            rows.append([float(v) for v in row[1:]])
    if not rows:
        raise UsageError(f"{path}: no softmax rows")
    return ids, np.asarray(rows)


def _leep_for_model(model_id: str, softmax_dir: Path, labels: dict[str, str]) -> float | None:
    path = softmax_dir / f"{model_id}.csv"
    if not path.is_file():
        return None
    ids, softmax = _read_softmax(path)
    missing = [i for i in ids if i not in labels]
    if missing:
        raise UsageError(f"{path}: no label for image {missing[0]!r}")
    names = sorted(set(labels[i] for i in ids))
    index = {name: k for k, name in enumerate(names)}
    y = [index[labels[i]] for i in ids]
    return leep_score(softmax, y)


def cmd_rank(args) -> int:
    manifest_paths = _collect_manifests(args.manifests)
    if len(manifest_paths) < 3:
        raise UsageError(f"ranking needs at least 3 manifests, got {len(manifest_paths)}")
    manifests = [load_manifest(p) for p in manifest_paths]

    accuracies = {
        m.model_id: m.finetuned_accuracy
        for m in manifests
        if m.finetuned_accuracy is not None
    }
    if args.accuracies:
        accuracies.update(_read_accuracies(args.accuracies))

    mode = "max_pool" if args.pool == "max" else "stride"
    eta = _parse_eta(args.eta)
    trajectories: list[OmegaTrajectory] = []
    for m in manifests:
        trajectories.append(
            trajectory(
                m, eta,
                channel_policy=args.channels,
                downsample_factor=args.downsample,
                downsample_mode=mode,
                workers=args.workers,
            )
        )

    leep_values = {}
    if args.softmax_dir:
        if not args.labels:
            raise UsageError("--softmax-dir requires --labels")
        labels = _read_labels(args.labels)
        softmax_dir = Path(args.softmax_dir)
        for m in manifests:
            value = _leep_for_model(m.model_id, softmax_dir, labels)
            if value is not None:
                leep_values[m.model_id] = value

    report = rank_models(trajectories, accuracies, leep_values or None, degree=args.degree)
    out = _out_dir(args)
    _emit(out / "ranking.csv", output.ranking_csv(report))
    _emit(out / "ranking.svg", svgplot.ranking_svg(report, reproducible=args.reproducible))
    return 0


_COMMANDS = {
    "diagram": cmd_diagram,
    "betti": cmd_betti,
    "omega": cmd_omega,
    "rank": cmd_rank,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except NoValidThreshold as exc:
        print(f"error: {exc} (hint: pass a fixed threshold with --eta <value>)",
              file=sys.stderr)
        return 1
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, CubetopoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

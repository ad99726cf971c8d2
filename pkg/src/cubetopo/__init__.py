"""Cubical persistent homology of scalar grids, embedding-space complexity,
and decay-slope model ranking for transfer learning.

Pipeline: tensor files -> ScalarGrid -> filtered cubical complex (vertex
construction, sublevel sets) -> persistence diagram -> Betti numbers at a
threshold -> per-layer complexity -> polynomial decay slope -> ranking.
"""

from .cubical import Cube, CellOrder, FilteredComplex, build_complex, sorted_cells
from .errors import CubetopoError
from .grids import ScalarGrid, downsample, iter_grids, split_batch, to_grid
from .manifest import LayerManifest, ManifestLayer, load_manifest, write_manifest
from .metrics import (
    BettiCurve,
    ComplexityRecord,
    OmegaTrajectory,
    best_effort_eta,
    betti_curve,
    diagram_of_grid,
    omega_for_image,
    omega_for_layer,
    select_eta,
    trajectory,
)
from .npyio import Tensor, TensorHeader, read_header, read_tensor, write_tensor
from .persistence import (
    PersistenceDiagram,
    PersistencePair,
    betti_at,
    h0_union_find,
    naive_reduce,
    reduce_with_clearing,
)
from .ranking import (
    FittedPolynomial,
    RankingEntry,
    RankingReport,
    TTPResult,
    fit_polynomial,
    fit_values,
    leep,
    pearson,
    rank_models,
    ttp,
    ttp_from_values,
)

__version__ = "0.1.0"

__all__ = [
    "BettiCurve",
    "CellOrder",
    "ComplexityRecord",
    "Cube",
    "CubetopoError",
    "FilteredComplex",
    "FittedPolynomial",
    "LayerManifest",
    "ManifestLayer",
    "OmegaTrajectory",
    "PersistenceDiagram",
    "PersistencePair",
    "RankingEntry",
    "RankingReport",
    "ScalarGrid",
    "TTPResult",
    "Tensor",
    "TensorHeader",
    "best_effort_eta",
    "betti_at",
    "betti_curve",
    "build_complex",
    "diagram_of_grid",
    "downsample",
    "fit_polynomial",
    "fit_values",
    "h0_union_find",
    "iter_grids",
    "leep",
    "load_manifest",
    "naive_reduce",
    "omega_for_image",
    "omega_for_layer",
    "pearson",
    "rank_models",
    "read_header",
    "read_tensor",
    "reduce_with_clearing",
    "select_eta",
    "sorted_cells",
    "split_batch",
    "to_grid",
    "trajectory",
    "ttp",
    "ttp_from_values",
    "write_manifest",
    "write_tensor",
]

"""Filtered cubical complexes over scalar grids (vertex construction).

Grid samples are the vertices; an elementary cube spans a subset of axes
from an anchor vertex and inherits the maximum of its 2^dim corner values,
so the complex at threshold eta is exactly the sublevel set {f <= eta}.
Cells are identified by a packed integer (flat anchor * 8 + axis bitmask)
and boundaries are computed from that encoding alone; no boundary matrix
is materialized at build time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GridTooLarge
from .grids import ScalarGrid

DEFAULT_CELL_CAP = 2**31

_AXIS_BITS = (1, 2, 4)


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Cube:
    """Elementary cube: anchor vertex plus a bitmask of spanned axes."""

    anchor: tuple[int, ...]
    spanned_axes: int

    @property
    def dim(self) -> int:
        return _popcount(self.spanned_axes)


@dataclass(frozen=True)
class FilteredComplex:
    grid_dims: tuple[int, ...]
    values: np.ndarray  # float64, shape grid_dims

    # internal 3-axis embedding (trailing axes of size 1 for 2D grids)
    _dims3: tuple[int, int, int] = field(init=False, repr=False)
    _values3: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        dims3 = tuple(self.grid_dims) + (1,) * (3 - len(self.grid_dims))
        object.__setattr__(self, "_dims3", dims3)
        object.__setattr__(self, "_values3", self.values.reshape(dims3))

    @property
    def ndim(self) -> int:
        return len(self.grid_dims)

    def total_cells(self) -> int:
        n = 1
        for s in self.grid_dims:
            n *= 2 * s - 1
        return n

    def cell_count(self, dim: int) -> int:
        """Closed-form number of dim-cells."""
        total = 0
        naxes = len(self.grid_dims)
        for mask in range(1 << naxes):
            if _popcount(mask) != dim:
                continue
            n = 1
            for axis, size in enumerate(self.grid_dims):
                n *= (size - 1) if mask & (1 << axis) else size
            total += n
        return total

    def _check_cube(self, cube: Cube):
        if len(cube.anchor) != self.ndim:
            raise ValueError(f"anchor {cube.anchor} does not match grid rank {self.ndim}")
        for axis, a in enumerate(cube.anchor):
            limit = self.grid_dims[axis] - (1 if cube.spanned_axes & (1 << axis) else 0)
            if not 0 <= a < limit:
                raise ValueError(f"cube {cube} leaves the grid along axis {axis}")
        if cube.spanned_axes >> self.ndim:
            raise ValueError(f"cube {cube} spans axes beyond grid rank {self.ndim}")

    def filtration(self, cube: Cube) -> float:
        """Max of the cube's corner values (monotone by construction)."""
        self._check_cube(cube)
        best = -np.inf
        for corner in range(1 << self.ndim):
            if corner & ~cube.spanned_axes:
                continue
            idx = tuple(
                a + (1 if corner & (1 << axis) else 0)
                for axis, a in enumerate(cube.anchor)
            )
            best = max(best, float(self.values[idx]))
        return best

    def boundary(self, cube: Cube) -> list[Cube]:
        """The 2*dim faces obtained by collapsing each spanned axis.

        Coefficients live in the two-element field, so only the face set
        matters; vertices have an empty boundary.
        """
        self._check_cube(cube)
        faces = []
        for axis in range(self.ndim):
            bit = 1 << axis
            if not cube.spanned_axes & bit:
                continue
            rest = cube.spanned_axes ^ bit
            faces.append(Cube(cube.anchor, rest))
            high = tuple(
                a + (1 if ax == axis else 0) for ax, a in enumerate(cube.anchor)
            )
            faces.append(Cube(high, rest))
        return faces

    def iter_cubes(self):
        """Yield every cell of the complex (test/oracle use; not a fast path)."""
        naxes = self.ndim
        for mask in range(1 << naxes):
            ranges = [
                range(size - 1) if mask & (1 << axis) else range(size)
                for axis, size in enumerate(self.grid_dims)
            ]
            anchors = [()]
            for r in ranges:
                anchors = [a + (i,) for a in anchors for i in r]
            for anchor in anchors:
                yield Cube(anchor, mask)


def build_complex(grid: ScalarGrid, cell_cap: int = DEFAULT_CELL_CAP) -> FilteredComplex:
    total = 1
    for s in grid.dims:
        total *= 2 * s - 1
    if total > cell_cap:
        raise GridTooLarge(f"{total} cells exceed the configured cap {cell_cap}")
    return FilteredComplex(grid.dims, grid.values)


@dataclass(frozen=True)
class CellOrder:
    """Total order on cells: ascending (filtration, dim, anchor, axis mask).

    Every face strictly precedes its cofaces: filtration is monotone and a
    face has lower dimension on ties. The arrays below are indexed by
    ordinal; ``_ordinal_of`` inverts the packed cell id.
    """

    complex: FilteredComplex
    ids: np.ndarray  # packed ids, sorted
    filtrations: np.ndarray  # float64, ascending with the order
    dims: np.ndarray  # uint8 cell dimension per ordinal
    _ordinal_of: np.ndarray = field(repr=False)  # packed id -> ordinal (-1 invalid)

    def __len__(self) -> int:
        return int(self.ids.shape[0])

    def ordinals_of_dim(self, dim: int) -> np.ndarray:
        return np.nonzero(self.dims == dim)[0]

    def boundary_ordinals(self, ordinal: int) -> list[int]:
        """Ascending ordinals of the cell's faces."""
        _, n2, n3 = self.complex._dims3
        cell_id = int(self.ids[ordinal])
        anchor_flat, mask = divmod(cell_id, 8)
        strides = (n2 * n3, n3, 1)
        faces = []
        lookup = self._ordinal_of
        for axis in range(3):
            bit = _AXIS_BITS[axis]
            if not mask & bit:
                continue
            rest = mask ^ bit
            faces.append(int(lookup[anchor_flat * 8 + rest]))
            faces.append(int(lookup[(anchor_flat + strides[axis]) * 8 + rest]))
        faces.sort()
        return faces

    def cube(self, ordinal: int) -> Cube:
        _, n2, n3 = self.complex._dims3
        cell_id = int(self.ids[ordinal])
        anchor_flat, mask = divmod(cell_id, 8)
        a01, a2 = divmod(anchor_flat, n3)
        a0, a1 = divmod(a01, n2)
        anchor = (a0, a1, a2)[: self.complex.ndim]
        return Cube(anchor, mask)


def sorted_cells(complex: FilteredComplex) -> CellOrder:
    """Enumerate and sort all cells; deterministic across runs and platforms."""
    n1, n2, n3 = complex._dims3
    v3 = complex._values3

    id_chunks = []
    filt_chunks = []
    dim_chunks = []
    for mask in range(8):
        sizes = []
        ok = True
        for axis, size in enumerate((n1, n2, n3)):
            span = bool(mask & _AXIS_BITS[axis])
            m = size - 1 if span else size
            if m == 0:
                ok = False
                break
            sizes.append(m)
        if not ok:
            continue
        filt = v3
        for axis in range(3):
            if mask & _AXIS_BITS[axis]:
                lo = [slice(None)] * 3
                hi = [slice(None)] * 3
                lo[axis] = slice(0, -1)
                hi[axis] = slice(1, None)
                filt = np.maximum(filt[tuple(lo)], filt[tuple(hi)])
        r0 = np.arange(sizes[0], dtype=np.int64)
        r1 = np.arange(sizes[1], dtype=np.int64)
        r2 = np.arange(sizes[2], dtype=np.int64)
        anchor_flat = (
            (r0[:, None, None] * n2 + r1[None, :, None]) * n3 + r2[None, None, :]
        ).ravel()
        id_chunks.append(anchor_flat * 8 + mask)
        filt_chunks.append(np.ascontiguousarray(filt, dtype=np.float64).ravel())
        dim_chunks.append(np.full(anchor_flat.shape, _popcount(mask), dtype=np.uint8))

    ids = np.concatenate(id_chunks)
    filts = np.concatenate(filt_chunks)
    dims = np.concatenate(dim_chunks)
    anchors = ids // 8
    masks = (ids % 8).astype(np.uint8)

    order = np.lexsort((masks, anchors, dims, filts))
    ids = ids[order]
    filts = filts[order]
    dims = dims[order]

    ordinal_of = np.full(n1 * n2 * n3 * 8, -1, dtype=np.int64)
    ordinal_of[ids] = np.arange(ids.shape[0], dtype=np.int64)
    return CellOrder(complex, ids, filts, dims, ordinal_of)

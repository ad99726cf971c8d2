"""Persistence diagrams of filtered cubical complexes.

H0 comes from a union-find sweep with the elder rule; H1/H2 from column
reduction of the boundary matrix over the two-element field with the
clearing (twist) optimization, processing dimensions top-down. A textbook
full left-to-right reduction is kept as an independent oracle. Pairings
follow the deterministic cell order, so diagrams are reproducible
bit-for-bit; zero-persistence pairs are dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cubical import CellOrder, FilteredComplex, sorted_cells
from .errors import OracleTooLarge, ReductionOverflow

DEFAULT_WORKSPACE_CAP = 1 << 26  # stored column entries before bailing out
ORACLE_CELL_CAP = 10**4

INF = math.inf


@dataclass(frozen=True, order=True)
class PersistencePair:
    k: int
    birth: float
    death: float  # math.inf for essential classes


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of (k, birth, death) intervals in canonical sorted order."""

    pairs: tuple[PersistencePair, ...]

    @classmethod
    def from_pairs(cls, pairs) -> "PersistenceDiagram":
        kept = [p for p in pairs if p.birth != p.death]
        return cls(tuple(sorted(kept)))

    def by_dim(self, k: int) -> list[tuple[float, float]]:
        return [(p.birth, p.death) for p in self.pairs if p.k == k]

    def betti_at(self, eta: float) -> tuple[int, int, int]:
        return betti_at(self, eta)


def betti_at(diagram: PersistenceDiagram, eta: float) -> tuple[int, int, int]:
    """Count intervals containing eta, half-open convention [birth, death)."""
    counts = [0, 0, 0]
    for p in diagram.pairs:
        if p.birth <= eta < p.death:
            counts[p.k] += 1
    return tuple(counts)


def _xor_columns(a: list[int], b: list[int]) -> list[int]:
    # symmetric difference of two ascending integer lists
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        x = a[i]
        y = b[j]
        if x < y:
            out.append(x)
            i += 1
        elif y < x:
            out.append(y)
            j += 1
        else:
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


class _UnionFind:
    """Union-find over vertex ordinals keeping each component's birth vertex."""

    def __init__(self):
        self.parent: dict[int, int] = {}
        self.birth: dict[int, int] = {}  # root -> birth vertex ordinal

    def add(self, v: int):
        self.parent[v] = v
        self.birth[v] = v

    def find(self, v: int) -> int:
        root = v
        parent = self.parent
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root


def _h0_sweep(order: CellOrder):
    """Elder-rule sweep over vertices and edges in cell order.

    Returns (finite pairs, essential pairs, positive edge ordinals). The
    positive edges are the cycle-creating ones; the clearing pass needs
    them to detect essential H1 classes.
    """
    uf = _UnionFind()
    filts = order.filtrations
    dims = order.dims
    finite = []
    positive_edges = []
    for ordinal in range(len(order)):
        d = dims[ordinal]
        if d == 0:
            uf.add(ordinal)
        elif d == 1:
            u, v = order.boundary_ordinals(ordinal)
            ru, rv = uf.find(u), uf.find(v)
            if ru == rv:
                positive_edges.append(ordinal)
                continue
            bu, bv = uf.birth[ru], uf.birth[rv]
            # birth ordinals double as ages: smaller ordinal = elder
            if bu < bv:
                elder_root, younger_root, younger_birth = ru, rv, bv
            else:
                elder_root, younger_root, younger_birth = rv, ru, bu
            death = float(filts[ordinal])
            birth = float(filts[younger_birth])
            if birth != death:
                finite.append(PersistencePair(0, birth, death))
            uf.parent[younger_root] = elder_root
    essential = [
        PersistencePair(0, float(filts[uf.birth[root]]), INF)
        for root, parent in uf.parent.items()
        if parent == root
    ]
    return finite, essential, positive_edges


def h0_union_find(complex: FilteredComplex) -> list[PersistencePair]:
    """k = 0 pairs only: elder rule over the vertex/edge skeleton."""
    finite, essential, _ = _h0_sweep(sorted_cells(complex))
    return sorted(finite + essential)


def _reduce_dimension(order, ordinals, cleared, workspace_cap):
    """Reduce the given columns; returns (pairs (low, col), positive ordinals)."""
    pivot: dict[int, list[int]] = {}
    pairs = []
    positives = []
    stored = 0
    for j in ordinals:
        j = int(j)
        if j in cleared:
            continue
        col = order.boundary_ordinals(j)
        while col:
            low = col[-1]
            other = pivot.get(low)
            if other is None:
                break
            col = _xor_columns(col, other)
        if col:
            low = col[-1]
            pivot[low] = col
            pairs.append((low, j))
            stored += len(col)
            if stored > workspace_cap:
                raise ReductionOverflow(
                    f"column workspace exceeded {workspace_cap} entries"
                )
        else:
            positives.append(j)
    return pairs, positives


def reduce_with_clearing(
    complex: FilteredComplex, workspace_cap: int = DEFAULT_WORKSPACE_CAP
) -> PersistenceDiagram:
    """Full diagram: union-find for k = 0, twist reduction for k = 1, 2.

    Dimensions are processed top-down so the columns of cells already
    paired as births by a higher pass are cleared instead of reduced.
    """
    order = sorted_cells(complex)
    filts = order.filtrations

    h0_finite, h0_essential, positive_edges = _h0_sweep(order)
    pairs = list(h0_finite) + list(h0_essential)

    cleared: set[int] = set()
    paired_edge_births: set[int] = set()
    top = 3 if complex.ndim == 3 else 2
    for d in range(top, 1, -1):
        dim_pairs, dim_positives = _reduce_dimension(
            order, order.ordinals_of_dim(d), cleared, workspace_cap
        )
        cleared = {low for low, _ in dim_pairs}
        k = d - 1
        for low, col in dim_pairs:
            pairs.append(PersistencePair(k, float(filts[low]), float(filts[col])))
            if k == 1:
                paired_edge_births.add(low)
        if d == 2:
            # positive squares never killed by a cube are essential H2
            for j in dim_positives:
                pairs.append(PersistencePair(2, float(filts[j]), INF))

    for e in positive_edges:
        if e not in paired_edge_births:
            pairs.append(PersistencePair(1, float(filts[e]), INF))

    return PersistenceDiagram.from_pairs(pairs)


def naive_reduce(complex: FilteredComplex) -> PersistenceDiagram:
    """Verification oracle: plain left-to-right reduction of every column.

    O(n^3) worst case, so it refuses complexes above ORACLE_CELL_CAP cells.
    Must agree exactly with reduce_with_clearing.
    """
    if complex.total_cells() > ORACLE_CELL_CAP:
        raise OracleTooLarge(
            f"{complex.total_cells()} cells exceed the oracle cap {ORACLE_CELL_CAP}"
        )
    order = sorted_cells(complex)
    filts = order.filtrations
    dims = order.dims

    pivot: dict[int, list[int]] = {}
    pairs = []
    paired_births = set()
    positives = []
    for j in range(len(order)):
        col = order.boundary_ordinals(j)
        while col:
            low = col[-1]
            other = pivot.get(low)
            if other is None:
                break
            col = _xor_columns(col, other)
        if col:
            low = col[-1]
            pivot[low] = col
            paired_births.add(low)
            pairs.append(
                PersistencePair(
                    int(dims[low]), float(filts[low]), float(filts[j])
                )
            )
        else:
            positives.append(j)

    for j in positives:
        if j not in paired_births:
            pairs.append(PersistencePair(int(dims[j]), float(filts[j]), INF))
    return PersistenceDiagram.from_pairs(pairs)


def diagram_rows(diagram: PersistenceDiagram) -> list[tuple[int, float, float]]:
    return [(p.k, p.birth, p.death) for p in diagram.pairs]

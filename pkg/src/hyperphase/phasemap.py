"""Dictionary between hypergraph quantities and phase-space coordinates.

Hyperedge weights select momentum rows, vertex degrees select position
columns (falling back to hyperedge degrees when some hyperedge is empty),
and the grid extent comes from the hypergraph boundary: the largest weight
and the largest degree, padded by a margin factor.  The scale is the
identity, p = omega(e) and q = d(v) in grid units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hypergraph import (
    Hypergraph,
    edge_degree_matrix,
    vertex_degree_matrix,
)
from .wigner import PhaseSpaceGrid, WignerField

__all__ = [
    "PhaseMap",
    "grid_from_boundary",
    "map_momentum_rows",
    "map_position_columns",
    "build_phase_map",
    "initial_field_from_hypergraph",
]

VERTEX_DEGREE = "vertex_degree"
EDGE_DEGREE = "edge_degree"


@dataclass(frozen=True)
class PhaseMap:
    """Slice assignment for a hypergraph on a grid.

    momentum_rows maps hyperedge index (0-based list position) to a row.
    position_cols maps vertex label (1-based) to a column, unless the
    empty-hyperedge fallback triggered, in which case it maps hyperedge
    index to a column and degree_source is "edge_degree".
    """

    source: Hypergraph
    grid: PhaseSpaceGrid
    momentum_rows: dict[int, int]
    position_cols: dict[int, int]
    degree_source: str


def _nearest_center(value: float, lo: float, delta: float, count: int) -> int:
    # round-half-down keeps ties on the lower index
    x = (value - lo) / delta - 0.5
    j = -math.floor(0.5 - x)
    return min(max(j, 0), count - 1)


def grid_from_boundary(
    h: Hypergraph,
    n_q: int,
    n_p: int,
    margin: float = 0.0,
    m: float = 1.0,
    hbar: float = 1.0,
) -> PhaseSpaceGrid:
    """Grid whose extents are the hypergraph boundary scaled by (1 + margin).

    Momentum runs to the largest hyperedge weight; position runs to the
    largest vertex degree (largest hyperedge degree when any hyperedge is
    empty, matching the position-column fallback).
    """
    if margin < 0:
        raise ValueError(f"margin must be >= 0, got {margin}")
    if h.n_edges == 0:
        raise ValueError("hypergraph has no hyperedges; no phase-space boundary derivable")
    p_hi = (1.0 + margin) * max(h.edge_weights())
    if any(len(members) == 0 for members in h.edge_members()):
        degrees = np.diag(edge_degree_matrix(h))
    else:
        degrees = np.diag(vertex_degree_matrix(h))
    q_hi = (1.0 + margin) * float(degrees.max())
    if q_hi <= 0.0:
        raise ValueError("hypergraph boundary has zero position extent (all hyperedges empty)")
    return PhaseSpaceGrid(n_q, n_p, 0.0, q_hi, 0.0, p_hi, m, hbar)


def map_momentum_rows(h: Hypergraph, grid: PhaseSpaceGrid) -> dict[int, int]:
    """Assign each hyperedge to the row whose center momentum is nearest its weight.

    Nearest-center rounding is monotone in the weight; equal weights share a
    row and ties fall to the lower row index.
    """
    return {
        j: _nearest_center(w, grid.p_min, grid.dp, grid.n_p)
        for j, w in enumerate(h.edge_weights())
    }


def map_position_columns(h: Hypergraph, grid: PhaseSpaceGrid) -> tuple[dict[int, int], str]:
    """Assign position columns by vertex degree, or by edge degree on fallback.

    Returns (mapping, degree_source).  The fallback triggers exactly when
    some hyperedge has no members; the mapping is then keyed by hyperedge
    index instead of vertex label.
    """
    if any(len(members) == 0 for members in h.edge_members()):
        degrees = np.diag(edge_degree_matrix(h))
        cols = {
            j: _nearest_center(float(d), grid.q_min, grid.dq, grid.n_q)
            for j, d in enumerate(degrees)
        }
        return cols, EDGE_DEGREE
    degrees = np.diag(vertex_degree_matrix(h))
    cols = {
        v + 1: _nearest_center(float(degrees[v]), grid.q_min, grid.dq, grid.n_q)
        for v in range(h.n_vertices)
    }
    return cols, VERTEX_DEGREE


def build_phase_map(h: Hypergraph, grid: PhaseSpaceGrid) -> PhaseMap:
    cols, source = map_position_columns(h, grid)
    return PhaseMap(
        source=h,
        grid=grid,
        momentum_rows=map_momentum_rows(h, grid),
        position_cols=cols,
        degree_source=source,
    )


def initial_field_from_hypergraph(
    h: Hypergraph,
    grid: PhaseSpaceGrid,
    k_default: float = 0.0,
    k_overrides: dict[int, float] | None = None,
) -> WignerField:
    """Sum of plane-wave rows, one per hyperedge on its mapped momentum row.

    Each hyperedge contributes cos(k q) at t = 0 on its row; rows shared by
    several hyperedges accumulate.  ``k_overrides`` assigns a per-hyperedge
    wavenumber (keyed by hyperedge index), defaulting to the shared
    ``k_default``.  The result is a slice-carrier field (field_mode=True),
    not a normalized Wigner function.
    """
    rows = map_momentum_rows(h, grid)
    q = grid.q_centers()
    overrides = k_overrides or {}
    values = np.zeros((grid.n_p, grid.n_q))
    for j in range(h.n_edges):
        k = float(overrides.get(j, k_default))
        values[rows[j], :] += np.cos(k * q)
    return WignerField(grid, values, t=0.0, field_mode=True)

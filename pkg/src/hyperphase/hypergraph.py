"""Weighted hypergraph data model, matrix algebra, and balanced partitions.

Vertices are labelled 1..n in all public inputs and outputs.  Matrices are
dense float64 numpy arrays; hypergraphs here are desk-scale, and dense exact
arithmetic keeps integer test oracles exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Hypergraph",
    "PartitionEnsemble",
    "BalanceReport",
    "incidence_matrix",
    "vertex_degree_matrix",
    "edge_degree_matrix",
    "edge_weight_sum_matrix",
    "adjacency_matrix",
    "momentum_laplacian",
    "position_laplacian",
    "part_weight",
    "is_balanced",
    "cut_cost",
    "greedy_balance",
]


@dataclass(frozen=True)
class Hypergraph:
    """A weighted hypergraph: n vertices, vertex weights, weighted hyperedges.

    ``hyperedges`` is an ordered list of ``(members, weight)`` pairs; members
    are 1-based vertex indices stored as frozensets (duplicates collapse).
    Empty member sets are legal and contribute zero to every degree matrix.
    """

    n_vertices: int
    vertex_weights: tuple[float, ...]
    hyperedges: tuple[tuple[frozenset[int], float], ...]

    def __init__(
        self,
        n_vertices: int,
        hyperedges: Iterable[tuple[Iterable[int], float]] = (),
        vertex_weights: Sequence[float] | None = None,
    ) -> None:
        if not isinstance(n_vertices, int) or n_vertices < 1:
            raise ValueError(f"n_vertices must be a positive integer, got {n_vertices!r}")
        if vertex_weights is None:
            weights = tuple(1.0 for _ in range(n_vertices))
        else:
            weights = tuple(float(w) for w in vertex_weights)
            if len(weights) != n_vertices:
                raise ValueError(
                    f"vertex_weights has length {len(weights)}, expected {n_vertices}"
                )
            for i, w in enumerate(weights):
                if not w > 0:
                    raise ValueError(f"vertex_weights[{i}] must be > 0, got {w}")
        edges = []
        for j, (members, omega) in enumerate(hyperedges):
            mset = frozenset(int(v) for v in members)
            for v in mset:
                if not 1 <= v <= n_vertices:
                    raise ValueError(
                        f"hyperedges[{j}]: member {v} out of range 1..{n_vertices}"
                    )
            omega = float(omega)
            if not omega > 0:
                raise ValueError(f"hyperedges[{j}]: weight must be > 0, got {omega}")
            edges.append((mset, omega))
        object.__setattr__(self, "n_vertices", n_vertices)
        object.__setattr__(self, "vertex_weights", weights)
        object.__setattr__(self, "hyperedges", tuple(edges))

    @property
    def n_edges(self) -> int:
        return len(self.hyperedges)

    def edge_weights(self) -> tuple[float, ...]:
        return tuple(w for _, w in self.hyperedges)

    def edge_members(self) -> tuple[frozenset[int], ...]:
        return tuple(m for m, _ in self.hyperedges)


def incidence_matrix(h: Hypergraph) -> np.ndarray:
    """n x m 0/1 matrix: entry (i, j) is 1 iff vertex i+1 belongs to hyperedge j."""
    mat = np.zeros((h.n_vertices, h.n_edges), dtype=np.float64)
    for j, (members, _) in enumerate(h.hyperedges):
        for v in members:
            mat[v - 1, j] = 1.0
    return mat


def vertex_degree_matrix(h: Hypergraph) -> np.ndarray:
    """Diagonal D_v with d(v) = sum of weights of hyperedges containing v."""
    d = np.zeros(h.n_vertices, dtype=np.float64)
    for members, omega in h.hyperedges:
        for v in members:
            d[v - 1] += omega
    return np.diag(d)


def edge_degree_matrix(h: Hypergraph) -> np.ndarray:
    """Diagonal D_e with d(e) = |e|, the hyperedge cardinality."""
    return np.diag(np.array([float(len(m)) for m, _ in h.hyperedges], dtype=np.float64))


def edge_weight_sum_matrix(h: Hypergraph) -> np.ndarray:
    """Diagonal f_w: per-edge sum of member vertex weights.

    With unit vertex weights this coincides with the edge degree matrix.
    """
    sums = [
        float(sum(h.vertex_weights[v - 1] for v in members)) for members, _ in h.hyperedges
    ]
    return np.diag(np.array(sums, dtype=np.float64))


def _weighted_gram(h: Hypergraph, diag_weights: np.ndarray) -> np.ndarray:
    inc = incidence_matrix(h)
    return inc @ np.diag(diag_weights) @ inc.T


def adjacency_matrix(h: Hypergraph) -> np.ndarray:
    """Weighted adjacency A = H W H^T - D_v; diagonal forced to exact zero."""
    a = _weighted_gram(h, np.array(h.edge_weights())) - vertex_degree_matrix(h)
    np.fill_diagonal(a, 0.0)
    return a


def momentum_laplacian(h: Hypergraph) -> np.ndarray:
    """Unnormalized Laplacian L = 2 D_v - H W H^T (equivalently D_v - A)."""
    return 2.0 * vertex_degree_matrix(h) - _weighted_gram(h, np.array(h.edge_weights()))


def position_laplacian(h: Hypergraph) -> np.ndarray:
    """Position-form Laplacian L = 2 D_v - H f_w H^T."""
    f = np.diag(edge_weight_sum_matrix(h))
    return 2.0 * vertex_degree_matrix(h) - _weighted_gram(h, f)


@dataclass(frozen=True)
class PartitionEnsemble:
    """Disjoint vertex groups P_1..P_K of a parent hypergraph, with balance factor delta."""

    parent: Hypergraph
    parts: tuple[frozenset[int], ...]
    delta: float

    def __init__(
        self, parent: Hypergraph, parts: Iterable[Iterable[int]], delta: float
    ) -> None:
        delta = float(delta)
        if not 0.0 < delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {delta}")
        frozen: list[frozenset[int]] = []
        seen: set[int] = set()
        for k, p in enumerate(parts):
            pset = frozenset(int(v) for v in p)
            for v in pset:
                if not 1 <= v <= parent.n_vertices:
                    raise ValueError(f"parts[{k}]: vertex {v} out of range 1..{parent.n_vertices}")
            overlap = seen & pset
            if overlap:
                raise ValueError(f"parts[{k}]: vertices {sorted(overlap)} already assigned")
            seen |= pset
            frozen.append(pset)
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "parts", tuple(frozen))
        object.__setattr__(self, "delta", delta)

    @property
    def n_parts(self) -> int:
        return len(self.parts)

    def covers_all_vertices(self) -> bool:
        assigned = set().union(*self.parts) if self.parts else set()
        return assigned == set(range(1, self.parent.n_vertices + 1))


def part_weight(p: PartitionEnsemble, k: int) -> float:
    """Total vertex weight of part k (0-based part index)."""
    if not 0 <= k < p.n_parts:
        raise ValueError(f"part index {k} out of range 0..{p.n_parts - 1}")
    return float(sum(p.parent.vertex_weights[v - 1] for v in p.parts[k]))


@dataclass(frozen=True)
class BalanceReport:
    """Per-part balance check: each part weight must stay strictly below (1+delta)*mean."""

    part_weights: tuple[float, ...]
    mean_weight: float
    bound: float
    delta: float
    per_part_ok: tuple[bool, ...]
    balanced: bool

    def __bool__(self) -> bool:
        return self.balanced


def is_balanced(p: PartitionEnsemble) -> BalanceReport:
    """Check the strict balance criterion f_k < (1+delta) * mean over all parts."""
    if p.n_parts == 0:
        raise ValueError("partition ensemble has no parts")
    weights = tuple(part_weight(p, k) for k in range(p.n_parts))
    mean = sum(weights) / p.n_parts
    bound = (1.0 + p.delta) * mean
    ok = tuple(w < bound for w in weights)
    return BalanceReport(
        part_weights=weights,
        mean_weight=mean,
        bound=bound,
        delta=p.delta,
        per_part_ok=ok,
        balanced=all(ok),
    )


def cut_cost(p: PartitionEnsemble) -> float:
    """Partition cost: every hyperedge spanning >= 2 parts contributes d(e) - 1.

    Every vertex touched by a hyperedge must be assigned to some part.
    """
    owner: dict[int, int] = {}
    for k, part in enumerate(p.parts):
        for v in part:
            owner[v] = k
    total = 0.0
    for j, (members, _) in enumerate(p.parent.hyperedges):
        spanned = set()
        for v in members:
            if v not in owner:
                raise ValueError(
                    f"hyperedge {j}: vertex {v} is not assigned to any part"
                )
            spanned.add(owner[v])
        if len(spanned) >= 2:
            total += len(members) - 1
    return total


def greedy_balance(
    h: Hypergraph, n_parts: int, delta: float
) -> tuple[PartitionEnsemble, BalanceReport]:
    """Greedy covering partition: heaviest vertex first, assigned to the lightest part.

    The balance criterion is reported, never silently enforced: the ensemble
    comes back with its BalanceReport whether or not the greedy pass met the
    bound.
    """
    if n_parts < 1:
        raise ValueError(f"n_parts must be >= 1, got {n_parts}")
    if n_parts > h.n_vertices:
        raise ValueError(
            f"n_parts={n_parts} exceeds number of vertices {h.n_vertices}"
        )
    order = sorted(
        range(1, h.n_vertices + 1), key=lambda v: (-h.vertex_weights[v - 1], v)
    )
    parts: list[set[int]] = [set() for _ in range(n_parts)]
    loads = [0.0] * n_parts
    for v in order:
        k = min(range(n_parts), key=lambda i: (loads[i], i))
        parts[k].add(v)
        loads[k] += h.vertex_weights[v - 1]
    ensemble = PartitionEnsemble(h, parts, delta)
    return ensemble, is_balanced(ensemble)

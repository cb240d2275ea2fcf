import numpy as np
import pytest

from hyperphase import Hypergraph


@pytest.fixture
def fig4() -> Hypergraph:
    """The worked 4-vertex example: E = {{1,2,3},{2,3,4},{1,4}}, weights (1,2,3)."""
    return Hypergraph(4, [({1, 2, 3}, 1.0), ({2, 3, 4}, 2.0), ({1, 4}, 3.0)])


def random_hypergraph(rng: np.random.Generator, n_max: int = 8, m_max: int = 8,
                      allow_empty: bool = True, weight_pool=(1, 2, 3, 4, 5)) -> Hypergraph:
    """Seeded random hypergraph with integer edge weights."""
    n = int(rng.integers(1, n_max + 1))
    m = int(rng.integers(0, m_max + 1))
    edges = []
    for _ in range(m):
        lo = 0 if allow_empty else 1
        size = int(rng.integers(lo, n + 1))
        members = rng.choice(np.arange(1, n + 1), size=size, replace=False)
        edges.append((set(int(v) for v in members), float(rng.choice(weight_pool))))
    return Hypergraph(n, edges)

"""
This module provides seeded random generators of correspondences and graphs for
property tests and for benchmarking the enumeration.

All generators take a `numpy.random.Generator`, so a fixed seed reproduces an instance
exactly.

Example
-------
rng = np.random.default_rng(7)
corr = random_correspondence(rng, max_blocks=5)
"""

from typing import List, Tuple

import numpy as np

from cplattice.algebra.constructions import GraphDesc
from cplattice.algebra.correspondence import BlockAlgebra, Correspondence
from cplattice.common.extnat import ExtNat, ext_sum

MULTIPLICITIES = (ExtNat(0), ExtNat(1), ExtNat(2), ExtNat.INF)


def _labels(n: int) -> List[str]:
    return [f"b{i}" for i in range(n)]


def _complete(algebra: BlockAlgebra, action: List[List[ExtNat]], rng: np.random.Generator) -> Correspondence:
    """
    Adds a fullness vector to a multiplicity matrix: the smallest admissible value plus
    a random slack (a degenerate left action keeps part of the module unused).
    """
    fullness = []
    for row in action:
        used = ext_sum(entry * dim for entry, dim in zip(row, algebra.dims))
        fullness.append(used + int(rng.integers(0, 3)))
    return Correspondence(algebra, fullness, action)


def random_correspondence(
    rng: np.random.Generator,
    max_blocks: int = 5,
    min_blocks: int = 0,
    max_dim: int = 2,
    zero_probability: float = 0.55,
) -> Correspondence:
    """
    Creates a correspondence with multiplicities drawn from {0, 1, 2, ∞}.

    Parameters
    ----------
    rng : np.random.Generator
        Source of randomness.
    max_blocks : int
        Largest number of blocks (inclusive).
    min_blocks : int
        Smallest number of blocks (inclusive).
    max_dim : int
        Largest block dimension.
    zero_probability : float
        Probability of a zero entry; the remaining mass is split evenly between 1, 2 and ∞.

    Returns
    -------
    Correspondence
        A valid correspondence.
    """
    n = int(rng.integers(min_blocks, max_blocks + 1))
    dims = rng.integers(1, max_dim + 1, size=n)
    algebra = BlockAlgebra(zip(_labels(n), (int(d) for d in dims)))
    rest = (1.0 - zero_probability) / 3
    choices = rng.choice(len(MULTIPLICITIES), size=(n, n), p=[zero_probability, rest, rest, rest])
    action = [[MULTIPLICITIES[int(choices[j, i])] for i in range(n)] for j in range(n)]
    return _complete(algebra, action, rng)


def random_acyclic_correspondence(
    rng: np.random.Generator,
    max_blocks: int = 7,
    min_blocks: int = 1,
    max_dim: int = 2,
    max_multiplicity: int = 2,
    edge_probability: float = 0.4,
) -> Correspondence:
    """
    Creates an all-finite correspondence with nilpotent multiplicity matrix.

    Blocks are shuffled after an upper-triangular draw, so acyclicity is not visible
    from the block order.
    """
    n = int(rng.integers(min_blocks, max_blocks + 1))
    order = rng.permutation(n)
    dims = rng.integers(1, max_dim + 1, size=n)
    algebra = BlockAlgebra(zip(_labels(n), (int(d) for d in dims)))
    action = [[ExtNat.ZERO] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < edge_probability:
                # module block order[a] is acted on by the later block order[b]
                action[int(order[a])][int(order[b])] = ExtNat(int(rng.integers(1, max_multiplicity + 1)))
    return _complete(algebra, action, rng)


def random_acyclic_graph(
    rng: np.random.Generator,
    max_vertices: int = 7,
    max_parallel: int = 3,
    edge_probability: float = 0.35,
) -> GraphDesc:
    """
    Creates a finite acyclic multigraph with at most `max_parallel` parallel edges.
    """
    n = int(rng.integers(1, max_vertices + 1))
    order = rng.permutation(n)
    labels = [f"v{i}" for i in range(n)]
    edges: List[Tuple[str, str, ExtNat]] = []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < edge_probability:
                count = int(rng.integers(1, max_parallel + 1))
                edges.append((labels[int(order[a])], labels[int(order[b])], ExtNat(count)))
    return GraphDesc(vertices=tuple(labels), edges=tuple(edges))

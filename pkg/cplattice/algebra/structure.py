"""
This module computes O_X explicitly as a finite direct sum of matrix algebras when X is
all-finite and its multiplicity matrix is nilpotent, and cross-checks the pair lattice
against the ideal lattice of that direct sum.

For such X the Fock module ⊕_k X^{⊗k} is finite and exhausts O_X. Its component over a
block v is a column of size N(v) = d_v + Σ_{k≥0} (M^k m)_v, where (M x)_v = Σ_j M[v][j] x_j.
O_X has one summand M_{N(v)}(C) for every block v with an all-zero column in M.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import List, Tuple

import networkx as nx
import numpy as np

from cplattice.algebra.constructions import omega_correspondence
from cplattice.algebra.correspondence import Correspondence, IdealSet
from cplattice.algebra.pairs import (
    DEFAULT_ENUMERATION_LIMIT,
    IdealPair,
    PairKind,
    enumerate_pairs,
    pair_is_valid,
    relcp_analyze,
)
from cplattice.common.errors import NotAcyclic, NotOPair, NotRowFinite

logger = logging.getLogger(__name__)

SUM_SEPARATOR = " (+) "


@dataclass(frozen=True)
class MatrixBlockStructure:
    """
    A finite direct sum ⊕ M_size(C), one summand per sink block.

    Attributes
    ----------
    summands : List[Tuple[str, int]]
        (sink block label, size) in block order.
    """
    summands: List[Tuple[str, int]]

    @property
    def sizes(self) -> List[int]:
        return [size for _, size in self.summands]

    @property
    def dimension(self) -> int:
        return sum(size * size for size in self.sizes)

    def __len__(self) -> int:
        return len(self.summands)

    def __str__(self) -> str:
        if not self.summands:
            return "0"
        return SUM_SEPARATOR.join(f"M{size}" for size in self.sizes)


@dataclass(frozen=True)
class CrosscheckReport:
    """
    Comparison of the number of O-pairs with the number of ideals of the computed O_X.
    """
    structure: MatrixBlockStructure
    pair_count: int
    ideal_count: int

    @property
    def passed(self) -> bool:
        return self.pair_count == self.ideal_count


@dataclass(frozen=True)
class QuotientStructureReport:
    """
    Comparison of O_X with its quotient O_{X_ω} by the gauge-invariant ideal of ω.

    Attributes
    ----------
    full_sizes : List[int]
        Summand sizes of O_X, sorted.
    quotient_sizes : List[int]
        Summand sizes of O_{X_ω}, sorted.
    ideal_sizes : List[int]
        Summand sizes of the ideal P_ω, i.e. the multiset difference.
    passed : bool
        True iff the quotient sizes form a sub-multiset of the full sizes.
    """
    pair: IdealPair
    full_sizes: List[int]
    quotient_sizes: List[int]
    ideal_sizes: List[int]
    passed: bool


def _block_digraph(corr: Correspondence) -> nx.DiGraph:
    """
    Digraph with an edge i -> j whenever M[j][i] > 0.
    """
    return nx.from_numpy_array(corr.support_matrix().T, create_using=nx.DiGraph)


def ox_structure(corr: Correspondence) -> MatrixBlockStructure:
    """
    Computes O_X as a direct sum of matrix algebras.

    Parameters
    ----------
    corr : Correspondence
        An all-finite correspondence with nilpotent multiplicity matrix.

    Returns
    -------
    MatrixBlockStructure
        One summand M_{N(v)} per block v with zero column.

    Raises
    ------
    NotRowFinite
        If some entry of m or M is infinite.
    NotAcyclic
        If the block digraph i -> j (M[j][i] > 0) has a cycle.
    """
    algebra = corr.algebra
    if not corr.is_all_finite:
        for j in range(corr.n):
            if corr.fullness[j].is_infinite:
                raise NotRowFinite(f"fullness of block {algebra.label(j)} is infinite")
            if corr.column_infinite(j):
                raise NotRowFinite(f"block {algebra.label(j)} acts with infinite multiplicity")
    digraph = _block_digraph(corr)
    if not nx.is_directed_acyclic_graph(digraph):
        cycle = nx.find_cycle(digraph)
        path = [i for i, _ in cycle] + [cycle[-1][1]]
        raise NotAcyclic("block digraph has the cycle " + " -> ".join(algebra.label(i) for i in path))

    n = corr.n
    mat = np.array([[int(corr.action[j, i]) for i in range(n)] for j in range(n)], dtype=object).reshape(n, n)
    term = np.array([int(v) for v in corr.fullness], dtype=object)
    columns = np.array(list(algebra.dims), dtype=object)
    steps = 0
    while any(term):
        columns = columns + term
        term = mat.dot(term)
        steps += 1
    logger.debug("Fock column counts stabilized after %d steps", steps)

    summands = [
        (algebra.label(v), int(columns[v])) for v in range(n) if corr.column_support(v) == 0
    ]
    return MatrixBlockStructure(summands)


def crosscheck_pairs_vs_ideals(
    corr: Correspondence, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> CrosscheckReport:
    """
    Compares the number of O-pairs with the 2^k ideals of a sum of k matrix algebras.
    """
    structure = ox_structure(corr)
    lattice = enumerate_pairs(corr, PairKind.O, limit)
    return CrosscheckReport(structure, len(lattice), 2 ** len(structure))


def quotient_structure_check(corr: Correspondence, pair: IdealPair) -> QuotientStructureReport:
    """
    Checks that O_{X_ω} is obtained from O_X by deleting summands.

    Raises
    ------
    NotOPair
        If `pair` is not an O-pair.
    NotRowFinite, NotAcyclic
        If X or X_ω violates the preconditions of `ox_structure`.
    """
    if not pair_is_valid(corr, pair.first, pair.second, PairKind.O):
        raise NotOPair(f"{pair} is not an O-pair")
    full = Counter(ox_structure(corr).sizes)
    quotient = Counter(ox_structure(omega_correspondence(corr, pair).result).sizes)
    missing = quotient - full
    return QuotientStructureReport(
        pair=pair,
        full_sizes=sorted(full.elements()),
        quotient_sizes=sorted(quotient.elements()),
        ideal_sizes=sorted((full - quotient).elements()),
        passed=not missing,
    )


def relative_structure(corr: Correspondence, ideal: IdealSet) -> MatrixBlockStructure:
    """
    Computes the relative Cuntz-Pimsner algebra O(J, X) ≅ O_{X_{ω_J}}.

    J = J_X gives O_X up to relabelling of the blocks and J = 0 gives the Toeplitz algebra.
    """
    report = relcp_analyze(corr, ideal)
    return ox_structure(omega_correspondence(corr, report.omega).result)


def toeplitz_structure(corr: Correspondence) -> MatrixBlockStructure:
    return relative_structure(corr, corr.algebra.zero())

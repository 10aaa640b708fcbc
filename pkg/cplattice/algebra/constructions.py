"""
This module builds the correspondences derived from a given one: the quotient X_I over A/I,
the restriction Y_I = φ_X(I)X over I, the pullback X_ω of a T-pair ω, the nondegenerate
replacement φ_X(A)X, and the correspondence of a directed multigraph. It also decides
whether a correspondence is a Hilbert bimodule.

Derived blocks keep the source label for quotients and restrictions; the blocks of X_ω are
labelled "<label>#d" (diagonal), "<label>#i" (I-side) and "<label>#ii" (I'-side).
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from cplattice.algebra.correspondence import BlockAlgebra, Correspondence, IdealSet, check_ideal
from cplattice.algebra.ideal_calculus import (
    compact_mask,
    is_positively_invariant_mask,
    katsura_mask,
    kernel_mask,
    relative_katsura_mask,
)
from cplattice.algebra.pairs import IdealPair, PairKind, pair_is_valid
from cplattice.common.errors import (
    ConsistencyError,
    NegativeOrMalformedNumber,
    NotABimodule,
    NotPositivelyInvariant,
    NotTPair,
    UnknownVertex,
)
from cplattice.common.extnat import ExtNat, ext_sum
from cplattice.utils.bitmask import mask_to_bits

logger = logging.getLogger(__name__)

DIAGONAL_SUFFIX = "#d"
I_SIDE_SUFFIX = "#i"
I_PRIME_SIDE_SUFFIX = "#ii"


class OriginTag(str, Enum):
    DIAGONAL = "diagonal"
    I_SIDE = "I-side"
    I_PRIME_SIDE = "I'-side"
    QUOTIENT = "quotient"
    RESTRICTION = "restriction"


@dataclass(frozen=True)
class DerivedCorrespondence:
    """
    A derived correspondence together with the provenance of its blocks.

    Attributes
    ----------
    result : Correspondence
        The constructed correspondence.
    origin : Dict[str, Tuple[str, OriginTag]]
        Result block label -> (source block label, tag).
    """
    result: Correspondence
    origin: Dict[str, Tuple[str, OriginTag]]


@dataclass(frozen=True)
class GraphDesc:
    """
    A directed multigraph; an edge (src, dst, count) stands for `count` parallel edges.
    """
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str, ExtNat], ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class BimoduleReport:
    """
    Result of `is_hilbert_bimodule`.

    Attributes
    ----------
    is_bimodule : bool
        True iff φ_X(J_X) = K(X).
    witness : str | None
        Description of the first violation found.
    """
    is_bimodule: bool
    witness: Optional[str] = None

    def __bool__(self) -> bool:
        return self.is_bimodule


def _require_positively_invariant(corr: Correspondence, ideal: IdealSet) -> None:
    check_ideal(corr, ideal)
    if not is_positively_invariant_mask(corr, ideal.mask):
        raise NotPositivelyInvariant(f"{ideal} is not positively invariant")


def _sub_correspondence(
    corr: Correspondence,
    sources: Sequence[int],
    labels: Sequence[str],
    fullness: Sequence[ExtNat],
    keep_column: Sequence[bool],
) -> Correspondence:
    """
    Builds the correspondence whose k-th block copies source block sources[k]; the action
    of the k-th block is dropped where keep_column[k] is False.
    """
    algebra = BlockAlgebra((label, corr.algebra.dim(i)) for label, i in zip(labels, sources))
    action = [
        [corr.action[j, i] if keep else ExtNat.ZERO for i, keep in zip(sources, keep_column)]
        for j in sources
    ]
    return Correspondence(algebra, list(fullness), action)


def _check_structural_postcondition(name: str, got: int, expected: int, result: Correspondence) -> None:
    if got != expected:
        raise ConsistencyError(
            f"{name} of the derived correspondence is {result.algebra.from_mask(got)}, "
            f"expected {result.algebra.from_mask(expected)}"
        )


def quotient_correspondence(corr: Correspondence, ideal: IdealSet) -> DerivedCorrespondence:
    """
    Builds X_I = X/XI as a correspondence over A/I.

    Parameters
    ----------
    corr : Correspondence
        The correspondence X.
    ideal : IdealSet
        A positively invariant ideal I.

    Returns
    -------
    DerivedCorrespondence
        The blocks outside I with their fullness and action; J_{X_I} equals J(I)/I.

    Raises
    ------
    NotPositivelyInvariant
        If X(I) is not contained in I.
    """
    _require_positively_invariant(corr, ideal)
    keep = mask_to_bits(ideal.complement().mask)
    labels = [corr.algebra.label(i) for i in keep]
    result = _sub_correspondence(
        corr, keep, labels, [corr.fullness[j] for j in keep], [True] * len(keep)
    )

    expected = 0
    upper = relative_katsura_mask(corr, ideal.mask) & ~ideal.mask
    for k, i in enumerate(keep):
        if upper >> i & 1:
            expected |= 1 << k
    _check_structural_postcondition("J_X", katsura_mask(result), expected, result)

    logger.debug("quotient by %s leaves %d blocks", ideal, len(keep))
    origin = {label: (label, OriginTag.QUOTIENT) for label in labels}
    return DerivedCorrespondence(result, origin)


def restriction_correspondence(corr: Correspondence, ideal: IdealSet) -> DerivedCorrespondence:
    """
    Builds Y_I = φ_X(I)X as a correspondence over I.

    Parameters
    ----------
    corr : Correspondence
        The correspondence X.
    ideal : IdealSet
        A positively invariant ideal I.

    Returns
    -------
    DerivedCorrespondence
        Blocks of I with fullness m'_j = Σ_{i∈I} M[j][i]·d_i and the action restricted to I.
        Its kernel, compactly acting ideal and J_X are the intersections with I of those of X.

    Raises
    ------
    NotPositivelyInvariant
        If X(I) is not contained in I.
    """
    _require_positively_invariant(corr, ideal)
    keep = ideal.members
    dims = corr.algebra.dims
    labels = [corr.algebra.label(i) for i in keep]
    fullness = [ext_sum(corr.action[j, i] * dims[i] for i in keep) for j in keep]
    result = _sub_correspondence(corr, keep, labels, fullness, [True] * len(keep))

    def inside(mask: int) -> int:
        packed = 0
        for k, i in enumerate(keep):
            if mask >> i & 1:
                packed |= 1 << k
        return packed

    _check_structural_postcondition("ker", kernel_mask(result), inside(kernel_mask(corr)), result)
    _check_structural_postcondition("compactly acting ideal", compact_mask(result), inside(compact_mask(corr)), result)
    _check_structural_postcondition("J_X", katsura_mask(result), inside(katsura_mask(corr)), result)

    origin = {label: (label, OriginTag.RESTRICTION) for label in labels}
    return DerivedCorrespondence(result, origin)


def nondegenerate_replacement(corr: Correspondence) -> DerivedCorrespondence:
    """
    Returns Y = φ_X(A)X, the restriction to the whole algebra.
    """
    return restriction_correspondence(corr, corr.algebra.full())


def omega_correspondence(corr: Correspondence, pair: IdealPair) -> DerivedCorrespondence:
    """
    Builds the correspondence X_ω over A_ω for a T-pair ω = (I, I').

    With T = J(I), A_ω has a diagonal block for each i ∉ T, an I-side block for each
    i ∈ T \\ I and an I'-side block for each i ∈ T \\ I'. Every block (j, ·) of X_ω has
    fullness m_j, and the left action factors through the A/I coordinate, so the I'-side
    blocks act by zero.

    Parameters
    ----------
    corr : Correspondence
        The correspondence X.
    pair : IdealPair
        A T-pair (I, I').

    Returns
    -------
    DerivedCorrespondence
        X_ω; its J_X consists exactly of the I-side blocks.

    Raises
    ------
    NotTPair
        If `pair` is not a T-pair of X.
    """
    if not pair_is_valid(corr, pair.first, pair.second, PairKind.T):
        raise NotTPair(f"{pair} is not a T-pair")
    first = pair.first.mask
    second = pair.second.mask
    upper = relative_katsura_mask(corr, first)

    sources: List[int] = []
    labels: List[str] = []
    tags: List[OriginTag] = []
    for i in range(corr.n):
        label = corr.algebra.label(i)
        if not upper >> i & 1:
            sources.append(i)
            labels.append(label + DIAGONAL_SUFFIX)
            tags.append(OriginTag.DIAGONAL)
            continue
        if not first >> i & 1:
            sources.append(i)
            labels.append(label + I_SIDE_SUFFIX)
            tags.append(OriginTag.I_SIDE)
        if not second >> i & 1:
            sources.append(i)
            labels.append(label + I_PRIME_SIDE_SUFFIX)
            tags.append(OriginTag.I_PRIME_SIDE)

    result = _sub_correspondence(
        corr,
        sources,
        labels,
        [corr.fullness[j] for j in sources],
        [tag is not OriginTag.I_PRIME_SIDE for tag in tags],
    )
    expected = sum(1 << k for k, tag in enumerate(tags) if tag is OriginTag.I_SIDE)
    _check_structural_postcondition("J_X", katsura_mask(result), expected, result)

    logger.debug("omega correspondence of %s has %d blocks", pair, len(sources))
    origin = {
        label: (corr.algebra.label(i), tag) for label, i, tag in zip(labels, sources, tags)
    }
    return DerivedCorrespondence(result, origin)


def is_hilbert_bimodule(corr: Correspondence) -> BimoduleReport:
    """
    Decides whether X is a Hilbert A-bimodule, i.e. whether φ_X(J_X) = K(X).

    In the block model this holds iff every module block j with m_j > 0 is acted on by
    exactly one block i, with M[j][i] = 1 and d_i = m_j, and no block acts on two module blocks.
    Violations are reported in that order of severity: shared module blocks, shared acting
    blocks, unmatched module blocks, wrong multiplicities or sizes.
    """
    algebra = corr.algebra
    for j in range(corr.n):
        acting = mask_to_bits(corr.row_support(j))
        if len(acting) > 1:
            return BimoduleReport(False, f"module block {algebra.label(j)} has {len(acting)} acting blocks")
    for i in range(corr.n):
        sharing = mask_to_bits(corr.column_support(i))
        if len(sharing) > 1:
            return BimoduleReport(False, f"block {algebra.label(i)} acts on {len(sharing)} module blocks")

    for j in range(corr.n):
        if not corr.fullness[j]:
            continue
        acting = mask_to_bits(corr.row_support(j))
        if not acting:
            return BimoduleReport(False, f"module block {algebra.label(j)} has no acting block")
        i = acting[0]
        if corr.action[j, i] != 1:
            return BimoduleReport(
                False, f"block {algebra.label(i)} acts on {algebra.label(j)} with multiplicity {corr.action[j, i]}"
            )
        if corr.fullness[j] != algebra.dim(i):
            return BimoduleReport(
                False,
                f"module block {algebra.label(j)} has fullness {corr.fullness[j]} "
                f"but block {algebra.label(i)} has dimension {algebra.dim(i)}",
            )
    return BimoduleReport(True)


def bimodule_invariant(corr: Correspondence, ideal: IdealSet) -> bool:
    """
    Tests φ_X(I)X = XI for a Hilbert bimodule X.

    Raises
    ------
    NotABimodule
        If X is not a Hilbert bimodule.
    """
    check_ideal(corr, ideal)
    report = is_hilbert_bimodule(corr)
    if not report:
        raise NotABimodule(f"not a Hilbert bimodule: {report.witness}")
    dims = corr.algebra.dims
    members = ideal.members
    for j in range(corr.n):
        used = ext_sum(corr.action[j, i] * dims[i] for i in members)
        target = corr.fullness[j] if j in ideal else ExtNat.ZERO
        if used != target:
            return False
    return True


def graph_to_correspondence(graph: GraphDesc) -> Correspondence:
    """
    Builds the graph correspondence: one block of dimension 1 per vertex, module block at the
    source and acting block at the target of every edge.

    Parameters
    ----------
    graph : GraphDesc
        Vertices and edges with multiplicities (possibly "inf").

    Returns
    -------
    Correspondence
        m_v is the number of edges leaving v and M[src][dst] the number of edges src -> dst.

    Raises
    ------
    UnknownVertex
        If an edge refers to an undeclared vertex.
    NegativeOrMalformedNumber
        If an edge count is not a positive extended natural.
    """
    algebra = BlockAlgebra((label, 1) for label in graph.vertices)
    n = algebra.n
    fullness = [ExtNat.ZERO] * n
    action = [[ExtNat.ZERO] * n for _ in range(n)]
    for src, dst, count in graph.edges:
        for vertex in (src, dst):
            if vertex not in graph.vertices:
                raise UnknownVertex(f"edge {src} -> {dst} refers to unknown vertex {vertex!r}")
        count = ExtNat.parse(count)
        if not count:
            raise NegativeOrMalformedNumber(f"edge {src} -> {dst} must have a positive count")
        j = algebra.index(src)
        i = algebra.index(dst)
        fullness[j] = fullness[j] + count
        action[j][i] = action[j][i] + count
    return Correspondence(algebra, fullness, action)


def _as_digraph(corr: Correspondence) -> nx.DiGraph:
    graph = nx.DiGraph()
    for i in range(corr.n):
        graph.add_node(i, dim=corr.algebra.dim(i), fullness=str(corr.fullness[i]))
    for j in range(corr.n):
        for i in mask_to_bits(corr.row_support(j)):
            graph.add_edge(j, i, mult=str(corr.action[j, i]))
    return graph


def isomorphic(left: Correspondence, right: Correspondence) -> bool:
    """
    Tests whether a bijective relabelling of blocks preserves dimensions, fullness and action.
    """
    if left.n != right.n:
        return False
    return nx.is_isomorphic(
        _as_digraph(left),
        _as_digraph(right),
        node_match=lambda a, b: a == b,
        edge_match=lambda a, b: a == b,
    )


def relabel_matches(left: Correspondence, right: Correspondence, mapping: Dict[str, str]) -> bool:
    """
    Tests whether `mapping` (label of left -> label of right) is an isomorphism.
    """
    if left.n != right.n or sorted(mapping.values()) != sorted(right.algebra.labels):
        return False
    to_right = [right.algebra.index(mapping[label]) for label in left.algebra.labels]
    for j in range(left.n):
        if left.algebra.dim(j) != right.algebra.dim(to_right[j]):
            return False
        if left.fullness[j] != right.fullness[to_right[j]]:
            return False
        for i in range(left.n):
            if left.action[j, i] != right.action[to_right[j], to_right[i]]:
                return False
    return True

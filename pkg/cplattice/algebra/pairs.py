"""
This module enumerates the T-pairs and O-pairs of a correspondence, organises them into
a lattice, analyses relative Cuntz-Pimsner algebras and computes the ideal generated
by an ideal of the coefficient algebra.

A T-pair is a pair (I, I') of ideals with I positively invariant and I ⊂ I' ⊂ J(I).
An O-pair is a T-pair with J_X ⊂ I'. T-pairs parametrise the gauge-invariant ideals
of the Toeplitz algebra, O-pairs those of O_X; in both cases inclusions and
intersections are preserved.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Set, Tuple, Union

import networkx as nx

from cplattice.algebra.correspondence import Correspondence, IdealSet, check_ideal
from cplattice.algebra.ideal_calculus import (
    compact_mask,
    inverse_mask,
    invariant_closure_mask,
    is_negatively_invariant_mask,
    is_positively_invariant_mask,
    katsura_mask,
    kernel_mask,
    positively_invariant_masks,
    relative_katsura_mask,
)
from cplattice.common.errors import ConsistencyError, NotCompactlyActing, SizeLimit
from cplattice.utils.bitmask import full_mask, is_subset, iter_submasks

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_LIMIT = 20


class PairKind(str, Enum):
    T = "T"
    O = "O"

    @classmethod
    def parse(cls, raw: Union["PairKind", str]) -> "PairKind":
        if isinstance(raw, PairKind):
            return raw
        try:
            return cls(raw.upper())
        except ValueError:
            raise ValueError(f"pair kind must be 'T' or 'O', got {raw!r}") from None


@dataclass(frozen=True)
class IdealPair:
    """
    A pair ω = (I, I') of ideals.

    Attributes
    ----------
    first : IdealSet
        The ideal I (the kernel part).
    second : IdealSet
        The ideal I' (the covariance part).
    kind : PairKind
        Whether the pair was produced as a T-pair or an O-pair.
    """
    first: IdealSet
    second: IdealSet
    kind: PairKind = PairKind.T

    @property
    def key(self) -> Tuple[int, int]:
        return self.first.mask, self.second.mask

    def __le__(self, other: "IdealPair") -> bool:
        return self.first <= other.first and self.second <= other.second

    def intersection(self, other: "IdealPair") -> "IdealPair":
        return IdealPair(self.first & other.first, self.second & other.second, self.kind)

    def __str__(self) -> str:
        return f"({self.first};{self.second})"


class PairLattice:
    """
    The pairs of one kind, ordered lexicographically by (first, second) bitmask.

    The covering relation and the meet table are computed on first access.

    Attributes
    ----------
    pairs : List[IdealPair]
        The pairs in canonical order.
    kind : PairKind
        Kind of the pairs.
    """

    def __init__(self, pairs: List[IdealPair], kind: PairKind):
        self.pairs = sorted(pairs, key=lambda p: p.key)
        self.kind = kind
        self._position = {p.key: k for k, p in enumerate(self.pairs)}

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[IdealPair]:
        return iter(self.pairs)

    def __getitem__(self, k: int) -> IdealPair:
        return self.pairs[k]

    def index(self, pair: IdealPair) -> int:
        """
        Returns the position of a pair with the same components.

        Raises
        ------
        KeyError
            If the pair is not in the lattice.
        """
        return self._position[pair.key]

    def __contains__(self, pair: IdealPair) -> bool:
        return pair.key in self._position

    @cached_property
    def order_relation(self) -> Set[Tuple[int, int]]:
        """
        Covering edges (a, b): pairs[a] < pairs[b] with nothing strictly in between.
        """
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.pairs)))
        for a, low in enumerate(self.pairs):
            for b, high in enumerate(self.pairs):
                if a != b and low <= high:
                    graph.add_edge(a, b)
        reduced = nx.transitive_reduction(graph)
        return set(reduced.edges)

    @property
    def covering_edges(self) -> List[Tuple[int, int]]:
        return sorted(self.order_relation)

    @cached_property
    def meet_table(self) -> Dict[Tuple[int, int], int]:
        """
        Map (a, b) -> index of the componentwise intersection of pairs[a] and pairs[b].

        Raises
        ------
        ConsistencyError
            If an intersection is missing from the lattice.
        """
        table = {}
        for a, left in enumerate(self.pairs):
            for b in range(a, len(self.pairs)):
                meet = left.intersection(self.pairs[b])
                if meet.key not in self._position:
                    raise ConsistencyError(f"intersection of {left} and {self.pairs[b]} is not a {self.kind.value}-pair")
                table[(a, b)] = table[(b, a)] = self._position[meet.key]
        return table

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[(a, b)]


@dataclass(frozen=True)
class RelCPReport:
    """
    Analysis of the relative Cuntz-Pimsner algebra O(J, X).

    Attributes
    ----------
    ideal : IdealSet
        The ideal J.
    tower : List[IdealSet]
        J_0 = 0, J_{-1}, ... up to the fixpoint (listed once).
    limit : IdealSet
        J_{-∞}.
    omega : IdealPair
        The T-pair ω_J = (J_{-∞}, J).
    kernel_of_pi : IdealSet
        Kernel of the canonical map A -> O(J, X); equals J_{-∞}.
    algebra_is_zero : bool
        True iff O(J, X) = 0, i.e. J_{-∞} = A.
    pi_injective : bool
        True iff A -> O(J, X) is injective, i.e. J ∩ ker φ_X = 0.
    covariance_ideal : IdealSet
        {a : φ_X(a) compact and π(a) = ψ(φ_X(a))}, which is J itself.
    """
    ideal: IdealSet
    tower: List[IdealSet]
    limit: IdealSet
    omega: IdealPair
    kernel_of_pi: IdealSet
    algebra_is_zero: bool
    pi_injective: bool
    covariance_ideal: IdealSet


@dataclass(frozen=True)
class InvariantBijection:
    """
    Result of `invariant_ideal_bijection`.

    Attributes
    ----------
    mapping : Dict[IdealSet, IdealPair] | None
        Invariant ideal -> its unique O-pair, present iff A = J_X + ker φ_X.
    witness : IdealSet | None
        The blocks outside J_X + ker φ_X when the hypothesis fails.
    """
    mapping: Optional[Dict[IdealSet, IdealPair]]
    witness: Optional[IdealSet]

    @property
    def exists(self) -> bool:
        return self.mapping is not None


def _check_size(corr: Correspondence, limit: int) -> None:
    if corr.n > limit:
        raise SizeLimit(f"{corr.n} blocks exceed the enumeration limit of {limit}")


def enumerate_pairs(
    corr: Correspondence,
    kind: Union[PairKind, str] = PairKind.O,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> PairLattice:
    """
    Enumerates all T-pairs or all O-pairs.

    For every positively invariant I the admissible second components are
    I ∪ R ∪ S, where R = J_X \\ I is required for O-pairs (empty for T-pairs) and S runs
    over the subsets of J(I) \\ (I ∪ R).

    Parameters
    ----------
    corr : Correspondence
        The correspondence X.
    kind : PairKind | str
        "T" or "O".
    limit : int
        Largest admissible number of blocks.

    Returns
    -------
    PairLattice
        The pairs in lexicographic order of (first, second) bitmasks.

    Raises
    ------
    SizeLimit
        If the algebra has more than `limit` blocks.
    """
    kind = PairKind.parse(kind)
    _check_size(corr, limit)
    algebra = corr.algebra
    katsura = katsura_mask(corr)
    pairs = []
    for first in positively_invariant_masks(corr):
        upper = relative_katsura_mask(corr, first)
        required = katsura & ~first if kind is PairKind.O else 0
        if not is_subset(required, upper):
            continue
        free = upper & ~first & ~required
        base = first | required
        first_ideal = algebra.from_mask(first)
        for extra in iter_submasks(free):
            pairs.append(IdealPair(first_ideal, algebra.from_mask(base | extra), kind))
    logger.debug("enumerated %d %s-pairs over %d blocks", len(pairs), kind.value, corr.n)
    return PairLattice(pairs, kind)


def pair_is_valid(
    corr: Correspondence,
    first: IdealSet,
    second: IdealSet,
    kind: Union[PairKind, str] = PairKind.T,
) -> bool:
    """
    Tests whether (first, second) is a T-pair, or an O-pair when `kind` is "O".
    """
    kind = PairKind.parse(kind)
    check_ideal(corr, first)
    check_ideal(corr, second)
    if not is_subset(first.mask, second.mask):
        return False
    if not is_positively_invariant_mask(corr, first.mask):
        return False
    if not is_subset(second.mask, relative_katsura_mask(corr, first.mask)):
        return False
    if kind is PairKind.O and not is_subset(katsura_mask(corr), second.mask):
        return False
    return True


def relcp_analyze(corr: Correspondence, ideal: IdealSet) -> RelCPReport:
    """
    Computes the tower J_{-(n+1)} = J_{-n} + J ∩ X^{-1}(J_{-n}) and the pair ω_J.

    Parameters
    ----------
    corr : Correspondence
        The correspondence X.
    ideal : IdealSet
        The ideal J; it must act by compact operators.

    Returns
    -------
    RelCPReport
        Tower, limit, ω_J and the derived facts about O(J, X).

    Raises
    ------
    NotCompactlyActing
        If φ_X(J) is not contained in K(X).
    """
    check_ideal(corr, ideal)
    algebra = corr.algebra
    j_mask = ideal.mask
    outside = j_mask & ~compact_mask(corr)
    if outside:
        raise NotCompactlyActing(
            f"blocks {algebra.from_mask(outside)} of {ideal} do not act by compact operators"
        )

    tower = [0]
    while True:
        current = tower[-1]
        nxt = current | (j_mask & inverse_mask(corr, current))
        if nxt == current:
            break
        tower.append(nxt)
    limit_mask = tower[-1]
    limit = algebra.from_mask(limit_mask)
    omega = IdealPair(limit, ideal, PairKind.T)
    if not pair_is_valid(corr, limit, ideal, PairKind.T):
        raise ConsistencyError(f"{omega} is not a T-pair")
    logger.debug("relative tower for %s stabilized after %d steps", ideal, len(tower) - 1)
    return RelCPReport(
        ideal=ideal,
        tower=[algebra.from_mask(m) for m in tower],
        limit=limit,
        omega=omega,
        kernel_of_pi=limit,
        algebra_is_zero=limit_mask == full_mask(corr.n),
        pi_injective=j_mask & kernel_mask(corr) == 0,
        covariance_ideal=ideal,
    )


def ideal_generated_by(corr: Correspondence, ideal: IdealSet) -> IdealPair:
    """
    Returns the O-pair of the ideal of O_X generated by the image of I.

    The pair is (X^∞_{-∞}(I), X^∞_{-∞}(I) + J_X).
    """
    check_ideal(corr, ideal)
    katsura = katsura_mask(corr)
    closure = invariant_closure_mask(corr, ideal.mask, katsura)
    algebra = corr.algebra
    pair = IdealPair(algebra.from_mask(closure), algebra.from_mask(closure | katsura), PairKind.O)
    if not pair_is_valid(corr, pair.first, pair.second, PairKind.O):
        raise ConsistencyError(f"{pair} generated by {ideal} is not an O-pair")
    return pair


def invariant_ideal_bijection(
    corr: Correspondence, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> InvariantBijection:
    """
    Builds the bijection between invariant ideals and O-pairs when A = J_X + ker φ_X.

    Parameters
    ----------
    corr : Correspondence
        The correspondence X.
    limit : int
        Largest admissible number of blocks.

    Returns
    -------
    InvariantBijection
        The map I -> (I, I') when the hypothesis holds, otherwise the witness A \\ (J_X + ker φ_X).

    Raises
    ------
    ConsistencyError
        If an invariant ideal does not have exactly one O-pair completion.
    """
    algebra = corr.algebra
    covered = katsura_mask(corr) | kernel_mask(corr)
    if covered != full_mask(corr.n):
        return InvariantBijection(mapping=None, witness=algebra.from_mask(full_mask(corr.n) & ~covered))

    lattice = enumerate_pairs(corr, PairKind.O, limit)
    katsura = katsura_mask(corr)
    by_first: Dict[int, List[IdealPair]] = {}
    for pair in lattice:
        by_first.setdefault(pair.first.mask, []).append(pair)

    mapping = {}
    for mask in positively_invariant_masks(corr):
        if not is_negatively_invariant_mask(corr, mask, katsura):
            continue
        completions = by_first.get(mask, [])
        if len(completions) != 1:
            raise ConsistencyError(
                f"invariant ideal {algebra.from_mask(mask)} has {len(completions)} O-pair completions"
            )
        mapping[algebra.from_mask(mask)] = completions[0]
    if len(mapping) != len(lattice):
        raise ConsistencyError("some O-pair has a first component that is not invariant")
    return InvariantBijection(mapping=mapping, witness=None)

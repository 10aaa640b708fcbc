"""
This module implements the ideal calculus of a correspondence over a block algebra:
the image X(I) and preimage X^{-1}(I) of an ideal, the structural ideals
ker φ_X, φ_X^{-1}(K(X)) and J_X, the relative ideal J(I), the invariance predicates
and the closure towers.

Every operation has a mask-level twin (suffix `_mask`) working on raw bitmasks; the
enumeration code in `cplattice.algebra.pairs` uses those directly.

Notes
-----
On a finite lattice every increasing chain of ideals stabilizes, so the limits
X^∞(I), X_{-∞}(I) and X^∞_{-∞}(I) are fixpoints reached after finitely many steps.
"""

import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Optional

from cplattice.algebra.correspondence import Correspondence, IdealSet, check_ideal
from cplattice.common.errors import ConsistencyError
from cplattice.utils.bitmask import is_subset

logger = logging.getLogger(__name__)


class StructuralIdeals(NamedTuple):
    """
    The three ideals determined by the left action alone.
    """
    ker: IdealSet
    compactly_acting: IdealSet
    katsura: IdealSet


@dataclass(frozen=True)
class InvarianceReport:
    positively_invariant: bool
    negatively_invariant: bool

    @property
    def invariant(self) -> bool:
        return self.positively_invariant and self.negatively_invariant


@dataclass(frozen=True)
class ClosureReport:
    """
    Towers and closures generated by an ideal.

    Attributes
    ----------
    forward_tower : List[IdealSet]
        X^0(I), X^1(I), ... up to and including the first entry that repeats an earlier one.
    backward_tower : List[IdealSet]
        X_0(I), X_{-1}(I), ... up to and including the first repeated entry (the fixpoint).
    positive_closure : IdealSet
        Smallest positively invariant ideal containing I.
    negative_closure : IdealSet
        Smallest negatively invariant ideal containing I.
    invariant_closure : IdealSet
        Smallest invariant ideal containing I.
    """
    forward_tower: List[IdealSet]
    backward_tower: List[IdealSet]
    positive_closure: IdealSet
    negative_closure: IdealSet
    invariant_closure: IdealSet


def forward_mask(corr: Correspondence, mask: int) -> int:
    image = 0
    i = 0
    while mask >> i:
        if mask >> i & 1:
            image |= corr.column_support(i)
        i += 1
    return image


def inverse_mask(corr: Correspondence, mask: int) -> int:
    preimage = 0
    for i in range(corr.n):
        if is_subset(corr.column_support(i), mask):
            preimage |= 1 << i
    return preimage


def kernel_mask(corr: Correspondence) -> int:
    return sum(1 << i for i in range(corr.n) if corr.column_support(i) == 0)


def compact_mask(corr: Correspondence) -> int:
    return sum(1 << i for i in range(corr.n) if corr.column_infinite(i) == 0)


def katsura_mask(corr: Correspondence) -> int:
    return compact_mask(corr) & ~kernel_mask(corr)


def relative_katsura_mask(corr: Correspondence, mask: int) -> int:
    preimage = inverse_mask(corr, mask)
    result = 0
    for i in range(corr.n):
        if not is_subset(corr.column_infinite(i), mask):
            continue
        if preimage >> i & 1 and not mask >> i & 1:
            continue
        result |= 1 << i
    return result


def is_positively_invariant_mask(corr: Correspondence, mask: int) -> bool:
    return is_subset(forward_mask(corr, mask), mask)


def is_negatively_invariant_mask(corr: Correspondence, mask: int, katsura: Optional[int] = None) -> bool:
    if katsura is None:
        katsura = katsura_mask(corr)
    return is_subset(katsura & inverse_mask(corr, mask), mask)


def forward_tower_masks(corr: Correspondence, mask: int) -> List[int]:
    tower = [mask]
    seen = {mask}
    while True:
        nxt = forward_mask(corr, tower[-1])
        tower.append(nxt)
        if nxt in seen:
            return tower
        seen.add(nxt)


def backward_tower_masks(corr: Correspondence, mask: int, katsura: Optional[int] = None) -> List[int]:
    if katsura is None:
        katsura = katsura_mask(corr)
    tower = [mask]
    while True:
        current = tower[-1]
        nxt = current | (katsura & inverse_mask(corr, current))
        tower.append(nxt)
        if nxt == current:
            break
        if len(tower) > corr.n + 2:
            raise ConsistencyError(f"backward tower of {mask:#b} did not stabilize within {corr.n} steps")
    return tower


def positive_closure_mask(corr: Correspondence, mask: int) -> int:
    closure = 0
    for entry in forward_tower_masks(corr, mask):
        closure |= entry
    return closure


def negative_closure_mask(corr: Correspondence, mask: int, katsura: Optional[int] = None) -> int:
    return backward_tower_masks(corr, mask, katsura)[-1]


def invariant_closure_mask(corr: Correspondence, mask: int, katsura: Optional[int] = None) -> int:
    return negative_closure_mask(corr, positive_closure_mask(corr, mask), katsura)


def forward_image(corr: Correspondence, ideal: IdealSet) -> IdealSet:
    """
    Computes X(I), the closed span of ⟨X, φ_X(I)X⟩.

    Parameters
    ----------
    corr : Correspondence
        The correspondence X.
    ideal : IdealSet
        The ideal I.

    Returns
    -------
    IdealSet
        The blocks j on which some block of I acts: {j : ∃ i ∈ I, M[j][i] > 0}.
    """
    check_ideal(corr, ideal)
    return corr.algebra.from_mask(forward_mask(corr, ideal.mask))


def inverse_image(corr: Correspondence, ideal: IdealSet) -> IdealSet:
    """
    Computes X^{-1}(I) = {a : ⟨ξ, φ_X(a)η⟩ ∈ I for all ξ, η}.

    Parameters
    ----------
    corr : Correspondence
        The correspondence X.
    ideal : IdealSet
        The ideal I.

    Returns
    -------
    IdealSet
        The blocks i acting only on module blocks inside I.
    """
    check_ideal(corr, ideal)
    return corr.algebra.from_mask(inverse_mask(corr, ideal.mask))


def structural_ideals(corr: Correspondence) -> StructuralIdeals:
    """
    Computes ker φ_X, φ_X^{-1}(K(X)) and J_X = φ_X^{-1}(K(X)) ∩ (ker φ_X)^⊥.

    Parameters
    ----------
    corr : Correspondence
        The correspondence X.

    Returns
    -------
    StructuralIdeals
        The named triple (ker, compactly_acting, katsura).
    """
    algebra = corr.algebra
    return StructuralIdeals(
        ker=algebra.from_mask(kernel_mask(corr)),
        compactly_acting=algebra.from_mask(compact_mask(corr)),
        katsura=algebra.from_mask(katsura_mask(corr)),
    )


def relative_katsura(corr: Correspondence, ideal: IdealSet) -> IdealSet:
    """
    Computes the ideal J(I) of the elements a with [φ_X(a)]_I compact on X_I and a·X^{-1}(I) ⊂ I.

    The ideal I need not be positively invariant; J(0) = J_X.

    Parameters
    ----------
    corr : Correspondence
        The correspondence X.
    ideal : IdealSet
        The ideal I.

    Returns
    -------
    IdealSet
        {i : M[j][i] < ∞ for all j ∉ I, and i ∈ X^{-1}(I) implies i ∈ I}.
    """
    check_ideal(corr, ideal)
    return corr.algebra.from_mask(relative_katsura_mask(corr, ideal.mask))


def invariance(corr: Correspondence, ideal: IdealSet) -> InvarianceReport:
    """
    Tests positive invariance X(I) ⊂ I and negative invariance J_X ∩ X^{-1}(I) ⊂ I.
    """
    check_ideal(corr, ideal)
    return InvarianceReport(
        positively_invariant=is_positively_invariant_mask(corr, ideal.mask),
        negatively_invariant=is_negatively_invariant_mask(corr, ideal.mask),
    )


def closures(corr: Correspondence, ideal: IdealSet) -> ClosureReport:
    """
    Computes the forward and backward towers of I and the three closures.

    Parameters
    ----------
    corr : Correspondence
        The correspondence X.
    ideal : IdealSet
        The ideal I.

    Returns
    -------
    ClosureReport
        The positive closure is the union of the forward tower, the negative closure
        is the fixpoint of the backward tower, and the invariant closure is the
        negative closure of the positive closure.
    """
    check_ideal(corr, ideal)
    algebra = corr.algebra
    katsura = katsura_mask(corr)
    forward = forward_tower_masks(corr, ideal.mask)
    backward = backward_tower_masks(corr, ideal.mask, katsura)
    positive = 0
    for entry in forward:
        positive |= entry
    invariant = negative_closure_mask(corr, positive, katsura)
    logger.debug(
        "closures of %s: forward tower %d entries, backward tower %d entries",
        ideal, len(forward), len(backward),
    )
    return ClosureReport(
        forward_tower=[algebra.from_mask(m) for m in forward],
        backward_tower=[algebra.from_mask(m) for m in backward],
        positive_closure=algebra.from_mask(positive),
        negative_closure=algebra.from_mask(backward[-1]),
        invariant_closure=algebra.from_mask(invariant),
    )


def positively_invariant_masks(corr: Correspondence) -> List[int]:
    return [mask for mask in range(1 << corr.n) if is_positively_invariant_mask(corr, mask)]


def positively_invariant_ideals(corr: Correspondence) -> List[IdealSet]:
    """
    Lists every positively invariant ideal in bitmask order.
    """
    return [corr.algebra.from_mask(mask) for mask in positively_invariant_masks(corr)]


def invariant_ideals(corr: Correspondence) -> List[IdealSet]:
    """
    Lists every invariant ideal in bitmask order.

    The list is closed under intersection and contains 0 and A.
    """
    katsura = katsura_mask(corr)
    return [
        corr.algebra.from_mask(mask)
        for mask in positively_invariant_masks(corr)
        if is_negatively_invariant_mask(corr, mask, katsura)
    ]



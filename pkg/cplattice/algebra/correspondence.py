"""
This module defines the finite-block data model of a C*-correspondence and its validation.

A multi-matrix algebra A = M_{d_0}(C) ⊕ ... ⊕ M_{d_{n-1}}(C) is described by its blocks.
Its closed two-sided ideals are exactly the sums of blocks, so an ideal is a subset of
block indices (stored as a bitmask). A correspondence X over A is determined up to
isomorphism by

- the fullness vector m, where m_j is the column size of the right-module component X·e_j;
- the multiplicity matrix M, where M[j][i] is the multiplicity of block i in the left
  representation on X·e_j (∞ when the block acts by non-compact operators).

The translation used throughout the package is:

=========================  ==============================================
Hilbert-module object       finite-block datum
=========================  ==============================================
ideal I of A                subset of blocks
X·I                         module blocks j ∈ I
rank of φ(e_i) on X·e_j     M[j][i]·d_i
φ(e_i)|X·e_j compact        M[j][i] < ∞
=========================  ==============================================

Classes
-------
BlockAlgebra : An ordered list of labelled matrix blocks.
IdealSet : An ideal of a block algebra, i.e. a subset of its blocks.
Correspondence : Block algebra + fullness vector + multiplicity matrix.

Functions
---------
validate_correspondence : Builds a `Correspondence` from raw block, fullness and action data.
perp : The annihilator ideal of an ideal.
"""

import logging
from typing import Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt

from cplattice.common.errors import (
    DuplicateLabel,
    FullnessViolation,
    InputValidationError,
    NegativeOrMalformedNumber,
    UnknownLabel,
)
from cplattice.common.extnat import ExtNat, ext_sum
from cplattice.utils.bitmask import bits_to_mask, full_mask, is_subset, mask_to_bits, popcount

logger = logging.getLogger(__name__)

RawNumber = Union[ExtNat, int, str]


class BlockAlgebra:
    """
    A finite direct sum of full matrix algebras.

    The block index of a block is its position in the list given at construction;
    every rendering of block sets is sorted by this index.

    Attributes
    ----------
    _labels : Tuple[str, ...]
        Block labels, unique and non-empty.
    _dims : Tuple[int, ...]
        Matrix sizes d_i of the blocks.
    _index : Dict[str, int]
        Label to block index lookup.
    """

    def __init__(self, blocks: Iterable[Tuple[str, int]]):
        """
        Parameters
        ----------
        blocks : Iterable[Tuple[str, int]]
            Pairs (label, dim) in canonical order.

        Raises
        ------
        DuplicateLabel
            If two blocks share a label.
        InputValidationError
            If a label is empty or not a string.
        NegativeOrMalformedNumber
            If a dimension is not a positive integer.
        """
        labels = []
        dims = []
        index = {}
        for label, dim in blocks:
            if not isinstance(label, str) or not label:
                raise InputValidationError(f"block labels must be non-empty strings, got {label!r}")
            if label in index:
                raise DuplicateLabel(f"block label {label!r} declared twice")
            if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
                raise NegativeOrMalformedNumber(f"dimension of block {label!r} must be a positive integer, got {dim!r}")
            index[label] = len(labels)
            labels.append(label)
            dims.append(dim)
        self._labels = tuple(labels)
        self._dims = tuple(dims)
        self._index = index

    @property
    def n(self) -> int:
        return len(self._labels)

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._labels

    @property
    def dims(self) -> Tuple[int, ...]:
        return self._dims

    def label(self, i: int) -> str:
        return self._labels[i]

    def dim(self, i: int) -> int:
        return self._dims[i]

    def index(self, label: str) -> int:
        """
        Returns the block index of a label.

        Raises
        ------
        UnknownLabel
            If no block carries the label.
        """
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown block label {label!r}") from None

    def ideal(self, labels: Iterable[str] = ()) -> "IdealSet":
        """
        Returns the ideal spanned by the blocks with the given labels.
        """
        return IdealSet(self, bits_to_mask(self.index(label) for label in labels))

    def from_mask(self, mask: int) -> "IdealSet":
        return IdealSet(self, mask)

    def zero(self) -> "IdealSet":
        return IdealSet(self, 0)

    def full(self) -> "IdealSet":
        return IdealSet(self, full_mask(self.n))

    def all_ideals(self) -> Iterator["IdealSet"]:
        """
        Iterates over all 2^n ideals in bitmask order.
        """
        for mask in range(1 << self.n):
            yield IdealSet(self, mask)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, BlockAlgebra):
            return NotImplemented
        return self._labels == other._labels and self._dims == other._dims

    def __hash__(self) -> int:
        return hash((self._labels, self._dims))

    def __repr__(self) -> str:
        inner = ", ".join(f"{l}:{d}" for l, d in zip(self._labels, self._dims))
        return f"BlockAlgebra({inner})"


class IdealSet:
    """
    An ideal of a `BlockAlgebra`, encoded as the bitmask of its blocks.

    Set union is the ideal sum and set intersection is the ideal intersection.
    `<=` is inclusion of ideals.

    Attributes
    ----------
    algebra : BlockAlgebra
        The algebra the ideal lives in.
    mask : int
        Bit i is set iff block i belongs to the ideal.
    """
    __slots__ = ("algebra", "mask")

    def __init__(self, algebra: BlockAlgebra, mask: int):
        if mask < 0 or not is_subset(mask, full_mask(algebra.n)):
            raise IndexError(f"mask {mask:#b} is out of range for {algebra.n} blocks")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("IdealSet is immutable")

    def _other_mask(self, other: "IdealSet") -> int:
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise ValueError("ideals of different algebras cannot be combined")
        return other.mask

    @property
    def members(self) -> List[int]:
        return mask_to_bits(self.mask)

    @property
    def labels(self) -> List[str]:
        return [self.algebra.label(i) for i in self.members]

    @property
    def is_zero(self) -> bool:
        return self.mask == 0

    @property
    def is_full(self) -> bool:
        return self.mask == full_mask(self.algebra.n)

    def complement(self) -> "IdealSet":
        return IdealSet(self.algebra, full_mask(self.algebra.n) & ~self.mask)

    def __or__(self, other: "IdealSet") -> "IdealSet":
        return IdealSet(self.algebra, self.mask | self._other_mask(other))

    def __and__(self, other: "IdealSet") -> "IdealSet":
        return IdealSet(self.algebra, self.mask & self._other_mask(other))

    def __sub__(self, other: "IdealSet") -> "IdealSet":
        return IdealSet(self.algebra, self.mask & ~self._other_mask(other))

    def __le__(self, other: "IdealSet") -> bool:
        return is_subset(self.mask, self._other_mask(other))

    def __lt__(self, other: "IdealSet") -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other: "IdealSet") -> bool:
        return other <= self

    def __gt__(self, other: "IdealSet") -> bool:
        return other < self

    def __contains__(self, item: Union[int, str]) -> bool:
        if isinstance(item, str):
            item = self.algebra.index(item)
        return bool(self.mask >> item & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IdealSet):
            return NotImplemented
        return self.mask == other.mask and self.algebra == other.algebra

    def __hash__(self) -> int:
        return hash((self.algebra, self.mask))

    def __str__(self) -> str:
        return "{" + ",".join(self.labels) + "}"

    def __repr__(self) -> str:
        return f"IdealSet({self})"


class Correspondence:
    """
    A C*-correspondence over a block algebra, up to isomorphism.

    Instances are immutable: the fullness vector and the action matrix are stored
    as read-only numpy object arrays of `ExtNat`.

    Attributes
    ----------
    algebra : BlockAlgebra
        The coefficient algebra A.
    fullness : np.ndarray
        Vector m of length n; m_j is the column size of X·e_j.
    action : np.ndarray
        n×n matrix M; M[j][i] is the multiplicity of block i acting on X·e_j.
    """

    def __init__(self, algebra: BlockAlgebra, fullness: Sequence[ExtNat], action: Sequence[Sequence[ExtNat]]):
        """
        Parameters
        ----------
        algebra : BlockAlgebra
            The coefficient algebra.
        fullness : Sequence[ExtNat]
            Fullness vector of length n.
        action : Sequence[Sequence[ExtNat]]
            Dense n×n multiplicity matrix, indexed [module block][acting block].

        Raises
        ------
        InputValidationError
            If the shapes do not match the algebra.
        FullnessViolation
            If Σ_i M[j][i]·d_i > m_j for some j.
        """
        n = algebra.n
        m = np.empty(n, dtype=object)
        if len(fullness) != n:
            raise InputValidationError(f"fullness vector has {len(fullness)} entries, expected {n}")
        for j, value in enumerate(fullness):
            m[j] = ExtNat.parse(value)

        mat = np.empty((n, n), dtype=object)
        if len(action) != n:
            raise InputValidationError(f"action matrix has {len(action)} rows, expected {n}")
        for j, row in enumerate(action):
            if len(row) != n:
                raise InputValidationError(f"row {j} of the action matrix has {len(row)} entries, expected {n}")
            for i, value in enumerate(row):
                mat[j, i] = ExtNat.parse(value)

        m.flags.writeable = False
        mat.flags.writeable = False
        self.algebra = algebra
        self.fullness = m
        self.action = mat

        self._check_fullness()

        col_support = [0] * n
        col_infinite = [0] * n
        row_support = [0] * n
        for j in range(n):
            for i in range(n):
                entry = mat[j, i]
                if entry:
                    col_support[i] |= 1 << j
                    row_support[j] |= 1 << i
                if entry.is_infinite:
                    col_infinite[i] |= 1 << j
        self._col_support = tuple(col_support)
        self._col_infinite = tuple(col_infinite)
        self._row_support = tuple(row_support)
        self._range_mask = sum(1 << j for j in range(n) if m[j])

    def _check_fullness(self) -> None:
        dims = self.algebra.dims
        for j in range(self.n):
            used = ext_sum(self.action[j, i] * dims[i] for i in range(self.n))
            if used > self.fullness[j]:
                raise FullnessViolation(
                    f"module block {self.algebra.label(j)!r}: acting blocks need {used} columns "
                    f"but the fullness is {self.fullness[j]}"
                )

    @property
    def n(self) -> int:
        return self.algebra.n

    def column_support(self, i: int) -> int:
        """
        Bitmask of the module blocks j with M[j][i] > 0.
        """
        return self._col_support[i]

    def column_infinite(self, i: int) -> int:
        """
        Bitmask of the module blocks j with M[j][i] = ∞.
        """
        return self._col_infinite[i]

    def row_support(self, j: int) -> int:
        """
        Bitmask of the acting blocks i with M[j][i] > 0.
        """
        return self._row_support[j]

    @property
    def range_mask(self) -> int:
        """
        Bitmask of the blocks j with m_j > 0, i.e. the closed span of ⟨X, X⟩.
        """
        return self._range_mask

    @property
    def is_all_finite(self) -> bool:
        return all(v.is_finite for v in self.fullness) and not any(self._col_infinite)

    def support_matrix(self) -> npt.NDArray:
        """
        Returns the boolean n×n matrix of nonzero entries of M.
        """
        return np.array([[bool(self.action[j, i]) for i in range(self.n)] for j in range(self.n)], dtype=bool).reshape(
            self.n, self.n
        )

    def entry(self, on: Union[int, str], by: Union[int, str]) -> ExtNat:
        """
        Returns M[on][by]; labels and indices are both accepted.
        """
        if isinstance(on, str):
            on = self.algebra.index(on)
        if isinstance(by, str):
            by = self.algebra.index(by)
        return self.action[on, by]

    def fullness_of(self, block: Union[int, str]) -> ExtNat:
        if isinstance(block, str):
            block = self.algebra.index(block)
        return self.fullness[block]

    def ideal(self, labels: Iterable[str] = ()) -> IdealSet:
        return self.algebra.ideal(labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Correspondence):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and list(self.fullness) == list(other.fullness)
            and [list(r) for r in self.action] == [list(r) for r in other.action]
        )

    def __hash__(self) -> int:
        return hash((self.algebra, tuple(self.fullness), tuple(tuple(r) for r in self.action)))

    def __repr__(self) -> str:
        return f"Correspondence({self.algebra!r}, m={[str(v) for v in self.fullness]})"


def validate_correspondence(
    blocks: Iterable[Union[Tuple[str, int], Mapping[str, object]]],
    fullness: Union[Mapping[str, RawNumber], Sequence[RawNumber]],
    action: Union[Mapping[Tuple[str, str], RawNumber], Sequence[Sequence[RawNumber]]],
) -> Correspondence:
    """
    Builds a validated `Correspondence` from a raw description.

    Parameters
    ----------
    blocks : Iterable[Tuple[str, int] | Mapping]
        The blocks in canonical order, as (label, dim) pairs or {"label", "dim"} mappings.
    fullness : Mapping[str, number] | Sequence[number]
        Either a map label -> m_j (missing labels mean 0) or a dense vector.
    action : Mapping[Tuple[str, str], number] | Sequence[Sequence[number]]
        Either a sparse map (on, by) -> M[on][by] (missing entries mean 0) or a dense matrix.
        Numbers are ints, decimal strings or "inf".

    Returns
    -------
    Correspondence
        The validated correspondence.

    Raises
    ------
    DuplicateLabel, UnknownLabel, FullnessViolation, NegativeOrMalformedNumber
        On the corresponding defects of the description.
    """
    pairs = []
    for block in blocks:
        if isinstance(block, Mapping):
            pairs.append((block.get("label"), block.get("dim")))
        else:
            label, dim = block
            pairs.append((label, dim))
    algebra = BlockAlgebra(pairs)
    n = algebra.n

    if isinstance(fullness, Mapping):
        m = [ExtNat.ZERO] * n
        for label, value in fullness.items():
            m[algebra.index(label)] = ExtNat.parse(value)
    else:
        m = [ExtNat.parse(value) for value in fullness]

    if isinstance(action, Mapping):
        mat = [[ExtNat.ZERO] * n for _ in range(n)]
        for (on, by), value in action.items():
            j = algebra.index(on)
            i = algebra.index(by)
            mat[j][i] = ExtNat.parse(value)
    else:
        mat = [[ExtNat.parse(value) for value in row] for row in action]

    corr = Correspondence(algebra, m, mat)
    logger.debug("validated correspondence with %d blocks", n)
    return corr


def perp(corr: Correspondence, ideal: IdealSet) -> IdealSet:
    """
    Returns the annihilator I^⊥ = {a : aI = 0}, which for a block algebra is the complement.

    Parameters
    ----------
    corr : Correspondence
        The correspondence whose coefficient algebra contains `ideal`.
    ideal : IdealSet
        The ideal I.

    Returns
    -------
    IdealSet
        The largest ideal with trivial intersection with I.
    """
    check_ideal(corr, ideal)
    return ideal.complement()


def check_ideal(corr: Correspondence, ideal: IdealSet) -> None:
    if ideal.algebra != corr.algebra:
        raise ValueError(f"{ideal!r} is not an ideal of {corr.algebra!r}")

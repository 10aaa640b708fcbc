from functools import reduce
from typing import Iterable, Iterator, List


def bits_to_mask(bits: Iterable[int]) -> int:
    """
    Packs a collection of indices into an integer bitmask.
    """
    return reduce(lambda x, y: x | y, (1 << b for b in bits), 0)


def mask_to_bits(mask: int) -> List[int]:
    """
    Unpacks a bitmask into the sorted list of its set indices.
    """
    bits = []
    index = 0
    while mask:
        if mask & 1:
            bits.append(index)
        mask >>= 1
        index += 1
    return bits


def full_mask(n: int) -> int:
    return (1 << n) - 1


def is_subset(small: int, big: int) -> bool:
    return small & ~big == 0


def iter_submasks(mask: int) -> Iterator[int]:
    """
    Iterates over all submasks of `mask` in increasing numeric order.
    """
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")

from hypothesis import given
from hypothesis import strategies as st

from cplattice.utils.bitmask import bits_to_mask, full_mask, is_subset, iter_submasks, mask_to_bits, popcount


def test_packing():
    assert bits_to_mask([]) == 0
    assert bits_to_mask([0, 2]) == 0b101
    assert mask_to_bits(0b1010) == [1, 3]
    assert full_mask(3) == 0b111
    assert full_mask(0) == 0


def test_submasks_are_listed_in_increasing_order():
    assert list(iter_submasks(0b101)) == [0b000, 0b001, 0b100, 0b101]
    assert list(iter_submasks(0)) == [0]


@given(st.integers(min_value=0, max_value=2**10 - 1))
def test_submask_enumeration_is_exhaustive(mask):
    subs = list(iter_submasks(mask))
    assert len(subs) == 2 ** popcount(mask)
    assert subs == sorted(set(subs))
    assert all(is_subset(s, mask) for s in subs)
    assert bits_to_mask(mask_to_bits(mask)) == mask

from hypothesis import strategies as st

from cplattice.algebra.correspondence import BlockAlgebra, Correspondence
from cplattice.common.extnat import ExtNat, ext_sum

ext_nats = st.one_of(st.integers(min_value=0, max_value=10**6).map(ExtNat), st.just(ExtNat.INF))
multiplicities = st.sampled_from([ExtNat(0), ExtNat(1), ExtNat(2), ExtNat.INF])


@st.composite
def correspondences(draw, max_blocks: int = 4):
    n = draw(st.integers(min_value=0, max_value=max_blocks))
    dims = draw(st.lists(st.integers(min_value=1, max_value=2), min_size=n, max_size=n))
    action = draw(st.lists(st.lists(multiplicities, min_size=n, max_size=n), min_size=n, max_size=n))
    algebra = BlockAlgebra(zip([f"b{i}" for i in range(n)], dims))
    fullness = []
    for row in action:
        slack = draw(st.integers(min_value=0, max_value=2))
        fullness.append(ext_sum(entry * dim for entry, dim in zip(row, dims)) + slack)
    return Correspondence(algebra, fullness, action)


@st.composite
def correspondence_with_ideals(draw, count: int = 1, max_blocks: int = 4):
    corr = draw(correspondences(max_blocks))
    top = (1 << corr.n) - 1
    masks = [draw(st.integers(min_value=0, max_value=top)) for _ in range(count)]
    return (corr, *[corr.algebra.from_mask(m) for m in masks])

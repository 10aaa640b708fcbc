"""
This module provides the reference correspondences used by the tests and the documentation.

- `example_one`: A = C ⊕ C ⊕ M_2(C) with both one-dimensional blocks acting on the
  M_2 block; O_X ≅ M_6(C) and there are no non-trivial invariant ideals.
- `example_two`: A = C ⊕ C ⊕ C with the third block acting on the first two module
  blocks; O_X ≅ M_2(C) ⊕ M_2(C), and {p1}, {p2} are invariant while their sum is not
  negatively invariant.
- `three_vertex_graph`: the graph v0 -> v2 <= v1 with infinitely many edges from v1 to v2;
  J_X = 0 and there are six O-pairs.
- `identity_bimodule` and `swap_bimodule`: the two smallest families of Hilbert bimodules.
"""

from typing import Sequence

from cplattice.algebra.constructions import GraphDesc, graph_to_correspondence
from cplattice.algebra.correspondence import Correspondence, validate_correspondence
from cplattice.common.extnat import ExtNat


def example_one() -> Correspondence:
    return validate_correspondence(
        blocks=[("a", 1), ("b", 1), ("c", 2)],
        fullness={"a": 1, "b": 1, "c": 2},
        action={("c", "a"): 1, ("c", "b"): 1},
    )


def example_two() -> Correspondence:
    return validate_correspondence(
        blocks=[("p1", 1), ("p2", 1), ("p3", 1)],
        fullness={"p1": 1, "p2": 1},
        action={("p1", "p3"): 1, ("p2", "p3"): 1},
    )


def three_vertex_graph_desc() -> GraphDesc:
    return GraphDesc(
        vertices=("v0", "v1", "v2"),
        edges=(("v0", "v2", ExtNat(1)), ("v1", "v2", ExtNat.INF)),
    )


def three_vertex_graph() -> Correspondence:
    return graph_to_correspondence(three_vertex_graph_desc())


def identity_bimodule(dims: Sequence[int] = (1, 2)) -> Correspondence:
    """
    The identity correspondence A over A = ⊕ M_{d_i}(C): m = d and M is the identity matrix.
    """
    labels = [f"e{i}" for i in range(len(dims))]
    return validate_correspondence(
        blocks=list(zip(labels, dims)),
        fullness=list(dims),
        action={(label, label): 1 for label in labels},
    )


def swap_bimodule() -> Correspondence:
    """
    C ⊕ C with the two blocks exchanged by the left action.
    """
    return validate_correspondence(
        blocks=[("s0", 1), ("s1", 1)],
        fullness=[1, 1],
        action={("s0", "s1"): 1, ("s1", "s0"): 1},
    )

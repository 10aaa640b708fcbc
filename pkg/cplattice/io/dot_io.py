"""
Graphviz DOT rendering of pair lattices: one node per pair, one edge per covering relation.
"""

from graphviz import Digraph

from cplattice.algebra.pairs import PairLattice


def lattice_digraph(lattice: PairLattice, name: str = "pairs") -> Digraph:
    """
    Builds the Hasse diagram of a pair lattice.

    Nodes are named n0, n1, ... in lattice order and labelled "({I};{I'})"; an edge
    a -> b means that pair a is covered by pair b.
    """
    dot = Digraph(name=name)
    for k, pair in enumerate(lattice):
        dot.node(f"n{k}", label=str(pair))
    for low, high in lattice.covering_edges:
        dot.edge(f"n{low}", f"n{high}")
    return dot


def lattice_to_dot(lattice: PairLattice, name: str = "pairs") -> str:
    return lattice_digraph(lattice, name).source

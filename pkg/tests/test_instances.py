import networkx as nx
import numpy as np

from cplattice.algebra.constructions import graph_to_correspondence
from cplattice.gen.instances import random_acyclic_correspondence, random_acyclic_graph, random_correspondence


def test_seeds_reproduce_instances():
    first = random_correspondence(np.random.default_rng(8), max_blocks=5)
    second = random_correspondence(np.random.default_rng(8), max_blocks=5)
    assert first == second


def test_acyclic_generators():
    rng = np.random.default_rng(12)
    for _ in range(30):
        corr = random_acyclic_correspondence(rng, max_blocks=6)
        assert 1 <= corr.n <= 6
        assert corr.is_all_finite
        digraph = nx.DiGraph(corr.support_matrix().T)
        assert nx.is_directed_acyclic_graph(digraph)

        desc = random_acyclic_graph(rng, max_vertices=6)
        graph = graph_to_correspondence(desc)
        assert graph.is_all_finite
        assert all(1 <= int(count) <= 3 for _, _, count in desc.edges)

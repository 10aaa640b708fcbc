import numpy as np
import pydot

from cplattice.algebra.correspondence import BlockAlgebra, validate_correspondence
from cplattice.algebra.pairs import IdealPair, PairKind, PairLattice, enumerate_pairs
from cplattice.gen.instances import random_correspondence
from cplattice.io.dot_io import lattice_digraph, lattice_to_dot


def _parse(text):
    graphs = pydot.graph_from_dot_data(text)
    assert graphs is not None and len(graphs) == 1
    return graphs[0]


def test_graph_lattice(graph, data_dir):
    expected = (data_dir / "golden" / "graph_pairs.dot").read_text(encoding="utf-8")
    assert lattice_to_dot(enumerate_pairs(graph)) == expected


def test_single_pair_has_no_edges():
    corr = validate_correspondence(blocks=[], fullness=[], action=[])
    dot = lattice_to_dot(enumerate_pairs(corr, "T"), name="empty")
    assert dot == 'digraph empty {\n\tn0 [label="({};{})"]\n}\n'


def test_labels_are_escaped():
    algebra = BlockAlgebra([('say "hi"', 1)])
    lattice = PairLattice([IdealPair(algebra.full(), algebra.full())], PairKind.T)
    assert '\tn0 [label="({say \\"hi\\"};{say \\"hi\\"})"]' in lattice_to_dot(lattice).splitlines()
    assert len(_parse(lattice_to_dot(lattice)).get_nodes()) == 1


def test_digraph_object(ex1):
    dot = lattice_digraph(enumerate_pairs(ex1), name="ex1")
    assert dot.name == "ex1"
    assert dot.source == lattice_to_dot(enumerate_pairs(ex1), name="ex1")


def test_output_parses_back(graph):
    lattice = enumerate_pairs(graph)
    parsed = _parse(lattice_to_dot(lattice))
    assert parsed.get_name() == "pairs"
    labels = {node.get_name(): node.get("label").strip('"') for node in parsed.get_nodes()}
    assert labels == {f"n{k}": str(pair) for k, pair in enumerate(lattice)}
    edges = {(edge.get_source(), edge.get_destination()) for edge in parsed.get_edges()}
    assert edges == {(f"n{low}", f"n{high}") for low, high in lattice.covering_edges}


def test_random_lattices_parse_back():
    rng = np.random.default_rng(11)
    for _ in range(30):
        corr = random_correspondence(rng, max_blocks=4)
        for kind in ("T", "O"):
            lattice = enumerate_pairs(corr, kind)
            parsed = _parse(lattice_to_dot(lattice))
            assert len(parsed.get_nodes()) == len(lattice)
            assert len(parsed.get_edges()) == len(lattice.covering_edges)

import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from cplattice.algebra.ideal_calculus import compact_mask, invariant_ideals, katsura_mask
from cplattice.algebra.pairs import (
    IdealPair,
    PairKind,
    PairLattice,
    enumerate_pairs,
    ideal_generated_by,
    invariant_ideal_bijection,
    pair_is_valid,
    relcp_analyze,
)
from cplattice.common.errors import ConsistencyError, NotCompactlyActing, SizeLimit
from cplattice.gen import fixtures
from cplattice.gen.instances import random_correspondence
from cplattice.utils.bitmask import is_subset, iter_submasks
from strategies import correspondences


def _strings(lattice):
    return [str(p) for p in lattice]


def test_pair_kind_parse():
    assert PairKind.parse("o") is PairKind.O
    assert PairKind.parse(PairKind.T) is PairKind.T
    with pytest.raises(ValueError):
        PairKind.parse("x")


def test_o_pairs_of_graph(graph):
    lattice = enumerate_pairs(graph)
    assert lattice.kind is PairKind.O
    assert _strings(lattice) == [
        "({};{})",
        "({v0};{v0})",
        "({v1};{v1})",
        "({v1};{v1,v2})",
        "({v0,v1};{v0,v1})",
        "({v0,v1,v2};{v0,v1,v2})",
    ]
    assert lattice.covering_edges == [(0, 1), (0, 2), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)]


def test_o_pairs_of_examples(ex1, ex2):
    assert _strings(enumerate_pairs(ex1, "O")) == ["({};{a,b})", "({a,b,c};{a,b,c})"]
    lattice = enumerate_pairs(ex2, "O")
    assert _strings(lattice) == ["({};{p3})", "({p1};{p1,p3})", "({p2};{p2,p3})", "({p1,p2,p3};{p1,p2,p3})"]
    assert lattice.covering_edges == [(0, 1), (0, 2), (1, 3), (2, 3)]


def test_t_pair_counts(ex1, ex2, graph):
    assert len(enumerate_pairs(ex1, "T")) == 8
    assert len(enumerate_pairs(ex2, "T")) == 8
    assert len(enumerate_pairs(graph, "T")) == 6


def test_lattice_lookup_and_meets(ex2):
    lattice = enumerate_pairs(ex2, "O")
    pair = IdealPair(ex2.ideal(["p1"]), ex2.ideal(["p1", "p3"]), PairKind.O)
    assert pair in lattice
    assert lattice.index(pair) == 1
    assert lattice[lattice.index(pair)].key == pair.key
    assert lattice.meet(1, 2) == 0
    assert lattice.meet(1, 3) == 1
    assert IdealPair(ex2.ideal(["p2"]), ex2.ideal(["p2"])) not in lattice


def test_size_limit(ex1):
    with pytest.raises(SizeLimit):
        enumerate_pairs(ex1, "T", limit=2)


def test_empty_algebra_has_one_pair():
    corr = random_correspondence(np.random.default_rng(0), max_blocks=0)
    assert corr.n == 0
    lattice = enumerate_pairs(corr, "O")
    assert _strings(lattice) == ["({};{})"]
    assert lattice.covering_edges == []


def test_pair_is_valid(ex2):
    assert pair_is_valid(ex2, ex2.ideal(["p1"]), ex2.ideal(["p1"]), "T")
    assert not pair_is_valid(ex2, ex2.ideal(["p1"]), ex2.ideal(["p1"]), "O")
    assert not pair_is_valid(ex2, ex2.ideal(["p1", "p3"]), ex2.ideal(["p1", "p3"]))
    assert not pair_is_valid(ex2, ex2.ideal(["p1"]), ex2.ideal(["p3"]))


def _brute_force_pairs(corr, kind):
    pairs = []
    for first, second in itertools.product(corr.algebra.all_ideals(), repeat=2):
        if pair_is_valid(corr, first, second, kind):
            pairs.append((first.mask, second.mask))
    return pairs


def test_enumeration_matches_brute_force_on_random_instances():
    rng = np.random.default_rng(99)
    for _ in range(150):
        corr = random_correspondence(rng, max_blocks=4)
        for kind in PairKind:
            lattice = enumerate_pairs(corr, kind)
            assert [p.key for p in lattice] == _brute_force_pairs(corr, kind)


@settings(max_examples=100, deadline=None)
@given(correspondences())
def test_pairs_are_closed_under_intersection(corr):
    for kind in PairKind:
        lattice = enumerate_pairs(corr, kind)
        assert len(lattice.meet_table) == len(lattice) ** 2


def test_pairs_are_closed_under_intersection_on_random_instances(random_instances):
    for corr in random_instances:
        for kind in PairKind:
            pairs = list(enumerate_pairs(corr, kind))
            keys = {p.key for p in pairs}
            for left, right in itertools.combinations(pairs, 2):
                assert left.intersection(right).key in keys


def test_extreme_o_pairs_on_random_instances(random_instances):
    for corr in random_instances:
        zero, full = corr.algebra.zero(), corr.algebra.full()
        katsura = corr.algebra.from_mask(katsura_mask(corr))
        assert pair_is_valid(corr, zero, katsura, PairKind.O)
        assert pair_is_valid(corr, full, full, PairKind.O)
        assert pair_is_valid(corr, zero, katsura, PairKind.T)
        lattice = enumerate_pairs(corr, PairKind.O)
        assert lattice.pairs[0].key == (0, katsura.mask)
        assert lattice.pairs[-1].key == (full.mask, full.mask)


@settings(max_examples=100, deadline=None)
@given(correspondences())
def test_o_pairs_have_invariant_first_components(corr):
    invariant = {i.mask for i in invariant_ideals(corr)}
    for pair in enumerate_pairs(corr, "O"):
        assert pair.first.mask in invariant


def test_relcp_on_graph(graph):
    report = relcp_analyze(graph, graph.ideal(["v0", "v1"]))
    assert [str(i) for i in report.tower] == ["{}", "{v0,v1}"]
    assert str(report.limit) == "{v0,v1}"
    assert str(report.omega) == "({v0,v1};{v0,v1})"
    assert report.kernel_of_pi == report.limit
    assert not report.algebra_is_zero
    assert not report.pi_injective
    assert report.covariance_ideal == graph.ideal(["v0", "v1"])


def test_relcp_rejects_non_compact_ideal(graph):
    with pytest.raises(NotCompactlyActing):
        relcp_analyze(graph, graph.ideal(["v2"]))


def test_relcp_of_katsura_ideal(ex2):
    report = relcp_analyze(ex2, ex2.ideal(["p3"]))
    assert [str(i) for i in report.tower] == ["{}"]
    assert report.limit.is_zero
    assert report.pi_injective
    assert not report.algebra_is_zero


def test_relcp_of_the_whole_algebra(ex1):
    corr = fixtures.identity_bimodule()
    report = relcp_analyze(corr, corr.algebra.full())
    assert report.limit.is_zero
    kernel = relcp_analyze(ex1, ex1.algebra.full())
    assert kernel.algebra_is_zero
    assert [str(i) for i in kernel.tower] == ["{}", "{c}", "{a,b,c}"]


def test_relcp_pair_is_the_smallest_t_pair_above_it():
    rng = np.random.default_rng(5)
    for _ in range(100):
        corr = random_correspondence(rng, max_blocks=4)
        t_pairs = enumerate_pairs(corr, "T")
        for j_mask in iter_submasks(compact_mask(corr)):
            omega = relcp_analyze(corr, corr.algebra.from_mask(j_mask)).omega
            assert omega.key in {p.key for p in t_pairs}
            for pair in t_pairs:
                if is_subset(j_mask, pair.second.mask):
                    assert omega <= pair


def test_ideal_generated_by(ex1, ex2):
    assert str(ideal_generated_by(ex2, ex2.ideal(["p1"]))) == "({p1};{p1,p3})"
    assert str(ideal_generated_by(ex1, ex1.ideal(["a"]))) == "({a,b,c};{a,b,c})"
    assert str(ideal_generated_by(ex1, ex1.algebra.zero())) == "({};{a,b})"


def test_invariant_ideal_bijection(ex2, graph):
    bijection = invariant_ideal_bijection(ex2)
    assert bijection.exists
    assert len(bijection.mapping) == 4
    assert str(bijection.mapping[ex2.ideal(["p1"])]) == "({p1};{p1,p3})"

    missing = invariant_ideal_bijection(graph)
    assert not missing.exists
    assert str(missing.witness) == "{v2}"


def test_invariant_ideal_bijection_on_empty_algebra():
    corr = random_correspondence(np.random.default_rng(0), max_blocks=0)
    assert len(invariant_ideal_bijection(corr).mapping) == 1


def test_meet_table_detects_missing_intersections(ex2):
    broken = PairLattice(
        [
            IdealPair(ex2.ideal(["p1"]), ex2.ideal(["p1", "p3"])),
            IdealPair(ex2.ideal(["p2"]), ex2.ideal(["p2", "p3"])),
        ],
        PairKind.T,
    )
    with pytest.raises(ConsistencyError):
        broken.meet_table


def test_katsura_is_in_every_o_pair(ex1, ex2, graph):
    for corr in (ex1, ex2, graph):
        katsura = katsura_mask(corr)
        assert all(is_subset(katsura, p.second.mask) for p in enumerate_pairs(corr, "O"))

import pytest
from hypothesis import given, settings

from cplattice.algebra.correspondence import validate_correspondence
from cplattice.algebra.ideal_calculus import (
    closures,
    forward_image,
    forward_mask,
    inverse_image,
    inverse_mask,
    invariance,
    invariant_closure_mask,
    invariant_ideals,
    is_negatively_invariant_mask,
    is_positively_invariant_mask,
    katsura_mask,
    kernel_mask,
    negative_closure_mask,
    positive_closure_mask,
    positively_invariant_ideals,
    relative_katsura,
    relative_katsura_mask,
    structural_ideals,
)
from cplattice.utils.bitmask import full_mask, is_subset
from strategies import correspondence_with_ideals, correspondences


def _labels(ideals):
    return [str(i) for i in ideals]


def test_structural_ideals_of_examples(ex1, ex2, graph):
    assert tuple(str(i) for i in structural_ideals(ex1)) == ("{c}", "{a,b,c}", "{a,b}")
    assert tuple(str(i) for i in structural_ideals(ex2)) == ("{p1,p2}", "{p1,p2,p3}", "{p3}")
    assert tuple(str(i) for i in structural_ideals(graph)) == ("{v0,v1}", "{v0,v1}", "{}")


def test_images_of_example_one(ex1):
    a = ex1.ideal(["a"])
    assert str(forward_image(ex1, a)) == "{c}"
    assert str(inverse_image(ex1, a)) == "{c}"
    assert str(inverse_image(ex1, ex1.ideal(["c"]))) == "{a,b,c}"
    assert str(relative_katsura(ex1, a)) == "{a,b}"


def test_relative_ideal_of_zero_is_katsura(ex1, ex2, graph):
    for corr in (ex1, ex2, graph):
        assert relative_katsura(corr, corr.algebra.zero()) == structural_ideals(corr).katsura


def test_relative_ideal_tolerates_infinite_entries_inside(graph):
    assert str(relative_katsura(graph, graph.ideal(["v1"]))) == "{v1,v2}"
    assert str(relative_katsura(graph, graph.ideal(["v0"]))) == "{v0}"


def test_invariance_of_example_two(ex2):
    p1 = invariance(ex2, ex2.ideal(["p1"]))
    assert p1.positively_invariant and p1.negatively_invariant and p1.invariant
    both = invariance(ex2, ex2.ideal(["p1", "p2"]))
    assert both.positively_invariant
    assert not both.negatively_invariant
    assert not both.invariant


def test_invariant_ideal_lists(ex1, ex2, graph):
    assert _labels(invariant_ideals(ex1)) == ["{}", "{a,b,c}"]
    assert _labels(invariant_ideals(ex2)) == ["{}", "{p1}", "{p2}", "{p1,p2,p3}"]
    assert _labels(invariant_ideals(graph)) == ["{}", "{v0}", "{v1}", "{v0,v1}", "{v0,v1,v2}"]
    assert _labels(positively_invariant_ideals(ex1)) == ["{}", "{c}", "{a,c}", "{b,c}", "{a,b,c}"]


def test_closures_of_example_one(ex1):
    report = closures(ex1, ex1.ideal(["a"]))
    assert _labels(report.forward_tower) == ["{a}", "{c}", "{}", "{}"]
    assert _labels(report.backward_tower) == ["{a}", "{a}"]
    assert str(report.positive_closure) == "{a,c}"
    assert str(report.negative_closure) == "{a}"
    assert str(report.invariant_closure) == "{a,b,c}"


def test_closures_of_example_two(ex2):
    report = closures(ex2, ex2.ideal(["p1", "p2"]))
    assert _labels(report.forward_tower) == ["{p1,p2}", "{}", "{}"]
    assert _labels(report.backward_tower) == ["{p1,p2}", "{p1,p2,p3}", "{p1,p2,p3}"]
    assert str(report.invariant_closure) == "{p1,p2,p3}"


def test_forward_tower_stops_on_cycles():
    corr = validate_correspondence(
        blocks=[("x", 1), ("y", 1)],
        fullness=[1, 1],
        action={("x", "y"): 1, ("y", "x"): 1},
    )
    report = closures(corr, corr.ideal(["x"]))
    assert _labels(report.forward_tower) == ["{x}", "{y}", "{x}"]
    assert str(report.positive_closure) == "{x,y}"


def test_ideal_from_another_algebra_is_rejected(ex1, ex2):
    with pytest.raises(ValueError):
        forward_image(ex1, ex2.ideal(["p1"]))


def _smallest_above(mask, family, n):
    result = full_mask(n)
    for candidate in family:
        if is_subset(mask, candidate):
            result &= candidate
    return result


def test_closures_match_brute_force_on_random_instances(random_instances):
    for corr in random_instances:
        katsura = katsura_mask(corr)
        masks = range(1 << corr.n)
        positive = [m for m in masks if is_positively_invariant_mask(corr, m)]
        negative = [m for m in masks if is_negatively_invariant_mask(corr, m, katsura)]
        both = [m for m in positive if m in negative]
        for mask in masks:
            assert positive_closure_mask(corr, mask) == _smallest_above(mask, positive, corr.n)
            assert negative_closure_mask(corr, mask) == _smallest_above(mask, negative, corr.n)
            assert invariant_closure_mask(corr, mask) == _smallest_above(mask, both, corr.n)


def test_image_identities_on_random_instances(random_instances):
    for corr in random_instances:
        kernel = kernel_mask(corr)
        for a in range(1 << corr.n):
            fa = forward_mask(corr, a)
            ia = inverse_mask(corr, a)
            assert is_subset(forward_mask(corr, ia), a & corr.range_mask)
            assert is_subset(a | kernel, inverse_mask(corr, fa))
            if is_positively_invariant_mask(corr, a):
                assert ia & relative_katsura_mask(corr, a) == a


def test_lattice_identities_on_random_instances(random_instances):
    for corr in random_instances:
        masks = range(1 << corr.n)
        forward = [forward_mask(corr, a) for a in masks]
        inverse = [inverse_mask(corr, a) for a in masks]
        relative = [relative_katsura_mask(corr, a) for a in masks]
        for a in masks:
            for b in masks:
                assert forward[a | b] == forward[a] | forward[b]
                assert inverse[a & b] == inverse[a] & inverse[b]
                assert is_subset(forward[a & b], forward[a] & forward[b])
                assert is_subset(inverse[a] | inverse[b], inverse[a | b])
                assert is_subset(relative[a] & relative[b], relative[a & b])
                if is_subset(a, b):
                    assert is_subset(forward[a], forward[b]) and is_subset(inverse[a], inverse[b])


@settings(max_examples=200, deadline=None)
@given(correspondence_with_ideals(count=2))
def test_lattice_identities(data):
    corr, left, right = data
    a, b = left.mask, right.mask
    fa, fb = forward_mask(corr, a), forward_mask(corr, b)
    ia, ib = inverse_mask(corr, a), inverse_mask(corr, b)
    assert forward_mask(corr, a | b) == fa | fb
    assert inverse_mask(corr, a & b) == ia & ib
    assert is_subset(forward_mask(corr, a & b), fa & fb)
    assert is_subset(ia | ib, inverse_mask(corr, a | b))
    assert is_subset(relative_katsura_mask(corr, a) & relative_katsura_mask(corr, b), relative_katsura_mask(corr, a & b))
    if is_subset(a, b):
        assert is_subset(fa, fb) and is_subset(ia, ib)


@settings(max_examples=200, deadline=None)
@given(correspondence_with_ideals(count=1))
def test_negative_invariance_criterion(data):
    corr, ideal = data
    katsura = katsura_mask(corr)
    assert is_negatively_invariant_mask(corr, ideal.mask) == is_subset(katsura, relative_katsura_mask(corr, ideal.mask))


@settings(max_examples=200, deadline=None)
@given(correspondence_with_ideals(count=2))
def test_invariance_is_closed_under_intersection(data):
    corr, left, right = data
    if invariance(corr, left).invariant and invariance(corr, right).invariant:
        assert invariance(corr, left & right).invariant


@settings(max_examples=100, deadline=None)
@given(correspondences())
def test_structural_ideals_are_consistent(corr):
    ideals = structural_ideals(corr)
    assert ideals.katsura == ideals.compactly_acting - ideals.ker
    assert (ideals.katsura & ideals.ker).is_zero
    invariant = invariant_ideals(corr)
    assert corr.algebra.zero() in invariant
    assert corr.algebra.full() in invariant


def test_strict_inclusions_in_the_examples(ex1, ex2):
    a, b = ex1.ideal(["a"]), ex1.ideal(["b"])
    assert forward_image(ex1, a & b).is_zero
    assert str(forward_image(ex1, a) & forward_image(ex1, b)) == "{c}"

    p1, p2 = ex2.ideal(["p1"]), ex2.ideal(["p2"])
    assert str(inverse_image(ex2, p1)) == "{p1,p2}"
    assert str(inverse_image(ex2, p1) | inverse_image(ex2, p2)) == "{p1,p2}"
    assert str(inverse_image(ex2, p1 | p2)) == "{p1,p2,p3}"
    assert forward_image(ex2, p1).is_zero

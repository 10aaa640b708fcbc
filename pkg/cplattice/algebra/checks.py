"""
This module runs the instance-level invariant suite behind the `check` command.

Every check evaluates one family of lattice identities on all ideals (or all pairs of
ideals, or all T-/O-pairs) of a single correspondence by brute force, so the cost grows
like 4^n; the suite refuses instances above the enumeration limit.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, List, Optional

from cplattice.algebra.constructions import (
    DIAGONAL_SUFFIX,
    I_SIDE_SUFFIX,
    bimodule_invariant,
    is_hilbert_bimodule,
    omega_correspondence,
    quotient_correspondence,
    relabel_matches,
    restriction_correspondence,
)
from cplattice.algebra.correspondence import Correspondence
from cplattice.algebra.ideal_calculus import (
    closures,
    compact_mask,
    forward_mask,
    inverse_mask,
    is_negatively_invariant_mask,
    is_positively_invariant_mask,
    katsura_mask,
    kernel_mask,
    positively_invariant_masks,
    relative_katsura_mask,
)
from cplattice.algebra.pairs import (
    DEFAULT_ENUMERATION_LIMIT,
    IdealPair,
    PairKind,
    PairLattice,
    enumerate_pairs,
    relcp_analyze,
)
from cplattice.algebra.structure import (
    crosscheck_pairs_vs_ideals,
    ox_structure,
    quotient_structure_check,
    relative_structure,
)
from cplattice.common.errors import CPLatticeError, NotAcyclic, NotRowFinite, SizeLimit
from cplattice.utils.bitmask import full_mask, is_subset, iter_submasks

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    """
    Outcome of one check.

    Attributes
    ----------
    name : str
        Short identifier of the checked property.
    passed : bool
        Whether the property held on every tested ideal or pair.
    detail : str
        First counterexample, or a note when the check was not applicable.
    """
    name: str
    passed: bool
    detail: str = ""


class _Violation(Exception):
    pass


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise _Violation(message)


class _Suite:
    def __init__(self, corr: Correspondence, limit: int):
        self.corr = corr
        self.limit = limit
        self.algebra = corr.algebra
        self.masks = range(1 << corr.n)
        self.katsura = katsura_mask(corr)
        self.kernel = kernel_mask(corr)
        self.positive = positively_invariant_masks(corr)
        self.invariant = [m for m in self.positive if is_negatively_invariant_mask(corr, m, self.katsura)]

    def show(self, mask: int) -> str:
        return str(self.algebra.from_mask(mask))

    @cached_property
    def t_pairs(self) -> PairLattice:
        return enumerate_pairs(self.corr, PairKind.T, self.limit)

    @cached_property
    def o_pairs(self) -> PairLattice:
        return enumerate_pairs(self.corr, PairKind.O, self.limit)

    def image_identities(self) -> None:
        corr = self.corr
        for a in self.masks:
            fa = forward_mask(corr, a)
            ia = inverse_mask(corr, a)
            _expect(is_subset(forward_mask(corr, ia), a & corr.range_mask), f"X(X^-1(I)) ⊄ I ∩ <X,X> for I={self.show(a)}")
            _expect(is_subset(a | self.kernel, inverse_mask(corr, fa)), f"I + ker ⊄ X^-1(X(I)) for I={self.show(a)}")
            for b in self.masks:
                fb = forward_mask(corr, b)
                ib = inverse_mask(corr, b)
                pair = f"I1={self.show(a)}, I2={self.show(b)}"
                _expect(is_subset(forward_mask(corr, a & b), fa & fb), f"X(I1∩I2) ⊄ X(I1)∩X(I2) for {pair}")
                _expect(inverse_mask(corr, a & b) == ia & ib, f"X^-1(I1∩I2) ≠ X^-1(I1)∩X^-1(I2) for {pair}")
                _expect(forward_mask(corr, a | b) == fa | fb, f"X(I1+I2) ≠ X(I1)+X(I2) for {pair}")
                _expect(is_subset(ia | ib, inverse_mask(corr, a | b)), f"X^-1(I1)+X^-1(I2) ⊄ X^-1(I1+I2) for {pair}")
                if is_subset(a, b):
                    _expect(is_subset(fa, fb) and is_subset(ia, ib), f"images not monotone for {pair}")

    def preimage_meets_relative_ideal(self) -> None:
        for mask in self.positive:
            meet = inverse_mask(self.corr, mask) & relative_katsura_mask(self.corr, mask)
            _expect(meet == mask, f"X^-1(I) ∩ J(I) = {self.show(meet)} for I={self.show(mask)}")

    def negative_invariance_criterion(self) -> None:
        for mask in self.masks:
            negative = is_negatively_invariant_mask(self.corr, mask, self.katsura)
            contains = is_subset(self.katsura, relative_katsura_mask(self.corr, mask))
            _expect(negative == contains, f"negative invariance and J_X ⊂ J(I) disagree for I={self.show(mask)}")

    def relative_ideal_intersections(self) -> None:
        for a in self.masks:
            ja = relative_katsura_mask(self.corr, a)
            for b in self.masks:
                jb = relative_katsura_mask(self.corr, b)
                _expect(
                    is_subset(ja & jb, relative_katsura_mask(self.corr, a & b)),
                    f"J(I1)∩J(I2) ⊄ J(I1∩I2) for I1={self.show(a)}, I2={self.show(b)}",
                )

    def invariant_intersections(self) -> None:
        negative = [m for m in self.masks if is_negatively_invariant_mask(self.corr, m, self.katsura)]
        for family, test in (
            (self.positive, lambda m: is_positively_invariant_mask(self.corr, m)),
            (negative, lambda m: is_negatively_invariant_mask(self.corr, m, self.katsura)),
        ):
            for a in family:
                for b in family:
                    _expect(test(a & b), f"intersection of {self.show(a)} and {self.show(b)} lost invariance")

    def closure_minimality(self) -> None:
        negative = [m for m in self.masks if is_negatively_invariant_mask(self.corr, m, self.katsura)]
        for mask in self.masks:
            report = closures(self.corr, self.algebra.from_mask(mask))
            for name, family, got in (
                ("positive", self.positive, report.positive_closure.mask),
                ("negative", negative, report.negative_closure.mask),
                ("invariant", self.invariant, report.invariant_closure.mask),
            ):
                expected = full_mask(self.corr.n)
                for candidate in family:
                    if is_subset(mask, candidate):
                        expected &= candidate
                _expect(got == expected, f"{name} closure of {self.show(mask)} is {self.show(got)}, expected {self.show(expected)}")

    def pair_intersections(self) -> None:
        for lattice in (self.t_pairs, self.o_pairs):
            lattice.meet_table

    def o_pair_first_components(self) -> None:
        firsts = {pair.first.mask for pair in self.o_pairs}
        for mask in firsts:
            _expect(mask in self.invariant, f"O-pair first component {self.show(mask)} is not invariant")
        for mask in self.invariant:
            if is_subset(self.katsura, relative_katsura_mask(self.corr, mask) | mask):
                _expect(mask in firsts, f"invariant ideal {self.show(mask)} has no O-pair")

    def restriction_postconditions(self) -> None:
        for mask in self.positive:
            restriction_correspondence(self.corr, self.algebra.from_mask(mask))

    def omega_postconditions(self) -> None:
        for pair in self.t_pairs:
            omega_correspondence(self.corr, pair)

    def omega_matches_quotient(self) -> None:
        for mask in self.positive:
            first = self.algebra.from_mask(mask)
            second = self.algebra.from_mask(relative_katsura_mask(self.corr, mask))
            omega = omega_correspondence(self.corr, IdealPair(first, second)).result
            quotient = quotient_correspondence(self.corr, first).result
            mapping = {}
            for label in omega.algebra.labels:
                for suffix in (DIAGONAL_SUFFIX, I_SIDE_SUFFIX):
                    if label.endswith(suffix):
                        mapping[label] = label[: -len(suffix)]
            _expect(relabel_matches(omega, quotient, mapping), f"X_ω differs from X_I for I={first}")

    def relcp_minimality(self) -> None:
        for j_mask in iter_submasks(compact_mask(self.corr)):
            report = relcp_analyze(self.corr, self.algebra.from_mask(j_mask))
            for pair in self.t_pairs:
                if is_subset(j_mask, pair.second.mask):
                    _expect(report.omega <= pair, f"ω_J={report.omega} is not below {pair}")

    def bimodule_equivalences(self) -> Optional[str]:
        report = is_hilbert_bimodule(self.corr)
        if not report:
            return f"not a bimodule: {report.witness}"
        for mask in self.masks:
            ideal = self.algebra.from_mask(mask)
            _expect(
                bimodule_invariant(self.corr, ideal) == (mask in self.invariant),
                f"φ_X(I)X = XI disagrees with invariance for I={ideal}",
            )
        counts = {}
        for pair in self.o_pairs:
            counts[pair.first.mask] = counts.get(pair.first.mask, 0) + 1
        for mask in self.invariant:
            _expect(counts.get(mask, 0) == 1, f"invariant ideal {self.show(mask)} has {counts.get(mask, 0)} O-pairs")
        return None

    def structure_applicable(self) -> Optional[str]:
        try:
            ox_structure(self.corr)
        except (NotRowFinite, NotAcyclic) as err:
            return f"{err.kind}: {err}"
        return None

    def pair_count(self) -> None:
        report = crosscheck_pairs_vs_ideals(self.corr, self.limit)
        _expect(report.passed, f"{report.pair_count} O-pairs but {report.ideal_count} ideals of {report.structure}")

    def quotient_structures(self) -> None:
        for pair in self.o_pairs:
            report = quotient_structure_check(self.corr, pair)
            _expect(report.passed, f"O_X_ω sizes {report.quotient_sizes} not within {report.full_sizes} for {pair}")

    def morita_additivity(self) -> None:
        total = len(ox_structure(self.corr))
        for mask in self.invariant:
            first = self.algebra.from_mask(mask)
            second = self.algebra.from_mask(mask | self.katsura)
            restricted = len(ox_structure(restriction_correspondence(self.corr, first).result))
            quotient = len(ox_structure(omega_correspondence(self.corr, IdealPair(first, second)).result))
            _expect(restricted == total - quotient, f"summand counts {restricted} + {quotient} ≠ {total} for I={first}")

    def relative_counts(self) -> None:
        for j_mask in iter_submasks(compact_mask(self.corr)):
            summands = len(relative_structure(self.corr, self.algebra.from_mask(j_mask)))
            count = sum(1 for pair in self.t_pairs if is_subset(j_mask, pair.second.mask))
            _expect(count == 2 ** summands, f"{count} T-pairs above ω_J but {summands} summands for J={self.show(j_mask)}")


def _run(name: str, check: Callable[[], Optional[str]]) -> CheckResult:
    try:
        note = check()
    except _Violation as err:
        return CheckResult(name, False, str(err))
    except CPLatticeError as err:
        return CheckResult(name, False, f"{err.kind}: {err}")
    return CheckResult(name, True, note or "")


def run_invariant_suite(corr: Correspondence, limit: int = DEFAULT_ENUMERATION_LIMIT) -> List[CheckResult]:
    """
    Runs every applicable lattice check on one correspondence.

    Parameters
    ----------
    corr : Correspondence
        The correspondence to check.
    limit : int
        Largest admissible number of blocks.

    Returns
    -------
    List[CheckResult]
        One result per check, in a fixed order. Checks that do not apply (bimodule
        equivalences on non-bimodules, structure checks on cyclic or infinite data)
        pass with a note in `detail`.

    Raises
    ------
    SizeLimit
        If the correspondence has more than `limit` blocks.
    """
    if corr.n > limit:
        raise SizeLimit(f"{corr.n} blocks exceed the enumeration limit of {limit}")
    suite = _Suite(corr, limit)
    results = [
        _run("image_identities", suite.image_identities),
        _run("preimage_meets_relative_ideal", suite.preimage_meets_relative_ideal),
        _run("negative_invariance_criterion", suite.negative_invariance_criterion),
        _run("relative_ideal_intersections", suite.relative_ideal_intersections),
        _run("invariant_intersections", suite.invariant_intersections),
        _run("closure_minimality", suite.closure_minimality),
        _run("pair_intersections", suite.pair_intersections),
        _run("o_pair_first_components", suite.o_pair_first_components),
        _run("restriction_postconditions", suite.restriction_postconditions),
        _run("omega_postconditions", suite.omega_postconditions),
        _run("omega_matches_quotient", suite.omega_matches_quotient),
        _run("relcp_minimality", suite.relcp_minimality),
        _run("bimodule_equivalences", suite.bimodule_equivalences),
    ]
    skipped = suite.structure_applicable()
    for name, check in (
        ("pair_count", suite.pair_count),
        ("quotient_structures", suite.quotient_structures),
        ("morita_additivity", suite.morita_additivity),
        ("relative_counts", suite.relative_counts),
    ):
        if skipped:
            results.append(CheckResult(name, True, f"skipped, {skipped}"))
        else:
            results.append(_run(name, check))
    failed = [r.name for r in results if not r.passed]
    logger.debug("invariant suite: %d checks, %d failed", len(results), len(failed))
    return results

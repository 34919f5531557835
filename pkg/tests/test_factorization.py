"""
Unit tests for FactorizationService and the factorization reports.
Test Coverage:
- Divisibility, normality and regularity
- Associates over finite fields and over ℚ
- Irreducibility over finite fields and over ℚ
- Prime elements, by ideal and by pairs
- Factorization search, reports and class representatives
- Unique-factorization checks: exhaustive, homogeneous, even part, structural
- Witnesses and their re-verification
- Normal irreducible profiles and power splits
- Error paths: zero and unit subjects, wrong modes, infinite fields
"""

import pytest

from pydantic import ValidationError
from pytest_mock import MockerFixture

from superpy import catalog
from superpy.algebra import AlgebraSpec, Superalgebra, build_algebra
from superpy.exceptions import CapExceededError, DomainMismatchError, PreconditionError, UnsupportedError
from superpy.factorization import (
    Decision,
    Factorization,
    FactorizationMode,
    SearchMethod,
    UfsrStatus,
    UfsrWitness,
    WitnessKind,
)


def _strs(elements) -> list[str]:
    return [str(x) for x in elements]


# ==================== Predicates ====================


def test_divides(f2_pair: Superalgebra):
    """
    Test that FactorizationService.divides():
    - Accepts b in the two-sided ideal of a
    - Rejects elements outside it
    """
    service = f2_pair.factorization
    assert service.divides(f2_pair.parse("t1"), f2_pair.parse("t1*t2"))
    assert service.divides(f2_pair.parse("1 + t1"), f2_pair.parse("t2"))
    assert not service.divides(f2_pair.parse("t1"), f2_pair.parse("t2"))


def test_divides_rejects_foreign_elements(f2_pair: Superalgebra):
    other = build_algebra(catalog.free_f2_pair())
    with pytest.raises(DomainMismatchError):
        f2_pair.factorization.divides(f2_pair.parse("t1"), other.parse("t1"))


def test_is_normal():
    algebra = build_algebra(AlgebraSpec(field=catalog.F3, odd_generators=("t1", "t2", "t3", "t4")))
    service = algebra.factorization
    assert service.is_normal(algebra.parse("t1"))
    assert not service.is_normal(algebra.parse("t1 + t2*t3"))
    assert service.is_normal(algebra.parse("t1 + t2*t3"), mode=FactorizationMode.EVEN)


def test_is_regular(dual_q: Superalgebra, shared_product_q: Superalgebra):
    """
    Test that FactorizationService.is_regular():
    - Accepts units
    - Rejects every element of the maximal ideal
    """
    assert dual_q.factorization.is_regular(dual_q.parse("1 + e"))
    assert not dual_q.factorization.is_regular(dual_q.parse("e"))
    assert not shared_product_q.factorization.is_regular(shared_product_q.parse("t1 + t2*t3"))


# ==================== Associates ====================


def test_associate_status_over_finite_field(f2_pair: Superalgebra):
    """
    Test that FactorizationService.associate_status():
    - Compares associate classes over a finite field
    - Treats units as associated to each other only
    - Treats zero as associated to zero only
    """
    service = f2_pair.factorization
    assert service.associate_status(f2_pair.parse("t1"), f2_pair.parse("t1 + t1*t2")) is Decision.TRUE
    assert service.associate_status(f2_pair.parse("t1"), f2_pair.parse("t2")) is Decision.FALSE
    assert service.associate_status(f2_pair.parse("1"), f2_pair.parse("1 + t1*t2")) is Decision.TRUE
    assert service.associate_status(f2_pair.parse("1"), f2_pair.parse("t1")) is Decision.FALSE
    assert service.associate_status(f2_pair.zero(), f2_pair.zero()) is Decision.TRUE
    assert service.associate_status(f2_pair.zero(), f2_pair.parse("t1")) is Decision.FALSE


def test_associate_status_over_rationals(dual_q: Superalgebra, free_q_pair: Superalgebra):
    """
    Test that FactorizationService.associate_status() over ℚ:
    - Is exact when one side is homogeneous
    - Separates mixed elements with different two-sided ideals
    - Finds a unit quotient between mixed elements with the same ideal
    """
    assert dual_q.factorization.are_associates(dual_q.parse("e"), dual_q.parse("2*e"))
    service = free_q_pair.factorization
    parse = free_q_pair.parse
    assert service.are_associates(parse("t1 + t1*t2"), parse("t1"))
    assert not service.are_associates(parse("t1"), parse("t2"))
    assert service.associate_status(parse("t1 + t1*t2"), parse("t2 + t1*t2")) is Decision.FALSE
    assert service.associate_status(parse("t1 + t1*t2"), parse("t1 + 2*t1*t2")) is Decision.TRUE


def test_associates_by_unit_sweep(f2_pair: Superalgebra, dual_q: Superalgebra):
    """
    Test that FactorizationService.associates_by_unit_sweep():
    - Agrees with the orbit-based answer over a finite field
    - Is unsupported over ℚ
    """
    service = f2_pair.factorization
    assert service.associates_by_unit_sweep(f2_pair.parse("t1 + t1*t2"), f2_pair.parse("t1"))
    assert not service.associates_by_unit_sweep(f2_pair.parse("t1"), f2_pair.parse("t2"))
    with pytest.raises(UnsupportedError):
        dual_q.factorization.associates_by_unit_sweep(dual_q.parse("e"), dual_q.parse("2*e"))


# ==================== Irreducibility ====================


def test_irreducibility_over_finite_field(f2_pair: Superalgebra):
    service = f2_pair.factorization
    assert service.is_irreducible(f2_pair.parse("t1 + t2"))
    assert not service.is_irreducible(f2_pair.parse("t1*t2"))
    assert service.irreducibility_status(f2_pair.parse("t1*t2"), mode=FactorizationMode.EVEN) is Decision.TRUE


def test_irreducibility_over_rationals(shared_product_q: Superalgebra, dual_q: Superalgebra):
    """
    Test that FactorizationService.irreducibility_status() over ℚ:
    - Accepts elements outside the square of the maximal ideal
    - Rejects products found by the pattern search
    """
    service = shared_product_q.factorization
    assert service.irreducibility_status(shared_product_q.parse("t1 + t2*t3")) is Decision.TRUE
    assert service.irreducibility_status(shared_product_q.parse("t1*t2")) is Decision.FALSE
    assert service.irreducibility_status(shared_product_q.parse("t1*t2 + t2*t3")) is Decision.FALSE
    assert dual_q.factorization.is_irreducible(dual_q.parse("3*e"))


@pytest.mark.parametrize("text", ["0", "1", "2 + t1"])
def test_irreducibility_needs_nonzero_non_unit(free_q_pair: Superalgebra, text: str):
    with pytest.raises(PreconditionError):
        free_q_pair.factorization.irreducibility_status(free_q_pair.parse(text))


# ==================== Prime elements ====================


def test_is_prime_element(dual_f3: Superalgebra, square_zero_f3: Superalgebra, f2_pair: Superalgebra):
    """
    Test that FactorizationService.is_prime_element():
    - Accepts the generator of the dual numbers
    - Rejects e1 in the square-zero algebra
    - Decides mixed elements by the rank of their ideal
    """
    assert dual_f3.factorization.is_prime_element(dual_f3.parse("e"))
    assert not square_zero_f3.factorization.is_prime_element(square_zero_f3.parse("e1"))
    assert not f2_pair.factorization.is_prime_element(f2_pair.parse("t1"))
    assert not f2_pair.factorization.is_prime_element(f2_pair.parse("t1 + t1*t2"))


def test_prime_element_needs_normal_non_unit(dual_q: Superalgebra):
    algebra = build_algebra(AlgebraSpec(field=catalog.F3, odd_generators=("t1", "t2", "t3", "t4")))
    with pytest.raises(PreconditionError):
        algebra.factorization.is_prime_element(algebra.parse("t1 + t2*t3"))
    with pytest.raises(PreconditionError):
        dual_q.factorization.is_prime_element(dual_q.parse("1 + e"))


def test_prime_element_by_pairs(dual_f3: Superalgebra, square_zero_f3: Superalgebra, dual_q: Superalgebra):
    """
    Test that FactorizationService.prime_element_by_pairs():
    - Agrees with the ideal test on the shipped algebras
    - Is unsupported over ℚ
    """
    assert dual_f3.factorization.prime_element_by_pairs(dual_f3.parse("e"))
    assert not square_zero_f3.factorization.prime_element_by_pairs(square_zero_f3.parse("e1"))
    with pytest.raises(UnsupportedError):
        dual_q.factorization.prime_element_by_pairs(dual_q.parse("e"))


# ==================== Factorizations ====================


def test_factorizations_of_t1t2(f2_pair: Superalgebra):
    """
    Test that FactorizationService.factorizations():
    - Lists one factorization per equivalence class in canonical order
    - Returns factorizations that multiply back to the subject
    """
    found = f2_pair.factorization.factorizations(f2_pair.parse("t1*t2"))
    assert [_strs(f.factors) for f in found] == [["t1", "t2"], ["t1", "t1 + t2"], ["t2", "t1 + t2"]]
    assert str(found[0]) == "t1*t2 = (t1)(t2)"
    assert all(f.product() == f.subject for f in found)


def test_factorization_serializes_elements_as_strings(f2_pair: Superalgebra):
    found = f2_pair.factorization.factorizations(f2_pair.parse("t1*t2"))
    assert found[1].to_dict() == {"subject": "t1*t2", "factors": ["t1", "t1 + t2"]}


def test_factorization_rejects_wrong_product(f2_pair: Superalgebra):
    with pytest.raises(ValidationError):
        Factorization(subject=f2_pair.parse("t1*t2"), factors=(f2_pair.parse("t1"), f2_pair.parse("t1")))
    other = build_algebra(catalog.free_f2_pair())
    with pytest.raises(ValidationError):
        Factorization(subject=f2_pair.parse("t1"), factors=(other.parse("t1"),))


def test_factorizations_mode_preconditions(f2_pair: Superalgebra):
    """
    Test that FactorizationService.factorizations():
    - Rejects zero and unit subjects
    - Rejects mixed subjects in homogeneous mode and odd subjects in even mode
    """
    service = f2_pair.factorization
    with pytest.raises(PreconditionError):
        service.factorizations(f2_pair.zero())
    with pytest.raises(PreconditionError):
        service.factorizations(f2_pair.parse("1 + t1"))
    with pytest.raises(PreconditionError):
        service.factorizations(f2_pair.parse("t1 + t1*t2"), mode=FactorizationMode.HOMOGENEOUS)
    with pytest.raises(PreconditionError):
        service.factorizations(f2_pair.parse("t1"), mode=FactorizationMode.EVEN)


def test_factorizations_need_finite_field(dual_q: Superalgebra):
    with pytest.raises(UnsupportedError):
        dual_q.factorization.factorizations(dual_q.parse("e"))


def test_factorizations_cap(f2_pair: Superalgebra):
    with pytest.raises(CapExceededError):
        f2_pair.factorization.factorizations(f2_pair.parse("t1*t2"), cap=1)


def test_report(f2_pair: Superalgebra):
    """
    Test that FactorizationService.report():
    - Counts the equivalence classes and states the verdict
    - Re-verifies every listed factor
    """
    report = f2_pair.factorization.report(f2_pair.parse("t1*t2"))
    assert report.class_count == 3
    assert report.verdict == "not unique"
    assert report.factorizations[0] == ["t1", "t2"]
    assert report.checks and all(check.passed for check in report.checks)
    single = f2_pair.factorization.report(f2_pair.parse("t1 + t1*t2"))
    assert single.verdict == "unique"
    assert single.factorizations == [["t1 + t1*t2"]]
    assert single.to_dict()["mode"] == "full"


def test_class_representative_and_irreducibles(f2_pair: Superalgebra):
    """
    Test that FactorizationService:
    - Maps an element to its least associate
    - Lists the six irreducibles of the free algebra over 𝔽₂
    - Groups them into three associate classes
    """
    service = f2_pair.factorization
    assert str(service.class_representative(f2_pair.parse("t1 + t1*t2"))) == "t1"
    assert len(service.irreducibles()) == 6
    assert len(service.normal_irreducibles()) == 6
    assert _strs(service.normal_irreducible_classes()) == ["t1", "t2", "t1 + t2"]


# ==================== Unique factorization ====================


def test_ufsr_check_finds_witness(f2_pair: Superalgebra):
    """
    Test that FactorizationService.ufsr_check():
    - Reports NotUFSR for the free algebra over 𝔽₂
    - Stops at t1*t2 after four associate classes
    - Returns a witness that re-verifies
    """
    verdict = f2_pair.factorization.ufsr_check()
    assert verdict.status is UfsrStatus.NOT_UFSR
    assert verdict.method is SearchMethod.EXHAUSTIVE
    assert verdict.subjects_checked == 4
    witness = verdict.witness
    assert witness.kind is WitnessKind.INEQUIVALENT
    assert str(witness.element) == "t1*t2"
    assert [_strs(f.factors) for f in witness.factorizations] == [["t1", "t2"], ["t1", "t1 + t2"]]
    assert witness.holds()


def test_ufsr_check_is_cached(f2_pair: Superalgebra):
    service = f2_pair.factorization
    assert service.ufsr_check() is service.ufsr_check()


def test_ufsr_check_success(square_zero_f3: Superalgebra, dual_f3: Superalgebra):
    for algebra in (square_zero_f3, dual_f3):
        verdict = algebra.factorization.ufsr_check()
        assert verdict.is_ufsr and verdict.witness is None


def test_weaker_notions(f2_pair: Superalgebra):
    """
    Test that the weaker unique-factorization checks:
    - Fail for homogeneous factorization of the free algebra over 𝔽₂
    - Hold in its even subring, where t1*t2 is irreducible
    """
    service = f2_pair.factorization
    homogeneous = service.homogeneous_ufsr_check()
    assert homogeneous.status is UfsrStatus.NOT_UFSR
    assert homogeneous.mode is FactorizationMode.HOMOGENEOUS
    assert homogeneous.witness.holds()
    even = service.even_ufsr_check()
    assert even.is_ufsr and even.subjects_checked == 1


def test_exhaustive_check_needs_finite_field(free_q_pair: Superalgebra):
    with pytest.raises(UnsupportedError):
        free_q_pair.factorization.ufsr_check()


def test_structural_check(free_q_pair: Superalgebra, shared_product_q: Superalgebra, dual_q: Superalgebra):
    """
    Test that FactorizationService.structural_ufsr_check():
    - Reports UFSR when the maximal ideal squares to zero
    - Finds t1*t2 = (t1)(t2) = (t1)(t1 + t2) otherwise
    """
    assert dual_q.factorization.structural_ufsr_check().status is UfsrStatus.UFSR
    for algebra in (free_q_pair, shared_product_q):
        verdict = algebra.factorization.structural_ufsr_check()
        assert verdict.status is UfsrStatus.NOT_UFSR
        assert verdict.method is SearchMethod.STRUCTURAL
        assert [_strs(f.factors) for f in verdict.witness.factorizations] == [["t1", "t2"], ["t1", "t1 + t2"]]


def test_structural_check_undecided(mocker: MockerFixture, free_q_pair: Superalgebra):
    mocker.patch.object(UfsrWitness, "holds", return_value=False)
    verdict = free_q_pair.factorization.structural_ufsr_check()
    assert verdict.status is UfsrStatus.UNDECIDED
    assert verdict.witness is None


def test_witness_verify_flags_equivalent_factorizations(f2_pair: Superalgebra):
    """
    Test that UfsrWitness.verify():
    - Fails the inequivalence check for associated factorizations
    - Fails when only one factorization is given
    """
    x = f2_pair.parse("t1*t2")
    first = Factorization(subject=x, factors=(f2_pair.parse("t1"), f2_pair.parse("t2")))
    second = Factorization(subject=x, factors=(f2_pair.parse("t1 + t1*t2"), f2_pair.parse("t2")))
    witness = UfsrWitness(kind=WitnessKind.INEQUIVALENT, element=x, factorizations=(first, second))
    assert not witness.holds()
    assert [c.name for c in witness.verify() if not c.passed] == ["factorizations are inequivalent"]
    assert not UfsrWitness(kind=WitnessKind.INEQUIVALENT, element=x, factorizations=(first,)).holds()


def test_nonexistence_witness_fails_when_factorizations_exist(f2_pair: Superalgebra):
    witness = UfsrWitness(kind=WitnessKind.NONEXISTENCE, element=f2_pair.parse("t1*t2"))
    assert not witness.holds()


# ==================== Profiles and power splits ====================


def test_normal_irreducible_profile(f2_pair: Superalgebra, dual_f3: Superalgebra, square_zero_f3: Superalgebra):
    """
    Test that FactorizationService.normal_irreducible_profile():
    - Finds the dual-number generator prime
    - Finds no prime normal irreducible in the free algebra over 𝔽₂
    - Finds every normal irreducible of the square-zero algebra a non-prime nilpotent zerodivisor
    """
    assert dual_f3.factorization.normal_irreducible_profile().all_prime
    profile = f2_pair.factorization.normal_irreducible_profile()
    assert profile.representatives == ["t1", "t2", "t1 + t2"]
    assert profile.non_prime == profile.representatives
    assert profile.all_zerodivisors and profile.all_nilpotent
    square_zero = square_zero_f3.factorization.normal_irreducible_profile()
    assert len(square_zero.representatives) == 13
    assert not square_zero.all_prime
    assert square_zero.has_zerodivisor


def test_power_split_survey(dual_f3: Superalgebra, square_zero_f3: Superalgebra, f2_pair: Superalgebra):
    """
    Test that FactorizationService.power_split_survey():
    - Is vacuous when the algebra has no even irreducible
    - Reports a failed unique-factorization check without splitting
    """
    for algebra in (dual_f3, square_zero_f3):
        survey = algebra.factorization.power_split_survey()
        assert survey.ufsr and survey.vacuous
        assert survey.even_irreducibles == 0 and survey.witnesses == []
    assert not f2_pair.factorization.power_split_survey().ufsr


def test_power_split_witness_preconditions(dual_f3: Superalgebra, f2_pair: Superalgebra):
    with pytest.raises(PreconditionError):
        dual_f3.factorization.power_split_witness(dual_f3.parse("e"), dual_f3.parse("e"))
    with pytest.raises(PreconditionError):
        f2_pair.factorization.power_split_witness(f2_pair.parse("t1*t2"), f2_pair.parse("t1"))

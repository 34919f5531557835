"""
This module contains divisibility, irreducibility and unique factorization.

Classes:
    Decision: Tri-state answer of a predicate over an infinite field.
    UfsrStatus: Outcome of a unique-factorization check.
    SearchMethod: How a verdict was reached.
    WitnessKind: Which way unique factorization fails.
    CheckResult: One named re-verification step.
    Factorization: A subject and an ordered product of factors equal to it.
    UfsrWitness: A machine-checkable counterexample to unique factorization.
    UfsrVerdict: The result of a unique-factorization check.
    FactorizationReport: The JSON report of the `factor` command.
    NormalIrreducibleProfile: Primality and zerodivisor profile of the normal irreducibles.
    PowerSplitWitness: x = aⁿ·f₁⋯f_d·u for an even irreducible a with a·x = 0.
    PowerSplitSurvey: Every power split of one algebra.
    FactorizationService: The factorization queries of one algebra.

Over a finite field every answer is exact and two-valued; the work is done by
`superpy._finite_engine.FiniteTables`. Over ℚ predicates decide by linear
feasibility and return `Decision.UNDECIDED` when that is inconclusive; the
boolean variants raise `UndecidedError` instead of guessing.

Example:
    ```python
    algebra = build_algebra(AlgebraSpec.model_validate(
        {"field": {"kind": "Fp", "p": 2}, "odd_generators": ["t1", "t2"]}
    ))
    x = algebra.parse("t1*t2")
    for f in algebra.factorization.factorizations(x):
        print(f)                             # t1*t2 = (t1)(t2), t1*t2 = (t1)(t1 + t2), ...
    algebra.factorization.ufsr_check().status  # UfsrStatus.NOT_UFSR
    ```
"""

from __future__ import annotations

import itertools
import logging
import operator

from enum import Enum
from functools import reduce
from typing import TYPE_CHECKING, Optional

from pydantic import ConfigDict, Field, field_serializer, model_validator

from superpy._finite_engine import FactorizationMode, FiniteTables
from superpy._cache import instance_cache
from superpy._superpy_model import _SuperpyModel
from superpy.algebra import Element, canonical_key
from superpy.exceptions import (
    DomainMismatchError,
    PreconditionError,
    SuperpyError,
    UndecidedError,
    UnsupportedError,
)
from superpy.linalg import RowSpace, Vector, solve

if TYPE_CHECKING:
    from superpy.algebra import Superalgebra

_logger = logging.getLogger(__name__)

DEFAULT_SEARCH_CAP = 16
"""Default recursion depth of factorization searches.

It is larger than dim + 1 for every shipped algebra, and a search that needs
more raises `CapExceededError`.
"""

__all__ = [
    "DEFAULT_SEARCH_CAP",
    "CheckResult",
    "Decision",
    "Factorization",
    "FactorizationMode",
    "FactorizationReport",
    "FactorizationService",
    "NormalIrreducibleProfile",
    "PowerSplitSurvey",
    "PowerSplitWitness",
    "SearchMethod",
    "UfsrStatus",
    "UfsrVerdict",
    "UfsrWitness",
    "WitnessKind",
]


class Decision(str, Enum):
    TRUE = "true"
    FALSE = "false"
    UNDECIDED = "undecided"

    @classmethod
    def of(cls, value: bool) -> "Decision":
        return cls.TRUE if value else cls.FALSE


class UfsrStatus(str, Enum):
    """Outcome of a unique-factorization check.

    Attributes:
        UFSR: Every nonzero non-unit factors uniquely.
        NOT_UFSR: A witness shows that it does not.
        UNDECIDED: The structural check could not tell.
    """

    UFSR = "UFSR"
    NOT_UFSR = "NotUFSR"
    UNDECIDED = "Undecided"


class SearchMethod(str, Enum):
    EXHAUSTIVE = "exhaustive"
    STRUCTURAL = "structural"


class WitnessKind(str, Enum):
    """Which way unique factorization fails.

    Attributes:
        INEQUIVALENT: The subject has two inequivalent factorizations.
        NONEXISTENCE: The subject has no factorization into normal irreducibles.
    """

    INEQUIVALENT = "inequivalent"
    NONEXISTENCE = "nonexistence"


class CheckResult(_SuperpyModel):
    name: str
    passed: bool
    detail: str = ""


class Factorization(_SuperpyModel):
    """An ordered product of factors equal to a subject.

    The product is checked at construction, so a `Factorization` that exists
    always multiplies back.

    Attributes:
        subject (Element): The factored element.
        factors (tuple[Element, ...]): The factors, in multiplication order.
    """

    model_config = ConfigDict(frozen=True)

    subject: Element
    factors: tuple[Element, ...] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_product(self) -> "Factorization":
        for f in self.factors:
            if f.algebra is not self.subject.algebra:
                raise ValueError("factors belong to another algebra")
        if self.product() != self.subject:
            raise ValueError(f"factors {[str(f) for f in self.factors]} do not multiply to {self.subject}")
        return self

    @field_serializer("subject")
    def _serialize_subject(self, subject: Element) -> str:
        return str(subject)

    @field_serializer("factors")
    def _serialize_factors(self, factors: tuple[Element, ...]) -> list[str]:
        return [str(f) for f in factors]

    def __str__(self):
        return f"{self.subject} = " + "".join(f"({f})" for f in self.factors)

    def product(self) -> Element:
        return reduce(operator.mul, self.factors)


class UfsrWitness(_SuperpyModel):
    """A counterexample to unique factorization.

    Attributes:
        kind (WitnessKind): Nonexistence or inequivalent factorizations.
        mode (FactorizationMode): The notion of factorization it refutes.
        element (Element): The subject.
        factorizations (tuple[Factorization, ...]): Two inequivalent
            factorizations, or none for a nonexistence witness.
    """

    kind: WitnessKind
    mode: FactorizationMode = FactorizationMode.FULL
    element: Element
    factorizations: tuple[Factorization, ...] = ()

    @field_serializer("element")
    def _serialize_element(self, element: Element) -> str:
        return str(element)

    def verify(self) -> list[CheckResult]:
        """Re-check the witness with the library predicates.

        Returns:
            list[CheckResult]: One entry per check; the witness holds when all pass.
        """
        service = self.element.algebra.factorization
        x = self.element
        checks = [
            CheckResult(
                name="subject is a nonzero non-unit",
                passed=not x.is_zero() and x.coeffs[0] == 0,
                detail=str(x),
            )
        ]
        if self.kind is WitnessKind.NONEXISTENCE:
            try:
                found = service.factorizations(x, mode=self.mode)
                checks.append(CheckResult(name="subject has no factorization", passed=not found, detail=f"{len(found)} found"))
            except SuperpyError as e:
                _logger.error(f"Error re-running the factorization search for {x}: {e}")
                checks.append(CheckResult(name="subject has no factorization", passed=False, detail=str(e)))
            return checks
        for k, f in enumerate(self.factorizations, start=1):
            checks.append(CheckResult(name=f"factorization {k} multiplies back", passed=f.product() == x, detail=str(f)))
            for factor in f.factors:
                checks.append(
                    CheckResult(name=f"{factor} is normal", passed=service.is_normal(factor, mode=self.mode))
                )
                status = service.irreducibility_status(factor, mode=self.mode)
                checks.append(
                    CheckResult(name=f"{factor} is irreducible", passed=status is Decision.TRUE, detail=status.value)
                )
        if len(self.factorizations) == 2:
            status = service.equivalence_status(*self.factorizations, mode=self.mode)
            checks.append(
                CheckResult(name="factorizations are inequivalent", passed=status is Decision.FALSE, detail=status.value)
            )
        else:
            checks.append(CheckResult(name="two factorizations given", passed=False))
        return checks

    def holds(self) -> bool:
        return all(check.passed for check in self.verify())


class UfsrVerdict(_SuperpyModel):
    """Result of a unique-factorization check.

    Attributes:
        status (UfsrStatus): The verdict.
        method (SearchMethod): Exhaustive search or structural argument.
        mode (FactorizationMode): Full, homogeneous or even-part factorization.
        witness (Optional[UfsrWitness]): Present exactly for `NOT_UFSR`.
        subjects_checked (int): Subjects examined by an exhaustive sweep.
        detail (str): A one-line justification.
    """

    status: UfsrStatus
    method: SearchMethod
    mode: FactorizationMode = FactorizationMode.FULL
    witness: Optional[UfsrWitness] = None
    subjects_checked: int = 0
    detail: str = ""

    @property
    def is_ufsr(self) -> bool:
        return self.status is UfsrStatus.UFSR


class FactorizationReport(_SuperpyModel):
    """The `factor` report.

    Attributes:
        subject (str): The factored element.
        mode (FactorizationMode): The notion of factorization.
        factorizations (list[list[str]]): One factorization per equivalence class.
        class_count (int): Number of equivalence classes.
        verdict (str): "unique", "not unique" or "none".
        checks (list[CheckResult]): Re-verification of every listed factor.
    """

    subject: str
    mode: FactorizationMode
    factorizations: list[list[str]]
    class_count: int
    verdict: str
    checks: list[CheckResult] = []


class NormalIrreducibleProfile(_SuperpyModel):
    """Properties of the normal irreducibles, one representative per associate class.

    Attributes:
        representatives (list[str]): Class representatives.
        non_prime (list[str]): Representatives that are not prime elements.
        regular (list[str]): Representatives that are not zerodivisors.
        non_nilpotent (list[str]): Representatives that are not nilpotent.
    """

    representatives: list[str]
    non_prime: list[str]
    regular: list[str]
    non_nilpotent: list[str]

    @property
    def all_prime(self) -> bool:
        return not self.non_prime

    @property
    def all_zerodivisors(self) -> bool:
        return not self.regular

    @property
    def all_nilpotent(self) -> bool:
        return not self.non_nilpotent

    @property
    def has_zerodivisor(self) -> bool:
        return len(self.regular) < len(self.representatives)


class PowerSplitWitness(_SuperpyModel):
    """x = aⁿ·f₁⋯f_d·unit.

    Attributes:
        a (Element): The even irreducible.
        x (Element): The split element.
        exponent (int): n.
        factors (tuple[Element, ...]): f₁..f_d, none associated to a and pairwise non-associate.
        unit (Element): 1 whenever d ≥ 1.
    """

    a: Element
    x: Element
    exponent: int
    factors: tuple[Element, ...]
    unit: Element

    @field_serializer("a", "x", "unit")
    def _serialize_element(self, element: Element) -> str:
        return str(element)

    @field_serializer("factors")
    def _serialize_factors(self, factors: tuple[Element, ...]) -> list[str]:
        return [str(f) for f in factors]

    def product(self) -> Element:
        return reduce(operator.mul, (self.a,) * self.exponent + self.factors + (self.unit,))


class PowerSplitSurvey(_SuperpyModel):
    """Every power split of one algebra.

    Attributes:
        ufsr (bool): Whether the algebra passed the unique-factorization check.
        even_irreducibles (int): Number of even irreducible class representatives.
        vacuous (bool): True when there is no pair (a, x) to split.
        witnesses (list[PowerSplitWitness]): One per pair (a, x).
    """

    ufsr: bool
    even_irreducibles: int
    vacuous: bool
    witnesses: list[PowerSplitWitness] = []


class FactorizationService:
    """The factorization queries of one algebra.

    Args:
        algebra (Superalgebra): The algebra this service answers for.
    """

    def __init__(self, algebra: "Superalgebra"):
        self._algebra = algebra
        self._tables: dict[tuple[FactorizationMode, int], FiniteTables] = {}

    def tables(self, mode: FactorizationMode = FactorizationMode.FULL, cap: int = DEFAULT_SEARCH_CAP) -> FiniteTables:
        """The exhaustive tables for a mode, built once per (mode, cap).

        Raises:
            UnsupportedError: Over an infinite field.
        """
        key = (FactorizationMode(mode), cap)
        if key not in self._tables:
            self._tables[key] = FiniteTables(self._algebra, key[0], cap)
        return self._tables[key]

    def _check(self, *elements: Element) -> None:
        for element in elements:
            if element.algebra is not self._algebra:
                raise DomainMismatchError("element belongs to another algebra")

    def _check_subject(self, x: Element) -> None:
        self._check(x)
        if x.is_zero():
            raise PreconditionError("zero is not a factorization subject")
        if x.coeffs[0] != 0:
            raise PreconditionError(f"{x} is a unit")

    def _element(self, v: Vector) -> Element:
        return self._algebra.element(v)

    # ==================== linear helpers ====================

    def _right_span(self, a: Vector) -> RowSpace:
        algebra = self._algebra
        return RowSpace(algebra.domain, algebra.dim, (algebra.mul_coeffs(a, algebra.unit_vector(i)) for i in range(algebra.dim)))

    def _left_span(self, a: Vector) -> RowSpace:
        algebra = self._algebra
        return RowSpace(algebra.domain, algebra.dim, (algebra.mul_coeffs(algebra.unit_vector(i), a) for i in range(algebra.dim)))

    def _two_sided_span(self, a: Element) -> RowSpace:
        """RaR: aR for homogeneous a, the span of every m·a·m' otherwise."""
        if a.is_homogeneous():
            return self._right_span(a.coeffs)
        algebra = self._algebra
        units = [algebra.unit_vector(i) for i in range(algebra.dim)]
        left = [algebra.mul_coeffs(m, a.coeffs) for m in units]
        return RowSpace(algebra.domain, algebra.dim, (algebra.mul_coeffs(v, m) for v in left for m in units))

    def _unit_quotient(self, b: Vector, a: Vector, left: bool = False) -> bool:
        """Whether a = b·w (or w·b) for some unit w."""
        algebra = self._algebra
        units = [algebra.unit_vector(i) for i in range(algebra.dim)]
        if left:
            columns = [algebra.mul_coeffs(m, b) for m in units]
        else:
            columns = [algebra.mul_coeffs(b, m) for m in units]
        solution = solve(algebra.domain, columns, a)
        return solution is not None and solution.nonzero_at(0, algebra.domain) is not None

    def _pattern_elements(self, sign_pairs: bool = True) -> list[Vector]:
        """Nonconstant patterns m, m + m' and m − m' over basis monomials."""
        algebra = self._algebra
        dom = algebra.domain
        indices = algebra.nonconstant_indices
        patterns = [algebra.unit_vector(i) for i in indices]
        for i, j in itertools.combinations(indices, 2):
            for sign in ((1, -1) if sign_pairs else (1,)):
                v = [dom.zero] * algebra.dim
                v[i] = dom.one
                v[j] = dom.normalize(sign)
                patterns.append(tuple(v))
        return patterns

    # ==================== predicates ====================

    def divides(self, a: Element, b: Element) -> bool:
        """Whether b ∈ RaR.

        Raises:
            DomainMismatchError: If the elements belong to different algebras.
        """
        self._check(a, b)
        return self._two_sided_span(a).contains(b.coeffs)

    def is_normal(self, a: Element, mode: FactorizationMode = FactorizationMode.FULL) -> bool:
        """aR = Ra, compared as subspaces (always true in the even subring)."""
        self._check(a)
        if FactorizationMode(mode) is FactorizationMode.EVEN or a.is_homogeneous():
            return True
        return self._right_span(a.coeffs) == self._left_span(a.coeffs)

    def is_regular(self, a: Element) -> bool:
        """Whether x ↦ a·x is injective, i.e. a is not a zerodivisor."""
        self._check(a)
        return self._right_span(a.coeffs).rank == self._algebra.dim

    def associate_status(self, a: Element, b: Element, mode: FactorizationMode = FactorizationMode.FULL) -> Decision:
        """Decide whether a = u·b·v for units u, v.

        Over a finite field this compares associate classes. Over ℚ, for
        homogeneous b every u·b·v equals b·w for a unit w, so one linear
        feasibility test is exact; the same holds with the roles swapped. Two
        mixed-parity elements are tried one-sidedly and then with u running
        over the pattern units 1 ± m and 1 + m + m'.
        """
        self._check(a, b)
        mode = FactorizationMode(mode)
        if a.is_zero() or b.is_zero():
            return Decision.of(a.is_zero() and b.is_zero())
        a_unit, b_unit = a.coeffs[0] != 0, b.coeffs[0] != 0
        if a_unit or b_unit:
            return Decision.of(a_unit and b_unit)
        if self._algebra.is_finite:
            return Decision.of(self.tables(mode).associated(a.coeffs, b.coeffs))
        if b.is_homogeneous():
            return Decision.of(self._unit_quotient(b.coeffs, a.coeffs))
        if a.is_homogeneous():
            return Decision.of(self._unit_quotient(a.coeffs, b.coeffs))
        if self._two_sided_span(a) != self._two_sided_span(b):
            return Decision.FALSE
        if self._unit_quotient(b.coeffs, a.coeffs) or self._unit_quotient(b.coeffs, a.coeffs, left=True):
            return Decision.TRUE
        structure = self._algebra.structure
        one = self._algebra.one()
        for pattern in self._pattern_elements():
            for u in (one + self._element(pattern), one - self._element(pattern)):
                if self._unit_quotient(b.coeffs, (structure.invert(u) * a).coeffs):
                    return Decision.TRUE
        _logger.warning(f"could not decide whether {a} and {b} are associates")
        return Decision.UNDECIDED

    def are_associates(self, a: Element, b: Element) -> bool:
        """Boolean form of `associate_status`.

        Raises:
            UndecidedError: If the answer is undecided over ℚ.
        """
        status = self.associate_status(a, b)
        if status is Decision.UNDECIDED:
            raise UndecidedError(f"associateness of {a} and {b} is undecided")
        return status is Decision.TRUE

    def associates_by_unit_sweep(self, a: Element, b: Element) -> bool:
        """Decide associates by sweeping every unit u and solving b·v = u⁻¹·a.

        Raises:
            UnsupportedError: Over an infinite field.
        """
        self._check(a, b)
        structure = self._algebra.structure
        for u in structure.units():
            if self._unit_quotient(b.coeffs, (structure.invert(u) * a).coeffs):
                return True
        return False

    def irreducibility_status(self, a: Element, mode: FactorizationMode = FactorizationMode.FULL) -> Decision:
        """Decide whether a nonzero non-unit is irreducible.

        Over ℚ: an element outside 𝔪² is irreducible, since every product of
        two non-units lies in 𝔪². Otherwise b·c = a is solved for c ∈ 𝔪 with
        b sweeping the patterns m and m ± m'; a solution proves reducibility.

        Raises:
            PreconditionError: If `a` is zero or a unit.
        """
        self._check_subject(a)
        mode = FactorizationMode(mode)
        if self._algebra.is_finite:
            return Decision.of(self.tables(mode).is_irreducible(a.coeffs))
        algebra = self._algebra
        m = algebra.structure.maximal_ideal()
        if not (m * m).contains(a):
            return Decision.TRUE
        nonunits = algebra.nonconstant_indices
        for b in self._pattern_elements():
            columns = [algebra.mul_coeffs(b, algebra.unit_vector(i)) for i in nonunits]
            if solve(algebra.domain, columns, a.coeffs) is not None:
                return Decision.FALSE
        _logger.warning(f"could not decide whether {a} is irreducible")
        return Decision.UNDECIDED

    def is_irreducible(self, a: Element) -> bool:
        """Boolean form of `irreducibility_status`.

        Raises:
            PreconditionError: If `a` is zero or a unit.
            UndecidedError: If the answer is undecided over ℚ.
        """
        status = self.irreducibility_status(a)
        if status is Decision.UNDECIDED:
            raise UndecidedError(f"irreducibility of {a} is undecided")
        return status is Decision.TRUE

    def is_prime_element(self, p: Element) -> bool:
        """Whether the normal non-unit p generates a prime ideal.

        Homogeneous p delegates to `StructureService.is_prime_ideal`. For
        mixed-parity p the ideal pR may not be graded; a proper ideal of these
        local algebras is prime exactly when it is 𝔪, which is decided by rank.

        Raises:
            PreconditionError: If p is zero, a unit or not normal.
        """
        self._check_subject(p)
        if not self.is_normal(p):
            raise PreconditionError(f"{p} is not normal")
        if p.is_homogeneous():
            structure = self._algebra.structure
            return structure.is_prime_ideal(structure.ideal_from_generators([p]))
        return self._right_span(p.coeffs).rank == self._algebra.dim - 1

    def prime_element_by_pairs(self, p: Element) -> bool:
        """The quantifier definition: p | ab implies p | a or p | b, over homogeneous a, b.

        Raises:
            PreconditionError: If p is zero, a unit or not normal.
            UnsupportedError: Over an infinite field.
        """
        self._check_subject(p)
        if not self.is_normal(p):
            raise PreconditionError(f"{p} is not normal")
        if not self._algebra.is_finite:
            raise UnsupportedError("the pairwise prime test enumerates elements")
        span = self._two_sided_span(p)
        homogeneous = [x for x in self._algebra.elements() if x.is_homogeneous()]
        outside = [x for x in homogeneous if not span.contains(x.coeffs)]
        for a in outside:
            for b in outside:
                if span.contains(self._algebra.mul_coeffs(a.coeffs, b.coeffs)):
                    return False
        return True

    # ==================== factorization ====================

    def _check_mode_subject(self, x: Element, mode: FactorizationMode) -> None:
        self._check_subject(x)
        if mode is FactorizationMode.HOMOGENEOUS and not x.is_homogeneous():
            raise PreconditionError(f"{x} is not homogeneous")
        if mode is FactorizationMode.EVEN and x.parity != 0:
            raise PreconditionError(f"{x} is not even")

    def factorizations(
        self,
        x: Element,
        cap: int = DEFAULT_SEARCH_CAP,
        mode: FactorizationMode = FactorizationMode.FULL,
    ) -> list[Factorization]:
        """One factorization of x per equivalence class, in canonical order.

        Equivalence is equality of the multisets of associate classes, which
        is equal length plus a matching permutation.

        Raises:
            PreconditionError: If x is zero, a unit, or outside the mode's subjects.
            UnsupportedError: Over an infinite field.
            CapExceededError: If the search goes deeper than `cap`.
        """
        mode = FactorizationMode(mode)
        self._check_mode_subject(x, mode)
        tables = self.tables(mode, cap)
        found = []
        for multiset in tables.sorted_classes(x.coeffs):
            factors = tuple(self._element(v) for v in tables.realize(x.coeffs, multiset))
            found.append(Factorization(subject=x, factors=factors))
        _logger.debug(f"{x} has {len(found)} factorization classes ({mode.value})")
        return found

    def equivalence_status(
        self, first: Factorization, second: Factorization, mode: FactorizationMode = FactorizationMode.FULL
    ) -> Decision:
        """Whether two factorizations match factor by factor up to associates and order."""
        if len(first.factors) != len(second.factors):
            return Decision.FALSE
        table = [[self.associate_status(f, g, mode) for g in second.factors] for f in first.factors]
        best = Decision.FALSE
        for perm in itertools.permutations(range(len(second.factors))):
            pairs = [table[i][j] for i, j in enumerate(perm)]
            if all(p is Decision.TRUE for p in pairs):
                return Decision.TRUE
            if all(p is not Decision.FALSE for p in pairs):
                best = Decision.UNDECIDED
        return best

    def report(
        self,
        x: Element,
        cap: int = DEFAULT_SEARCH_CAP,
        mode: FactorizationMode = FactorizationMode.FULL,
    ) -> FactorizationReport:
        """Factor x and re-verify every factor."""
        found = self.factorizations(x, cap=cap, mode=mode)
        checks = []
        for f in found:
            for factor in f.factors:
                checks.append(CheckResult(name=f"{factor} is normal", passed=self.is_normal(factor, mode=mode)))
                status = self.irreducibility_status(factor, mode=mode)
                checks.append(CheckResult(name=f"{factor} is irreducible", passed=status is Decision.TRUE))
        verdict = {0: "none", 1: "unique"}.get(len(found), "not unique")
        return FactorizationReport(
            subject=str(x),
            mode=mode,
            factorizations=[[str(g) for g in f.factors] for f in found],
            class_count=len(found),
            verdict=verdict,
            checks=checks,
        )

    def class_representative(self, x: Element) -> Element:
        """The canonically least associate of x (finite fields only)."""
        self._check(x)
        return self._element(self.tables().class_rep(x.coeffs))

    def irreducibles(self) -> list[Element]:
        """Every irreducible element, in canonical order (finite fields only)."""
        tables = self.tables()
        return [self._element(v) for v in tables.subjects() if tables.is_irreducible(v)]

    def normal_irreducibles(self) -> list[Element]:
        tables = self.tables()
        return [self._element(v) for v in tables.subjects() if tables.is_irreducible(v) and tables.is_normal(v)]

    def normal_irreducible_classes(self) -> list[Element]:
        """One representative per associate class of normal irreducibles."""
        tables = self.tables()
        reps = {tables.class_rep(v) for v in tables.subjects() if tables.is_irreducible(v) and tables.is_normal(v)}
        return [self._element(v) for v in sorted(reps, key=canonical_key)]

    @instance_cache
    def normal_irreducible_profile(self) -> NormalIrreducibleProfile:
        """Primality, regularity and nilpotency of every normal irreducible class.

        This method caches its values.
        """
        structure = self._algebra.structure
        reps = self.normal_irreducible_classes()
        return NormalIrreducibleProfile(
            representatives=[str(r) for r in reps],
            non_prime=[str(r) for r in reps if not self.is_prime_element(r)],
            regular=[str(r) for r in reps if self.is_regular(r)],
            non_nilpotent=[str(r) for r in reps if not structure.is_nilpotent(r)],
        )

    # ==================== unique factorization ====================

    def _exhaustive_check(self, mode: FactorizationMode, cap: int) -> UfsrVerdict:
        tables = self.tables(mode, cap)
        outcome = tables.sweep()
        if outcome.subject is None:
            verdict = UfsrVerdict(
                status=UfsrStatus.UFSR,
                method=SearchMethod.EXHAUSTIVE,
                mode=mode,
                subjects_checked=outcome.subjects_checked,
                detail="every subject factors uniquely",
            )
        else:
            x = self._element(outcome.subject)
            if outcome.factorizations:
                witness = UfsrWitness(
                    kind=WitnessKind.INEQUIVALENT,
                    mode=mode,
                    element=x,
                    factorizations=tuple(
                        Factorization(subject=x, factors=tuple(self._element(v) for v in factors))
                        for factors in outcome.factorizations
                    ),
                )
                detail = f"{x} has inequivalent factorizations"
            else:
                witness = UfsrWitness(kind=WitnessKind.NONEXISTENCE, mode=mode, element=x)
                detail = f"{x} has no factorization into normal irreducibles"
            verdict = UfsrVerdict(
                status=UfsrStatus.NOT_UFSR,
                method=SearchMethod.EXHAUSTIVE,
                mode=mode,
                witness=witness,
                subjects_checked=outcome.subjects_checked,
                detail=detail,
            )
        _logger.info(f"{self._algebra} ({mode.value}): {verdict.status.value} after {verdict.subjects_checked} subjects")
        return verdict

    @instance_cache
    def ufsr_check(self, cap: int = DEFAULT_SEARCH_CAP) -> UfsrVerdict:
        """Exhaustive unique-factorization check over associate-class representatives.

        This method caches its values.

        Raises:
            UnsupportedError: Over an infinite field.
        """
        return self._exhaustive_check(FactorizationMode.FULL, cap)

    @instance_cache
    def homogeneous_ufsr_check(self, cap: int = DEFAULT_SEARCH_CAP) -> UfsrVerdict:
        """Unique factorization of homogeneous elements into homogeneous factors.

        This method caches its values.

        Raises:
            UnsupportedError: Over an infinite field.
        """
        return self._exhaustive_check(FactorizationMode.HOMOGENEOUS, cap)

    @instance_cache
    def even_ufsr_check(self, cap: int = DEFAULT_SEARCH_CAP) -> UfsrVerdict:
        """Unique factorization inside the commutative even subring.

        This method caches its values.

        Raises:
            UnsupportedError: Over an infinite field.
        """
        return self._exhaustive_check(FactorizationMode.EVEN, cap)

    def structural_ufsr_check(self) -> UfsrVerdict:
        """Decide unique factorization without enumeration.

        If 𝔪² = 0 every nonzero non-unit is normal and irreducible, so every
        factorization has length one. Otherwise odd basis monomials a, b with
        ab ≠ 0 and a, b, a + b outside 𝔪² give ab = a·b = a·(a + b), which is
        returned once the witness re-verifies.
        """
        algebra = self._algebra
        m = algebra.structure.maximal_ideal()
        m2 = m * m
        if m2.is_zero():
            return UfsrVerdict(
                status=UfsrStatus.UFSR,
                method=SearchMethod.STRUCTURAL,
                detail="the square of the maximal ideal is zero",
            )
        for i, j in itertools.combinations(algebra.odd_indices, 2):
            a, b = algebra.basis_element(i), algebra.basis_element(j)
            ab = a * b
            if ab.is_zero() or any(m2.contains(y) for y in (a, b, a + b)):
                continue
            witness = UfsrWitness(
                kind=WitnessKind.INEQUIVALENT,
                element=ab,
                factorizations=(
                    Factorization(subject=ab, factors=(a, b)),
                    Factorization(subject=ab, factors=(a, a + b)),
                ),
            )
            if witness.holds():
                _logger.info(f"{algebra}: NotUFSR, {ab} = ({a})({b}) = ({a})({a + b})")
                return UfsrVerdict(
                    status=UfsrStatus.NOT_UFSR,
                    method=SearchMethod.STRUCTURAL,
                    witness=witness,
                    detail=f"{ab} has inequivalent factorizations",
                )
        _logger.warning(f"{algebra}: structural check is undecided")
        return UfsrVerdict(
            status=UfsrStatus.UNDECIDED,
            method=SearchMethod.STRUCTURAL,
            detail="the maximal ideal does not square to zero and no witness was found",
        )

    # ==================== power splits ====================

    def power_split_witness(self, a: Element, x: Element) -> PowerSplitWitness:
        """Split x = aⁿ·f₁⋯f_d·unit for an even irreducible a with a·x = 0.

        The factors of a factorization of x that are associated to a are
        gathered into aⁿ; the remaining factors must be pairwise
        non-associate. The unit is folded into the last factor when d ≥ 1.

        Raises:
            PreconditionError: If a is not an even irreducible, x is not a
                nonzero homogeneous element with a·x = 0, the algebra fails the
                unique-factorization check, or the remaining factors repeat an
                associate class.
            UnsupportedError: Over an infinite field.
        """
        self._check(a, x)
        if a.is_zero() or a.coeffs[0] != 0 or a.parity != 0 or not self.is_irreducible(a):
            raise PreconditionError(f"{a} is not an even irreducible")
        if x.is_zero() or not x.is_homogeneous():
            raise PreconditionError(f"{x} is not a nonzero homogeneous element")
        if not (a * x).is_zero():
            raise PreconditionError(f"{a} does not annihilate {x}")
        if not self.ufsr_check().is_ufsr:
            raise PreconditionError(f"{self._algebra} is not a UFSR")
        factorization = self.factorizations(x)[0]
        exponent = 0
        rest = []
        for f in factorization.factors:
            if self.are_associates(f, a):
                exponent += 1
            else:
                rest.append(f)
        for f, g in itertools.combinations(rest, 2):
            if self.are_associates(f, g):
                raise PreconditionError(f"factors {f} and {g} of {x} are associates")
        algebra = self._algebra
        head = reduce(operator.mul, [a] * exponent + rest, algebra.one())
        columns = [algebra.mul_coeffs(head.coeffs, algebra.unit_vector(i)) for i in range(algebra.dim)]
        solution = solve(algebra.domain, columns, x.coeffs)
        point = solution.nonzero_at(0, algebra.domain) if solution is not None else None
        if point is None:
            raise SuperpyError(f"could not regroup the factors of {x} around {a}")
        unit = algebra.element(point)
        if rest:
            rest[-1] = rest[-1] * unit
            unit = algebra.one()
        witness = PowerSplitWitness(a=a, x=x, exponent=exponent, factors=tuple(rest), unit=unit)
        if witness.product() != x:
            raise SuperpyError(f"power split of {x} does not multiply back")
        return witness

    def power_split_survey(self) -> PowerSplitSurvey:
        """Split every nonzero homogeneous x annihilated by an even irreducible.

        Raises:
            UnsupportedError: Over an infinite field.
        """
        if not self.ufsr_check().is_ufsr:
            return PowerSplitSurvey(ufsr=False, even_irreducibles=0, vacuous=True)
        tables = self.tables()
        reps = sorted(
            {tables.class_rep(v) for v in tables.subjects() if tables.parity(v) == 0 and tables.is_irreducible(v)},
            key=canonical_key,
        )
        homogeneous = [x for x in self._algebra.elements() if x.is_homogeneous() and not x.is_zero()]
        witnesses = []
        for rep in reps:
            a = self._element(rep)
            for x in homogeneous:
                if (a * x).is_zero():
                    witnesses.append(self.power_split_witness(a, x))
        return PowerSplitSurvey(
            ufsr=True,
            even_irreducibles=len(reps),
            vacuous=not witnesses,
            witnesses=witnesses,
        )

"""
This module contains graded ideals and the structure service of a superalgebra.

Classes:
    IdealReport: Serializable summary of an ideal.
    QuotientReport: Serializable summary of a quotient.
    Ideal: A graded two-sided ideal of a `Superalgebra`.
    QuotientDescription: The quotient of an algebra by an ideal.
    StructureService: Ideals, units, radicals and primality of one algebra.

Every algebra built here is local: the constant coefficient (the body) is a
ring homomorphism onto the base field and its kernel 𝔪, the span of the
nonconstant basis monomials, is nilpotent. Primes contain every nilpotent,
so 𝔪 is the only prime ideal and the only maximal ideal, and it coincides
with the canonical superideal J_R. The service computes these objects by
linear algebra and, over finite fields, cross-checks them by enumeration.

Example:
    ```python
    algebra = build_algebra(spec)
    j = algebra.structure.canonical_superideal()
    j.dims                                   # (2, 3) for the shared-product algebra
    algebra.structure.is_superfield()        # True
    algebra.structure.invert(algebra.parse("1 + t1 + t1*t2"))
    ```
"""

from __future__ import annotations

import logging

from functools import reduce
from typing import TYPE_CHECKING, Iterable, Optional, Sequence

from sympy.ntheory import primitive_root

from superpy._cache import instance_cache
from superpy._superpy_model import _SuperpyModel
from superpy.algebra import Element, canonical_key, enumerate_elements, parity_decompose
from superpy.exceptions import (
    DomainMismatchError,
    NonInvertibleError,
    PreconditionError,
    SuperpyError,
    UnsupportedError,
)
from superpy.linalg import RowSpace, Vector, intersection

if TYPE_CHECKING:
    from superpy.algebra import Superalgebra

_logger = logging.getLogger(__name__)


class IdealReport(_SuperpyModel):
    """The JSON ideal report.

    Attributes:
        name (str): What the ideal is, e.g. "canonical superideal".
        generators (list[str]): The generators as element strings.
        even_basis (list[str]): Reduced basis of the even part.
        odd_basis (list[str]): Reduced basis of the odd part.
        dims (tuple[int, int]): Graded dimensions (even, odd).
        proper (bool): Whether the ideal is proper.
        prime (Optional[bool]): Whether it is prime (None for the unit ideal).
        maximal (Optional[bool]): Whether it is maximal (None for the unit ideal).
        nilpotency_index (Optional[int]): Least m with I^m = 0, if any.
    """

    name: str = ""
    generators: list[str]
    even_basis: list[str]
    odd_basis: list[str]
    dims: tuple[int, int]
    proper: bool
    prime: Optional[bool] = None
    maximal: Optional[bool] = None
    nilpotency_index: Optional[int] = None


class QuotientReport(_SuperpyModel):
    ideal: list[str]
    residue_dims: tuple[int, int]
    residue_basis: list[str]


class Ideal:
    """A graded two-sided ideal, stored as a reduced basis of homogeneous rows.

    Build ideals with `Ideal.generated_by` (or
    `StructureService.ideal_from_generators`); the constructor assumes its
    row space is already a graded ideal.

    Attributes:
        algebra (Superalgebra): The owning algebra.
        generators (tuple[Element, ...]): The generators the ideal was built from.
    """

    def __init__(self, algebra: "Superalgebra", generators: Sequence[Element], space: RowSpace):
        self.algebra = algebra
        self.generators = tuple(generators)
        self._space = space

    @classmethod
    def generated_by(cls, algebra: "Superalgebra", generators: Iterable[Element]) -> "Ideal":
        """Return the smallest graded ideal containing `generators`.

        Each generator is split into its parity components and both are
        adjoined. The span is then closed under left multiplication by the
        nonconstant basis monomials; for homogeneous vectors this is already
        the two-sided ideal.

        Raises:
            DomainMismatchError: If a generator belongs to another algebra.
        """
        generators = tuple(generators)
        for g in generators:
            if g.algebra is not algebra:
                raise DomainMismatchError("ideal generators belong to different algebras")
        space = RowSpace(algebra.domain, algebra.dim)
        queue: list[Vector] = []
        for g in generators:
            for part in parity_decompose(g):
                if space.add(part.coeffs):
                    queue.append(part.coeffs)
        monomials = [algebra.unit_vector(i) for i in algebra.nonconstant_indices]
        while queue:
            v = queue.pop()
            for m in monomials:
                w = algebra.mul_coeffs(m, v)
                if any(w) and space.add(w):
                    queue.append(w)
        ideal = cls(algebra, generators, space)
        ideal._check_closed()
        return ideal

    def _check_closed(self) -> None:
        algebra = self.algebra
        for row in self._space.basis():
            for i in range(algebra.dim):
                m = algebra.unit_vector(i)
                if not (self._space.contains(algebra.mul_coeffs(m, row)) and self._space.contains(algebra.mul_coeffs(row, m))):
                    raise SuperpyError(f"span of {self} is not closed under multiplication")

    def __str__(self):
        return f"({', '.join(str(g) for g in self.generators)})"

    def __repr__(self):
        return f"Ideal{self} of {self.algebra}"

    def __contains__(self, element: Element) -> bool:
        return self.contains(element)

    def __eq__(self, other):
        return isinstance(other, Ideal) and other.algebra is self.algebra and self._space == other._space

    def __hash__(self):
        return hash(self._space)

    def __le__(self, other: "Ideal") -> bool:
        self._check(other)
        return self._space.is_subspace_of(other._space)

    def __add__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return Ideal.generated_by(self.algebra, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        algebra = self.algebra
        products = [
            algebra.element(algebra.mul_coeffs(a, b)) for a in self._space.basis() for b in other._space.basis()
        ]
        return Ideal.generated_by(algebra, products or [algebra.zero()])

    def __and__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        algebra = self.algebra
        meet = intersection(algebra.domain, algebra.dim, self._space.basis(), other._space.basis())
        return Ideal.generated_by(algebra, [algebra.element(v) for v in meet.basis()] or [algebra.zero()])

    def _check(self, other: "Ideal") -> None:
        if not isinstance(other, Ideal) or other.algebra is not self.algebra:
            raise DomainMismatchError("ideals belong to different algebras")

    @property
    def space(self) -> RowSpace:
        """The underlying subspace; treat it as read-only."""
        return self._space

    @property
    def basis(self) -> tuple[Element, ...]:
        return tuple(self.algebra.element(v) for v in self._space.basis())

    @property
    def even_basis(self) -> tuple[Element, ...]:
        return tuple(b for b in self.basis if b.parity == 0)

    @property
    def odd_basis(self) -> tuple[Element, ...]:
        return tuple(b for b in self.basis if b.parity == 1)

    @property
    def dims(self) -> tuple[int, int]:
        """Graded dimensions (even, odd)."""
        parities = self.algebra.parities
        odd = sum(parities[p] for p in self._space.pivots)
        return (self._space.rank - odd, odd)

    @property
    def dim(self) -> int:
        return self._space.rank

    def contains(self, element: Element) -> bool:
        """Membership by reduction against the basis.

        Raises:
            DomainMismatchError: If the element belongs to another algebra.
        """
        if element.algebra is not self.algebra:
            raise DomainMismatchError("element and ideal belong to different algebras")
        return self._space.contains(element.coeffs)

    def is_zero(self) -> bool:
        return self._space.rank == 0

    def is_proper(self) -> bool:
        return not self._space.contains(self.algebra.unit_vector(0))

    def power(self, k: int) -> "Ideal":
        return self.algebra.structure.ideal_power(self, k)

    def report(self, name: str = "") -> IdealReport:
        """Summarize the ideal, with primality flags for proper ideals."""
        structure = self.algebra.structure
        proper = self.is_proper()
        return IdealReport(
            name=name,
            generators=[str(g) for g in self.generators],
            even_basis=[str(b) for b in self.even_basis],
            odd_basis=[str(b) for b in self.odd_basis],
            dims=self.dims,
            proper=proper,
            prime=structure.is_prime_ideal(self) if proper else None,
            maximal=structure.is_maximal_ideal(self) if proper else None,
            nilpotency_index=structure.nilpotency_index(self),
        )


class QuotientDescription:
    """The quotient R/I, represented by the basis monomials that are not pivots of I.

    Attributes:
        source (Superalgebra): The algebra R.
        ideal (Ideal): The ideal I.
        residue_indices (tuple[int, ...]): Basis indices spanning a complement of I.
        residue_dims (tuple[int, int]): Graded dimensions of R/I.
    """

    def __init__(self, source: "Superalgebra", ideal: Ideal):
        if ideal.algebra is not source:
            raise DomainMismatchError("ideal belongs to another algebra")
        self.source = source
        self.ideal = ideal
        self.residue_indices = tuple(ideal.space.non_pivots())
        odd = sum(source.parities[i] for i in self.residue_indices)
        self.residue_dims = (len(self.residue_indices) - odd, odd)

    def project(self, element: Element) -> tuple:
        """Coordinates of the residue class of `element` over the residue basis."""
        if element.algebra is not self.source:
            raise DomainMismatchError("element belongs to another algebra")
        rem = self.ideal.space.reduce(element.coeffs)
        return tuple(rem[i] for i in self.residue_indices)

    def lift(self, coords: Sequence) -> Element:
        """The canonical representative with the given residue coordinates."""
        coeffs = [self.source.domain.zero] * self.source.dim
        for i, c in zip(self.residue_indices, coords):
            coeffs[i] = c
        return self.source.element(coeffs)

    def residue_labels(self) -> list[str]:
        return [self.source.monomial_label(i) or "1" for i in self.residue_indices]

    def is_base_field(self) -> bool:
        """Whether R/I is the base field itself."""
        return self.residue_indices == (0,)

    def report(self) -> QuotientReport:
        return QuotientReport(
            ideal=[str(b) for b in self.ideal.basis],
            residue_dims=self.residue_dims,
            residue_basis=self.residue_labels(),
        )


class StructureService:
    """Ideals, units, radicals and primality of one algebra.

    Args:
        algebra (Superalgebra): The algebra this service answers for.
    """

    def __init__(self, algebra: "Superalgebra"):
        self._algebra = algebra

    # ==================== ideals ====================

    def ideal_from_generators(self, generators: Sequence[Element]) -> Ideal:
        """Return the graded ideal generated by `generators`.

        Raises:
            PreconditionError: If no generator is given.
            DomainMismatchError: If a generator belongs to another algebra.
        """
        if not generators:
            raise PreconditionError("an ideal needs at least one generator (use 0 for the zero ideal)")
        return Ideal.generated_by(self._algebra, generators)

    def ideal(self, *texts: str) -> Ideal:
        """Return the ideal generated by parsed element strings."""
        return self.ideal_from_generators([self._algebra.parse(text) for text in texts])

    @instance_cache
    def canonical_superideal(self) -> Ideal:
        """Return J_R, the ideal generated by the odd basis monomials.

        This method caches its values.
        """
        algebra = self._algebra
        generators = [algebra.basis_element(i) for i in algebra.odd_indices] or [algebra.zero()]
        return Ideal.generated_by(algebra, generators)

    def superreduction(self) -> QuotientDescription:
        """Return R/J_R; it is the base field for every algebra built here."""
        return self.quotient(self.canonical_superideal())

    def quotient(self, ideal: Ideal) -> QuotientDescription:
        return QuotientDescription(self._algebra, ideal)

    def ideal_power(self, ideal: Ideal, k: int) -> Ideal:
        """Return I^k.

        Raises:
            PreconditionError: If k < 1.
        """
        if k < 1:
            raise PreconditionError(f"ideal powers need k >= 1, got {k}")
        result = ideal
        for _ in range(k - 1):
            result = result * ideal
        return result

    def nilpotency_index(self, ideal: Ideal) -> Optional[int]:
        """Return the least m with I^m = 0, or None if I^(dim+1) is nonzero."""
        power = ideal
        for m in range(1, self._algebra.dim + 2):
            if power.is_zero():
                return m
            power = power * ideal
        return None

    # ==================== nilpotents and units ====================

    def is_nilpotent(self, a: Element) -> bool:
        power = a
        for _ in range(self._algebra.dim + 1):
            if power.is_zero():
                return True
            power = power * a
        return power.is_zero()

    @instance_cache
    def nilradical(self) -> Ideal:
        """Return the ideal of nilpotent elements.

        Over a finite field the nilpotents are found by enumeration and checked
        to form a subspace. Over ℚ the nilradical is J_R when the algebra is a
        superdomain.

        This method caches its values.

        Raises:
            UnsupportedError: Over ℚ for an algebra that is not a superdomain.
        """
        algebra = self._algebra
        if not algebra.is_finite:
            if not self.is_superdomain():
                raise UnsupportedError(f"nilradical of {algebra} needs enumeration over an infinite field")
            return self.canonical_superideal()
        nilpotents = [x for x in enumerate_elements(algebra) if self.is_nilpotent(x)]
        ideal = Ideal.generated_by(algebra, nilpotents)
        if len(nilpotents) != algebra.domain.p**ideal.dim:
            raise SuperpyError(f"nilpotent elements of {algebra} do not form an ideal")
        _logger.debug(f"{algebra}: {len(nilpotents)} nilpotent elements")
        return ideal

    def is_unit(self, a: Element) -> bool:
        """A unit is exactly an element with nonzero body."""
        if a.algebra is not self._algebra:
            raise DomainMismatchError("element belongs to another algebra")
        return a.coeffs[0] != 0

    def invert(self, a: Element) -> Element:
        """Invert a unit by the terminating geometric series.

        Writes a = α₀(1 − ν) with ν nilpotent and returns α₀⁻¹·Σ νᵏ.

        Raises:
            NonInvertibleError: If `a` is not a unit.
        """
        if not self.is_unit(a):
            raise NonInvertibleError(f"{a} is not a unit")
        algebra = self._algebra
        body_inv = algebra.domain.inv(a.coeffs[0])
        nu = algebra.one() - a.scale(body_inv)
        total = algebra.one()
        power = algebra.one()
        while True:
            power = power * nu
            if power.is_zero():
                break
            total = total + power
        return total.scale(body_inv)

    def unit_count(self) -> int:
        """(q − 1)·q^(dim − 1) over 𝔽_q.

        Raises:
            UnsupportedError: Over an infinite field.
        """
        algebra = self._algebra
        if not algebra.is_finite:
            raise UnsupportedError(f"{algebra} has infinitely many units")
        q = algebra.domain.p
        return (q - 1) * q ** (algebra.dim - 1)

    def units(self) -> list[Element]:
        """Every unit, in canonical order.

        Raises:
            UnsupportedError: Over an infinite field.
        """
        return [x for x in enumerate_elements(self._algebra) if x.coeffs[0] != 0]

    @instance_cache
    def unit_generators(self) -> tuple[Element, ...]:
        """A generating set of the unit group over a finite field.

        A primitive root of the field together with 1 + e, for e running over a
        basis of 𝔪 adapted to the filtration 𝔪 ⊇ 𝔪² ⊇ ... ⊇ 0.

        This method caches its values.

        Raises:
            UnsupportedError: Over an infinite field.
        """
        algebra = self._algebra
        if not algebra.is_finite:
            raise UnsupportedError(f"the unit group of {algebra} is not finitely generated")
        p = algebra.domain.p
        generators = [algebra.one().scale(primitive_root(p))] if p > 2 else []
        m = self.maximal_ideal()
        powers = [m]
        while not powers[-1].is_zero():
            powers.append(powers[-1] * m)
        for upper, lower in zip(powers, powers[1:]):
            adapted = lower.space.copy()
            generators.extend(algebra.one() + algebra.element(v) for v in upper.space.basis() if adapted.add(v))
        return tuple(sorted(generators, key=lambda u: canonical_key(u.coeffs)))

    # ==================== maximal and prime ideals ====================

    @instance_cache
    def maximal_ideals(self) -> tuple[Ideal, ...]:
        """The maximal ideals 𝔪₀ ⊕ R₁̄, one per maximal ideal 𝔪₀ of R₀̄.

        R₀̄ is the base field plus the span of the even nonconstant monomials,
        which is nilpotent, so R₀̄ is local and exactly one ideal comes back.

        This method caches its values.
        """
        algebra = self._algebra
        generators = [algebra.basis_element(i) for i in algebra.nonconstant_indices] or [algebra.zero()]
        m = Ideal.generated_by(algebra, generators)
        if not m.is_proper() or self.nilpotency_index(m) is None:
            raise SuperpyError(f"nonconstant part of {algebra} is not a nilpotent ideal")
        return (m,)

    def maximal_ideal(self) -> Ideal:
        """The unique maximal ideal.

        Raises:
            PreconditionError: If the algebra is not local.
        """
        maximal = self.maximal_ideals()
        if len(maximal) != 1:
            raise PreconditionError(f"{self._algebra} is not local")
        return maximal[0]

    def jacobson_radical(self) -> Ideal:
        """Intersection of all maximal ideals."""
        return reduce(lambda a, b: a & b, self.maximal_ideals())

    def is_local(self) -> bool:
        """Exactly one maximal ideal, and the non-units are exactly its elements."""
        maximal = self.maximal_ideals()
        if len(maximal) != 1:
            return False
        m = maximal[0]
        return m.dim == self._algebra.dim - 1 and not m.space.contains(self._algebra.unit_vector(0))

    def prime_ideals(self) -> tuple[Ideal, ...]:
        """All prime ideals.

        Primes contain every nilpotent element and every element of 𝔪 is
        nilpotent, so 𝔪 is the only prime.
        """
        return self.maximal_ideals()

    def _check_proper(self, ideal: Ideal) -> None:
        if ideal.algebra is not self._algebra:
            raise DomainMismatchError("ideal belongs to another algebra")
        if not ideal.is_proper():
            raise PreconditionError(f"{ideal} is not a proper ideal")

    def is_prime_ideal(self, ideal: Ideal) -> bool:
        """Whether a proper ideal is prime.

        Over a finite field every pair of homogeneous x, y outside the ideal is
        checked for xy outside the ideal. Over ℚ primes contain every
        nilpotent, so a proper ideal is prime exactly when it contains J_R.

        Raises:
            PreconditionError: If the ideal is not proper.
        """
        self._check_proper(ideal)
        if not self._algebra.is_finite:
            return self.canonical_superideal() <= ideal
        outside = [v for v in self._homogeneous_vectors() if not ideal.space.contains(v)]
        mul = self._algebra.mul_coeffs
        for x in outside:
            for y in outside:
                if ideal.space.contains(mul(x, y)):
                    _logger.debug(f"{ideal} is not prime: ({x}) * ({y}) lies in it")
                    return False
        return True

    def is_maximal_ideal(self, ideal: Ideal) -> bool:
        """Whether R/I is a field, i.e. I is the unique maximal ideal.

        Raises:
            PreconditionError: If the ideal is not proper.
        """
        self._check_proper(ideal)
        return self.maximal_ideal() <= ideal

    def _homogeneous_vectors(self) -> list[Vector]:
        algebra = self._algebra
        found = set()
        for x in enumerate_elements(algebra):
            if x.is_homogeneous() and not x.is_zero():
                found.add(x.coeffs)
        return sorted(found, key=canonical_key)

    def is_superdomain(self) -> bool:
        """J_R is prime."""
        return self.is_prime_ideal(self.canonical_superideal())

    def is_superfield(self) -> bool:
        """J_R is maximal."""
        return self.is_maximal_ideal(self.canonical_superideal())

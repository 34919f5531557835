"""Finite-dimensional supercommutative superalgebras Λ_K[θ₁..θ_n]/I.

This module builds quotients of the exterior algebra on odd generators by
parity-homogeneous relations and provides exact element arithmetic.

Monomials are bitmasks over the generators (bit i set when θ_{i+1} is
present), so θ_i² = 0 holds structurally and characteristic 2 needs no
special treatment. Monomials are ordered by degree and then by mask. The
relation ideal I is kept in reduced echelon form with the largest monomial of
each row as its pivot; the monomials that are not pivots form the reduced
basis, and every element is stored as its coefficient tuple over that basis.

Classes:
    AlgebraSpec: Validated description of an algebra (field, generators, relations).
    Superalgebra: An immutable quotient algebra with its services attached.
    Element: An element of a `Superalgebra`.

Example:
    ```python
    spec = AlgebraSpec.model_validate(
        {"field": {"kind": "Fp", "p": 3}, "odd_generators": ["t1", "t2", "t3"],
         "relations": ["t1*t2 - t1*t3"]}
    )
    algebra = build_algebra(spec)
    e1, e2, e3 = (algebra.gen(name) for name in ("t1", "t2", "t3"))
    assert e1 * e2 == e1 * e3
    algebra.structure.is_superfield()          # True
    algebra.factorization.ufsr_check()         # NotUFSR, witness t1*t2
    ```
"""

from __future__ import annotations

import itertools
import logging
import random
import re

from fractions import Fraction
from pathlib import Path
from typing import Iterator, Optional, Sequence, Union

from pydantic import ConfigDict, Field, field_validator

from superpy._superpy_model import _SuperpyModel
from superpy.exceptions import DomainMismatchError, ParseError, SpecError, UnsupportedError
from superpy.linalg import RowSpace, Vector
from superpy.parsing import ParsedTerm, format_element, parse_terms
from superpy.scalars import RawScalar, Scalar, ScalarDomain

_logger = logging.getLogger(__name__)

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def koszul_sign(a: int, b: int) -> int:
    """Sign of θ_A·θ_B relative to θ_{A∪B} for disjoint masks A and B.

    It is (-1) to the number of pairs (i, j) with i in A, j in B and i > j.
    """
    swaps = 0
    while b:
        low = b & -b
        swaps += (a >> low.bit_length()).bit_count()
        b ^= low
    return -1 if swaps & 1 else 1


def monomial_key(mask: int) -> tuple[int, int]:
    """Sort key of the monomial order: degree first, then mask."""
    return (mask.bit_count(), mask)


def canonical_key(coeffs: Sequence[RawScalar]) -> tuple[RawScalar, ...]:
    """Sort key of the canonical element order.

    Coefficient tuples are compared starting from the largest basis monomial,
    so elements supported on low-degree monomials come first.
    """
    return tuple(coeffs[::-1])


class AlgebraSpec(_SuperpyModel):
    """Description of a superalgebra Λ_K[θ₁..θ_n]/(relations).

    This is the JSON document accepted by `superpy --spec`:
    `{"field": {"kind": "Fp", "p": 3}, "odd_generators": ["t1", ...],
    "relations": ["t1*t2 - t1*t3", ...]}`.

    Attributes:
        field (ScalarDomain): The base field, ℚ or 𝔽_p.
        odd_generators (tuple[str, ...]): Names of the odd generators, at least one.
        relations (tuple[str, ...]): Parity-homogeneous relations in the generators.
    """

    model_config = ConfigDict(frozen=True)

    field: ScalarDomain
    odd_generators: tuple[str, ...] = Field(min_length=1)
    relations: tuple[str, ...] = ()

    @field_validator("field")
    @classmethod
    def _check_field(cls, field: ScalarDomain) -> ScalarDomain:
        if not field.is_field:
            raise ValueError(f"base ring must be a field, got {field}")
        return field

    @field_validator("odd_generators")
    @classmethod
    def _check_generators(cls, names: tuple[str, ...]) -> tuple[str, ...]:
        for name in names:
            if not _NAME.fullmatch(name):
                raise ValueError(f"invalid generator name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"generator names must be unique: {list(names)}")
        return names

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "AlgebraSpec":
        """Load and validate a spec document.

        Raises:
            pydantic.ValidationError: If the document is malformed.
        """
        return cls.model_validate_json(Path(path).read_text(encoding="utf-8"))


class Superalgebra:
    """An immutable quotient Λ_K[θ₁..θ_n]/I of the exterior algebra.

    Construction reduces the relation ideal, picks the reduced basis and fills
    the multiplication table. The algebra then exposes its analysis services
    the same way a client exposes its endpoints.

    Attributes:
        spec (AlgebraSpec): The spec the algebra was built from.
        domain (ScalarDomain): The base field.
        generators (tuple[str, ...]): Generator names.
        basis (tuple[int, ...]): Masks of the reduced basis in monomial order.
        relation_ideal (RowSpace): Reduced basis of I in the exterior algebra.
        structure (StructureService): Ideals, units and radicals.
        factorization (FactorizationService): Divisibility and unique factorization.
        dimension (DimensionService): Krull superdimension and regularity.
    """

    def __init__(self, spec: AlgebraSpec):
        """Build the algebra described by `spec`.

        Raises:
            SpecError: If a relation is not parity-homogeneous or the relations
                generate the unit ideal.
            ParseError: If a relation does not parse.
        """
        from superpy.dimension import DimensionService
        from superpy.factorization import FactorizationService
        from superpy.structure import StructureService

        self.spec = spec
        self.domain = spec.field
        self.generators = tuple(spec.odd_generators)
        self.n = len(self.generators)

        full = sorted(range(1 << self.n), key=monomial_key)
        self._full_order = tuple(full)
        self._full_index = {mask: i for i, mask in enumerate(full)}

        self.relation_ideal = self._relation_space()
        if self.relation_ideal.contains(self._full_vector({0: self.domain.one})):
            raise SpecError(f"relations {list(spec.relations)} generate the unit ideal")

        self.basis = tuple(full[i] for i in self.relation_ideal.non_pivots())
        self._index = {mask: i for i, mask in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.parities = tuple(mask.bit_count() % 2 for mask in self.basis)
        self.even_indices = tuple(i for i, par in enumerate(self.parities) if par == 0)
        self.odd_indices = tuple(i for i, par in enumerate(self.parities) if par == 1)
        self._normal_forms = {mask: self._reduce_mask(mask) for mask in full}
        self._table = self._multiplication_table()

        self.structure = StructureService(self)
        self.factorization = FactorizationService(self)
        self.dimension = DimensionService(self)
        _logger.debug(f"built {self}: dims {self.dims}, basis {self.basis_labels()}")

    @classmethod
    def build(cls, spec: AlgebraSpec) -> "Superalgebra":
        return cls(spec)

    def __str__(self):
        ring = f"{self.domain}[{', '.join(self.generators)}]"
        if not self.spec.relations:
            return ring
        return f"{ring}/({', '.join(self.spec.relations)})"

    def __repr__(self):
        return f"Superalgebra({self.spec.to_dict()})"

    # ==================== construction ====================

    def _full_vector(self, terms: dict[int, RawScalar]) -> list[RawScalar]:
        vector = [self.domain.zero] * len(self._full_order)
        for mask, coeff in terms.items():
            vector[self._full_index[mask]] = self.domain.normalize(coeff)
        return vector

    def _free_terms(self, terms: Sequence[ParsedTerm]) -> dict[int, RawScalar]:
        """Interpret parsed terms in the free exterior algebra (mask -> coefficient)."""
        out: dict[int, RawScalar] = {}
        for term in terms:
            mask, sign = 0, 1
            for factor in term.factors:
                if factor.name not in self.generators:
                    raise ParseError(f"unknown generator {factor.name!r}", factor.position)
                bit = 1 << self.generators.index(factor.name)
                if factor.exponent > 1 or mask & bit:
                    sign = 0
                    continue
                sign *= koszul_sign(mask, bit)
                mask |= bit
            if sign == 0 or term.coefficient == 0:
                continue
            out[mask] = self.domain.normalize(out.get(mask, 0) + sign * term.coefficient)
        return {mask: c for mask, c in out.items() if c != 0}

    def _relation_space(self) -> RowSpace:
        space = RowSpace(self.domain, len(self._full_order))
        for text in self.spec.relations:
            relation = self._free_terms(parse_terms(text, self.domain))
            if len({mask.bit_count() % 2 for mask in relation}) > 1:
                raise SpecError(f"relation {text!r} is not parity-homogeneous")
            for m in self._full_order:
                product: dict[int, RawScalar] = {}
                for a, c in relation.items():
                    if m & a:
                        continue
                    product[m | a] = product.get(m | a, 0) + koszul_sign(m, a) * c
                if product:
                    space.add(self._full_vector(product))
        _logger.debug(f"relation ideal of {list(self.spec.relations)} has dimension {space.rank}")
        return space

    def _reduce_mask(self, mask: int) -> tuple[tuple[int, RawScalar], ...]:
        rem = self.relation_ideal.reduce(self._full_vector({mask: self.domain.one}))
        return tuple(
            (k, rem[self._full_index[m]]) for k, m in enumerate(self.basis) if rem[self._full_index[m]] != 0
        )

    def _multiplication_table(self) -> list[list[tuple[tuple[int, RawScalar], ...]]]:
        dom = self.domain
        table = []
        for a in self.basis:
            row = []
            for b in self.basis:
                if a & b:
                    row.append(())
                    continue
                sign = koszul_sign(a, b)
                row.append(tuple((k, dom.normalize(sign * c)) for k, c in self._normal_forms[a | b]))
            table.append(row)
        return table

    # ==================== basis and shape ====================

    @property
    def dims(self) -> tuple[int, int]:
        """(even dimension, odd dimension)."""
        return (len(self.even_indices), len(self.odd_indices))

    @property
    def nonconstant_indices(self) -> tuple[int, ...]:
        return tuple(range(1, self.dim))

    @property
    def is_finite(self) -> bool:
        return self.domain.is_finite

    @property
    def size(self) -> Optional[int]:
        """Number of elements, or None over ℚ."""
        return self.domain.p**self.dim if self.is_finite else None

    def monomial_label(self, index: int) -> str:
        mask = self.basis[index]
        return "*".join(name for i, name in enumerate(self.generators) if mask >> i & 1)

    def basis_labels(self) -> list[str]:
        return [self.monomial_label(i) or "1" for i in range(self.dim)]

    # ==================== elements ====================

    def element(self, coeffs: Sequence[RawScalar]) -> "Element":
        if len(coeffs) != self.dim:
            raise ValueError(f"expected {self.dim} coefficients, got {len(coeffs)}")
        return Element(self, tuple(self.domain.normalize(c) for c in coeffs))

    def zero(self) -> "Element":
        return Element(self, (self.domain.zero,) * self.dim)

    def one(self) -> "Element":
        return self.basis_element(0)

    def basis_element(self, index: int) -> "Element":
        coeffs = [self.domain.zero] * self.dim
        coeffs[index] = self.domain.one
        return Element(self, tuple(coeffs))

    def gen(self, name: str) -> "Element":
        """The image of a generator in the quotient."""
        return self.parse(name)

    def parse(self, text: str) -> "Element":
        """Parse element text (see `superpy.parsing`)."""
        return self.from_free(self._free_terms(parse_terms(text, self.domain)))

    def from_free(self, terms: dict[int, RawScalar]) -> "Element":
        """Reduce an exterior-algebra element (mask -> coefficient) into the quotient."""
        acc = [0] * self.dim
        for mask, c in terms.items():
            for k, v in self._normal_forms[mask]:
                acc[k] += c * v
        return Element(self, tuple(self.domain.normalize(v) for v in acc))

    def mul_coeffs(self, a: Sequence[RawScalar], b: Sequence[RawScalar]) -> Vector:
        """Multiply two coefficient tuples."""
        acc = [0] * self.dim
        table = self._table
        for i, x in enumerate(a):
            if x == 0:
                continue
            row = table[i]
            for j, y in enumerate(b):
                if y == 0:
                    continue
                xy = x * y
                for k, c in row[j]:
                    acc[k] += xy * c
        normalize = self.domain.normalize
        return tuple(normalize(v) for v in acc)

    def unit_vector(self, index: int) -> Vector:
        coeffs = [self.domain.zero] * self.dim
        coeffs[index] = self.domain.one
        return tuple(coeffs)

    def elements(self) -> Iterator["Element"]:
        return enumerate_elements(self)

    def random_element(self, rng: random.Random, parity: Optional[int] = None, bound: int = 3) -> "Element":
        """Draw a random element, optionally of a given parity.

        Over 𝔽_p coefficients are uniform; over ℚ they are fractions with
        numerators in [-bound, bound] and denominators in [1, bound].
        """
        coeffs = []
        for i in range(self.dim):
            if parity is not None and self.parities[i] != parity:
                coeffs.append(self.domain.zero)
            elif self.is_finite:
                coeffs.append(rng.randrange(self.domain.p))
            else:
                coeffs.append(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))
        return self.element(coeffs)


class Element:
    """An element of a `Superalgebra`, stored over the reduced basis.

    Elements are immutable values; arithmetic between elements of different
    algebras raises `DomainMismatchError`.

    Attributes:
        algebra (Superalgebra): The owning algebra.
        coeffs (tuple): Canonical raw coefficients over `algebra.basis`.
    """

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: Superalgebra, coeffs: Vector):
        self.algebra = algebra
        self.coeffs = coeffs

    def __eq__(self, other):
        return isinstance(other, Element) and self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({format_element(self)!r})"

    def __bool__(self):
        return any(self.coeffs)

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element) or other.algebra is not self.algebra:
            raise DomainMismatchError("operands belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        normalize = self.algebra.domain.normalize
        return Element(self.algebra, tuple(normalize(x + y) for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        normalize = self.algebra.domain.normalize
        return Element(self.algebra, tuple(normalize(x - y) for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Element":
        return self.scale(-1)

    def __mul__(self, other: Union["Element", Scalar, int, Fraction]) -> "Element":
        if isinstance(other, Element):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other: Union[Scalar, int, Fraction]) -> "Element":
        return self.scale(other)

    def __pow__(self, k: int) -> "Element":
        result = self.algebra.one()
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c: Union[Scalar, int, Fraction]) -> "Element":
        dom = self.algebra.domain
        if isinstance(c, Scalar):
            if c.domain != dom:
                raise DomainMismatchError(f"cannot scale an element over {dom} by a scalar over {c.domain}")
            c = c.value
        c = dom.normalize(c)
        return Element(self.algebra, tuple(dom.normalize(c * x) for x in self.coeffs))

    @property
    def key(self) -> Vector:
        return self.coeffs

    @property
    def body(self) -> Scalar:
        """The image in the superreduction: the constant coefficient."""
        return Scalar(self.algebra.domain, self.coeffs[0])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def parity(self) -> Optional[int]:
        """0 or 1 for homogeneous elements (0 for zero), None for mixed ones."""
        found = {self.algebra.parities[i] for i, c in enumerate(self.coeffs) if c != 0}
        if len(found) > 1:
            return None
        return found.pop() if found else 0

    def is_homogeneous(self) -> bool:
        return self.parity is not None

    def even_part(self) -> "Element":
        return self._restricted(0)

    def odd_part(self) -> "Element":
        return self._restricted(1)

    def _restricted(self, parity: int) -> "Element":
        zero = self.algebra.domain.zero
        parities = self.algebra.parities
        return Element(self.algebra, tuple(c if parities[i] == parity else zero for i, c in enumerate(self.coeffs)))


def build_algebra(spec: AlgebraSpec) -> Superalgebra:
    """Build the superalgebra described by `spec`.

    Raises:
        SpecError: If a relation is inhomogeneous or 1 lies in the relation ideal.
        ParseError: If a relation does not parse.
    """
    return Superalgebra.build(spec)


def multiply(a: Element, b: Element) -> Element:
    """Product of two elements of the same algebra (Koszul sign rule).

    Raises:
        DomainMismatchError: If the elements belong to different algebras.
    """
    a._check(b)
    return Element(a.algebra, a.algebra.mul_coeffs(a.coeffs, b.coeffs))


def add_scale(a: Element, c: Union[Scalar, int, Fraction], b: Element) -> Element:
    """Return a + c·b.

    Raises:
        DomainMismatchError: If the elements belong to different algebras or
            `c` is a scalar over another domain.
    """
    return a + b.scale(c)


def parity_decompose(a: Element) -> tuple[Element, Element]:
    """Split an element into its even and odd parts."""
    return a.even_part(), a.odd_part()


def enumerate_elements(algebra: Superalgebra) -> Iterator[Element]:
    """Iterate over all q^dim elements in canonical order.

    Raises:
        UnsupportedError: If the base field is infinite.
    """
    if not algebra.is_finite:
        raise UnsupportedError(f"cannot enumerate the elements of {algebra} over an infinite field")
    return (
        Element(algebra, combo[::-1])
        for combo in itertools.product(range(algebra.domain.p), repeat=algebra.dim)
    )

"""
This module contains polynomial superalgebras K[X₁..X_s | θ₁..θ_d] and the dual integers ℤ[ε].

Even variables commute with everything, odd variables anticommute and square
to zero. An element is a finite map from (even exponent vector, odd mask) to
a nonzero coefficient; its canonical form lists the body (odd mask 0) first,
then the even odd-masks, then the odd ones.

Classes:
    SuperPolynomialRing: The variable context and base ring.
    SuperPolynomial: An element of a `SuperPolynomialRing`.
    ZintUnitReport: Brute-force classification of the units of ℤ[ε] on a box.
    ZintSquareReport: The two factorizations of p² in ℤ[ε].

Example:
    ```python
    ring = SuperPolynomialRing(base=ScalarDomain.rationals(), even_vars=("X",), odd_vars=("t1",))
    f = ring.parse("1 + X*t1")
    spoly_invert(f)                        # 1 - X*t1
    zint_square_report(5).non_associate    # True
    ```
"""

from __future__ import annotations

import itertools
import logging
import re

from math import gcd
from typing import Iterable, Union, TypeAlias

from pydantic import ConfigDict, field_validator, model_validator
from sympy import divisors, isprime

from superpy._superpy_model import _SuperpyModel
from superpy.algebra import AlgebraSpec, Superalgebra, koszul_sign
from superpy.exceptions import DomainMismatchError, NonInvertibleError, ParseError, PreconditionError, SpecError
from superpy.parsing import format_terms, parse_terms
from superpy.scalars import RawScalar, ScalarDomain

_logger = logging.getLogger(__name__)

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

TermKey: TypeAlias = tuple[tuple[int, ...], int]


class SuperPolynomialRing(_SuperpyModel):
    """The ring K[X₁..X_s | θ₁..θ_d] over a field K or over ℤ.

    Attributes:
        base (ScalarDomain): ℚ, 𝔽_p or ℤ.
        even_vars (tuple[str, ...]): Names of the even variables.
        odd_vars (tuple[str, ...]): Names of the odd variables.
    """

    model_config = ConfigDict(frozen=True)

    base: ScalarDomain
    even_vars: tuple[str, ...] = ()
    odd_vars: tuple[str, ...] = ()

    @field_validator("even_vars", "odd_vars")
    @classmethod
    def _check_names(cls, names: tuple[str, ...]) -> tuple[str, ...]:
        for name in names:
            if not _NAME.fullmatch(name):
                raise ValueError(f"invalid variable name {name!r}")
        return names

    @model_validator(mode="after")
    def _check_unique(self) -> "SuperPolynomialRing":
        names = self.even_vars + self.odd_vars
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be unique: {list(names)}")
        return self

    def __str__(self):
        even = ", ".join(self.even_vars)
        odd = ", ".join(self.odd_vars)
        return f"{self.base}[{even} | {odd}]"

    def element(self, terms: dict[TermKey, RawScalar]) -> "SuperPolynomial":
        return SuperPolynomial(self, terms)

    def zero(self) -> "SuperPolynomial":
        return SuperPolynomial(self, {})

    def one(self) -> "SuperPolynomial":
        return self.constant(1)

    def constant(self, value: RawScalar) -> "SuperPolynomial":
        return SuperPolynomial(self, {((0,) * len(self.even_vars), 0): value})

    def var(self, name: str) -> "SuperPolynomial":
        return self.parse(name)

    def parse(self, text: str) -> "SuperPolynomial":
        """Parse text in this ring's variables (grammar of `superpy.parsing`).

        Raises:
            ParseError: On syntax errors, unknown variables or bad literals.
        """
        s = len(self.even_vars)
        terms: dict[TermKey, RawScalar] = {}
        for term in parse_terms(text, self.base):
            exps = [0] * s
            mask, sign = 0, 1
            for factor in term.factors:
                if factor.name in self.even_vars:
                    exps[self.even_vars.index(factor.name)] += factor.exponent
                elif factor.name in self.odd_vars:
                    bit = 1 << self.odd_vars.index(factor.name)
                    if factor.exponent > 1 or mask & bit:
                        sign = 0
                        continue
                    sign *= koszul_sign(mask, bit)
                    mask |= bit
                else:
                    raise ParseError(f"unknown variable {factor.name!r}", factor.position)
            if sign:
                key = (tuple(exps), mask)
                terms[key] = terms.get(key, 0) + sign * term.coefficient
        return SuperPolynomial(self, terms)

    def quotient(self, relations: Iterable[str] = ()) -> Superalgebra:
        """Build the quotient of a purely odd polynomial superalgebra over a field.

        Raises:
            SpecError: If the ring has even variables or its base is not a field.
        """
        if self.even_vars:
            raise SpecError(f"quotients of {self} by relations in even variables are not supported")
        if not self.base.is_field:
            raise SpecError(f"quotients need a base field, {self} is over {self.base}")
        spec = AlgebraSpec(field=self.base, odd_generators=self.odd_vars, relations=tuple(relations))
        return Superalgebra(spec)


def _term_order(key: TermKey) -> tuple:
    exps, mask = key
    return (mask.bit_count() % 2, mask.bit_count(), mask, sum(exps), exps)


class SuperPolynomial:
    """An element of a `SuperPolynomialRing`; an immutable value.

    Attributes:
        ring (SuperPolynomialRing): The owning ring.
        terms (dict): (even exponents, odd mask) -> nonzero coefficient.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: SuperPolynomialRing, terms: dict[TermKey, RawScalar]):
        normalize = ring.base.normalize
        self.ring = ring
        self.terms = {}
        for key, c in terms.items():
            c = normalize(c)
            if c != 0:
                self.terms[key] = c

    def __eq__(self, other):
        return isinstance(other, SuperPolynomial) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return format_terms(self.ring.base, ((self.terms[k], self._label(k)) for k in self.sorted_keys()))

    def __repr__(self):
        return f"SuperPolynomial({str(self)!r})"

    def _label(self, key: TermKey) -> str:
        exps, mask = key
        parts = []
        for name, e in zip(self.ring.even_vars, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        parts.extend(name for i, name in enumerate(self.ring.odd_vars) if mask >> i & 1)
        return "*".join(parts)

    def sorted_keys(self) -> list[TermKey]:
        """Term keys in canonical order: body, even odd-masks, odd odd-masks."""
        return sorted(self.terms, key=_term_order)

    def _check(self, other: "SuperPolynomial") -> None:
        if not isinstance(other, SuperPolynomial) or other.ring != self.ring:
            raise DomainMismatchError("super polynomials belong to different rings")

    def __add__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return SuperPolynomial(self.ring, out)

    def __neg__(self) -> "SuperPolynomial":
        return SuperPolynomial(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        return self + (-other)

    def __mul__(self, other: Union["SuperPolynomial", int]) -> "SuperPolynomial":
        if isinstance(other, SuperPolynomial):
            return spoly_multiply(self, other)
        return SuperPolynomial(self.ring, {k: c * other for k, c in self.terms.items()})

    def __rmul__(self, other: int) -> "SuperPolynomial":
        return self * other

    def __pow__(self, k: int) -> "SuperPolynomial":
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def body(self) -> "SuperPolynomial":
        """The part free of odd variables, f_{i₀} ∈ K[X]."""
        return SuperPolynomial(self.ring, {k: c for k, c in self.terms.items() if k[1] == 0})

    def parity(self) -> Union[int, None]:
        found = {mask.bit_count() % 2 for _, mask in self.terms}
        if len(found) > 1:
            return None
        return found.pop() if found else 0

    def coefficient(self, exps: tuple[int, ...], mask: int) -> RawScalar:
        return self.terms.get((exps, mask), self.ring.base.zero)


def spoly_multiply(f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """Product with commuting even variables and Koszul signs on odd monomials.

    Raises:
        DomainMismatchError: If f and g belong to different rings.
    """
    f._check(g)
    out: dict[TermKey, RawScalar] = {}
    for (e1, m1), c1 in f.terms.items():
        for (e2, m2), c2 in g.terms.items():
            if m1 & m2:
                continue
            key = (tuple(a + b for a, b in zip(e1, e2)), m1 | m2)
            out[key] = out.get(key, 0) + koszul_sign(m1, m2) * c1 * c2
    return SuperPolynomial(f.ring, out)


def _constant_body(f: SuperPolynomial) -> Union[RawScalar, None]:
    """The body as a scalar, or None when it involves even variables."""
    body = f.body()
    zero_exps = (0,) * len(f.ring.even_vars)
    if any(exps != zero_exps for exps, _ in body.terms):
        return None
    return body.terms.get((zero_exps, 0), f.ring.base.zero)


def spoly_is_unit(f: SuperPolynomial) -> bool:
    """Unit iff the body is a constant that is invertible in the base ring."""
    c = _constant_body(f)
    if c is None or c == 0:
        return False
    return f.ring.base.is_field or c in (1, -1)


def spoly_invert(f: SuperPolynomial) -> SuperPolynomial:
    """Invert a unit as c⁻¹·Σ νᵏ with f = c(1 − ν), ν nilpotent.

    Raises:
        NonInvertibleError: If f is not a unit, including when its body has
            positive degree in the even variables.
    """
    c = _constant_body(f)
    if c is None:
        raise NonInvertibleError(f"{f} has an even-variable body of positive degree")
    if not spoly_is_unit(f):
        raise NonInvertibleError(f"{f} is not a unit")
    ring = f.ring
    c_inv = ring.base.inv(c)
    nu = ring.one() - f * c_inv
    total = ring.one()
    power = ring.one()
    while True:
        power = power * nu
        if power.is_zero():
            break
        total = total + power
    return total * c_inv


# ==================== dual integers ====================


class ZintUnitReport(_SuperpyModel):
    """Units of ℤ[ε] found by brute force on the box |a|, |b| ≤ bound.

    Attributes:
        bound (int): The box size.
        units (list[str]): Every unit found.
        matches_formula (bool): Whether they are exactly ±1 + bε.
    """

    bound: int
    units: list[str]
    matches_formula: bool


class ZintSquareReport(_SuperpyModel):
    """p² = (p − ε)(p + ε) = (p − pε)(p + pε) in ℤ[ε].

    Attributes:
        p (int): The prime.
        square (str): p² as text.
        factorizations (list[list[str]]): The two factorizations.
        products_match (bool): Both multiply back to p².
        factors_irreducible (bool): Every factor is irreducible.
        factors_regular (bool): No factor is a zerodivisor.
        non_associate (bool): p − ε and p + ε are associated to neither p − pε nor p + pε.
        units_classified (bool): The unit classification agrees with ±1 + bε.
    """

    p: int
    square: str
    factorizations: list[list[str]]
    products_match: bool
    factors_irreducible: bool
    factors_regular: bool
    non_associate: bool
    units_classified: bool


def dual_integers(name: str = "e") -> SuperPolynomialRing:
    """ℤ[ε], with ε odd."""
    return SuperPolynomialRing(base=ScalarDomain.integers(), odd_vars=(name,))


def zint(a: int, b: int, ring: Union[SuperPolynomialRing, None] = None) -> SuperPolynomial:
    """The element a + bε."""
    ring = ring or dual_integers()
    return SuperPolynomial(ring, {((), 0): a, ((), 1): b})


def zint_parts(f: SuperPolynomial) -> tuple[int, int]:
    """(a, b) with f = a + bε.

    Raises:
        DomainMismatchError: If f is not an element of a dual-integer ring.
    """
    ring = f.ring
    if ring.base != ScalarDomain.integers() or ring.even_vars or len(ring.odd_vars) != 1:
        raise DomainMismatchError(f"{ring} is not the ring of dual integers")
    return (int(f.coefficient((), 0)), int(f.coefficient((), 1)))


def zint_are_associates(x: SuperPolynomial, y: SuperPolynomial) -> bool:
    """a' + b'ε ~ a + bε iff a' = σa and b' = σb + t·a for a sign σ and an integer t."""
    a2, b2 = zint_parts(x)
    a, b = zint_parts(y)
    for sigma in (1, -1):
        if a2 != sigma * a:
            continue
        if a == 0:
            if b2 == sigma * b:
                return True
        elif (b2 - sigma * b) % a == 0:
            return True
    return False


def zint_are_associates_brute(x: SuperPolynomial, y: SuperPolynomial, bound: int = 10) -> bool:
    """Search x = (σ + tε)·y over signs σ and |t| ≤ bound."""
    a2, b2 = zint_parts(x)
    a, b = zint_parts(y)
    return any(
        (sigma * a, sigma * b + t * a) == (a2, b2) for sigma in (1, -1) for t in range(-bound, bound + 1)
    )


def zint_is_regular(f: SuperPolynomial) -> bool:
    """a + bε is a non-zerodivisor iff a ≠ 0."""
    return zint_parts(f)[0] != 0


def zint_is_irreducible(f: SuperPolynomial) -> bool:
    """Irreducibility of a nonzero non-unit a + bε.

    For a ≠ 0 the element is reducible iff |a| = a₁a₂ with 1 < a₁, a₂ and
    gcd(a₁, a₂) dividing b; in particular |a| prime gives an irreducible.
    For a = 0 the element bε is irreducible iff |b| = 1.

    Raises:
        PreconditionError: If f is zero or a unit.
    """
    a, b = zint_parts(f)
    if a == 0 and b == 0:
        raise PreconditionError("zero is neither irreducible nor reducible")
    if a in (1, -1):
        raise PreconditionError(f"{f} is a unit")
    if a == 0:
        return abs(b) == 1
    n = abs(a)
    return not any(b % gcd(d, n // d) == 0 for d in divisors(n) if 1 < d < n)


def _zint_mul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    return (x[0] * y[0], x[0] * y[1] + x[1] * y[0])


def zint_unit_classification(bound: int = 5) -> ZintUnitReport:
    """Find every unit a + bε with |a|, |b| ≤ bound by searching inverses in the same box."""
    box = list(itertools.product(range(-bound, bound + 1), repeat=2))
    units = [x for x in box if any(_zint_mul(x, y) == (1, 0) for y in box)]
    expected = [(a, b) for a, b in box if a in (1, -1)]
    ring = dual_integers()
    return ZintUnitReport(
        bound=bound,
        units=[str(zint(a, b, ring)) for a, b in units],
        matches_formula=sorted(units) == sorted(expected),
    )


def zint_square_report(p: int) -> ZintSquareReport:
    """Check that p² has the two non-equivalent factorizations (p ∓ ε) and (p ∓ pε).

    Raises:
        PreconditionError: If p is not prime.
    """
    if not isprime(p):
        raise PreconditionError(f"{p} is not prime")
    ring = dual_integers()
    square = zint(p * p, 0, ring)
    first = (zint(p, -1, ring), zint(p, 1, ring))
    second = (zint(p, -p, ring), zint(p, p, ring))
    factors = first + second
    non_associate = all(not zint_are_associates(f, g) for f in first for g in second)
    report = ZintSquareReport(
        p=p,
        square=str(square),
        factorizations=[[str(f) for f in first], [str(f) for f in second]],
        products_match=first[0] * first[1] == square and second[0] * second[1] == square,
        factors_irreducible=all(zint_is_irreducible(f) for f in factors),
        factors_regular=all(zint_is_regular(f) for f in factors),
        non_associate=non_associate,
        units_classified=zint_unit_classification().matches_formula,
    )
    _logger.info(f"{report.square} = ({first[0]})({first[1]}) = ({second[0]})({second[1]}), non-associate: {non_associate}")
    return report

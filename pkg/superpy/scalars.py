"""Exact scalars over the rationals, prime fields and the integers.

This module provides the coefficient domains every other module computes over.
A `ScalarDomain` is a small immutable description of a domain (its kind and,
for prime fields, the modulus) that also performs arithmetic on raw values:
`fractions.Fraction` for the rationals and `int` for prime fields and the
integers. The `Scalar` value type pairs a raw value with its domain for
callers that want type-checked arithmetic.

Classes:
    DomainKind: Enumeration of the supported coefficient domains.
    ArithOp: Enumeration of the binary and unary scalar operations.
    ScalarDomain: A coefficient domain and its raw arithmetic.
    Scalar: An exact scalar tagged with its domain.

Example:
    ```python
    f5 = ScalarDomain.prime_field(5)
    three = scalar_invert(f5.scalar(2))          # 3, since 2 * 3 = 6 = 1 mod 5
    half = ScalarDomain.rationals().parse_scalar("1/2")
    ```
"""

from __future__ import annotations

import re

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cache
from typing import Any, Iterator, Optional, Union, TypeAlias

from pydantic import ConfigDict, model_validator
from sympy import GF, QQ, ZZ, Rational, isprime
from sympy.polys.domains.domain import Domain

from superpy._superpy_model import _SuperpyModel
from superpy.exceptions import (
    DomainMismatchError,
    NonInvertibleError,
    ParseError,
    UnsupportedError,
)

RawScalar: TypeAlias = Union[int, Fraction]

_INTEGER_LITERAL = re.compile(r"-?[0-9]+")
_RATIONAL_LITERAL = re.compile(r"(-?[0-9]+)/([1-9][0-9]*)")


class DomainKind(str, Enum):
    """Enumeration of the supported coefficient domains.

    Attributes:
        RATIONAL: The field of rational numbers.
        PRIME_FIELD: The field of residues modulo a prime p.
        INTEGER: The ring of integers (only used by the dual-integer ring).
    """

    RATIONAL = "Q"
    PRIME_FIELD = "Fp"
    INTEGER = "Z"


class ArithOp(str, Enum):
    """Enumeration of the operations accepted by `scalar_arith`.

    Attributes:
        ADD: Addition.
        SUB: Subtraction.
        MUL: Multiplication.
        NEG: Negation of the first operand.
    """

    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    NEG = "neg"


@cache
def _sympy_ground_domain(kind: DomainKind, p: Optional[int]) -> Domain:
    if kind is DomainKind.RATIONAL:
        return QQ
    if kind is DomainKind.PRIME_FIELD:
        return GF(p)
    return ZZ


class ScalarDomain(_SuperpyModel):
    """A coefficient domain together with arithmetic on its raw values.

    Raw values are canonical: residues in [0, p) for prime fields, reduced
    fractions with positive denominators for the rationals, and plain `int`
    for the integers. All methods taking raw values assume canonical input
    and return canonical output.

    Attributes:
        kind (DomainKind): Which domain this is.
        p (Optional[int]): The modulus of a prime field, otherwise None.
    """

    model_config = ConfigDict(frozen=True)

    kind: DomainKind
    p: Optional[int] = None

    @model_validator(mode="after")
    def _check_modulus(self) -> "ScalarDomain":
        if self.kind is DomainKind.PRIME_FIELD:
            if self.p is None or not isprime(self.p):
                raise ValueError(f"prime field modulus must be a prime, got {self.p}")
        elif self.p is not None:
            raise ValueError(f"domain {self.kind.value} takes no modulus")
        return self

    @classmethod
    def rationals(cls) -> "ScalarDomain":
        return cls(kind=DomainKind.RATIONAL)

    @classmethod
    def prime_field(cls, p: int) -> "ScalarDomain":
        return cls(kind=DomainKind.PRIME_FIELD, p=p)

    @classmethod
    def integers(cls) -> "ScalarDomain":
        return cls(kind=DomainKind.INTEGER)

    def __str__(self):
        if self.kind is DomainKind.PRIME_FIELD:
            return f"F{self.p}"
        return self.kind.value

    @property
    def is_field(self) -> bool:
        return self.kind is not DomainKind.INTEGER

    @property
    def is_finite(self) -> bool:
        return self.kind is DomainKind.PRIME_FIELD

    @property
    def size(self) -> Optional[int]:
        """The number of elements, or None for an infinite domain."""
        return self.p if self.is_finite else None

    @property
    def zero(self) -> RawScalar:
        return Fraction(0) if self.kind is DomainKind.RATIONAL else 0

    @property
    def one(self) -> RawScalar:
        return Fraction(1) if self.kind is DomainKind.RATIONAL else 1

    def normalize(self, value: RawScalar) -> RawScalar:
        """Bring an int or Fraction into the canonical raw form of this domain.

        Raises:
            NonInvertibleError: If a fraction's denominator vanishes mod p.
            DomainMismatchError: If a non-integral fraction is given for ℤ.
        """
        if self.kind is DomainKind.PRIME_FIELD:
            if isinstance(value, Fraction):
                if value.denominator % self.p == 0:
                    raise NonInvertibleError(f"denominator of {value} vanishes in F{self.p}")
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        if self.kind is DomainKind.RATIONAL:
            return Fraction(value)
        if isinstance(value, Fraction) and value.denominator != 1:
            raise DomainMismatchError(f"{value} is not an integer")
        return int(value)

    def add(self, a: RawScalar, b: RawScalar) -> RawScalar:
        return self.normalize(a + b)

    def sub(self, a: RawScalar, b: RawScalar) -> RawScalar:
        return self.normalize(a - b)

    def mul(self, a: RawScalar, b: RawScalar) -> RawScalar:
        return self.normalize(a * b)

    def neg(self, a: RawScalar) -> RawScalar:
        return self.normalize(-a)

    def inv(self, a: RawScalar) -> RawScalar:
        """Return the multiplicative inverse of a raw value.

        Raises:
            NonInvertibleError: For zero, and for integers other than ±1.
        """
        if a == 0:
            raise NonInvertibleError("zero has no inverse")
        if self.kind is DomainKind.PRIME_FIELD:
            return pow(a, -1, self.p)
        if self.kind is DomainKind.RATIONAL:
            return 1 / a
        if a in (1, -1):
            return a
        raise NonInvertibleError(f"{a} is not invertible in Z")

    @property
    def sympy_domain(self) -> Domain:
        """The matching sympy ground domain: QQ, GF(p) or ZZ."""
        return _sympy_ground_domain(self.kind, self.p)

    def to_sympy(self, value: RawScalar) -> Any:
        """Convert a raw value into an element of `sympy_domain`."""
        value = self.normalize(value)
        return self.sympy_domain.from_sympy(Rational(value.numerator, value.denominator))

    def from_sympy(self, element: Any) -> RawScalar:
        """Convert an element of `sympy_domain` back into a raw value."""
        value = self.sympy_domain.to_sympy(element)
        return self.normalize(Fraction(int(value.p), int(value.q)))

    def values(self) -> Iterator[RawScalar]:
        """Iterate over every element of a finite domain in increasing order.

        Raises:
            UnsupportedError: If the domain is infinite.
        """
        if not self.is_finite:
            raise UnsupportedError(f"cannot enumerate the infinite domain {self}")
        return iter(range(self.p))

    def parse(self, text: str, position: int = 0) -> RawScalar:
        """Parse a scalar literal into a raw value of this domain.

        Integers are `-?[0-9]+`; rationals additionally accept
        `-?[0-9]+/[1-9][0-9]*`. Prime-field literals must be integers and are
        reduced mod p.

        Args:
            text (str): The literal.
            position (int): Offset of the literal in a larger text, used in errors.

        Raises:
            ParseError: If the literal is malformed or not allowed in this domain.
        """
        text = text.strip()
        if _INTEGER_LITERAL.fullmatch(text):
            return self.normalize(int(text))
        match = _RATIONAL_LITERAL.fullmatch(text)
        if match is None:
            raise ParseError(f"malformed scalar literal {text!r}", position)
        if self.kind is not DomainKind.RATIONAL:
            raise ParseError(f"rational literal {text!r} is not allowed over {self}", position)
        return Fraction(int(match.group(1)), int(match.group(2)))

    def format(self, value: RawScalar) -> str:
        if isinstance(value, Fraction) and value.denominator != 1:
            return f"{value.numerator}/{value.denominator}"
        return str(int(value))

    def scalar(self, value: Union[RawScalar, str]) -> "Scalar":
        """Build a `Scalar` of this domain from a raw value or a literal."""
        if isinstance(value, str):
            return Scalar(self, self.parse(value))
        return Scalar(self, self.normalize(value))

    def parse_scalar(self, text: str) -> "Scalar":
        return self.scalar(text)


@dataclass(frozen=True)
class Scalar:
    """An exact scalar tagged with its domain.

    Equality is representation equality: two scalars are equal exactly when
    they share a domain and a canonical value.

    Attributes:
        domain (ScalarDomain): The domain of the scalar.
        value (RawScalar): The canonical raw value.
    """

    domain: ScalarDomain
    value: RawScalar

    def __post_init__(self):
        object.__setattr__(self, "value", self.domain.normalize(self.value))

    def __str__(self):
        return self.domain.format(self.value)

    def __add__(self, other: "Scalar") -> "Scalar":
        return scalar_arith(ArithOp.ADD, self, other)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return scalar_arith(ArithOp.SUB, self, other)

    def __mul__(self, other: "Scalar") -> "Scalar":
        return scalar_arith(ArithOp.MUL, self, other)

    def __neg__(self) -> "Scalar":
        return scalar_arith(ArithOp.NEG, self)

    def is_zero(self) -> bool:
        return self.value == 0


def scalar_arith(op: ArithOp, a: Scalar, b: Optional[Scalar] = None) -> Scalar:
    """Apply an arithmetic operation to scalars of one domain.

    Args:
        op (ArithOp): The operation; `NEG` ignores `b`.
        a (Scalar): The first operand.
        b (Optional[Scalar]): The second operand, required for binary operations.

    Returns:
        Scalar: The exact result in canonical form.

    Raises:
        DomainMismatchError: If the operands belong to different domains.
    """
    op = ArithOp(op)
    if op is ArithOp.NEG:
        return Scalar(a.domain, a.domain.neg(a.value))
    if b is None:
        raise TypeError(f"{op.value} needs two operands")
    if a.domain != b.domain:
        raise DomainMismatchError(f"cannot {op.value} {a.domain} and {b.domain} scalars")
    if op is ArithOp.ADD:
        return Scalar(a.domain, a.domain.add(a.value, b.value))
    if op is ArithOp.SUB:
        return Scalar(a.domain, a.domain.sub(a.value, b.value))
    return Scalar(a.domain, a.domain.mul(a.value, b.value))


def scalar_invert(a: Scalar) -> Scalar:
    """Return the multiplicative inverse of a scalar.

    Raises:
        NonInvertibleError: If `a` is zero, or an integer other than ±1.
    """
    return Scalar(a.domain, a.domain.inv(a.value))

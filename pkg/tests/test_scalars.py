"""
Unit tests for ScalarDomain and Scalar.
Test Coverage:
- Construction and validation of domains
- Canonical forms and arithmetic over ℚ, 𝔽_p and ℤ
- Inversion, including the non-invertible cases
- Literal parsing and formatting
- Domain mismatches
- Conversion to and from sympy ground domains
"""

from fractions import Fraction

import pytest

from pydantic import ValidationError
from sympy import GF, QQ, ZZ

from superpy.exceptions import DomainMismatchError, NonInvertibleError, ParseError, UnsupportedError
from superpy.scalars import ArithOp, DomainKind, Scalar, ScalarDomain, scalar_arith, scalar_invert

Q = ScalarDomain.rationals()
F5 = ScalarDomain.prime_field(5)
Z = ScalarDomain.integers()


# ==================== ScalarDomain construction ====================


def test_prime_field_requires_a_prime():
    """
    Test that ScalarDomain.prime_field():
    - Accepts a prime modulus
    - Rejects composite moduli through pydantic validation
    """
    assert F5.kind is DomainKind.PRIME_FIELD
    assert F5.p == 5
    with pytest.raises(ValidationError):
        ScalarDomain.prime_field(4)


def test_rationals_take_no_modulus():
    """
    Test that ScalarDomain:
    - Rejects a modulus for ℚ
    - Reports field and finiteness flags
    """
    with pytest.raises(ValidationError):
        ScalarDomain(kind=DomainKind.RATIONAL, p=3)
    assert Q.is_field and not Q.is_finite
    assert F5.is_field and F5.is_finite and F5.size == 5
    assert not Z.is_field and Z.size is None


def test_domain_str():
    assert str(Q) == "Q"
    assert str(F5) == "F5"
    assert str(Z) == "Z"


# ==================== Arithmetic ====================


def test_prime_field_arithmetic():
    """
    Test that ScalarDomain arithmetic over 𝔽₅:
    - Reduces results into [0, 5)
    - Normalizes fractions through the modular inverse
    """
    assert F5.add(3, 4) == 2
    assert F5.sub(1, 3) == 3
    assert F5.mul(3, 4) == 2
    assert F5.neg(2) == 3
    assert F5.normalize(Fraction(1, 2)) == 3


def test_rational_arithmetic_is_exact():
    assert Q.add(Fraction(1, 3), Fraction(1, 6)) == Fraction(1, 2)
    assert Q.mul(Fraction(2, 3), Fraction(3, 4)) == Fraction(1, 2)
    assert isinstance(Q.zero, Fraction)


def test_inverse():
    """
    Test that ScalarDomain.inv():
    - Inverts nonzero field elements
    - Raises NonInvertibleError for zero and for integers other than ±1
    """
    assert F5.inv(2) == 3
    assert Q.inv(Fraction(2, 3)) == Fraction(3, 2)
    assert Z.inv(-1) == -1
    with pytest.raises(NonInvertibleError):
        F5.inv(0)
    with pytest.raises(NonInvertibleError):
        Z.inv(2)


def test_fraction_with_vanishing_denominator():
    with pytest.raises(NonInvertibleError):
        F5.normalize(Fraction(1, 5))


def test_integer_domain_rejects_fractions():
    with pytest.raises(DomainMismatchError):
        Z.normalize(Fraction(1, 2))


def test_values_of_finite_domain():
    """
    Test that ScalarDomain.values():
    - Lists the residues of a prime field in order
    - Raises UnsupportedError over ℚ
    """
    assert list(F5.values()) == [0, 1, 2, 3, 4]
    with pytest.raises(UnsupportedError):
        Q.values()


def test_sympy_ground_domains():
    """
    Test that ScalarDomain converts to and from sympy ground domains:
    - Maps ℚ, 𝔽_p and ℤ to QQ, GF(p) and ZZ
    - Brings residues back into [0, p) and rationals back to Fraction
    """
    assert Q.sympy_domain == QQ and F5.sympy_domain == GF(5) and Z.sympy_domain == ZZ
    assert F5.from_sympy(F5.to_sympy(4)) == 4
    assert F5.from_sympy(F5.sympy_domain(-1)) == 4
    assert Q.from_sympy(Q.to_sympy(Fraction(-3, 4))) == Fraction(-3, 4)
    assert isinstance(Q.from_sympy(QQ(2)), Fraction)


# ==================== Parsing and formatting ====================


def test_parse_literals():
    """
    Test that ScalarDomain.parse():
    - Reads integers in every domain, reducing mod p
    - Reads fractions over ℚ only
    - Raises ParseError carrying the given position
    """
    assert F5.parse("7") == 2
    assert Q.parse("-3/6") == Fraction(-1, 2)
    with pytest.raises(ParseError) as e:
        F5.parse("1/2", position=4)
    assert e.value.position == 4
    with pytest.raises(ParseError):
        Q.parse("x")


def test_format():
    assert Q.format(Fraction(-1, 2)) == "-1/2"
    assert Q.format(Fraction(4)) == "4"
    assert F5.format(3) == "3"


# ==================== Scalar ====================


def test_scalar_arith():
    """
    Test that scalar_arith():
    - Applies each ArithOp
    - Raises DomainMismatchError across domains
    """
    a, b = F5.scalar(3), F5.scalar("4")
    assert scalar_arith(ArithOp.ADD, a, b) == F5.scalar(2)
    assert scalar_arith(ArithOp.SUB, a, b) == F5.scalar(4)
    assert scalar_arith(ArithOp.MUL, a, b) == F5.scalar(2)
    assert scalar_arith(ArithOp.NEG, a) == F5.scalar(2)
    assert a + b == F5.scalar(2)
    with pytest.raises(DomainMismatchError):
        scalar_arith(ArithOp.ADD, a, Q.scalar(1))


def test_scalar_is_canonical():
    assert Scalar(F5, 12).value == 2
    assert Scalar(F5, 12) == Scalar(F5, 2)
    assert str(Q.scalar("2/4")) == "1/2"


def test_scalar_invert():
    assert scalar_invert(Q.scalar("2/3")) == Q.scalar("3/2")
    with pytest.raises(NonInvertibleError):
        scalar_invert(F5.scalar(0))

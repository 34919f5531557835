"""
Unit tests for the element grammar.
Test Coverage:
- Tokenizing and term parsing
- Parse errors and their positions
- Canonical formatting of terms and elements
- Parsing elements in an algebra (Koszul signs, repeated generators, relations)
"""

from fractions import Fraction

import pytest

from superpy.algebra import Superalgebra
from superpy.exceptions import ParseError
from superpy.parsing import format_element, format_terms, parse_element, parse_terms, tokenize
from superpy.scalars import ScalarDomain

Q = ScalarDomain.rationals()
F3 = ScalarDomain.prime_field(3)


# ==================== Tokens and terms ====================


def test_tokenize():
    tokens = tokenize("2*t1^2 - 1/3")
    assert [t.kind for t in tokens] == ["number", "op", "name", "op", "number", "op", "number"]
    assert tokens[2].position == 2


def test_parse_terms():
    """
    Test that parse_terms():
    - Splits an expression into signed terms
    - Multiplies scalar factors into the coefficient
    - Records exponents and factor order
    """
    terms = parse_terms("-2*t1*3 + t2^2*t1", Q)
    assert terms[0].coefficient == Fraction(-6)
    assert [f.name for f in terms[0].factors] == ["t1"]
    assert [(f.name, f.exponent) for f in terms[1].factors] == [("t2", 2), ("t1", 1)]


@pytest.mark.parametrize(
    "text, position",
    [
        ("garbage +*", 9),
        ("t1 $ t2", 3),
        ("", 0),
        ("t1 +", 4),
        ("t1^0", 3),
        ("t1 t2", 3),
    ],
)
def test_parse_errors_carry_position(text, position):
    """
    Test that parse_terms():
    - Raises ParseError on malformed input
    - Reports the offset of the offending token
    """
    with pytest.raises(ParseError) as e:
        parse_terms(text, Q)
    assert e.value.position == position


def test_fraction_literal_rejected_over_prime_field():
    with pytest.raises(ParseError):
        parse_terms("1/2*t1", F3)


# ==================== Formatting ====================


def test_format_terms():
    """
    Test that format_terms():
    - Skips zero coefficients and omits unit coefficients
    - Renders negative coefficients as subtractions
    - Renders the empty sum as 0
    """
    assert format_terms(Q, [(Fraction(1), ""), (Fraction(0), "t1"), (Fraction(-1), "t2"), (Fraction(1, 2), "t1*t2")]) == (
        "1 - t2 + 1/2*t1*t2"
    )
    assert format_terms(Q, [(Fraction(-2), "t1")]) == "-2*t1"
    assert format_terms(Q, []) == "0"


# ==================== Elements ====================


def test_parse_element_koszul_sign(free_q_pair: Superalgebra):
    """
    Test that parse_element():
    - Applies the Koszul sign when reordering odd generators
    - Sends repeated odd generators to zero
    """
    assert parse_element(free_q_pair, "t2*t1") == -parse_element(free_q_pair, "t1*t2")
    assert parse_element(free_q_pair, "t1*t1").is_zero()
    assert parse_element(free_q_pair, "t1^2 + 3").coeffs[0] == 3


def test_parse_element_reduces_modulo_relations(shared_product_q: Superalgebra):
    assert parse_element(shared_product_q, "t1*t3") == parse_element(shared_product_q, "t1*t2")
    assert parse_element(shared_product_q, "t1*t2*t3").is_zero()


def test_parse_element_unknown_generator(f2_pair: Superalgebra):
    with pytest.raises(ParseError) as e:
        parse_element(f2_pair, "t1 + t9")
    assert e.value.position == 5


def test_format_element(square_zero_f3: Superalgebra):
    x = parse_element(square_zero_f3, "2 + e1 - e3")
    assert format_element(x) == "2 + e1 + 2*e3"
    assert str(square_zero_f3.zero()) == "0"

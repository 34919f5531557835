"""
Unit tests for the library algebras and closed-form inverses.
Test Coverage:
- Library listing and building, with and without a field override
- Errors for unknown names and fixed-field algebras
- Closed-form inverse when the maximal ideal squares to zero
- Closed-form inverse of the shared-product algebra and its cross-term variant
"""

import pytest

from superpy import catalog
from superpy.algebra import Superalgebra
from superpy.exceptions import PreconditionError, SpecError


# ==================== Library ====================


def test_library_names():
    assert sorted(catalog.library()) == ["dual_numbers", "free_f2_pair", "free_q_pair", "shared_product", "square_zero"]


def test_build():
    """
    Test that catalog.build():
    - Builds a library algebra over its default field
    - Builds it over another field when asked
    """
    assert str(catalog.build("shared_product")) == "Q[t1, t2, t3]/(t1*t2 - t1*t3)"
    dual = catalog.build("dual_numbers", catalog.F3)
    assert dual.domain == catalog.F3
    assert dual.dims == (1, 1)


def test_build_errors():
    with pytest.raises(SpecError):
        catalog.build("octonions")
    with pytest.raises(PreconditionError):
        catalog.build("free_q_pair", catalog.F3)


def test_square_zero_family():
    algebra = catalog.build("square_zero")
    assert algebra.dims == (1, 3)
    wide = Superalgebra(catalog.square_zero(catalog.Q, count=5))
    assert wide.dims == (1, 5)
    assert wide.parse("e1*e4").is_zero()


# ==================== Inverse formulas ====================


def test_closed_form_inverse_square_zero(dual_q: Superalgebra, square_zero_f3: Superalgebra):
    """
    Test that closed_form_inverse_square_zero():
    - Gives 1/2 - 1/4*e for 2 + e
    - Agrees with the series inverse on every unit over F3
    """
    assert catalog.closed_form_inverse_square_zero(dual_q.parse("2 + e")) == dual_q.parse("1/2 - 1/4*e")
    for x in square_zero_f3.structure.units():
        assert catalog.closed_form_inverse_square_zero(x) == square_zero_f3.structure.invert(x)


def test_closed_form_inverse_square_zero_preconditions(dual_q: Superalgebra, shared_product_q: Superalgebra):
    with pytest.raises(PreconditionError):
        catalog.closed_form_inverse_square_zero(dual_q.parse("e"))
    with pytest.raises(PreconditionError):
        catalog.closed_form_inverse_square_zero(shared_product_q.parse("1 + t1"))


def test_closed_form_inverse_shared_product(shared_product_q: Superalgebra, shared_product_f3: Superalgebra):
    """
    Test that closed_form_inverse_shared_product():
    - Matches the series inverse without cross terms
    - Works over 𝔽₃ as well as over ℚ
    """
    x = shared_product_q.parse("2 + t1 + t2 + t3 + t1*t2")
    inverse = catalog.closed_form_inverse_shared_product(x)
    assert inverse == shared_product_q.structure.invert(x)
    assert x * inverse == shared_product_q.one()
    y = shared_product_f3.parse("2 + t1 + 2*t2 + t2*t3")
    assert catalog.closed_form_inverse_shared_product(y) == shared_product_f3.structure.invert(y)


def test_cross_term_variant_needs_vanishing_cross_products(shared_product_q: Superalgebra):
    """
    Test that cross_term_shared_product_inverse():
    - Differs from the inverse when t1 and t2 both occur
    - Agrees with it when the t2 coefficient is zero
    """
    structure = shared_product_q.structure
    x = shared_product_q.parse("2 + t1 + t2 + t3")
    assert catalog.cross_term_shared_product_inverse(x) != structure.invert(x)
    y = shared_product_q.parse("2 + t1 + t3 + t2*t3")
    assert catalog.cross_term_shared_product_inverse(y) == structure.invert(y)


def test_shared_product_inverse_preconditions(dual_q: Superalgebra, shared_product_q: Superalgebra):
    with pytest.raises(PreconditionError):
        catalog.closed_form_inverse_shared_product(dual_q.parse("1 + e"))
    with pytest.raises(PreconditionError):
        catalog.closed_form_inverse_shared_product(shared_product_q.parse("t1"))

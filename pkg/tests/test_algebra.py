"""
Unit tests for AlgebraSpec, Superalgebra and Element.
Test Coverage:
- Spec validation and loading from files
- Construction errors (inhomogeneous relations, unit ideal)
- Reduced basis, dimensions and labels
- Arithmetic: Koszul sign, scalar multiples and powers (the ring laws live in test_properties)
- Parity decomposition and homogeneity
- Enumeration order over finite fields
- Domain mismatches between algebras
"""

import random

from fractions import Fraction

import pytest

from pydantic import ValidationError

from superpy import catalog
from superpy.algebra import (
    AlgebraSpec,
    Superalgebra,
    add_scale,
    build_algebra,
    canonical_key,
    enumerate_elements,
    koszul_sign,
    monomial_key,
    multiply,
    parity_decompose,
)
from superpy.exceptions import DomainMismatchError, SpecError, UnsupportedError
from tests.conftest import _MockData, spec_path


# ==================== Monomials ====================


def test_koszul_sign():
    """
    Test that koszul_sign():
    - Is +1 when every generator of a precedes every generator of b
    - Counts inversions otherwise
    """
    assert koszul_sign(0b01, 0b10) == 1
    assert koszul_sign(0b10, 0b01) == -1
    assert koszul_sign(0b110, 0b001) == 1
    assert koszul_sign(0b100, 0b011) == 1
    assert koszul_sign(0b010, 0b101) == -1


def test_monomial_order_is_degree_first():
    masks = sorted(range(8), key=monomial_key)
    assert masks == [0, 1, 2, 4, 3, 5, 6, 7]


def test_canonical_key_starts_from_largest_monomial():
    assert canonical_key((1, 2, 3)) == (3, 2, 1)


# ==================== Spec ====================


def test_spec_from_file():
    """
    Test that AlgebraSpec.from_file():
    - Loads and validates a shipped spec document
    """
    spec = AlgebraSpec.from_file(spec_path("shared_product_q"))
    assert spec.odd_generators == ("t1", "t2", "t3")
    assert spec.relations == ("t1*t2 - t1*t3",)
    assert spec == _MockData.spec(_MockData.SHARED_PRODUCT_Q)


def test_malformed_spec_raises_validation_error():
    with pytest.raises(ValidationError):
        _MockData.spec(_MockData.MALFORMED)


def test_spec_rejects_integer_base_ring():
    with pytest.raises(ValidationError):
        AlgebraSpec.model_validate({"field": {"kind": "Z"}, "odd_generators": ["t1"]})


def test_spec_rejects_bad_generator_name():
    with pytest.raises(ValidationError):
        AlgebraSpec.model_validate({"field": {"kind": "Q"}, "odd_generators": ["1t"]})


def test_inhomogeneous_relation_raises_spec_error():
    with pytest.raises(SpecError):
        build_algebra(_MockData.spec(_MockData.INHOMOGENEOUS))


def test_unit_ideal_raises_spec_error():
    spec = AlgebraSpec(field=catalog.Q, odd_generators=("t1", "t2"), relations=("1 + t1*t2",))
    with pytest.raises(SpecError):
        build_algebra(spec)


# ==================== Shape ====================


def test_free_algebra_shape(f2_pair: Superalgebra):
    """
    Test that Superalgebra:
    - Keeps every monomial of a free exterior algebra
    - Reports graded dimensions, size and labels
    """
    assert f2_pair.dim == 4
    assert f2_pair.dims == (2, 2)
    assert f2_pair.size == 16
    assert f2_pair.basis_labels() == ["1", "t1", "t2", "t1*t2"]
    assert f2_pair.nonconstant_indices == (1, 2, 3)


def test_shared_product_shape(shared_product_q: Superalgebra):
    """
    Test that Superalgebra:
    - Drops the leading monomials of the relation ideal from the basis
    - Reports the quotient dimensions 3|3
    """
    assert shared_product_q.basis_labels() == ["1", "t1", "t2", "t3", "t1*t2", "t2*t3"]
    assert shared_product_q.dims == (3, 3)
    assert shared_product_q.size is None


def test_square_zero_shape(square_zero_f3: Superalgebra):
    assert square_zero_f3.basis_labels() == ["1", "e1", "e2", "e3"]
    assert square_zero_f3.dims == (1, 3)


def test_str(shared_product_q: Superalgebra, f2_pair: Superalgebra):
    assert str(f2_pair) == "F2[t1, t2]"
    assert str(shared_product_q) == "Q[t1, t2, t3]/(t1*t2 - t1*t3)"


# ==================== Arithmetic ====================


def test_odd_generators_anticommute(free_q_pair: Superalgebra):
    t1, t2 = free_q_pair.gen("t1"), free_q_pair.gen("t2")
    assert t1 * t2 == -(t2 * t1)
    assert (t1 * t1).is_zero()
    assert multiply(t1, t2) == free_q_pair.parse("t1*t2")


def test_scalar_multiplication(free_q_pair: Superalgebra):
    t1 = free_q_pair.gen("t1")
    assert 2 * t1 == t1 * 2 == t1.scale(Fraction(2))
    assert add_scale(t1, 3, t1) == t1.scale(4)
    with pytest.raises(DomainMismatchError):
        t1.scale(catalog.F3.scalar(1))


def test_power(dual_q: Superalgebra):
    x = dual_q.parse("2 + e")
    assert x**0 == dual_q.one()
    assert x**3 == dual_q.parse("8 + 12*e")


def test_mixing_algebras_raises(f2_pair: Superalgebra):
    other = build_algebra(catalog.free_f2_pair())
    with pytest.raises(DomainMismatchError):
        f2_pair.gen("t1") + other.gen("t1")
    with pytest.raises(DomainMismatchError):
        f2_pair.gen("t1") * other.gen("t1")


def test_element_rejects_wrong_length(f2_pair: Superalgebra):
    with pytest.raises(ValueError):
        f2_pair.element([1, 0])


# ==================== Parity ====================


def test_parity_decompose(shared_product_q: Superalgebra):
    """
    Test that parity_decompose():
    - Splits an element into even and odd parts that sum back
    - Reports parity None for mixed elements
    """
    x = shared_product_q.parse("1 + t1 + t1*t2 + t3")
    even, odd = parity_decompose(x)
    assert even == shared_product_q.parse("1 + t1*t2")
    assert odd == shared_product_q.parse("t1 + t3")
    assert even + odd == x
    assert x.parity is None and not x.is_homogeneous()
    assert even.parity == 0 and odd.parity == 1
    assert shared_product_q.zero().parity == 0


def test_body(dual_q: Superalgebra):
    assert dual_q.parse("3/2 + e").body == catalog.Q.scalar("3/2")


# ==================== Enumeration ====================


def test_enumerate_elements_canonical_order(f2_pair: Superalgebra):
    """
    Test that enumerate_elements():
    - Lists all q^dim elements once
    - Orders them by coefficients from the largest monomial down
    """
    elements = list(enumerate_elements(f2_pair))
    assert len(set(elements)) == 16
    assert [str(x) for x in elements[:5]] == ["0", "1", "t1", "1 + t1", "t2"]
    assert str(elements[-1]) == "1 + t1 + t2 + t1*t2"
    keys = [canonical_key(x.coeffs) for x in elements]
    assert keys == sorted(keys)


def test_enumeration_over_rationals_is_unsupported(dual_q: Superalgebra):
    with pytest.raises(UnsupportedError):
        enumerate_elements(dual_q)


def test_random_element_parity(square_zero_f3: Superalgebra):
    rng = random.Random(0)
    for _ in range(10):
        assert square_zero_f3.random_element(rng, parity=1).parity in (0, 1)
        assert square_zero_f3.random_element(rng, parity=0).parity == 0

"""
Named algebras and closed-form inverse formulas.

Every factory returns a validated `AlgebraSpec`; `build` turns a library name
into a `Superalgebra`.

- `dual_numbers`: K[e], the dual numbers with an odd e.
- `square_zero`: K[e1..eN] with every product ei*ej zero.
- `free_f2_pair`: the free algebra on t1, t2 over 𝔽₂ (16 elements).
- `shared_product`: K[t1, t2, t3]/(t1*t2 - t1*t3), a superfield that is not a UFSR.
- `free_q_pair`: the free algebra on t1, t2 over ℚ, regular but not a UFSR.

Example:
    ```python
    algebra = build("shared_product", field=ScalarDomain.prime_field(3))
    x = algebra.parse("1 + t1 + t1*t2")
    assert closed_form_inverse_shared_product(x) == algebra.structure.invert(x)
    ```
"""

import logging

from typing import Callable, Optional

from superpy.algebra import AlgebraSpec, Element, Superalgebra, build_algebra
from superpy.exceptions import PreconditionError, SpecError
from superpy.scalars import ScalarDomain

_logger = logging.getLogger(__name__)

Q = ScalarDomain.rationals()
F2 = ScalarDomain.prime_field(2)
F3 = ScalarDomain.prime_field(3)


def dual_numbers(field: ScalarDomain = Q) -> AlgebraSpec:
    return AlgebraSpec(field=field, odd_generators=("e",))


def square_zero(field: ScalarDomain = F3, count: int = 3) -> AlgebraSpec:
    """K[e1..eN] with every ei*ej = 0."""
    names = tuple(f"e{i}" for i in range(1, count + 1))
    relations = tuple(f"{a}*{b}" for i, a in enumerate(names) for b in names[i + 1 :])
    return AlgebraSpec(field=field, odd_generators=names, relations=relations)


def free_f2_pair() -> AlgebraSpec:
    return AlgebraSpec(field=F2, odd_generators=("t1", "t2"))


def shared_product(field: ScalarDomain = Q) -> AlgebraSpec:
    return AlgebraSpec(field=field, odd_generators=("t1", "t2", "t3"), relations=("t1*t2 - t1*t3",))


def free_q_pair() -> AlgebraSpec:
    return AlgebraSpec(field=Q, odd_generators=("t1", "t2"))


_FAMILIES: dict[str, Callable[..., AlgebraSpec]] = {
    "dual_numbers": dual_numbers,
    "square_zero": square_zero,
    "free_f2_pair": free_f2_pair,
    "shared_product": shared_product,
    "free_q_pair": free_q_pair,
}


def library() -> dict[str, AlgebraSpec]:
    """Every named algebra with its default field."""
    return {name: factory() for name, factory in _FAMILIES.items()}


def build(name: str, field: Optional[ScalarDomain] = None) -> Superalgebra:
    """Build a library algebra, optionally over another field.

    Raises:
        SpecError: If the name is unknown.
        PreconditionError: If a field is given for an algebra with a fixed field.
    """
    if name not in _FAMILIES:
        raise SpecError(f"unknown library algebra {name!r}, expected one of {sorted(_FAMILIES)}")
    factory = _FAMILIES[name]
    _logger.debug(f"building library algebra {name} over {field or 'its default field'}")
    if field is None:
        return build_algebra(factory())
    if name in ("free_f2_pair", "free_q_pair"):
        raise PreconditionError(f"{name} has a fixed field")
    return build_algebra(factory(field))


# ==================== inverse formulas ====================


def _body(x: Element):
    algebra = x.algebra
    if x.coeffs[0] == 0:
        raise PreconditionError(f"{x} is not a unit")
    return algebra.domain.inv(x.coeffs[0])


def closed_form_inverse_square_zero(x: Element) -> Element:
    """α₀⁻¹ − Σ αᵢα₀⁻²εᵢ, valid when the maximal ideal squares to zero.

    Raises:
        PreconditionError: If x is not a unit or 𝔪² ≠ 0.
    """
    structure = x.algebra.structure
    m = structure.maximal_ideal()
    if not (m * m).is_zero():
        raise PreconditionError(f"the maximal ideal of {x.algebra} does not square to zero")
    inv = _body(x)
    nilpotent = x - x.algebra.one().scale(x.coeffs[0])
    return x.algebra.one().scale(inv) - nilpotent.scale(inv * inv)


def _shared_product_coefficients(x: Element) -> dict[str, object]:
    labels = x.algebra.basis_labels()
    if labels != ["1", "t1", "t2", "t3", "t1*t2", "t2*t3"]:
        raise PreconditionError(f"{x.algebra} is not the shared-product algebra")
    return dict(zip(labels, x.coeffs))


def _from_labels(algebra: Superalgebra, coefficients: dict[str, object]) -> Element:
    labels = algebra.basis_labels()
    return algebra.element([coefficients.get(label, 0) for label in labels])


def closed_form_inverse_shared_product(x: Element) -> Element:
    """γ = α₀⁻¹ − α₀⁻²(α₁t1 + α₂t2 + α₃t3 + α₁₂t1t2 + α₂₃t2t3).

    Every degree-3 product vanishes in this algebra, so the nilpotent part
    squares to zero and the inverse has no cross terms.

    Raises:
        PreconditionError: If x is not a unit of the shared-product algebra.
    """
    a = _shared_product_coefficients(x)
    inv = _body(x)
    gamma = {label: -inv * inv * c for label, c in a.items()}
    gamma["1"] = inv
    return _from_labels(x.algebra, gamma)


def cross_term_shared_product_inverse(x: Element) -> Element:
    """The variant with cross terms γ₁₂ = 2α₀⁻³α₁α₂ − α₀⁻²α₁₂ and γ₂₃ = 2α₀⁻³α₂α₃ − α₀⁻²α₂₃.

    It agrees with the true inverse exactly when α₁α₂ = α₂α₃ = 0.

    Raises:
        PreconditionError: If x is not a unit of the shared-product algebra.
    """
    a = _shared_product_coefficients(x)
    gamma = _shared_product_coefficients(closed_form_inverse_shared_product(x))
    inv = _body(x)
    gamma["t1*t2"] = gamma["t1*t2"] + 2 * inv**3 * a["t1"] * a["t2"]
    gamma["t2*t3"] = gamma["t2*t3"] + 2 * inv**3 * a["t2"] * a["t3"]
    return _from_labels(x.algebra, gamma)

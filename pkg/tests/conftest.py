"""
Pytest configuration and fixtures for superpy testing.

This module provides shared fixtures for the library algebras and a
`_MockData` class giving access to the algebra spec documents shipped under
`tests/specs/`.

Algebras are cheap to build but their services memoize expensive answers, so
the fixtures are function scoped: every test starts from fresh caches.

Property tests run under the "superpy" hypothesis profile: no deadline, and a
derandomized search so that every run draws the same examples.

Fixtures:
    f2_pair: The free algebra on t1, t2 over 𝔽₂.
    dual_q, dual_f3: The dual numbers over ℚ and 𝔽₃.
    square_zero_f3: F3[e1, e2, e3] with every ei*ej = 0.
    shared_product_q, shared_product_f3: The shared-product algebra over ℚ and 𝔽₃.
    free_q_pair: The free algebra on t1, t2 over ℚ.

Classes:
    _MockData: Spec documents loaded from JSON files.
"""

import json
from typing import Any, Final

import pytest

from hypothesis import settings

from superpy import catalog
from superpy.algebra import AlgebraSpec, Superalgebra, build_algebra

settings.register_profile("superpy", deadline=None, derandomize=True)
settings.load_profile("superpy")


@pytest.fixture
def f2_pair() -> Superalgebra:
    return build_algebra(catalog.free_f2_pair())


@pytest.fixture
def dual_q() -> Superalgebra:
    return build_algebra(catalog.dual_numbers(catalog.Q))


@pytest.fixture
def dual_f3() -> Superalgebra:
    return build_algebra(catalog.dual_numbers(catalog.F3))


@pytest.fixture
def square_zero_f3() -> Superalgebra:
    return build_algebra(catalog.square_zero(catalog.F3))


@pytest.fixture
def shared_product_q() -> Superalgebra:
    return build_algebra(catalog.shared_product(catalog.Q))


@pytest.fixture
def shared_product_f3() -> Superalgebra:
    return build_algebra(catalog.shared_product(catalog.F3))


@pytest.fixture
def free_q_pair() -> Superalgebra:
    return build_algebra(catalog.free_q_pair())


_data_cache: dict[str, Any] = {}


def spec_path(file_name: str) -> str:
    return f"tests/specs/{file_name}.json"


def _load_data(file_name: str) -> Any:
    if file_name in _data_cache:
        return _data_cache[file_name].copy()

    with open(spec_path(file_name), encoding="utf-8") as f:
        data = json.load(f)
        _data_cache[file_name] = data
        return data.copy()


class _MockData:
    """
    A container class for the spec documents used in testing.

    All attributes are class-level constants loaded at module import time.

    Attributes:
        F2_T1T2 (dict): The free algebra on t1, t2 over 𝔽₂.
        SQUARE_ZERO_F3 (dict): F3[e1, e2, e3] with every ei*ej = 0.
        SHARED_PRODUCT_Q (dict): Q[t1, t2, t3]/(t1*t2 - t1*t3).
        SHARED_PRODUCT_F3 (dict): F3[t1, t2, t3]/(t1*t2 - t1*t3).
        DUAL_Q (dict): The dual numbers over ℚ.
        DUAL_F3 (dict): The dual numbers over 𝔽₃.
        FREE_Q_PAIR (dict): The free algebra on t1, t2 over ℚ.
        MALFORMED (dict): A document pydantic rejects (non-prime modulus, repeated generator).
        INHOMOGENEOUS (dict): A well-formed document whose relation mixes parities.
    """

    F2_T1T2: Final[dict] = _load_data("f2_t1t2")
    SQUARE_ZERO_F3: Final[dict] = _load_data("square_zero_f3")
    SHARED_PRODUCT_Q: Final[dict] = _load_data("shared_product_q")
    SHARED_PRODUCT_F3: Final[dict] = _load_data("shared_product_f3")
    DUAL_Q: Final[dict] = _load_data("dual_q")
    DUAL_F3: Final[dict] = _load_data("dual_f3")
    FREE_Q_PAIR: Final[dict] = _load_data("free_q_pair")
    MALFORMED: Final[dict] = _load_data("malformed")
    INHOMOGENEOUS: Final[dict] = _load_data("inhomogeneous")

    @staticmethod
    def spec(data: dict) -> AlgebraSpec:
        return AlgebraSpec.model_validate(data)

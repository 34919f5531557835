"""
End-to-end verification suite over the library algebras.

Each check is a small function registered under a name that says what it
verifies (for example `free-f2-pair/not-ufsr`). `run_verification` runs them
all: a check that fails or errors becomes a failed `CheckResult`, and the
error is logged.

The algebras a check uses come from `superpy.catalog`, and can be replaced
through `overrides` to run the suite against other specs. An override that
names no algebra of the suite raises `SpecError` before any check runs.

Classes:
    VerificationReport: The outcome of every check.

Example:
    ```python
    report = run_verification(census_samples=20)
    assert report.passed, [c.name for c in report.failures]
    ```
"""

import logging
import random

from typing import Callable, Optional, TypeAlias

from superpy import catalog
from superpy._superpy_model import _SuperpyModel
from superpy.algebra import AlgebraSpec, Element, Superalgebra, build_algebra
from superpy.census import DEFAULT_CENSUS_SAMPLES, DEFAULT_SEED, run_census
from superpy.exceptions import SpecError
from superpy.factorization import CheckResult, Decision, UfsrStatus, WitnessKind
from superpy.superpoly import zint_square_report

_logger = logging.getLogger(__name__)

LAW_SAMPLES = 500
"""Random cases drawn per algebra by the algebra-law check."""

CheckOutcome: TypeAlias = tuple[bool, str]

_CHECKS: list[tuple[str, Callable[["_Context"], CheckOutcome]]] = []


def _check(name: str):
    def register(func: Callable[["_Context"], CheckOutcome]) -> Callable[["_Context"], CheckOutcome]:
        _CHECKS.append((name, func))
        return func

    return register


class VerificationReport(_SuperpyModel):
    checks: list[CheckResult] = []

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]


class _Context:
    """Lazily built algebras shared by the checks of one run."""

    def __init__(self, overrides: dict[str, AlgebraSpec], census_samples: int, seed: int):
        self._specs = {
            "dual_numbers": catalog.dual_numbers(catalog.Q),
            "dual_numbers_f3": catalog.dual_numbers(catalog.F3),
            "square_zero": catalog.square_zero(catalog.F3),
            "square_zero_q": catalog.square_zero(catalog.Q, count=5),
            "free_f2_pair": catalog.free_f2_pair(),
            "shared_product": catalog.shared_product(catalog.Q),
            "shared_product_f3": catalog.shared_product(catalog.F3),
            "free_q_pair": catalog.free_q_pair(),
        }
        unknown = sorted(set(overrides) - set(self._specs))
        if unknown:
            raise SpecError(f"cannot override unknown algebras {unknown}, expected names from {sorted(self._specs)}")
        self._specs.update(overrides)
        self._algebras: dict[str, Superalgebra] = {}
        self.census_samples = census_samples
        self.seed = seed

    def __getitem__(self, name: str) -> Superalgebra:
        if name not in self._algebras:
            self._algebras[name] = build_algebra(self._specs[name])
        return self._algebras[name]

    def names(self) -> list[str]:
        return list(self._specs)

    def finite_names(self) -> list[str]:
        return [name for name in self._specs if self._specs[name].field.is_finite]


def _random_units(algebra: Superalgebra, rng: random.Random, count: int) -> list[Element]:
    units = []
    while len(units) < count:
        x = algebra.random_element(rng)
        if x.coeffs[0] != 0:
            units.append(x)
    return units


# ==================== free algebra on two generators over F2 ====================


@_check("free-f2-pair/elements")
def _f2_elements(ctx: _Context) -> CheckOutcome:
    count = sum(1 for _ in ctx["free_f2_pair"].elements())
    return count == 16, f"{count} elements"


@_check("free-f2-pair/units")
def _f2_units(ctx: _Context) -> CheckOutcome:
    algebra = ctx["free_f2_pair"]
    listed = ["1", "1 + t1", "1 + t2", "1 + t1 + t2", "1 + t1*t2", "1 + t1 + t1*t2", "1 + t2 + t1*t2", "1 + t1 + t2 + t1*t2"]
    expected = {algebra.parse(text) for text in listed}
    units = set(algebra.structure.units())
    return units == expected, f"{len(units)} units"


@_check("free-f2-pair/irreducibles")
def _f2_irreducibles(ctx: _Context) -> CheckOutcome:
    algebra = ctx["free_f2_pair"]
    t1t2 = algebra.parse("t1*t2")
    nonunits = [x for x in algebra.elements() if not x.is_zero() and x.coeffs[0] == 0]
    reducible = [x for x in nonunits if not algebra.factorization.is_irreducible(x)]
    return reducible == [t1t2], f"reducible: {[str(x) for x in reducible]}"


@_check("free-f2-pair/inequivalent-factorizations")
def _f2_factorizations(ctx: _Context) -> CheckOutcome:
    algebra = ctx["free_f2_pair"]
    service = algebra.factorization
    found = service.factorizations(algebra.parse("t1*t2"))
    if len(found) < 2:
        return False, f"{len(found)} classes"
    status = service.equivalence_status(found[0], found[1])
    return status is Decision.FALSE, "; ".join(str(f) for f in found)


@_check("free-f2-pair/not-ufsr")
def _f2_not_ufsr(ctx: _Context) -> CheckOutcome:
    verdict = ctx["free_f2_pair"].factorization.ufsr_check()
    witness = verdict.witness
    ok = verdict.status is UfsrStatus.NOT_UFSR and str(witness.element) == "t1*t2" and witness.holds()
    return ok, verdict.detail


@_check("free-f2-pair/homogeneous-not-ufsr")
def _f2_homogeneous(ctx: _Context) -> CheckOutcome:
    verdict = ctx["free_f2_pair"].factorization.homogeneous_ufsr_check()
    return verdict.status is UfsrStatus.NOT_UFSR and verdict.witness.holds(), verdict.detail


@_check("free-f2-pair/even-part-ufr")
def _f2_even(ctx: _Context) -> CheckOutcome:
    verdict = ctx["free_f2_pair"].factorization.even_ufsr_check()
    return verdict.is_ufsr, verdict.detail


@_check("free-f2-pair/superfield")
def _f2_superfield(ctx: _Context) -> CheckOutcome:
    structure = ctx["free_f2_pair"].structure
    return structure.is_superfield() and structure.nilradical() == structure.canonical_superideal(), ""


# ==================== dual numbers and square-zero algebras ====================


@_check("dual-numbers/ufsr")
def _dual_ufsr(ctx: _Context) -> CheckOutcome:
    structural = ctx["dual_numbers"].factorization.structural_ufsr_check()
    exhaustive = ctx["dual_numbers_f3"].factorization.ufsr_check()
    return structural.is_ufsr and exhaustive.is_ufsr, f"{structural.status.value}, {exhaustive.status.value}"


@_check("square-zero/ufsr")
def _square_zero_ufsr(ctx: _Context) -> CheckOutcome:
    verdicts = [
        ctx["square_zero"].factorization.ufsr_check(),
        ctx["square_zero"].factorization.structural_ufsr_check(),
        ctx["square_zero_q"].factorization.structural_ufsr_check(),
    ]
    return all(v.is_ufsr for v in verdicts), ", ".join(v.status.value for v in verdicts)


@_check("square-zero/inverse-formula")
def _square_zero_inverse(ctx: _Context) -> CheckOutcome:
    rng = random.Random(ctx.seed)
    for name in ("dual_numbers", "dual_numbers_f3", "square_zero", "square_zero_q"):
        algebra = ctx[name]
        for x in _random_units(algebra, rng, 100):
            if catalog.closed_form_inverse_square_zero(x) != algebra.structure.invert(x):
                return False, f"{name}: {x}"
    return True, ""


@_check("square-zero/normal-irreducibles")
def _square_zero_normal_irreducibles(ctx: _Context) -> CheckOutcome:
    dual = ctx["dual_numbers_f3"].factorization.normal_irreducible_profile()
    square = ctx["square_zero"].factorization.normal_irreducible_profile()
    e1 = ctx["square_zero"].parse("e1")
    ok = (
        dual.all_prime
        and dual.all_zerodivisors
        and dual.has_zerodivisor
        and square.all_zerodivisors
        and square.has_zerodivisor
        and not ctx["square_zero"].factorization.is_prime_element(e1)
    )
    return ok, f"non-prime in square-zero: {square.non_prime}"


# ==================== shared-product algebra ====================


@_check("shared-product/relation")
def _shared_relation(ctx: _Context) -> CheckOutcome:
    algebra = ctx["shared_product"]
    ok = algebra.parse("t1*t2") == algebra.parse("t1*t3") and algebra.parse("t1*t2*t3").is_zero()
    return ok and algebra.dims == (3, 3), str(algebra.basis_labels())


@_check("shared-product/superfield")
def _shared_superfield(ctx: _Context) -> CheckOutcome:
    results = []
    for name in ("shared_product", "shared_product_f3"):
        structure = ctx[name].structure
        results.append(structure.is_superfield() and structure.canonical_superideal().dims == (2, 3))
    return all(results), ""


@_check("shared-product/inverse-formula")
def _shared_inverse(ctx: _Context) -> CheckOutcome:
    rng = random.Random(ctx.seed)
    for name in ("shared_product", "shared_product_f3"):
        algebra = ctx[name]
        for x in _random_units(algebra, rng, 100):
            inverse = algebra.structure.invert(x)
            if catalog.closed_form_inverse_shared_product(x) != inverse:
                return False, f"{name}: closed form fails at {x}"
            a = dict(zip(algebra.basis_labels(), x.coeffs))
            vanishing = algebra.domain.mul(a["t1"], a["t2"]) == 0 and algebra.domain.mul(a["t2"], a["t3"]) == 0
            if (catalog.cross_term_shared_product_inverse(x) == inverse) != vanishing:
                return False, f"{name}: cross-term variant misbehaves at {x}"
    return True, ""


@_check("shared-product/not-ufsr")
def _shared_not_ufsr(ctx: _Context) -> CheckOutcome:
    verdict = ctx["shared_product_f3"].factorization.ufsr_check()
    witness = verdict.witness
    ok = verdict.status is UfsrStatus.NOT_UFSR and str(witness.element) == "t1*t2" and witness.holds()
    return ok, verdict.detail


@_check("shared-product/not-regular")
def _shared_not_regular(ctx: _Context) -> CheckOutcome:
    dimension = ctx["shared_product"].dimension
    ksdim, sdim = dimension.ksdim(), dimension.cotangent_sdim().sdim
    return not dimension.is_regular_superring() and str(ksdim) == "0|2" and str(sdim) == "0|3", f"{ksdim} vs {sdim}"


# ==================== free algebra on two generators over Q ====================


@_check("free-q-pair/regular")
def _q_regular(ctx: _Context) -> CheckOutcome:
    dimension = ctx["free_q_pair"].dimension
    ksdim, sdim = dimension.ksdim(), dimension.cotangent_sdim().sdim
    return dimension.is_regular_superring() and str(ksdim) == "0|2" and str(sdim) == "0|2", f"{ksdim} vs {sdim}"


@_check("free-q-pair/not-ufsr")
def _q_not_ufsr(ctx: _Context) -> CheckOutcome:
    verdict = ctx["free_q_pair"].factorization.structural_ufsr_check()
    witness = verdict.witness
    ok = (
        verdict.status is UfsrStatus.NOT_UFSR
        and witness.kind is WitnessKind.INEQUIVALENT
        and str(witness.element) == "t1*t2"
        and witness.holds()
    )
    return ok, verdict.detail


# ==================== dual integers ====================


@_check("dual-integers/square-of-prime")
def _zint(ctx: _Context) -> CheckOutcome:
    for p in (2, 3, 5, 7):
        report = zint_square_report(p)
        if not (report.products_match and report.non_associate and report.units_classified):
            return False, f"p = {p}"
    return True, ""


# ==================== structure and theorems ====================


@_check("core/algebra-laws")
def _algebra_laws(ctx: _Context) -> CheckOutcome:
    rng = random.Random(ctx.seed)
    for name in ctx.names():
        algebra = ctx[name]
        for _ in range(LAW_SAMPLES):
            a, b, c = (algebra.random_element(rng) for _ in range(3))
            if (a * b) * c != a * (b * c):
                return False, f"{name}: associativity"
            x, y = algebra.random_element(rng, parity=rng.randint(0, 1)), algebra.random_element(rng, parity=rng.randint(0, 1))
            sign = -1 if x.parity == 1 and y.parity == 1 else 1
            if x * y != (y * x).scale(sign):
                return False, f"{name}: supercommutativity"
            if not (x.odd_part() * x.odd_part()).is_zero():
                return False, f"{name}: odd square"
    return True, ""


@_check("core/local-superdomains")
def _local(ctx: _Context) -> CheckOutcome:
    for name in ctx.names():
        structure = ctx[name].structure
        j = structure.canonical_superideal()
        index = structure.nilpotency_index(j)
        if not (structure.is_local() and structure.is_superdomain() and index is not None and index <= ctx[name].n + 1):
            return False, name
    return True, ""


@_check("weaker-notions/homogeneous-agrees")
def _homogeneous_agrees(ctx: _Context) -> CheckOutcome:
    for name in ctx.finite_names():
        service = ctx[name].factorization
        if service.homogeneous_ufsr_check().status is not service.ufsr_check().status:
            return False, name
    return True, ""


@_check("weaker-notions/even-part-oracle")
def _even_oracle(ctx: _Context) -> CheckOutcome:
    for name in ctx.finite_names():
        algebra = ctx[name]
        if algebra.factorization.even_ufsr_check().is_ufsr != even_part_factorization_oracle(algebra):
            return False, name
    return True, ""


@_check("census/theorems")
def _census(ctx: _Context) -> CheckOutcome:
    report = run_census(seed=ctx.seed, samples=ctx.census_samples, max_gens=3)
    return report.counterexamples == 0, f"{report.ufsr_superdomains} UFSR superdomains of {report.samples}"


def even_part_factorization_oracle(algebra: Superalgebra) -> bool:
    """Decide unique factorization in R₀̄ by brute force over its elements.

    Units, irreducibles, associates and factorizations are all found by
    trying every product of two elements of R₀̄.
    """
    even = [x.coeffs for x in algebra.elements() if x.parity == 0]
    mul = algebra.mul_coeffs
    zero = algebra.zero().coeffs
    units = [u for u in even if u[0] != 0]
    nonunits = [x for x in even if x[0] == 0 and x != zero]
    products = {mul(b, c) for b in nonunits for c in nonunits}
    irreducibles = [x for x in nonunits if x not in products]

    def cls(x):
        return min((mul(u, x) for u in units), key=lambda v: v[::-1])

    memo: dict = {}

    def classes(x) -> frozenset:
        if x not in memo:
            found = set()
            if x in irreducibles:
                found.add((cls(x),))
            for f in irreducibles:
                for y in nonunits:
                    if mul(f, y) == x:
                        found.update(tuple(sorted(ms + (cls(f),))) for ms in classes(y))
            memo[x] = frozenset(found)
        return memo[x]

    return all(len(classes(x)) == 1 for x in nonunits)


def run_verification(
    overrides: Optional[dict[str, AlgebraSpec]] = None,
    census_samples: int = DEFAULT_CENSUS_SAMPLES,
    seed: int = DEFAULT_SEED,
    only: Optional[list[str]] = None,
) -> VerificationReport:
    """Run every registered check.

    Args:
        overrides (Optional[dict[str, AlgebraSpec]]): Replacement specs by
            library name, e.g. {"square_zero": ...}.
        census_samples (int): Size of the census check.
        seed (int): Seed of every random choice.
        only (Optional[list[str]]): Names (or name prefixes) of the checks to run.

    Returns:
        VerificationReport: One result per check; errors become failures.

    Raises:
        SpecError: If an override names no algebra of the suite.
    """
    ctx = _Context(overrides or {}, census_samples, seed)
    report = VerificationReport()
    for name, func in _CHECKS:
        if only and not any(name.startswith(prefix) for prefix in only):
            continue
        try:
            passed, detail = func(ctx)
        except Exception as e:
            _logger.error(f"Error running check {name}: {e}")
            passed, detail = False, f"{type(e).__name__}: {e}"
        report.checks.append(CheckResult(name=name, passed=bool(passed), detail=detail))
        _logger.info(f"{name}: {'pass' if passed else 'FAIL'}")
    return report


def check_names() -> list[str]:
    return [name for name, _ in _CHECKS]

"""
Randomized census of small algebras.

A census draws random quotients of exterior algebras over 𝔽₂ or 𝔽₃ by
degree-2 relations, classifies each one, and checks on every UFSR superdomain
that it is local with maximal ideal J_R, is a superfield, has nilpotent normal
irreducibles that are zerodivisors, has nilpotency index of J_R at most n + 1,
and has Krull superdimension 0|d with d ≥ 1.

Classes:
    CensusRow: Classification of one sampled algebra.
    CensusReport: The whole table.

Example:
    ```python
    report = run_census(seed=0, samples=50, max_gens=3)
    assert report.counterexamples == 0
    ```
"""

import logging
import random

from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from superpy._superpy_model import _SuperpyModel
from superpy.algebra import AlgebraSpec, build_algebra
from superpy.exceptions import PreconditionError, SuperpyError, UnsupportedError
from superpy.factorization import CheckResult
from superpy.scalars import ScalarDomain

_logger = logging.getLogger(__name__)

DEFAULT_SEED = 0
"""Seed used when none is given, so runs are reproducible."""

DEFAULT_CENSUS_SAMPLES = 200
"""Number of algebras a census draws by default."""

DEFAULT_CENSUS_GENERATORS = 3
"""Default bound on the number of odd generators per sampled algebra."""

MAX_CENSUS_GENERATORS = 3
"""Hard bound on the number of odd generators per sampled algebra.

Four generators give 2^16 elements over 𝔽₂ and 3^16 over 𝔽₃, which the
exhaustive unique-factorization check cannot sweep in reasonable time.
"""

MAX_CENSUS_ELEMENTS = 3**8
"""Largest algebra, by number of elements, that `classify` analyses.

This is the free algebra on three generators over 𝔽₃. Larger algebras are
recorded as skipped instead of being swept.
"""


class CensusRow(_SuperpyModel):
    """Classification of one sampled algebra.

    Attributes:
        index (int): Sample index.
        field (str): The base field.
        generators (int): Number of odd generators.
        relations (list[str]): The sampled relations.
        dims (Optional[tuple[int, int]]): Graded dimensions.
        ufsr (Optional[bool]): Unique factorization verdict.
        superdomain (Optional[bool]): J_R is prime.
        superfield (Optional[bool]): J_R is maximal.
        regular (Optional[bool]): Ksdim equals the cotangent superdimension.
        ksdim (Optional[str]): Krull superdimension even|odd.
        nilpotency_index (Optional[int]): Least m with J_R^m = 0.
        normal_irreducibles_prime (Optional[bool]): Every normal irreducible is prime.
        checks (list[CheckResult]): Assertions made on UFSR superdomains.
        error (Optional[str]): Set when the sample could not be classified.
        skipped (Optional[str]): Set when the algebra is too large to sweep.
    """

    index: int
    field: str
    generators: int
    relations: list[str]
    dims: Optional[tuple[int, int]] = None
    ufsr: Optional[bool] = None
    superdomain: Optional[bool] = None
    superfield: Optional[bool] = None
    regular: Optional[bool] = None
    ksdim: Optional[str] = None
    nilpotency_index: Optional[int] = None
    normal_irreducibles_prime: Optional[bool] = None
    checks: list[CheckResult] = []
    error: Optional[str] = None
    skipped: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None or not all(check.passed for check in self.checks)


class CensusReport(_SuperpyModel):
    seed: int
    samples: int
    max_gens: int
    field: Optional[str] = None
    rows: list[CensusRow] = []

    @property
    def counterexamples(self) -> int:
        return sum(1 for row in self.rows if row.failed)

    @property
    def ufsr_superdomains(self) -> int:
        return sum(1 for row in self.rows if row.ufsr and row.superdomain)


def random_spec(rng: random.Random, max_gens: int, field: Optional[ScalarDomain] = None) -> AlgebraSpec:
    """Draw n in [1, max_gens], a field, and 0 to 3 nonzero degree-2 relations."""
    n = rng.randint(1, max_gens)
    field = field or ScalarDomain.prime_field(rng.choice([2, 3]))
    names = [f"t{i}" for i in range(1, n + 1)]
    monomials = [f"{a}*{b}" for i, a in enumerate(names) for b in names[i + 1 :]]
    relations = []
    for _ in range(rng.randint(0, 3) if monomials else 0):
        coeffs = [rng.randrange(field.p) for _ in monomials]
        if not any(coeffs):
            coeffs[rng.randrange(len(coeffs))] = 1
        relations.append(" + ".join(f"{c}*{m}" for c, m in zip(coeffs, monomials) if c))
    return AlgebraSpec(field=field, odd_generators=tuple(names), relations=tuple(relations))


def _check(name: str, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(name=name, passed=bool(passed), detail=detail)


def classify(spec: AlgebraSpec, index: int = 0) -> CensusRow:
    """Classify one algebra and check the UFSR-superdomain conclusions."""
    row = CensusRow(
        index=index,
        field=str(spec.field),
        generators=len(spec.odd_generators),
        relations=list(spec.relations),
    )
    try:
        algebra = build_algebra(spec)
        row.dims = algebra.dims
        size = algebra.domain.p**algebra.dim if algebra.domain.is_finite else None
        if size is not None and size > MAX_CENSUS_ELEMENTS:
            row.skipped = f"{size} elements exceed the census bound of {MAX_CENSUS_ELEMENTS}"
            _logger.warning(f"census sample {index} skipped: {row.skipped}")
            return row
        structure = algebra.structure
        j = structure.canonical_superideal()
        verdict = algebra.factorization.ufsr_check()
        row.ufsr = verdict.is_ufsr
        row.superdomain = structure.is_superdomain()
        row.superfield = structure.is_superfield()
        row.regular = algebra.dimension.is_regular_superring()
        ksdim = algebra.dimension.ksdim()
        row.ksdim = str(ksdim)
        row.nilpotency_index = structure.nilpotency_index(j)
        if row.ufsr:
            profile = algebra.factorization.normal_irreducible_profile()
            row.normal_irreducibles_prime = profile.all_prime
            row.checks.append(_check("normal irreducibles are zerodivisors", profile.all_zerodivisors, str(profile.regular)))
            row.checks.append(_check("a normal irreducible zerodivisor exists", profile.has_zerodivisor))
        if row.ufsr and row.superdomain:
            n = algebra.n
            row.checks.extend(
                [
                    _check("local with maximal ideal J_R", structure.is_local() and structure.maximal_ideal() == j),
                    _check("superfield", row.superfield),
                    _check("normal irreducibles are nilpotent", profile.all_nilpotent, str(profile.non_nilpotent)),
                    _check("J_R nilpotent of index at most n + 1", row.nilpotency_index is not None and row.nilpotency_index <= n + 1),
                    _check("Krull superdimension 0|d with d >= 1", ksdim.even == 0 and ksdim.odd >= 1, row.ksdim),
                ]
            )
    except SuperpyError as e:
        _logger.error(f"Error classifying census sample {index} ({spec.relations}): {e}")
        row.error = str(e)
    _logger.info(f"census sample {index}: {row.field} n={row.generators} ufsr={row.ufsr} superdomain={row.superdomain}")
    return row


def _census_sample(task: tuple[int, int, int, Optional[ScalarDomain]]) -> CensusRow:
    seed, index, max_gens, field = task
    rng = random.Random(seed * 1_000_003 + index)
    return classify(random_spec(rng, max_gens, field), index)


def run_census(
    seed: int = DEFAULT_SEED,
    samples: int = DEFAULT_CENSUS_SAMPLES,
    max_gens: int = DEFAULT_CENSUS_GENERATORS,
    field: Optional[ScalarDomain] = None,
    jobs: int = 1,
) -> CensusReport:
    """Sample and classify `samples` algebras.

    Each sample draws from its own generator seeded by (seed, index), so the
    table does not depend on `jobs`; rows are merged in sample order.

    Raises:
        UnsupportedError: If `field` is infinite.
        PreconditionError: If max_gens is outside [1, 3], samples is negative
            or jobs is below 1.
    """
    if field is not None and not field.is_finite:
        raise UnsupportedError(f"a census needs a finite field, got {field}")
    if not 1 <= max_gens <= MAX_CENSUS_GENERATORS:
        raise PreconditionError(f"max_gens must lie in [1, {MAX_CENSUS_GENERATORS}], got {max_gens}")
    if samples < 0:
        raise PreconditionError(f"samples must be non-negative, got {samples}")
    if jobs < 1:
        raise PreconditionError(f"jobs must be at least 1, got {jobs}")
    tasks = [(seed, index, max_gens, field) for index in range(samples)]
    if jobs == 1:
        rows = [_census_sample(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_census_sample, tasks))
    report = CensusReport(
        seed=seed,
        samples=samples,
        max_gens=max_gens,
        field=str(field) if field is not None else None,
        rows=rows,
    )
    _logger.info(f"census of {samples}: {report.ufsr_superdomains} UFSR superdomains, {report.counterexamples} counterexamples")
    return report

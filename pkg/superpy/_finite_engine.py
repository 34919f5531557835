"""
Exhaustive factorization tables over finite fields.

Internal module.

`FiniteTables` answers every factorization question of one algebra by
enumeration, in one of three modes:

- `FULL`: the algebra R itself.
- `HOMOGENEOUS`: subjects and factors are homogeneous elements of R, while
  irreducibility, normality and associates are those of R.
- `EVEN`: every notion is computed inside the commutative subring R₀̄.

The tables rely on the algebra being local with nilpotent maximal ideal 𝔪
(𝔪₀ in the even subring):

- the products of two non-units form the union of the subspaces b·𝔪 for b in
  𝔪, so reducibility is a membership test in that union;
- the unit group is generated by the nonzero scalars (a primitive root) and
  the elements 1 + e, with e running over a basis of 𝔪 adapted to the
  filtration 𝔪 ⊇ 𝔪² ⊇ ...; associate classes are orbits of these generators
  acting on both sides;
- factorization multisets are invariant under associates, so the search is
  memoized per class and only one factor per right orbit f·U is tried.

Classes:
    FactorizationMode: Which ring and which elements a search ranges over.
    SweepOutcome: Result of a unique-factorization sweep.
    FiniteTables: The tables themselves.
"""

from __future__ import annotations

import itertools
import logging

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Iterator, Optional, Sequence, TypeAlias

from sympy.ntheory import primitive_root

from superpy.algebra import canonical_key
from superpy.exceptions import CapExceededError, SuperpyError, UnsupportedError
from superpy.linalg import RowSpace, Vector, solve

if TYPE_CHECKING:
    from superpy.algebra import Superalgebra

_logger = logging.getLogger(__name__)

Multiset: TypeAlias = tuple[Vector, ...]


class FactorizationMode(str, Enum):
    """Which elements a factorization search ranges over.

    Attributes:
        FULL: All elements of the algebra.
        HOMOGENEOUS: Homogeneous subjects and homogeneous factors.
        EVEN: The even subring, with its own units and irreducibles.
    """

    FULL = "full"
    HOMOGENEOUS = "homogeneous"
    EVEN = "even"


@dataclass
class SweepOutcome:
    """Result of `FiniteTables.sweep`.

    Attributes:
        subject (Optional[Vector]): The first failing subject, or None when
            every subject factors uniquely.
        factorizations (list[tuple[Vector, ...]]): Two inequivalent
            factorizations of the subject, or none if it has no factorization.
        subjects_checked (int): How many subjects were examined.
    """

    subject: Optional[Vector] = None
    factorizations: list[tuple[Vector, ...]] = field(default_factory=list)
    subjects_checked: int = 0


def multiset_key(multiset: Multiset) -> tuple:
    return tuple(canonical_key(c) for c in multiset)


class FiniteTables:
    """Exhaustive tables for one algebra over 𝔽_p in one mode.

    All vectors are raw coefficient tuples over the algebra's reduced basis.

    Args:
        algebra (Superalgebra): The algebra; its field must be finite.
        mode (FactorizationMode): The search mode.
        cap (int): Maximal recursion depth of factorization searches.
    """

    def __init__(self, algebra: "Superalgebra", mode: FactorizationMode, cap: int):
        if not algebra.is_finite:
            raise UnsupportedError(f"exhaustive factorization needs a finite field, {algebra} is over {algebra.domain}")
        self.algebra = algebra
        self.mode = FactorizationMode(mode)
        self.cap = cap
        self._p = algebra.domain.p
        self._mul = algebra.mul_coeffs
        if self.mode is FactorizationMode.EVEN:
            self._ring_indices = algebra.even_indices
        else:
            self._ring_indices = tuple(range(algebra.dim))
        self._nonunit_indices = tuple(i for i in self._ring_indices if i != 0)
        self._two_sided = self.mode is not FactorizationMode.EVEN

        self._reducible: Optional[set[Vector]] = None
        self._normal: dict[Vector, bool] = {}
        self._class_of: dict[Vector, Vector] = {}
        self._right_rep_of: dict[Vector, Vector] = {}
        self._candidates: Optional[list[Vector]] = None
        self._columns: dict[tuple[Vector, tuple[int, ...]], list[Vector]] = {}
        self._memo: dict[Vector, frozenset[Multiset]] = {}
        self._scalars, self._nilpotent_generators = self._unit_generators()

    # ==================== enumeration ====================

    def _vectors_on(self, indices: Sequence[int]) -> Iterator[Vector]:
        """All vectors supported on `indices`, in canonical order."""
        dim = self.algebra.dim
        ordered = sorted(indices, reverse=True)
        for combo in itertools.product(range(self._p), repeat=len(ordered)):
            vector = [0] * dim
            for index, c in zip(ordered, combo):
                vector[index] = c
            yield tuple(vector)

    def subjects(self) -> Iterator[Vector]:
        """Nonzero non-units the mode quantifies over, in canonical order."""
        if self.mode is FactorizationMode.HOMOGENEOUS:
            algebra = self.algebra
            even = [i for i in algebra.even_indices if i != 0]
            pool = set(self._vectors_on(even)) | set(self._vectors_on(algebra.odd_indices))
            return iter(sorted((v for v in pool if any(v)), key=canonical_key))
        return (v for v in self._vectors_on(self._nonunit_indices) if any(v))

    def is_unit(self, v: Vector) -> bool:
        return v[0] != 0

    def parity(self, v: Vector) -> Optional[int]:
        found = {self.algebra.parities[i] for i, c in enumerate(v) if c != 0}
        if len(found) > 1:
            return None
        return found.pop() if found else 0

    # ==================== irreducibility and normality ====================

    def reducible_set(self) -> set[Vector]:
        """Every product of two non-units of the mode's ring."""
        if self._reducible is None:
            dim = self.algebra.dim
            basis = [self.algebra.unit_vector(i) for i in self._nonunit_indices]
            seen: set[tuple[Vector, ...]] = set()
            reducible: set[Vector] = {tuple([0] * dim)}
            for b in self._vectors_on(self._nonunit_indices):
                lead = next((c for c in reversed(b) if c != 0), None)
                if lead != 1:
                    continue
                space = RowSpace(self.algebra.domain, dim, (self._mul(b, m) for m in basis))
                key = space.key()
                if key in seen:
                    continue
                seen.add(key)
                reducible.update(space.elements())
            _logger.debug(f"{self.algebra} ({self.mode.value}): {len(seen)} product subspaces, {len(reducible)} reducible vectors")
            self._reducible = reducible
        return self._reducible

    def is_irreducible(self, v: Vector) -> bool:
        """Nonzero non-unit of the mode's ring that is not a product of two non-units."""
        if not any(v) or self.is_unit(v):
            return False
        return v not in self.reducible_set()

    def is_normal(self, v: Vector) -> bool:
        if self.mode is FactorizationMode.EVEN or self.parity(v) is not None:
            return True
        cached = self._normal.get(v)
        if cached is None:
            algebra = self.algebra
            basis = [algebra.unit_vector(i) for i in range(algebra.dim)]
            right = RowSpace(algebra.domain, algebra.dim, (self._mul(v, m) for m in basis))
            left = RowSpace(algebra.domain, algebra.dim, (self._mul(m, v) for m in basis))
            cached = right == left
            self._normal[v] = cached
        return cached

    # ==================== units and associates ====================

    def _unit_generators(self) -> tuple[list[int], list[Vector]]:
        algebra = self.algebra
        dom = algebra.domain
        scalars = [primitive_root(self._p)] if self._p > 2 else []
        base = [algebra.unit_vector(i) for i in self._nonunit_indices]
        powers = [RowSpace(dom, algebra.dim, base)]
        while powers[-1].rank:
            previous = powers[-1].basis()
            powers.append(RowSpace(dom, algebra.dim, (self._mul(x, y) for x in previous for y in base)))
        generators = []
        for k in range(len(powers) - 1):
            adapted = powers[k + 1].copy()
            generators.extend(v for v in powers[k].basis() if adapted.add(v))
        return scalars, generators

    def unit_generators(self) -> list[Vector]:
        """A generating set of the unit group of the mode's ring."""
        one = self.algebra.unit_vector(0)
        dom = self.algebra.domain
        gens = [tuple(dom.mul(g, x) for x in one) for g in self._scalars]
        gens.extend(tuple(dom.add(x, y) for x, y in zip(one, e)) for e in self._nilpotent_generators)
        return gens

    def _orbit(self, v: Vector, left: bool) -> set[Vector]:
        normalize = self.algebra.domain.normalize
        seen = {v}
        frontier = [v]
        while frontier:
            w = frontier.pop()
            images = [tuple(normalize(g * x) for x in w) for g in self._scalars]
            for e in self._nilpotent_generators:
                images.append(tuple(normalize(x + y) for x, y in zip(w, self._mul(w, e))))
                if left:
                    images.append(tuple(normalize(x + y) for x, y in zip(w, self._mul(e, w))))
            for z in images:
                if z not in seen:
                    seen.add(z)
                    frontier.append(z)
        return seen

    def class_rep(self, v: Vector) -> Vector:
        """The canonically least associate of `v`."""
        rep = self._class_of.get(v)
        if rep is None:
            orbit = self._orbit(v, left=self._two_sided)
            rep = min(orbit, key=canonical_key)
            for w in orbit:
                self._class_of[w] = rep
        return rep

    def right_orbit(self, v: Vector) -> set[Vector]:
        """The right orbit v·U."""
        return self._orbit(v, left=False)

    def associated(self, a: Vector, b: Vector) -> bool:
        return self.class_rep(a) == self.class_rep(b)

    # ==================== factorization search ====================

    def candidates(self) -> list[Vector]:
        """Normal irreducible factors to try, one per right orbit (all in homogeneous mode)."""
        if self._candidates is None:
            found = []
            covered: set[Vector] = set()
            for v in self.subjects():
                if v in covered or not self.is_irreducible(v) or not self.is_normal(v):
                    continue
                found.append(v)
                if self.mode is not FactorizationMode.HOMOGENEOUS:
                    covered.update(self.right_orbit(v))
            _logger.debug(f"{self.algebra} ({self.mode.value}): {len(found)} factor candidates")
            self._candidates = found
        return self._candidates

    def _quotient_indices(self, f: Vector, x: Vector) -> tuple[int, ...]:
        if self.mode is FactorizationMode.HOMOGENEOUS:
            wanted = (self.parity(x) + self.parity(f)) % 2
            return tuple(i for i, par in enumerate(self.algebra.parities) if par == wanted)
        return self._ring_indices

    def quotients(self, f: Vector, x: Vector) -> list[Vector]:
        """Every nonzero y in the mode's ring with f·y = x."""
        indices = self._quotient_indices(f, x)
        columns = self._columns.get((f, indices))
        if columns is None:
            columns = [self._mul(f, self.algebra.unit_vector(i)) for i in indices]
            self._columns[(f, indices)] = columns
        solution = solve(self.algebra.domain, columns, x)
        if solution is None:
            return []
        out = []
        dim = self.algebra.dim
        for point in solution.points(self.algebra.domain):
            y = [0] * dim
            for i, c in zip(indices, point):
                y[i] = c
            y = tuple(y)
            if any(y):
                out.append(y)
        return out

    def _memo_key(self, x: Vector) -> Vector:
        return x if self.mode is FactorizationMode.HOMOGENEOUS else self.class_rep(x)

    def classes(self, x: Vector, depth: int = 1) -> frozenset[Multiset]:
        """All factorizations of `x`, each as a sorted multiset of class representatives.

        Raises:
            CapExceededError: If the recursion goes deeper than the cap.
        """
        if depth > self.cap:
            raise CapExceededError(f"factorization search exceeded depth {self.cap}")
        key = self._memo_key(x)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        if self.is_irreducible(x):
            result = frozenset({(self.class_rep(x),)}) if self.is_normal(x) else frozenset()
        else:
            found: set[Multiset] = set()
            for f in self.candidates():
                label = self.class_rep(f)
                for y in self.quotients(f, x):
                    if self.is_unit(y):
                        continue
                    for multiset in self.classes(y, depth + 1):
                        found.add(tuple(sorted(multiset + (label,), key=canonical_key)))
            result = frozenset(found)
        self._memo[key] = result
        return result

    def sorted_classes(self, x: Vector) -> list[Multiset]:
        return sorted(self.classes(x), key=multiset_key)

    def realize(self, x: Vector, multiset: Multiset) -> tuple[Vector, ...]:
        """Concrete factors of `x` whose classes form `multiset`."""
        if len(multiset) == 1:
            return (x,)
        for f in self.candidates():
            label = self.class_rep(f)
            if label not in multiset:
                continue
            rest = list(multiset)
            rest.remove(label)
            rest = tuple(rest)
            for y in sorted(self.quotients(f, x), key=canonical_key):
                if not self.is_unit(y) and rest in self.classes(y):
                    return (f,) + self.realize(y, rest)
        raise SuperpyError(f"no factorization of {x} realizes {multiset}")

    def sweep(self) -> SweepOutcome:
        """Check unique factorization for every subject, stopping at the first failure."""
        outcome = SweepOutcome()
        checked: set[Vector] = set()
        for x in self.subjects():
            if self.mode is not FactorizationMode.HOMOGENEOUS:
                rep = self.class_rep(x)
                if rep in checked:
                    continue
                checked.add(rep)
            outcome.subjects_checked += 1
            found = self.sorted_classes(x)
            if not found:
                outcome.subject = x
                return outcome
            if len(found) > 1:
                outcome.subject = x
                outcome.factorizations = [self.realize(x, found[0]), self.realize(x, found[1])]
                return outcome
        return outcome

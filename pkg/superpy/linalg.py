"""Exact linear algebra over a `ScalarDomain` field.

Vectors are plain tuples of raw scalars. Two tools cover every linear
question the library asks:

- `RowSpace` keeps a subspace in fully reduced row echelon form, with the
  pivot of a row at its *last* nonzero coordinate. Coordinates are always
  ordered from the smallest monomial to the largest, so pivots are leading
  monomials and the non-pivot coordinates form a canonical complement.
- `solve` returns the complete solution set of a linear system as a
  particular solution plus a kernel basis (`AffineSolution`), computed from
  the reduced row echelon form sympy's `DomainMatrix` gives over QQ or GF(p).

Classes:
    RowSpace: An incrementally built subspace in reduced echelon form.
    AffineSolution: The solution set of a linear system.
"""

from __future__ import annotations

import itertools

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, TypeAlias

from sympy.polys.matrices import DomainMatrix

from superpy.scalars import RawScalar, ScalarDomain

Vector: TypeAlias = tuple[RawScalar, ...]


class RowSpace:
    """A subspace of K^dim stored as a fully reduced echelon basis.

    Every stored row has a 1 at its pivot (its last nonzero coordinate) and a
    0 at the pivot of every other row, so the basis is unique for the
    subspace and reduction is a single pass.

    Attributes:
        domain (ScalarDomain): The coefficient field.
        dim (int): The dimension of the ambient space.
    """

    def __init__(self, domain: ScalarDomain, dim: int, vectors: Iterable[Sequence[RawScalar]] = ()):
        self.domain = domain
        self.dim = dim
        self._rows: dict[int, list[RawScalar]] = {}
        for vector in vectors:
            self.add(vector)

    def __len__(self):
        return len(self._rows)

    def __contains__(self, vector: Sequence[RawScalar]) -> bool:
        return self.contains(vector)

    def __eq__(self, other):
        return isinstance(other, RowSpace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> frozenset[int]:
        return frozenset(self._rows)

    def non_pivots(self) -> list[int]:
        """Coordinates that are not pivots, in increasing order."""
        return [i for i in range(self.dim) if i not in self._rows]

    def basis(self) -> list[Vector]:
        """The reduced basis, ordered by pivot."""
        return [tuple(self._rows[p]) for p in sorted(self._rows)]

    def key(self) -> tuple[Vector, ...]:
        """A hashable key identifying the subspace."""
        return tuple(self.basis())

    def copy(self) -> "RowSpace":
        clone = RowSpace(self.domain, self.dim)
        clone._rows = {p: list(row) for p, row in self._rows.items()}
        return clone

    def reduce(self, vector: Sequence[RawScalar]) -> Vector:
        """Return the remainder of `vector` modulo the subspace.

        The remainder vanishes on every pivot coordinate, so it is the
        canonical representative of the coset.
        """
        out = list(vector)
        normalize = self.domain.normalize
        for pivot, row in self._rows.items():
            c = out[pivot]
            if c == 0:
                continue
            for k in range(pivot + 1):
                if row[k] != 0:
                    out[k] = normalize(out[k] - c * row[k])
        return tuple(out)

    def contains(self, vector: Sequence[RawScalar]) -> bool:
        return not any(self.reduce(vector))

    def add(self, vector: Sequence[RawScalar]) -> bool:
        """Add a vector to the spanning set.

        Returns:
            bool: True if the subspace grew.
        """
        rem = list(self.reduce(vector))
        pivot = _last_nonzero(rem)
        if pivot is None:
            return False
        dom = self.domain
        scale = dom.inv(rem[pivot])
        rem = [dom.mul(scale, x) for x in rem]
        for row in self._rows.values():
            c = row[pivot]
            if c == 0:
                continue
            for k in range(pivot + 1):
                if rem[k] != 0:
                    row[k] = dom.normalize(row[k] - c * rem[k])
        self._rows[pivot] = rem
        return True

    def extend(self, vectors: Iterable[Sequence[RawScalar]]) -> int:
        """Add several vectors; return how many of them enlarged the subspace."""
        return sum(1 for v in vectors if self.add(v))

    def is_subspace_of(self, other: "RowSpace") -> bool:
        return all(other.contains(row) for row in self._rows.values())

    def elements(self) -> Iterator[Vector]:
        """Iterate over every vector of the subspace (finite fields only)."""
        rows = self.basis()
        zero = tuple([self.domain.zero] * self.dim)
        if not rows:
            yield zero
            return
        for coeffs in itertools.product(list(self.domain.values()), repeat=len(rows)):
            yield combine(self.domain, zero, rows, coeffs)


@dataclass(frozen=True)
class AffineSolution:
    """Solution set `particular + span(kernel)` of a linear system.

    Attributes:
        particular (Vector): One solution.
        kernel (tuple[Vector, ...]): A basis of the homogeneous solutions.
    """

    particular: Vector
    kernel: tuple[Vector, ...]

    def points(self, domain: ScalarDomain) -> Iterator[Vector]:
        """Iterate over every solution (finite fields only)."""
        if not self.kernel:
            yield self.particular
            return
        for coeffs in itertools.product(list(domain.values()), repeat=len(self.kernel)):
            yield combine(domain, self.particular, self.kernel, coeffs)

    def nonzero_at(self, index: int, domain: ScalarDomain) -> Optional[Vector]:
        """Return a solution whose coordinate `index` is nonzero, if any exists."""
        if self.particular[index] != 0:
            return self.particular
        for k in self.kernel:
            if k[index] != 0:
                return tuple(domain.add(x, y) for x, y in zip(self.particular, k))
        return None


def combine(
    domain: ScalarDomain,
    base: Sequence[RawScalar],
    vectors: Sequence[Sequence[RawScalar]],
    coeffs: Sequence[RawScalar],
) -> Vector:
    """Return base + Σ coeffs[i]·vectors[i]."""
    out = list(base)
    for c, v in zip(coeffs, vectors):
        if c == 0:
            continue
        for k, x in enumerate(v):
            if x != 0:
                out[k] = out[k] + c * x
    return tuple(domain.normalize(x) for x in out)


def solve(
    domain: ScalarDomain,
    columns: Sequence[Sequence[RawScalar]],
    target: Sequence[RawScalar],
) -> Optional[AffineSolution]:
    """Solve Σ x_j·columns[j] = target.

    The augmented matrix is brought to reduced row echelon form by sympy's
    `DomainMatrix` over the matching ground domain.

    Args:
        domain (ScalarDomain): The coefficient field.
        columns (Sequence[Sequence[RawScalar]]): The columns of the matrix.
        target (Sequence[RawScalar]): The right-hand side.

    Returns:
        Optional[AffineSolution]: All solutions, or None if there is none.
    """
    k = len(columns)
    d = len(target)
    zero = domain.zero
    if d == 0:
        return AffineSolution(tuple([zero] * k), tuple(_unit(domain, k, j) for j in range(k)))
    to_sympy = domain.to_sympy
    rows = [[to_sympy(columns[j][i]) for j in range(k)] + [to_sympy(target[i])] for i in range(d)]
    reduced, pivot_cols = DomainMatrix(rows, (d, k + 1), domain.sympy_domain).rref()
    if k in pivot_cols:
        return None
    entries = [[domain.from_sympy(x) for x in row] for row in reduced.to_list()]
    particular = [zero] * k
    for i, c in enumerate(pivot_cols):
        particular[c] = entries[i][k]
    pivot_set = set(pivot_cols)
    kernel = []
    for f in range(k):
        if f in pivot_set:
            continue
        v = list(_unit(domain, k, f))
        for i, c in enumerate(pivot_cols):
            v[c] = domain.neg(entries[i][f])
        kernel.append(tuple(v))
    return AffineSolution(tuple(particular), tuple(kernel))


def intersection(
    domain: ScalarDomain,
    dim: int,
    basis_a: Sequence[Sequence[RawScalar]],
    basis_b: Sequence[Sequence[RawScalar]],
) -> RowSpace:
    """Return the intersection of span(basis_a) and span(basis_b)."""
    if not basis_a or not basis_b:
        return RowSpace(domain, dim)
    columns = [tuple(v) for v in basis_a] + [tuple(domain.neg(x) for x in v) for v in basis_b]
    solution = solve(domain, columns, [domain.zero] * dim)
    meet = RowSpace(domain, dim)
    zero = tuple([domain.zero] * dim)
    for kv in solution.kernel:
        meet.add(combine(domain, zero, basis_a, kv[: len(basis_a)]))
    return meet


def _last_nonzero(vector: Sequence[RawScalar]) -> Optional[int]:
    for i in range(len(vector) - 1, -1, -1):
        if vector[i] != 0:
            return i
    return None


def _unit(domain: ScalarDomain, dim: int, index: int) -> Vector:
    return tuple(domain.one if i == index else domain.zero for i in range(dim))

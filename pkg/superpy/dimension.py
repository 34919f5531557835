"""
This module contains Krull superdimension, cotangent superdimension and regularity.

Classes:
    KsdimPair: A superdimension even|odd.
    CotangentReport: Graded dimensions of 𝔪, 𝔪² and 𝔪/𝔪².
    ArtinianProfile: Artinian and Noetherian properties of an algebra.
    DimensionReport: The JSON report of the `ksdim` command.
    DimensionService: Dimension queries of one algebra.

The even part of every algebra here is finite dimensional over a field, so
its Krull dimension is 0 and a tuple of odd elements is a system of odd
parameters exactly when its product is nonzero. The longest such tuple can be
searched among odd basis monomials: expanding a nonzero product of odd
elements by multilinearity leaves some nonzero product of basis monomials of
the same length.

Example:
    ```python
    algebra = catalog.build("free_q_pair")
    algebra.dimension.ksdim()                # 0|2
    algebra.dimension.cotangent_sdim().sdim  # 0|2
    algebra.dimension.is_regular_superring() # True
    ```
"""

from __future__ import annotations

import logging

from typing import TYPE_CHECKING, Optional

from superpy._cache import instance_cache
from superpy._superpy_model import _SuperpyModel
from superpy.exceptions import PreconditionError, SuperpyError
from superpy.factorization import UfsrStatus
from superpy.linalg import RowSpace, Vector

if TYPE_CHECKING:
    from superpy.algebra import Superalgebra

_logger = logging.getLogger(__name__)


class KsdimPair(_SuperpyModel):
    """A superdimension written even|odd.

    Attributes:
        even (int): Krull dimension of the even part, or the even cotangent dimension.
        odd (int): Odd Krull superdimension, or the odd cotangent dimension.
    """

    even: int
    odd: int

    def __str__(self):
        return f"{self.even}|{self.odd}"


class CotangentReport(_SuperpyModel):
    maximal_ideal_dims: tuple[int, int]
    m_squared_dims: tuple[int, int]
    sdim: KsdimPair


class ArtinianProfile(_SuperpyModel):
    """Artinian and Noetherian properties of an algebra.

    Attributes:
        artinian (bool): R₀̄ is Artinian.
        noetherian (bool): R₀̄ is Noetherian.
        oddly_noetherian (bool): R₁̄ is a finitely generated R₀̄-module.
        odd_module_generators (int): Minimal number of R₀̄-generators of R₁̄.
        ksdim (KsdimPair): The Krull superdimension.
        maximal_power_vanishing (int): Least n with 𝔪ⁿ = 0.
        power_chain (list[tuple[int, int]]): Graded dimensions of 𝔪, 𝔪², ... down to 0.
        all_primes_maximal (bool): Every prime ideal is maximal.
        ufsr_superdomain (Optional[bool]): Whether the algebra is a UFSR superdomain,
            None if unique factorization is undecided.
        positive_odd_dimension (Optional[bool]): For a UFSR superdomain with
            R₁̄ ≠ 0, whether the odd Krull superdimension is at least 1.
    """

    artinian: bool
    noetherian: bool
    oddly_noetherian: bool
    odd_module_generators: int
    ksdim: KsdimPair
    maximal_power_vanishing: int
    power_chain: list[tuple[int, int]]
    all_primes_maximal: bool
    ufsr_superdomain: Optional[bool] = None
    positive_odd_dimension: Optional[bool] = None


class DimensionReport(_SuperpyModel):
    even: int
    odd: int
    cotangent: KsdimPair
    regular: bool
    artinian_profile: ArtinianProfile


class DimensionService:
    """Dimension queries of one algebra.

    Args:
        algebra (Superalgebra): The algebra this service answers for.
    """

    def __init__(self, algebra: "Superalgebra"):
        self._algebra = algebra

    @instance_cache
    def odd_ksdim(self) -> int:
        """Length of the longest system of odd parameters.

        Depth-first search over increasing tuples of odd basis monomials,
        pruning as soon as a partial product vanishes.

        This method caches its values.
        """
        algebra = self._algebra
        odd = algebra.odd_indices
        best = 0

        def extend(start: int, product: Vector, length: int) -> None:
            nonlocal best
            best = max(best, length)
            for k in range(start, len(odd)):
                nxt = algebra.mul_coeffs(product, algebra.unit_vector(odd[k]))
                if any(nxt):
                    extend(k + 1, nxt, length + 1)

        extend(0, algebra.unit_vector(0), 0)
        _logger.debug(f"{algebra}: odd Krull superdimension {best}")
        return best

    @instance_cache
    def even_ksdim(self) -> int:
        """Krull dimension of R₀̄, which is 0.

        Over a finite field every element of R₀̄ is checked to be a unit or
        nilpotent, so its only prime is its maximal ideal. Over ℚ the even
        nonconstant part is checked to be nilpotent.

        This method caches its values.
        """
        algebra = self._algebra
        structure = algebra.structure
        if algebra.is_finite:
            for x in algebra.elements():
                if x.parity == 0 and not structure.is_unit(x) and not structure.is_nilpotent(x):
                    raise SuperpyError(f"{x} is an even non-unit that is not nilpotent")
        else:
            even = [algebra.basis_element(i) for i in algebra.even_indices if i != 0] or [algebra.zero()]
            m0 = structure.ideal_from_generators(even)
            if structure.nilpotency_index(m0) is None:
                raise SuperpyError(f"even nonconstant part of {algebra} is not nilpotent")
        return 0

    def ksdim(self) -> KsdimPair:
        return KsdimPair(even=self.even_ksdim(), odd=self.odd_ksdim())

    def cotangent_sdim(self) -> CotangentReport:
        """Graded dimensions of 𝔪/𝔪².

        Raises:
            PreconditionError: If the algebra is not local.
        """
        structure = self._algebra.structure
        if not structure.is_local():
            raise PreconditionError(f"{self._algebra} is not local")
        m = structure.maximal_ideal()
        m2 = structure.ideal_power(m, 2)
        return CotangentReport(
            maximal_ideal_dims=m.dims,
            m_squared_dims=m2.dims,
            sdim=KsdimPair(even=m.dims[0] - m2.dims[0], odd=m.dims[1] - m2.dims[1]),
        )

    def is_regular_superring(self) -> bool:
        """Ksdim equals the cotangent superdimension.

        Raises:
            PreconditionError: If the algebra is not local.
        """
        return self.ksdim() == self.cotangent_sdim().sdim

    def odd_module_generators(self) -> int:
        """dim R₁̄/𝔪₀R₁̄, the minimal number of R₀̄-generators of R₁̄."""
        algebra = self._algebra
        products = RowSpace(
            algebra.domain,
            algebra.dim,
            (
                algebra.mul_coeffs(algebra.unit_vector(e), algebra.unit_vector(o))
                for e in algebra.even_indices
                if e != 0
                for o in algebra.odd_indices
            ),
        )
        return len(algebra.odd_indices) - products.rank

    def _ufsr_superdomain(self) -> Optional[bool]:
        algebra = self._algebra
        factorization = algebra.factorization
        verdict = factorization.ufsr_check() if algebra.is_finite else factorization.structural_ufsr_check()
        if verdict.status is UfsrStatus.UNDECIDED:
            return None
        return verdict.is_ufsr and algebra.structure.is_superdomain()

    def artinian_profile(self, ufsr: Optional[bool] = None) -> ArtinianProfile:
        """Collect the Artinian profile.

        Args:
            ufsr (Optional[bool]): Whether the algebra is a UFSR superdomain;
                computed when not given.
        """
        algebra = self._algebra
        structure = algebra.structure
        m = structure.maximal_ideal()
        chain = []
        power = m
        while not power.is_zero():
            chain.append(power.dims)
            power = power * m
        chain.append(power.dims)
        ksdim = self.ksdim()
        if ufsr is None:
            ufsr = self._ufsr_superdomain()
        positive = None
        if ufsr and algebra.odd_indices:
            positive = ksdim.odd >= 1
            if not positive:
                _logger.error(f"{algebra} is a UFSR superdomain with odd part but odd Krull superdimension 0")
        return ArtinianProfile(
            artinian=True,
            noetherian=True,
            oddly_noetherian=True,
            odd_module_generators=self.odd_module_generators(),
            ksdim=ksdim,
            maximal_power_vanishing=structure.nilpotency_index(m),
            power_chain=chain,
            all_primes_maximal=set(structure.prime_ideals()) <= set(structure.maximal_ideals()),
            ufsr_superdomain=ufsr,
            positive_odd_dimension=positive,
        )

    def report(self, ufsr: Optional[bool] = None) -> DimensionReport:
        ksdim = self.ksdim()
        cotangent = self.cotangent_sdim()
        return DimensionReport(
            even=ksdim.even,
            odd=ksdim.odd,
            cotangent=cotangent.sdim,
            regular=ksdim == cotangent.sdim,
            artinian_profile=self.artinian_profile(ufsr),
        )

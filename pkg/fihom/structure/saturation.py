"""Saturation of facet sums and the torsion threshold of quotients.

For V inside a free module M and a <= n, three subgroups of M_n are compared:

    V_[n]-{1} + ... + V_[n]-{a}
        in  V_n cap (M_[n]-{1} + ... + M_[n]-{a})
        in  ker(J~_[a]) restricted to V_n

where X_[n]-{i} is the image of X_{n-1} under the order-preserving injection
missing i. The first containment is an equality once n > min(k, d) + d.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from pydantic import BaseModel, Field

from ..errors import HypothesisError, TruncationError
from ..fi.degrees import Degree, DegreeTable
from ..fi.functors import derivative_kernel_degrees, facet_lattice, h0
from ..fi.module import FIModule, Submodule
from ..linalg.lattice import Lattice
from ..workers import map_degrees
from .catalan import annihilated_by_ideal, jtilde_kernel

logger = logging.getLogger(__name__)


def sub_facet_lattice(v: Submodule, n: int, points: range) -> Lattice:
    """V_[n]-{i} summed over the given points, in ambient coordinates."""
    m = v.ambient
    rows = [
        row for i in points for row in v.lattices[n - 1].image(m.missing_matrix(n, i)).sparse_basis
    ]
    return Lattice.span(rows, m.ranks[n], m.ring)


@dataclass(frozen=True)
class SaturationReport:
    n: int
    a: int
    facet_sum: Lattice
    intersection: Lattice
    kernel: Lattice | None

    @property
    def saturated(self) -> bool:
        return self.facet_sum == self.intersection

    @property
    def kernel_equal(self) -> bool | None:
        return None if self.kernel is None else self.intersection == self.kernel

    @property
    def chain_holds(self) -> bool:
        ok = self.intersection.contains_lattice(self.facet_sum)
        if self.kernel is not None:
            ok = ok and self.kernel.contains_lattice(self.intersection)
        return ok


def check_saturation(m: FIModule, v: Submodule, n: int, a: int) -> SaturationReport:
    """Facet sum of V, V_n cap the M-facets, and ker J~_[a] on V_n at one (n, a)."""
    if not m.is_based:
        raise HypothesisError("The ambient module must be Based")
    if v.ambient.ranks != m.ranks:
        raise HypothesisError("The submodule is not embedded in this module")
    if not 1 <= a <= n:
        raise ValueError(f"Need 1 <= a <= n, got a={a}, n={n}")
    m._check_degree(n)
    points = range(1, a + 1)
    facet_sum = sub_facet_lattice(v, n, points)
    intersection = v.lattices[n].intersection(facet_lattice(m, n, points))
    kernel = None
    if n + a <= m.truncation:
        kernel = jtilde_kernel(m, n, a).intersection(v.lattices[n])
    return SaturationReport(n=n, a=a, facet_sum=facet_sum, intersection=intersection, kernel=kernel)


class SaturationCell(BaseModel):
    n: int
    a: int
    facet_rank: int
    intersection_rank: int
    kernel_rank: int | None = None
    saturated: bool
    kernel_equal: bool | None = None
    chain_holds: bool
    derivative_kernel_zero: bool | None = Field(default=None, description="ker(D^a V -> D^a M)_{n-a} = 0")


class SaturationGrid(BaseModel):
    k: int
    d: int
    threshold: int = Field(description="min(k, d) + d")
    cells: list[SaturationCell] = Field(default_factory=list)

    @property
    def violations(self) -> list[SaturationCell]:
        return [c for c in self.cells if not c.chain_holds or (c.n > self.threshold and not c.saturated)]

    @property
    def first_failure(self) -> int | None:
        return min((c.n for c in self.cells if not c.saturated), default=None)

    @property
    def derivative_mismatches(self) -> list[SaturationCell]:
        return [
            c for c in self.cells if c.derivative_kernel_zero is not None and c.derivative_kernel_zero != c.saturated
        ]

    @property
    def ok(self) -> bool:
        return not self.violations and not self.derivative_mismatches


def _degree_or_zero(degree: Degree) -> int:
    return int(max(degree.numeric, 0))


def saturation_grid(v: Submodule, a_max: int, k: int | None = None, d: int | None = None) -> SaturationGrid:
    """check_saturation over every n <= N and a <= min(n, a_max)."""
    m = v.ambient
    k = _degree_or_zero(h0(m).degree) if k is None else k
    d = _degree_or_zero(h0(v.module).degree) if d is None else d
    grid = SaturationGrid(k=k, d=d, threshold=min(k, d) + d)
    kernels: DegreeTable = derivative_kernel_degrees(v, a_max)

    cells = [(n, a) for n in range(1, m.truncation + 1) for a in range(1, min(n, a_max) + 1)]
    logger.info(f"Saturation grid: {len(cells)} cells up to n={m.truncation}")
    for report in map_degrees(lambda cell: check_saturation(m, v, *cell), cells):
        derivative_zero = None
        label = f"ker D^{report.a}"
        if any(row.label == label for row in kernels.rows):
            groups = kernels.row(label).groups
            if report.n - report.a < len(groups):
                derivative_zero = groups[report.n - report.a].is_zero
        grid.cells.append(
            SaturationCell(
                n=report.n,
                a=report.a,
                facet_rank=report.facet_sum.rank,
                intersection_rank=report.intersection.rank,
                kernel_rank=None if report.kernel is None else report.kernel.rank,
                saturated=report.saturated,
                kernel_equal=report.kernel_equal,
                chain_holds=report.chain_holds,
                derivative_kernel_zero=derivative_zero,
            )
        )
    if grid.violations:
        logger.error(f"{len(grid.violations)} saturation cells fail above n = {grid.threshold}")
    return grid


class SaturationPrimeReport(BaseModel):
    n: int
    a: int
    cap_k: int
    applicable: bool = True
    reason: str = ""
    facet_rank: int | None = None
    kernel_rank: int | None = None
    equal: bool | None = None
    generated_by_facets: bool | None = Field(
        default=None, description="V_n is the sum of its first K + 1 facets"
    )


def check_saturation_prime(v: FIModule, n: int, a: int, cap_k: int) -> SaturationPrimeReport:
    """Facet sum of V against ker J~_[a] on V_n, with no ambient module.

    Requires I_{K+1} . V = 0 in every degree, K = cap_k.
    """
    report = SaturationPrimeReport(n=n, a=a, cap_k=cap_k)
    if not v.is_based:
        report.applicable, report.reason = False, "needs a Based (torsion-free) module"
        return report
    if not 1 <= a <= n:
        raise ValueError(f"Need 1 <= a <= n, got a={a}, n={n}")
    if n + a > v.truncation:
        raise TruncationError(f"Degree {n + a} beyond truncation {v.truncation}")
    if not annihilated_by_ideal(v, cap_k + 1):
        report.applicable, report.reason = False, f"I_{cap_k + 1} does not annihilate V"
        logger.warning(f"Saturation without ambient inapplicable: {report.reason}")
        return report
    facets = facet_lattice(v, n, range(1, a + 1))
    kernel = jtilde_kernel(v, n, a)
    report.facet_rank, report.kernel_rank = facets.rank, kernel.rank
    report.equal = facets == kernel
    if cap_k + 1 <= n:
        report.generated_by_facets = facet_lattice(v, n, range(1, cap_k + 2)).is_full
    return report


class TorsionReport(BaseModel):
    truncation: int
    torsion_degrees: list[int] = Field(description="n < N with ker(W_n -> W_{n+1}) != 0")
    threshold: int = Field(description="Smallest m with no torsion in degrees m..N-1")
    truncation_limited: bool = False
    bound: int | None = Field(default=None, description="min(k, d) + d")
    holds: bool | None = None


def torsion_degrees(w: FIModule) -> list[int]:
    """Degrees n < N where the inclusion W_n -> W_{n+1} is not injective."""

    def has_torsion(n: int) -> bool:
        kernel = Lattice.preimage(w.inclusions[n], w.relations[n + 1])
        return not w.relations[n].contains_lattice(kernel)

    flags = map_degrees(has_torsion, range(w.truncation))
    return [n for n, flag in enumerate(flags) if flag]


def torsion_threshold(w: FIModule, k: int | None = None, d: int | None = None) -> TorsionReport:
    """Where W = M / V becomes torsion-free, against min(k, d) + d."""
    degrees = torsion_degrees(w)
    threshold = max(degrees) + 1 if degrees else 0
    report = TorsionReport(
        truncation=w.truncation,
        torsion_degrees=degrees,
        threshold=threshold,
        truncation_limited=threshold == w.truncation and threshold > 0,
    )
    if k is not None and d is not None:
        report.bound = min(k, d) + d
        report.holds = threshold <= report.bound
        if not report.holds:
            logger.error(f"Torsion in degree {threshold - 1} above min(k, d) + d = {report.bound}")
    if report.truncation_limited:
        logger.warning(f"Torsion reaches degree {w.truncation - 1}; the threshold may be higher")
    return report

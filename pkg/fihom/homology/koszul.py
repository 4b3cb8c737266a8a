"""The Koszul-type complex V (x) C_* and FI-homology.

At degree n the complex has

    C_k = (+)_{U in [n], |U| = k} V_{n-k}

with the summand for U carried into [n] \\ U by the order-preserving
relabeling. The boundary sends the U-summand to the U - {u_i} summands,
u_1 < ... < u_k, with sign (-1)^i, along the injection that re-inserts u_i.
In the coordinates of [n-k] this is the order-preserving map missing
u_i - i + 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from pydantic import BaseModel, Field
from sympy.polys.matrices import DomainMatrix

from ..errors import ContainmentError, DimensionError
from ..fi.degrees import Degree, DegreeTable, as_degree
from ..fi.functors import derivative_kernel_degrees, h0, iterated_derivative
from ..fi.maps import FIMap, kernel_of_map
from ..fi.module import FIModule, Submodule, degree_of, quotient_module
from ..fi.permutations import injections, subsets
from ..linalg.groups import GroupSummary, PresentedAbelianGroup
from ..linalg.lattice import Lattice
from ..linalg.rings import NEG_INF, Ring, block_matrix, matrix, rows_of, zeros
from ..workers import map_degrees

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChainComplex:
    """C_0 <- C_1 <- ... <- C_top of presented groups ambient_k / relations_k.

    ``boundaries[k]`` is the matrix of d_k: C_k -> C_{k-1} on row vectors;
    ``boundaries[0]`` is the zero map to 0. d_{k-1} d_k = 0 and d_k(R_k) in
    R_{k-1} are checked on construction.
    """

    ring: Ring
    ranks: tuple[int, ...]
    boundaries: tuple[DomainMatrix, ...]
    relations: tuple[Lattice, ...] = field(default=())
    _cache: dict[Any, Any] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.relations:
            object.__setattr__(self, "relations", tuple(Lattice.zero(r, self.ring) for r in self.ranks))
        if len(self.boundaries) != len(self.ranks):
            raise DimensionError("One boundary matrix per chain group is required")
        for k, d in enumerate(self.boundaries):
            below = self.ranks[k - 1] if k else 0
            if d.shape != (self.ranks[k], below):
                raise DimensionError(f"d_{k} has shape {d.shape}, expected {(self.ranks[k], below)}")
        for k in range(2, len(self.ranks)):
            composite = self.boundaries[k] * self.boundaries[k - 1]
            if not all(self.relations[k - 2].contains(row) for row in rows_of(composite)):
                raise ContainmentError(f"d_{k - 1} d_{k} != 0")
        for k in range(1, len(self.ranks)):
            if not self.relations[k - 1].contains_lattice(self.relations[k].image(self.boundaries[k])):
                raise ContainmentError(f"d_{k} does not preserve relations")

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def cycles(self, k: int) -> Lattice:
        """Elements of C_k whose boundary is a relation."""
        if k == 0:
            return Lattice.full(self.ranks[0], self.ring)
        return Lattice.preimage(self.boundaries[k], self.relations[k - 1])

    def boundaries_lattice(self, k: int) -> Lattice:
        if k == self.top:
            return self.relations[k]
        return Lattice.row_space(self.boundaries[k + 1], self.ring) + self.relations[k]

    def homology(self, k: int) -> PresentedAbelianGroup:
        """H_k, with C_{top+1} taken to be 0."""
        key = ("H", k)
        if key not in self._cache:
            self._cache[key] = self.boundaries_lattice(k).quotient_of(self.cycles(k))
        return self._cache[key]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))


def koszul_complex(v: FIModule, n: int, k_max: int) -> ChainComplex:
    """(V (x) C_*)_n for homological degrees 0..min(k_max, n)."""
    v._check_degree(n)
    top = min(k_max, n)
    blocks_of = [subsets(n, k) for k in range(top + 1)]
    sizes = [[v.ranks[n - k]] * len(blocks_of[k]) for k in range(top + 1)]
    ranks = tuple(sum(s) for s in sizes)

    boundaries = [zeros(ranks[0], 0, v.ring)]
    for k in range(1, top + 1):
        below = {u: idx for idx, u in enumerate(blocks_of[k - 1])}
        entries: dict[tuple[int, int], DomainMatrix] = {}
        if not (v.ranks[n - k] and v.ranks[n - k + 1]):
            boundaries.append(zeros(ranks[k], ranks[k - 1], v.ring))
            continue
        for row, u in enumerate(blocks_of[k]):
            for i, point in enumerate(u, start=1):
                face = u[: i - 1] + u[i:]
                missing = v.missing_matrix(n - k + 1, point - i + 1)
                entries[(row, below[face])] = missing if i % 2 == 0 else -missing
        boundaries.append(block_matrix(sizes[k], sizes[k - 1], entries, v.ring))

    relations = []
    for k in range(top + 1):
        rel = v.relations[n - k]
        rows = []
        offset = 0
        for _ in blocks_of[k]:
            rows.extend({offset + j: x for j, x in r.items()} for r in rel.sparse_basis)
            offset += rel.ambient_rank
        relations.append(Lattice.span(rows, ranks[k], v.ring))
    logger.debug(f"Koszul complex at n={n}: ranks {ranks}")
    return ChainComplex(v.ring, ranks, tuple(boundaries), tuple(relations))


class HomologyTable(BaseModel):
    """H_p(V)_n for p <= p_max and n <= N."""

    p_max: int
    truncation: int
    groups: list[list[GroupSummary]] = Field(description="groups[p][n]")
    degrees: list[Degree]
    h0_consistent: bool = True

    def degree(self, p: int) -> Degree:
        return self.degrees[p]

    def group(self, p: int, n: int) -> GroupSummary:
        return self.groups[p][n]


def homology_at(v: FIModule, n: int, p_max: int) -> list[GroupSummary]:
    """H_0(V)_n, ..., H_{p_max}(V)_n."""
    complex_ = koszul_complex(v, n, p_max + 1)
    out = []
    for p in range(p_max + 1):
        if p > n:
            out.append(GroupSummary(ring=v.ring))
        else:
            out.append(complex_.homology(p).summary())
    return out


def fi_homology(v: FIModule, p_max: int) -> HomologyTable:
    logger.info(f"FI-homology of {v.name or 'V'} up to p={p_max}, n={v.truncation}")
    cells = map_degrees(lambda n: homology_at(v, n, p_max), range(v.truncation + 1))
    groups = [[cells[n][p] for n in range(v.truncation + 1)] for p in range(p_max + 1)]
    degrees = [Degree.from_nonzero(not g.is_zero for g in row) for row in groups]

    h0_module = h0(v).module
    consistent = all(h0_module.summary(n) == groups[0][n] for n in range(v.truncation + 1))
    if not consistent:
        logger.error("H_0 from the Koszul complex disagrees with the direct quotient")
    for p, deg in enumerate(degrees):
        if deg.truncation_limited:
            logger.warning(f"deg H_{p} reaches the truncation {v.truncation}")
    return HomologyTable(
        p_max=p_max, truncation=v.truncation, groups=groups, degrees=degrees, h0_consistent=consistent
    )


class RegularityRow(BaseModel):
    p: int
    degree: Degree
    bound: int
    margin: int | None = Field(default=None, description="bound - deg H_p; None for -inf")
    holds: bool | None = None


class RegularityReport(BaseModel):
    k: int
    d: int
    applicable: bool = True
    reason: str = ""
    rows: list[RegularityRow] = Field(default_factory=list)
    regularity: Degree | None = None

    @property
    def violations(self) -> list[RegularityRow]:
        return [r for r in self.rows if r.holds is False]

    @property
    def ok(self) -> bool:
        return not self.violations


def regularity(table: HomologyTable) -> Degree:
    """max over 1 <= p <= p_max of deg H_p - p."""
    values = [table.degree(p).numeric - p for p in range(1, table.p_max + 1)]
    limited = any(table.degree(p).truncation_limited for p in range(1, table.p_max + 1))
    return as_degree(max(values, default=NEG_INF), limited)


def regularity_check(
    v: FIModule, k: int, d: int, p_max: int, table: HomologyTable | None = None
) -> RegularityReport:
    """deg H_p(V) <= p + k + d - 1, given deg H_0 <= k and deg H_1 <= d."""
    if table is None:
        table = fi_homology(v, max(p_max, 1))
    report = RegularityReport(k=k, d=d, regularity=regularity(table))
    g0, g1 = table.degree(0), table.degree(1)
    if not (g0.at_most(k) and g1.at_most(d)) or g0.truncation_limited or g1.truncation_limited:
        report.applicable = False
        report.reason = f"needs deg H0 <= {k} and deg H1 <= {d}, found {g0} and {g1}"
        logger.warning(f"Regularity check inapplicable: {report.reason}")
        return report
    for p in range(1, p_max + 1):
        deg = table.degree(p)
        bound = p + k + d - 1
        row = RegularityRow(p=p, degree=deg, bound=bound)
        if deg.value is not None:
            row.margin = bound - deg.value
        if deg.numeric <= bound:
            row.holds = True
        elif not deg.truncation_limited:
            row.holds = False
        report.rows.append(row)
    return report


class KernelGenerationReport(BaseModel):
    k: int
    d: int
    kernel_h0_degree: Degree
    bound: int
    holds: bool | None


def kernel_generation_check(phi: FIMap, k: int | None = None, d: int | None = None) -> KernelGenerationReport:
    """ker(V -> M) is generated in degree <= k + d + 1.

    M is free generated in degree <= k and V generated in degree <= d; both
    default to the H_0 degrees of target and source.
    """
    if k is None:
        k = int(max(h0(phi.target).degree.numeric, 0))
    if d is None:
        d = int(max(h0(phi.source).degree.numeric, 0))
    kernel = kernel_of_map(phi)
    deg = h0(kernel.module).degree
    bound = k + d + 1
    holds: bool | None = True if deg.at_most(bound) else (None if deg.truncation_limited else False)
    return KernelGenerationReport(k=k, d=d, kernel_h0_degree=deg, bound=bound, holds=holds)


class DerivativeHomologyRow(BaseModel):
    a: int
    derivative_degree: Degree
    derivative_bound: int
    kernel_degree: Degree
    kernel_bound: int
    holds: bool | None


class DerivativeHomologyReport(BaseModel):
    k: int
    d: int
    rows: list[DerivativeHomologyRow] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.holds is not False for r in self.rows)


def derivative_homology_check(v: Submodule, k: int, d: int, a_max: int) -> DerivativeHomologyReport:
    """deg D^a W <= N - a and deg ker(D^a V -> D^a M) <= N - a + 1, W = M / V, N = k + d - 1."""
    m = v.ambient
    w = quotient_module(m, v)
    kernels = derivative_kernel_degrees(v, a_max)
    big_n = k + d - 1
    report = DerivativeHomologyReport(k=k, d=d)
    for a in range(1, min(a_max, m.truncation) + 1):
        dw = degree_of(iterated_derivative(w, a))
        kd = kernels.degree(f"ker D^{a}")
        if dw.numeric <= big_n - a and kd.numeric <= big_n - a + 1:
            holds: bool | None = True
        elif dw.truncation_limited or kd.truncation_limited:
            holds = None
        else:
            holds = False
        report.rows.append(
            DerivativeHomologyRow(
                a=a,
                derivative_degree=dw,
                derivative_bound=big_n - a,
                kernel_degree=kd,
                kernel_bound=big_n - a + 1,
                holds=holds,
            )
        )
    return report


class EulerReport(BaseModel):
    n: int
    chain_side: int
    homology_side: int

    @property
    def ok(self) -> bool:
        return self.chain_side == self.homology_side


def rationalized(v: FIModule) -> FIModule:
    """The same module tensored with Q."""
    if v.ring.is_field:
        return v
    q = Ring.Q
    relations = [Lattice.span(r.sparse_basis, r.ambient_rank, q) for r in v.relations]
    return FIModule.from_matrices(
        q,
        v.ranks,
        [[t.convert_to(q.domain) for t in ts] for ts in v.transpositions],
        [inc.convert_to(q.domain) for inc in v.inclusions],
        relations,
        name=v.name,
    )


def euler_characteristic_check(v: FIModule, n: int) -> EulerReport:
    """sum (-1)^k rank C_k = sum (-1)^p rank H_p at degree n, over Q."""
    complex_ = koszul_complex(rationalized(v), n, n)
    chain_side = sum(
        (-1) ** k * (r - complex_.relations[k].rank) for k, r in enumerate(complex_.ranks)
    )
    homology_side = sum(
        (-1) ** p * complex_.homology(p).summary().rank for p in range(complex_.top + 1)
    )
    return EulerReport(n=n, chain_side=chain_side, homology_side=homology_side)


class ResolutionReport(BaseModel):
    source_size: int
    target_size: int
    ranks: list[int]
    homology: list[GroupSummary]
    bijections: int
    resolves: bool


def pointwise_complex(s: int, t: int) -> ChainComplex:
    """C_*(S, T) with |S| = s, |T| = t, built from its basis.

    C_k has basis the pairs (U, f) with U a k-subset of T and f: S -> T an
    injection whose image misses U; d(U, f) = sum_i (-1)^i (U - {u_i}, f).
    """
    fs = injections(s, t)
    bases = [
        [(u, f) for u in subsets(t, k) for f in fs if not set(u) & f.image]
        for k in range(max(t - s, 0) + 1)
    ]
    ranks = tuple(len(b) for b in bases)
    boundaries = [zeros(ranks[0], 0, Ring.Z)]
    for k in range(1, len(bases)):
        index = {pair: i for i, pair in enumerate(bases[k - 1])}
        rows = []
        for u, f in bases[k]:
            row = [0] * ranks[k - 1]
            for i in range(1, k + 1):
                row[index[(u[: i - 1] + u[i:], f)]] += (-1) ** i
            rows.append(row)
        boundaries.append(matrix(rows, ranks[k - 1], Ring.Z))
    return ChainComplex(Ring.Z, ranks, tuple(boundaries))


def resolution_check(s: int, t: int) -> ResolutionReport:
    """C_*(S, T) has no positive homology and H_0 free on the bijections S -> T."""
    complex_ = pointwise_complex(s, t)
    homology = [complex_.homology(k).summary() for k in range(complex_.top + 1)]
    bijections = len(injections(s, t)) if s == t else 0
    resolves = homology[0] == GroupSummary(rank=bijections) and all(g.is_zero for g in homology[1:])
    if not resolves:
        logger.error(f"C_*({s}, {t}) is not a resolution: {[str(g) for g in homology]}")
    return ResolutionReport(
        source_size=s,
        target_size=t,
        ranks=list(complex_.ranks),
        homology=homology,
        bijections=bijections,
        resolves=resolves,
    )


def homology_degree_table(table: HomologyTable) -> DegreeTable:
    out = DegreeTable()
    for p in range(table.p_max + 1):
        out.add(f"H{p}", table.groups[p])
    return out

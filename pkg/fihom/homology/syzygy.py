"""Free covers, syzygies and the checks built on them.

The free cover of V is M(W) -> V with W_m the ambient group of V_m for
m <= deg H_0(V), sending the basis label (m, S, j) to (ord_S)_* e_j. Its
kernel is the first syzygy module; iterating gives X_0 = V, X_1, X_2, ...
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb

from pydantic import BaseModel, Field

from ..errors import HypothesisError
from ..fi.degrees import Degree
from ..fi.fb import FBModule
from ..fi.functors import generation_filtration, h0
from ..fi.maps import FIMap, kernel_of_map
from ..fi.module import FIModule, free_fi_module
from ..fi.permutations import Injection
from ..linalg.groups import GroupSummary, PresentedAbelianGroup
from ..linalg.rings import matrix, rows_of
from .koszul import fi_homology

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FreeCover:
    free: FIModule
    cover: FIMap
    generator_degree: Degree


def free_cover(v: FIModule, top: int | None = None) -> FreeCover:
    """M(W) -> V on the ambient groups of V in degrees <= top (default deg H_0)."""
    g = h0(v).degree if top is None else Degree(value=top)
    ring = v.ring
    if g.is_neg_inf:
        free = FIModule.zero(ring, v.truncation)
    else:
        cut = min(g.value, v.truncation)
        w = FBModule(ring, v.ranks[: cut + 1], v.transpositions[: cut + 1])
        free = free_fi_module(w, v.truncation, name=f"M({v.name})" if v.name else "")

    matrices = []
    for n in range(v.truncation + 1):
        rows = []
        for label in free.labels[n] if free.labels is not None else ():
            f = Injection.order_preserving(label.subset, n)
            rows.append(rows_of(v.injection_matrix(f))[label.index - 1])
        matrices.append(matrix(rows, v.ranks[n], ring))
    cover = FIMap(free, v, tuple(matrices))
    cover.require_equivariant()
    return FreeCover(free=free, cover=cover, generator_degree=g)


def syzygy_module(v: FIModule) -> FIModule:
    """ker(M(W) -> V) for the free cover of V, in its own coordinates."""
    cover = free_cover(v).cover
    return kernel_of_map(cover, name=f"Syz({v.name})" if v.name else "").module


class SyzygyRow(BaseModel):
    p: int
    degree: Degree = Field(description="deg H_0(X_p)")
    bound: int | None = Field(default=None, description="N + p with N = k + d - 1")
    holds: bool | None = None


class SyzygyReport(BaseModel):
    k: int | None
    d: int | None
    rows: list[SyzygyRow] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.holds is not False for r in self.rows)


def syzygy_degrees(
    w: FIModule, p_max: int, k: int | None = None, d: int | None = None
) -> SyzygyReport:
    """deg H_0(X_p) for p <= p_max, against the bound (k + d - 1) + p.

    X_0 = W and X_{p+1} is the kernel of the free cover of X_p. k and d
    default to deg H_0(W) and deg H_1(W) when those are certified.
    """
    if k is None or d is None:
        table = fi_homology(w, 1)
        g0, g1 = table.degree(0), table.degree(1)
        if k is None and not g0.truncation_limited:
            k = int(max(g0.numeric, 0))
        if d is None and not g1.truncation_limited:
            d = int(max(g1.numeric, 0))
    big_n = k + d - 1 if k is not None and d is not None else None

    report = SyzygyReport(k=k, d=d)
    x = w
    for p in range(p_max + 1):
        deg = h0(x).degree
        row = SyzygyRow(p=p, degree=deg)
        if big_n is not None:
            row.bound = big_n + p
            if deg.at_most(row.bound):
                row.holds = True
            elif not deg.truncation_limited:
                row.holds = False
        if deg.truncation_limited:
            logger.warning(f"deg H_0(X_{p}) reaches the truncation {w.truncation}")
        report.rows.append(row)
        if p < p_max:
            x = syzygy_module(x)
            logger.debug(f"X_{p + 1} ranks {x.ranks}")
    return report


class RelationDegreeReport(BaseModel):
    generation_degree: Degree
    homology_degree: Degree = Field(description="deg H_1")
    relation_degree: Degree = Field(description="deg H_0 of the kernel of the free cover")
    bound: int | None = None
    holds: bool | None = None


def relation_degree_check(v: FIModule) -> RelationDegreeReport:
    """The kernel of M(V_<=deg H_0) -> V is generated in degree <= max(deg H_0, deg H_1)."""
    table = fi_homology(v, 1)
    g0, g1 = table.degree(0), table.degree(1)
    relations = h0(syzygy_module(v)).degree
    report = RelationDegreeReport(generation_degree=g0, homology_degree=g1, relation_degree=relations)
    if g0.truncation_limited or g1.truncation_limited:
        logger.warning("Relation degree check left open by the truncation")
        return report
    report.bound = int(max(g0.numeric, g1.numeric, 0))
    if relations.at_most(report.bound):
        report.holds = True
    elif not relations.truncation_limited:
        report.holds = False
    return report


class GradedPieceRow(BaseModel):
    n: int
    free_side: GroupSummary
    graded_piece: GroupSummary
    equal: bool


class GradedPieceReport(BaseModel):
    m: int
    h1_degree: Degree
    applicable: bool
    rows: list[GradedPieceRow] = Field(default_factory=list)

    @property
    def isomorphic(self) -> bool:
        return all(r.equal for r in self.rows)

    @property
    def ok(self) -> bool:
        return not self.applicable or self.isomorphic


def _copies(group: PresentedAbelianGroup, count: int) -> PresentedAbelianGroup:
    """The direct sum of ``count`` copies of a presented group."""
    g = group.generators
    rows = []
    for c in range(count):
        for rel in group.relations:
            row = [group.ring.domain.zero] * (g * count)
            row[c * g : (c + 1) * g] = rel
            rows.append(tuple(row))
    return PresentedAbelianGroup(group.ring, g * count, tuple(rows))


def graded_piece_check(w: FIModule, m: int, h1_degree: Degree | None = None) -> GradedPieceReport:
    """M(H_0(W)_m) -> W_<=m / W_<m is an isomorphism when m >= deg H_1(W).

    A surjection of finitely generated groups of the same isomorphism type is
    an isomorphism, so the two sides are compared by type in each degree.
    """
    if m < 0 or m > w.truncation:
        raise HypothesisError(f"Graded piece {m} outside 0..{w.truncation}")
    if h1_degree is None:
        h1_degree = fi_homology(w, 1).degree(1)
    applicable = not h1_degree.truncation_limited and h1_degree.at_most(m)

    top = generation_filtration(w, m).lattices
    below = generation_filtration(w, m - 1).lattices
    piece = h0(w).module.group(m)
    report = GradedPieceReport(m=m, h1_degree=h1_degree, applicable=applicable)
    for n in range(w.truncation + 1):
        free_side = _copies(piece, comb(n, m)).summary() if n >= m else GroupSummary(ring=w.ring)
        graded = below[n].quotient_of(top[n]).summary()
        report.rows.append(GradedPieceRow(n=n, free_side=free_side, graded_piece=graded, equal=free_side == graded))
    if applicable and not report.isomorphic:
        logger.error(f"Graded piece {m} of {w.name or 'W'} is not free on H_0(W)_{m}")
    return report

"""Colimits over the poset of small subsets.

For a finite set T and a cap c the colimit of W_S over {S in T : |S| <= c}
is presented on the direct sum of the ambient groups of W_|S|, one block per
subset, modulo the relations of each block and the identifications along
covering pairs S - {s} in S. The comparison map to W_T sends the S block
through (ord_S)_*.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from pydantic import BaseModel, Field
from sympy.polys.matrices import DomainMatrix

from ..errors import ContainmentError, DimensionError
from ..fi.degrees import Degree, dmax
from ..fi.module import FIModule
from ..fi.permutations import Injection, subsets
from ..linalg.groups import PresentedAbelianGroup
from ..linalg.lattice import Lattice
from ..linalg.rings import NEG_INF, matrix, rows_of
from .koszul import fi_homology

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ColimitResult:
    t_size: int
    n_cap: int
    colimit: PresentedAbelianGroup
    comparison: DomainMatrix
    surjective: bool
    injective: bool

    @property
    def is_isomorphism(self) -> bool:
        return self.surjective and self.injective


def subset_colimit(w: FIModule, t_size: int, n_cap: int) -> ColimitResult:
    """colim_{S in [t], |S| <= n_cap} W_S together with its map to W_[t]."""
    if n_cap > t_size:
        raise DimensionError(f"Cap {n_cap} exceeds |T| = {t_size}")
    w._check_degree(t_size)
    ring = w.ring

    blocks = [s for size in range(n_cap + 1) for s in subsets(t_size, size)]
    offsets, total = {}, 0
    for s in blocks:
        offsets[s] = total
        total += w.ranks[len(s)]

    relations: list[dict[int, object]] = []
    for s in blocks:
        off = offsets[s]
        relations.extend({off + j: x for j, x in r.items()} for r in w.relations[len(s)].sparse_basis)
        # s - {s_i} -> s misses position i
        for i in range(1, len(s) + 1):
            face = s[: i - 1] + s[i:]
            face_off = offsets[face]
            for k, row in enumerate(rows_of(w.missing_matrix(len(s), i))):
                rel = {off + j: x for j, x in enumerate(row) if x}
                rel[face_off + k] = rel.get(face_off + k, 0) - 1
                relations.append(rel)
    relation_lattice = Lattice.span(relations, total, ring)

    rows = []
    for s in blocks:
        rows.extend(rows_of(w.injection_matrix(Injection.order_preserving(s, t_size))))
    comparison = matrix(rows, w.ranks[t_size], ring)

    target = w.relations[t_size]
    if not target.contains_lattice(relation_lattice.image(comparison)):
        raise ContainmentError("Comparison map does not kill the colimit relations")
    surjective = (Lattice.row_space(comparison, ring) + target).is_full
    injective = relation_lattice.contains_lattice(Lattice.preimage(comparison, target))
    logger.debug(f"Colimit t={t_size} cap={n_cap}: {len(blocks)} blocks, rank {total}")
    return ColimitResult(
        t_size=t_size,
        n_cap=n_cap,
        colimit=relation_lattice.quotient(),
        comparison=comparison,
        surjective=surjective,
        injective=injective,
    )


class MinimalDegreeReport(BaseModel):
    minimal: int = Field(description="Smallest cap giving an isomorphism for every |T| <= N")
    truncation_limited: bool = False
    failures: list[int] = Field(default_factory=list, description="|T| where cap minimal - 1 fails")
    h0_degree: Degree
    h1_degree: Degree
    homology_bound: Degree = Field(description="max(deg H_0, deg H_1)")
    agrees: bool | None = None


def colimit_failures(w: FIModule, n_cap: int) -> list[int]:
    """Sizes |T| <= N at which the colimit with this cap is not W_T."""
    return [
        t for t in range(n_cap, w.truncation + 1) if not subset_colimit(w, t, n_cap).is_isomorphism
    ]


def minimal_degree(w: FIModule) -> MinimalDegreeReport:
    """The smallest cap for which W_T is the colimit of its small subsets, for all |T| <= N."""
    cap = 0
    while colimit_failures(w, cap):
        cap += 1
    failures = colimit_failures(w, cap - 1) if cap else []

    table = fi_homology(w, 1)
    g0, g1 = table.degree(0), table.degree(1)
    bound = dmax(g0.numeric, g1.numeric)
    limited = g0.truncation_limited or g1.truncation_limited
    report = MinimalDegreeReport(
        minimal=cap,
        truncation_limited=cap == w.truncation and cap > 0,
        failures=failures,
        h0_degree=g0,
        h1_degree=g1,
        homology_bound=Degree(value=None if bound == NEG_INF else int(bound), truncation_limited=limited),
    )
    if not limited:
        report.agrees = cap == max(bound, 0)
        if not report.agrees:
            logger.error(f"Colimit degree {cap} differs from max(deg H0, deg H1) = {bound}")
    return report

"""Shift, derivative, torsion kernel, minimal generators and generation degree.

For an FI-module V with truncation N:

* (SV)_n = V_{n+1}, S_n acting through S_{n+1} with the new point n+1 fixed;
* iota_V: V -> SV is the standard inclusion, KV its kernel and DV its
  cokernel;
* (D^a V)_n = V_{n+a} modulo the images of the a maps V_{n+a-1} -> V_{n+a}
  that miss one of n+1, ..., n+a;
* H_0(V)_n = V_n modulo the images of the n maps V_{n-1} -> V_n.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

from pydantic import BaseModel, Field

from ..errors import HypothesisError, TruncationError
from ..linalg.lattice import Lattice
from ..workers import map_degrees
from .degrees import Degree, DegreeTable
from .maps import FIMap, cokernel_of_map, kernel_of_map
from .module import FIElement, FIModule, Submodule, restrict, span_lattices
from .permutations import Injection

logger = logging.getLogger(__name__)


def _step(n: int, offset: int) -> Injection:
    """[n+offset] -> [n+1+offset]: identity on [n], the added points shift up by one."""
    return Injection(n + offset, n + 1 + offset, (*range(1, n + 1), *range(n + 2, n + offset + 2)))


def _reindexed(
    v: FIModule,
    offset: int,
    extra: Callable[[int], Lattice] | None = None,
    name: str = "",
) -> FIModule:
    """The module n -> V_{n+offset} with the extra relations added degreewise."""
    top = v.truncation - offset
    if top < 0:
        raise TruncationError(f"Offset {offset} exceeds truncation {v.truncation}")
    ranks = [v.ranks[n + offset] for n in range(top + 1)]
    transpositions = [[v.transposition(n + offset, i) for i in range(1, n)] for n in range(top + 1)]
    inclusions = [v.injection_matrix(_step(n, offset)) for n in range(top)]
    relations = []
    for n in range(top + 1):
        rel = v.relations[n + offset]
        if extra is not None:
            rel = rel + extra(n)
        relations.append(rel)
    return FIModule.from_matrices(v.ring, ranks, transpositions, inclusions, relations, name=name)


def shift(v: FIModule) -> FIModule:
    """SV, with truncation N - 1."""
    return _reindexed(v, 1, name=f"S({v.name})" if v.name else "")


def shift_map(v: FIModule) -> FIMap:
    """The natural map iota_V: V -> SV (V cut to the truncation of SV)."""
    sv = shift(v)
    source = v.truncate(sv.truncation)
    return FIMap(source, sv, tuple(v.inclusions[: sv.truncation + 1]))


class DerivativeSequence(NamedTuple):
    """The two outer terms of 0 -> KV -> V -> SV -> DV -> 0."""

    derivative: FIModule
    kernel: Submodule


def derivative_and_kernel(v: FIModule) -> DerivativeSequence:
    phi = shift_map(v)
    dv = cokernel_of_map(phi, name=f"D({v.name})" if v.name else "")
    kv = kernel_of_map(phi, name=f"K({v.name})" if v.name else "")
    return DerivativeSequence(dv, kv)


def torsion_kernel(v: FIModule) -> Submodule:
    """KV; zero exactly when V is torsion-free up to degree N - 1."""
    return derivative_and_kernel(v).kernel


def iterated_derivative(v: FIModule, a: int) -> FIModule:
    """D^a V as a single quotient of V_{n+a}, truncation N - a."""
    if a < 1:
        raise ValueError(f"Derivative order must be at least 1, got {a}")
    if a > v.truncation:
        raise TruncationError(f"D^{a} needs truncation at least {a}, module has {v.truncation}")

    def facets(n: int) -> Lattice:
        rows = []
        for j in range(1, a + 1):
            rows.extend(v.missing_matrix(n + a, n + j).to_dense().to_list())
        return Lattice.span(rows, v.ranks[n + a], v.ring)

    return _reindexed(v, a, facets, name=f"D^{a}({v.name})" if v.name else "")


def facet_lattice(v: FIModule, n: int, points: Sequence[int]) -> Lattice:
    """Sum of the images V_{n-1} -> V_n of the maps missing each given point."""
    rows = []
    for i in points:
        rows.extend(v.missing_matrix(n, i).to_dense().to_list())
    return Lattice.span(rows, v.ranks[n], v.ring)


@dataclass(frozen=True)
class H0Result:
    """H_0(V) with its degree and a generating set of V."""

    module: FIModule
    degree: Degree
    generators: list[FIElement] = field(default_factory=list)


def h0(v: FIModule) -> H0Result:
    """Minimal generators: V_n modulo everything coming from V_{n-1}."""
    relations = [v.relations[0]]
    for n in range(1, v.truncation + 1):
        relations.append(v.relations[n] + facet_lattice(v, n, range(1, n + 1)))
    module = v.with_relations(relations, name=f"H0({v.name})" if v.name else "")
    degree = Degree.from_nonzero(not module.is_zero_at(n) for n in range(module.truncation + 1))

    generators = []
    for n in range(v.truncation + 1):
        rel = module.relations[n]
        if rel.is_full:
            continue
        for k in range(v.ranks[n]):
            e = v.basis_element(n, k)
            if not rel.contains(e.coords):
                generators.append(e)
    if degree.truncation_limited:
        logger.warning(f"deg H0({v.name or 'V'}) reaches the truncation {v.truncation}")
    return H0Result(module=module, degree=degree, generators=generators)


def generation_filtration(v: FIModule, m: int) -> Submodule:
    """V_<=m: the submodule generated by V_0, ..., V_m.

    On a presented module this is the image of the generated submodule, held
    on lattices that contain the relations.
    """
    gens = [v.basis_element(n, k) for n in range(min(m, v.truncation) + 1) for k in range(v.ranks[n])]
    seed = None if v.is_based else v.relations
    return restrict(v, span_lattices(v, gens, seed=seed), name=f"{v.name}<={m}" if v.name else "")


def generated_in_degree(v: FIModule, m: int) -> bool:
    """V = V_<=m, up to the truncation."""
    return all(lat.is_full for lat in generation_filtration(v, m).lattices)


def degree_table(label: str, v: FIModule, table: DegreeTable | None = None) -> DegreeTable:
    """Add the degreewise isomorphism types of v to a table."""
    table = table if table is not None else DegreeTable()
    table.add(label, map_degrees(v.summary, range(v.truncation + 1)))
    return table


def derivative_kernel_degrees(v: Submodule, a_max: int) -> DegreeTable:
    """Degrees of ker(D^a V -> D^a M) for a <= a_max, V a submodule of a free M."""
    m = v.ambient
    if not m.is_based:
        raise HypothesisError("The ambient module must be Based")
    table = DegreeTable()
    for a in range(1, min(a_max, m.truncation) + 1):

        def cell(n: int, a: int = a) -> tuple[Lattice, Lattice]:
            top = n + a
            points = range(n + 1, n + a + 1)
            ambient_facets = facet_lattice(m, top, points)
            sub_facets = Lattice.span(
                (row for i in points for row in v.lattices[top - 1].image(m.missing_matrix(top, i)).basis),
                m.ranks[top],
                m.ring,
            )
            inside = v.lattices[top].intersection(ambient_facets)
            return sub_facets, inside

        groups = []
        for sub_facets, inside in map_degrees(cell, range(m.truncation - a + 1)):
            groups.append(sub_facets.quotient_of(inside).summary())
        row = table.add(f"ker D^{a}", groups)
        logger.debug(f"deg ker(D^{a}V -> D^{a}M) = {row.degree}")
    return table


class DerivativeGenerationCheck(BaseModel):
    a: int
    derivative_degree: Degree
    implied_bound: int | None = Field(default=None, description="deg D^a V + a, or a - 1 when D^a V = 0")
    holds: bool | None = Field(default=None, description="None when truncation leaves it open")


class DerivativeGenerationReport(BaseModel):
    h0_degree: Degree
    checks: list[DerivativeGenerationCheck] = Field(default_factory=list)
    vanishing_order: int | None = Field(default=None, description="deg H_0 + 1")
    vanishes: bool | None = None

    @property
    def ok(self) -> bool:
        return all(c.holds is not False for c in self.checks) and self.vanishes is not False


def generation_degree_from_derivative(v: FIModule, a_max: int) -> DerivativeGenerationReport:
    """deg D^a V <= m implies generation in degree <= m + a; deg H_0 <= k implies D^{k+1} V = 0."""
    g = h0(v).degree
    report = DerivativeGenerationReport(h0_degree=g)
    for a in range(1, min(a_max, v.truncation) + 1):
        dv = iterated_derivative(v, a)
        deg = Degree.from_nonzero(not dv.is_zero_at(n) for n in range(dv.truncation + 1))
        check = DerivativeGenerationCheck(a=a, derivative_degree=deg)
        if not deg.truncation_limited:
            bound = (a - 1) if deg.is_neg_inf else deg.value + a
            check.implied_bound = bound
            if g.numeric <= bound:
                check.holds = True
            elif not g.truncation_limited:
                check.holds = False
        report.checks.append(check)

    if g.value is not None and not g.truncation_limited and g.value + 1 <= v.truncation:
        k = g.value + 1
        report.vanishing_order = k
        report.vanishes = iterated_derivative(v, k).is_zero
    return report

"""Truncated FI-modules.

An :class:`FIModule` stores, for each degree n <= N, a free ambient group of
rank g_n with the matrices of the adjacent transpositions of S_n and of the
standard inclusion iota_n, together with a relation lattice R_n. The module
in degree n is ambient_n / R_n; a module whose relation lattices are all zero
is in the Based tier. All morphism actions are derived from t_i and iota_n.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Any

from pydantic import BaseModel, Field
from sympy.polys.matrices import DomainMatrix

from ..errors import ContainmentError, DimensionError, HypothesisError, TruncationError
from ..linalg.groups import GroupSummary, PresentedAbelianGroup
from ..linalg.lattice import Lattice, LatticeBuilder
from ..linalg.rings import Ring, equal, identity, matrix, rows_of, vec_mat, zeros
from .degrees import Degree
from .fb import FBModule, coxeter_violations
from .permutations import Injection, Permutation, adjacent_word

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class FreeBasisLabel:
    """Basis vector e_j of the summand W_S of a free module, |S| = degree."""

    degree: int
    subset: tuple[int, ...]
    index: int

    def __post_init__(self) -> None:
        if len(self.subset) != self.degree:
            raise DimensionError(f"Subset {self.subset} does not have size {self.degree}")
        if any(a >= b for a, b in zip(self.subset, self.subset[1:], strict=False)):
            raise DimensionError(f"Subset {self.subset} is not strictly increasing")
        if any(x < 1 for x in self.subset):
            raise DimensionError(f"Subset {self.subset} has entries below 1")
        if self.index < 1:
            raise DimensionError(f"Basis index {self.index} must be positive")

    def __str__(self) -> str:
        return f"({''.join(map(str, self.subset)) or '{}'},{self.index})"


@dataclass(frozen=True)
class FIElement:
    """An element of degree n, in ambient coordinates."""

    degree: int
    coords: tuple[Any, ...]


@dataclass(frozen=True, eq=False)
class FIModule:
    ring: Ring
    ranks: tuple[int, ...]
    transpositions: tuple[tuple[DomainMatrix, ...], ...]
    inclusions: tuple[DomainMatrix, ...]
    relations: tuple[Lattice, ...]
    labels: tuple[tuple[FreeBasisLabel, ...], ...] | None = None
    name: str = ""
    _cache: dict[Any, Any] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        top = len(self.ranks) - 1
        if top < 0:
            raise DimensionError("A module needs at least degree 0")
        if len(self.transpositions) != top + 1 or len(self.relations) != top + 1:
            raise DimensionError("Transpositions and relations must cover degrees 0..N")
        if len(self.inclusions) != top:
            raise DimensionError(f"Expected {top} inclusion matrices, got {len(self.inclusions)}")
        for n, rank in enumerate(self.ranks):
            ts = self.transpositions[n]
            if len(ts) != max(n - 1, 0):
                raise DimensionError(f"Degree {n} needs {max(n - 1, 0)} transpositions")
            if any(t.shape != (rank, rank) for t in ts):
                raise DimensionError(f"Transposition at degree {n} is not {rank}x{rank}")
            if self.relations[n].ambient_rank != rank:
                raise DimensionError(f"Relations at degree {n} live in rank {self.relations[n].ambient_rank}")
        for n, inc in enumerate(self.inclusions):
            if inc.shape != (self.ranks[n], self.ranks[n + 1]):
                raise DimensionError(f"iota_{n} has shape {inc.shape}")

    # Construction

    @classmethod
    def zero(cls, ring: Ring, truncation: int) -> FIModule:
        return cls.from_matrices(ring, [0] * (truncation + 1), [[] for _ in range(truncation + 1)], [])

    @classmethod
    def from_matrices(
        cls,
        ring: Ring,
        ranks: Sequence[int],
        transpositions: Sequence[Sequence[DomainMatrix]],
        inclusions: Sequence[DomainMatrix],
        relations: Sequence[Lattice] | None = None,
        name: str = "",
    ) -> FIModule:
        """Build a module; missing rank-0 matrices are filled in."""
        ts = []
        for n, rank in enumerate(ranks):
            given = list(transpositions[n]) if n < len(transpositions) else []
            if not given and rank == 0:
                given = [zeros(0, 0, ring)] * max(n - 1, 0)
            ts.append(tuple(given))
        incs = list(inclusions)
        for n in range(len(incs), len(ranks) - 1):
            incs.append(matrix([[0] * ranks[n + 1] for _ in range(ranks[n])], ranks[n + 1], ring))
        rels = tuple(relations) if relations is not None else tuple(Lattice.zero(r, ring) for r in ranks)
        return cls(ring, tuple(ranks), tuple(ts), tuple(incs), rels, name=name)

    def with_relations(self, relations: Sequence[Lattice], name: str | None = None) -> FIModule:
        return replace(
            self, relations=tuple(relations), name=self.name if name is None else name, _cache={}
        )

    def ambient(self) -> FIModule:
        """The same module with every relation dropped."""
        if self.is_based:
            return self
        return self.with_relations([Lattice.zero(r, self.ring) for r in self.ranks])

    def truncate(self, truncation: int) -> FIModule:
        if truncation > self.truncation:
            raise TruncationError(f"Cannot extend truncation {self.truncation} to {truncation}")
        k = truncation + 1
        return replace(
            self,
            ranks=self.ranks[:k],
            transpositions=self.transpositions[:k],
            inclusions=self.inclusions[:truncation],
            relations=self.relations[:k],
            labels=self.labels[:k] if self.labels is not None else None,
            _cache={},
        )

    # Basic access

    @property
    def truncation(self) -> int:
        return len(self.ranks) - 1

    @property
    def is_based(self) -> bool:
        return all(r.is_zero for r in self.relations)

    def rank(self, n: int) -> int:
        self._check_degree(n)
        return self.ranks[n]

    def _check_degree(self, n: int) -> None:
        if not 0 <= n <= self.truncation:
            raise TruncationError(f"Degree {n} is outside 0..{self.truncation}")

    def group(self, n: int) -> PresentedAbelianGroup:
        self._check_degree(n)
        return self.relations[n].quotient()

    def summary(self, n: int) -> GroupSummary:
        key = ("summary", n)
        if key not in self._cache:
            self._cache[key] = self.group(n).summary()
        return self._cache[key]

    def is_zero_at(self, n: int) -> bool:
        return self.relations[n].is_full

    @property
    def is_zero(self) -> bool:
        return all(self.is_zero_at(n) for n in range(self.truncation + 1))

    def element(self, n: int, coords: Sequence[Any]) -> FIElement:
        self._check_degree(n)
        if len(coords) != self.ranks[n]:
            raise DimensionError(f"Element of length {len(coords)} at degree {n} of rank {self.ranks[n]}")
        return FIElement(n, tuple(self.ring.convert(x) for x in coords))

    def basis_element(self, n: int, k: int) -> FIElement:
        return self.element(n, [1 if i == k else 0 for i in range(self.ranks[n])])

    def label_index(self, n: int, label: FreeBasisLabel) -> int:
        if self.labels is None:
            raise HypothesisError(f"Module {self.name or '<unnamed>'} has no free basis labels")
        try:
            return self.labels[n].index(label)
        except ValueError:
            raise DimensionError(f"Label {label} does not exist at degree {n}") from None

    def from_labels(self, n: int, coefficients: Mapping[FreeBasisLabel, Any]) -> FIElement:
        coords = [0] * self.ranks[n]
        for label, c in coefficients.items():
            coords[self.label_index(n, label)] += self.ring.convert(c)
        return self.element(n, coords)

    # Morphism action

    def transposition(self, n: int, i: int) -> DomainMatrix:
        return self.transpositions[n][i - 1]

    def _sparse_transposition(self, n: int, i: int) -> DomainMatrix:
        key = ("t-sparse", n, i)
        if key not in self._cache:
            self._cache[key] = self.transposition(n, i).to_sparse()
        return self._cache[key]

    def permutation_matrix(self, n: int, perm: Permutation) -> DomainMatrix:
        key = ("perm", n, perm)
        if key not in self._cache:
            out = identity(self.ranks[n], self.ring).to_sparse()
            for j in adjacent_word(perm):
                out = out * self._sparse_transposition(n, j)
            self._cache[key] = out.to_dense()
        return self._cache[key]

    def inclusion_chain(self, m: int, n: int) -> DomainMatrix:
        """Matrix of the standard inclusion [m] -> [n]."""
        key = ("chain", m, n)
        if key not in self._cache:
            if not all(self.ranks[m : n + 1]):
                return zeros(self.ranks[m], self.ranks[n], self.ring)
            out = identity(self.ranks[m], self.ring).to_sparse()
            for k in range(m, n):
                out = out * self.inclusions[k].to_sparse()
            self._cache[key] = out.to_dense()
        return self._cache[key]

    def injection_matrix(self, f: Injection) -> DomainMatrix:
        """Matrix of f_*: degree m -> degree n, via f = sigma o iota^(n-m)."""
        if f.target_size > self.truncation:
            raise TruncationError(f"Injection into [{f.target_size}] beyond truncation {self.truncation}")
        key = ("inj", f)
        if not (self.ranks[f.source_size] and self.ranks[f.target_size]):
            return zeros(self.ranks[f.source_size], self.ranks[f.target_size], self.ring)
        if key not in self._cache:
            perm = self.permutation_matrix(f.target_size, f.factor())
            if f.source_size == f.target_size:
                self._cache[key] = perm
            else:
                chain = self.inclusion_chain(f.source_size, f.target_size)
                self._cache[key] = (chain.to_sparse() * perm.to_sparse()).to_dense()
        return self._cache[key]

    def missing_matrix(self, n: int, i: int) -> DomainMatrix:
        """Degree n-1 -> n along the order-preserving injection missing i."""
        return self.injection_matrix(Injection.missing(n, i))


def free_fi_module(w: FBModule, n_max: int, name: str = "") -> FIModule:
    """The free module M(W) truncated at n_max, on the basis of FreeBasisLabels."""
    ring = w.ring
    labels = []
    for n in range(n_max + 1):
        level = [
            FreeBasisLabel(m, s, j)
            for m in w.nonzero_degrees
            if m <= n
            for s in combinations(range(1, n + 1), m)
            for j in range(1, w.rank(m) + 1)
        ]
        labels.append(tuple(level))
    index = [{label: k for k, label in enumerate(level)} for level in labels]
    ranks = [len(level) for level in labels]

    transpositions = []
    for n in range(n_max + 1):
        g = ranks[n]
        ts = []
        for i in range(1, n):
            rows = [[0] * g for _ in range(g)]
            for k, label in enumerate(labels[n]):
                s = label.subset
                if i in s and i + 1 in s:
                    p = s.index(i) + 1
                    fb_row = rows_of(w.transposition(label.degree, p))[label.index - 1]
                    for j, c in enumerate(fb_row, start=1):
                        if c:
                            rows[k][index[n][FreeBasisLabel(label.degree, s, j)]] = c
                elif i in s or i + 1 in s:
                    moved = tuple(sorted(i + 1 if x == i else i if x == i + 1 else x for x in s))
                    rows[k][index[n][FreeBasisLabel(label.degree, moved, label.index)]] = 1
                else:
                    rows[k][k] = 1
            ts.append(matrix(rows, g, ring))
        transpositions.append(ts)

    inclusions = []
    for n in range(n_max):
        rows = [[0] * ranks[n + 1] for _ in range(ranks[n])]
        for k, label in enumerate(labels[n]):
            rows[k][index[n + 1][label]] = 1
        inclusions.append(matrix(rows, ranks[n + 1], ring))

    logger.debug(f"Free module {name or '<unnamed>'}: ranks {ranks}")
    module = FIModule.from_matrices(ring, ranks, transpositions, inclusions, name=name)
    return replace(module, labels=tuple(labels))


def apply_injection(v: FIModule, f: Injection, x: FIElement) -> FIElement:
    """f_*(x)."""
    if x.degree != f.source_size:
        raise DimensionError(f"Element of degree {x.degree} under an injection from [{f.source_size}]")
    return FIElement(f.target_size, tuple(vec_mat(x.coords, v.injection_matrix(f))))


class Violation(BaseModel):
    relation: str = Field(description="R1..R5, or 'descent' for a relation lattice not preserved")
    degree: int
    detail: str


class PresentationReport(BaseModel):
    violations: list[Violation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_presentation(v: FIModule) -> PresentationReport:
    """Check the defining relations of FI on the generating matrices."""
    report = PresentationReport()
    for n in range(v.truncation + 1):
        for relation, detail in coxeter_violations(v.transpositions[n], v.ranks[n], v.ring):
            report.violations.append(Violation(relation=relation, degree=n, detail=detail))

    for n in range(v.truncation):
        inc = v.inclusions[n]
        for i in range(1, n):
            if not equal(v.transposition(n, i) * inc, inc * v.transposition(n + 1, i)):
                report.violations.append(
                    Violation(relation="R4", degree=n, detail=f"iota_{n} o t_{i} != t_{i} o iota_{n}")
                )
        if n >= 1:
            two = v.inclusions[n - 1] * inc
            if not equal(two * v.transposition(n + 1, n), two):
                report.violations.append(
                    Violation(
                        relation="R5",
                        degree=n,
                        detail=f"t_{n} o iota_{n} o iota_{n - 1} != iota_{n} o iota_{n - 1}",
                    )
                )

    for n in range(v.truncation + 1):
        rel = v.relations[n]
        if rel.is_zero:
            continue
        for i in range(1, n):
            if not rel.contains_lattice(rel.image(v.transposition(n, i))):
                report.violations.append(
                    Violation(relation="descent", degree=n, detail=f"t_{i} does not preserve relations")
                )
        if n < v.truncation and not v.relations[n + 1].contains_lattice(rel.image(v.inclusions[n])):
            report.violations.append(
                Violation(relation="descent", degree=n, detail=f"iota_{n} does not map relations into relations")
            )

    if report.violations:
        logger.warning(f"{len(report.violations)} presentation violations in {v.name or '<unnamed>'}")
    return report


@dataclass(frozen=True, eq=False)
class Submodule:
    """A sub-FI-module, held as lattices of ambient coordinates of ``ambient``.

    ``module`` is the same submodule in its own coordinates (the lattice
    bases); row n of ``embedding(n)`` is the basis of ``lattices[n]``.
    """

    ambient: FIModule
    lattices: tuple[Lattice, ...]
    module: FIModule

    def embedding(self, n: int) -> DomainMatrix:
        return self.lattices[n].matrix

    def same_lattices(self, other: Submodule) -> bool:
        return self.lattices == other.lattices

    def degree(self) -> Degree:
        """Degree of the image of the submodule in the ambient quotient."""
        return degree_of(self.module)


def restrict(ambient: FIModule, lattices: Sequence[Lattice], name: str = "") -> Submodule:
    """The submodule carried by invariant lattices L_n of the ambient groups.

    The result presents (L_n + R_n) / R_n on the basis of L_n.
    """
    ring = ambient.ring
    lattices = tuple(lattices)
    if len(lattices) != ambient.truncation + 1:
        raise DimensionError("Need one lattice per degree")

    def coords_in(target: Lattice, vec: Sequence[Any], what: str) -> list[Any]:
        c = target.coordinates(vec)
        if c is None:
            raise ContainmentError(f"Lattice is not closed under {what}")
        return c

    ranks = [lat.rank for lat in lattices]
    transpositions = []
    for n, lat in enumerate(lattices):
        ts = []
        for i in range(1, n):
            t = ambient.transposition(n, i)
            rows = [coords_in(lat, vec_mat(b, t), f"t_{i} at degree {n}") for b in lat.basis]
            ts.append(matrix(rows, lat.rank, ring))
        transpositions.append(ts)
    inclusions = []
    for n in range(ambient.truncation):
        inc = ambient.inclusions[n]
        rows = [coords_in(lattices[n + 1], vec_mat(b, inc), f"iota_{n}") for b in lattices[n].basis]
        inclusions.append(matrix(rows, ranks[n + 1], ring))
    relations = []
    for n, lat in enumerate(lattices):
        common = lat.intersection(ambient.relations[n])
        relations.append(Lattice.span((lat.coordinates(r) for r in common.basis), lat.rank, ring))
    module = FIModule.from_matrices(ring, ranks, transpositions, inclusions, relations, name=name)
    return Submodule(ambient=ambient, lattices=lattices, module=module)


def span_lattices(
    module: FIModule,
    gens: Sequence[FIElement],
    seed: Sequence[Lattice] | None = None,
) -> tuple[Lattice, ...]:
    """Smallest invariant lattices containing ``gens`` (and ``seed``), degree by degree."""
    ring = module.ring
    by_degree: dict[int, list[tuple[Any, ...]]] = {}
    for g in gens:
        if g.degree > module.truncation:
            raise TruncationError(f"Generator of degree {g.degree} beyond truncation {module.truncation}")
        if len(g.coords) != module.ranks[g.degree]:
            raise DimensionError(f"Generator of length {len(g.coords)} at degree {g.degree}")
        by_degree.setdefault(g.degree, []).append(g.coords)

    out: list[Lattice] = []
    for n in range(module.truncation + 1):
        builder = LatticeBuilder(module.ranks[n], ring)
        queue: list[Sequence[Any]] = list(by_degree.get(n, []))
        if n > 0:
            queue.extend(vec_mat(b, module.inclusions[n - 1]) for b in out[-1].basis)
        if seed is not None:
            queue.extend(seed[n].basis)
        ts = module.transpositions[n]
        while queue:
            vec = queue.pop()
            if builder.contains(vec):
                continue
            builder.add(vec)
            if builder.is_full():
                break
            queue.extend(vec_mat(vec, t) for t in ts)
        out.append(builder.lattice())
    return tuple(out)


def span_submodule(m: FIModule, gens: Sequence[FIElement], name: str = "") -> Submodule:
    """Submodule of a Based module generated by ``gens``."""
    if not m.is_based:
        raise HypothesisError("span_submodule needs a Based module")
    lattices = span_lattices(m, gens)
    logger.debug(f"Span ranks: {[lat.rank for lat in lattices]}")
    return restrict(m, lattices, name=name)


def quotient_module(m: FIModule, v: Submodule | Sequence[Lattice], name: str = "") -> FIModule:
    """m / v, presented on the ambient basis of m."""
    lattices = v.lattices if isinstance(v, Submodule) else tuple(v)
    if isinstance(v, Submodule) and v.ambient is not m and v.ambient.ranks != m.ranks:
        raise ContainmentError("Submodule is embedded in a different module")
    if len(lattices) != m.truncation + 1:
        raise ContainmentError("Submodule and module have different truncations")
    for n, lat in enumerate(lattices):
        if lat.ambient_rank != m.ranks[n]:
            raise ContainmentError(f"Degree {n}: submodule lives in rank {lat.ambient_rank}, module in {m.ranks[n]}")
        for i in range(1, n):
            if not lat.contains_lattice(lat.image(m.transposition(n, i))):
                raise ContainmentError(f"Degree {n}: submodule not closed under t_{i}")
        if n < m.truncation and not lattices[n + 1].contains_lattice(lat.image(m.inclusions[n])):
            raise ContainmentError(f"Degree {n}: submodule not closed under iota_{n}")
    relations = [r + lat for r, lat in zip(m.relations, lattices, strict=True)]
    return m.with_relations(relations, name=name or (f"{m.name}/sub" if m.name else ""))


def degree_of(v: FIModule) -> Degree:
    """Largest n <= N with V_n != 0, flagged when V_N != 0."""
    return Degree.from_nonzero(not v.is_zero_at(n) for n in range(v.truncation + 1))

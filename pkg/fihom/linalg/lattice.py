"""Canonical sublattices (over ZZ) and subspaces (over QQ) of ring^n.

Two lattices are equal exactly when their canonical bases are equal, so the
dataclass equality is lattice equality.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Any

from sympy.polys.matrices import DomainMatrix

from ..errors import ContainmentError, DimensionError
from .groups import PresentedAbelianGroup
from .normal_forms import Echelon, SparseRow, echelon_basis, kernel_rows, sparse
from .rings import Ring, matrix, rows_of

Vector = Sequence[Any] | Mapping[int, Any]


@dataclass(frozen=True)
class Lattice:
    """A sublattice of ring^ambient_rank with a canonical echelon basis."""

    ring: Ring
    ambient_rank: int
    basis: tuple[tuple[Any, ...], ...] = ()

    # Construction

    @classmethod
    def span(cls, vectors: Iterable[Vector], ambient_rank: int, ring: Ring) -> Lattice:
        return cls(ring, ambient_rank, echelon_basis(vectors, ambient_rank, ring))

    @classmethod
    def zero(cls, ambient_rank: int, ring: Ring) -> Lattice:
        return cls(ring, ambient_rank, ())

    @classmethod
    def full(cls, ambient_rank: int, ring: Ring) -> Lattice:
        one, zero = ring.domain.one, ring.domain.zero
        rows = tuple(
            tuple(one if i == j else zero for j in range(ambient_rank)) for i in range(ambient_rank)
        )
        return cls(ring, ambient_rank, rows)

    @classmethod
    def row_space(cls, m: DomainMatrix, ring: Ring) -> Lattice:
        return cls.span(rows_of(m), m.shape[1], ring)

    # Basic properties

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_full(self) -> bool:
        if self.rank != self.ambient_rank:
            return False
        return all(row[i] == 1 for i, row in enumerate(self.basis))

    @property
    def matrix(self) -> DomainMatrix:
        return matrix(self.basis, self.ambient_rank, self.ring)

    @cached_property
    def sparse_basis(self) -> list[SparseRow]:
        return [sparse(row) for row in self.basis]

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(min(row) for row in self.sparse_basis)

    def _check(self, other: Lattice) -> None:
        if other.ambient_rank != self.ambient_rank:
            raise DimensionError(
                f"Ambient rank mismatch: {self.ambient_rank} vs {other.ambient_rank}"
            )

    def _combination(self, coeffs: Mapping[int, Any] | Sequence[Any]) -> SparseRow:
        """sum_i coeffs[i] * basis[i]."""
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        out: SparseRow = {}
        for i, c in items:
            if not c:
                continue
            for j, x in self.sparse_basis[i].items():
                v = out.get(j, 0) + c * x
                if v:
                    out[j] = v
                else:
                    out.pop(j, None)
        return out

    # Membership

    def coordinates(self, vector: Vector) -> list[Any] | None:
        """Coefficients c with c * basis = vector, or None if not a member."""
        if not isinstance(vector, Mapping) and len(vector) != self.ambient_rank:
            raise DimensionError(
                f"Vector of length {len(vector)} in ambient rank {self.ambient_rank}"
            )
        rest = sparse(vector)
        coords = []
        for row, col in zip(self.sparse_basis, self.pivots, strict=True):
            x = rest.get(col)
            if not x:
                coords.append(self.ring.domain.zero)
                continue
            a = row[col]
            if self.ring.is_field:
                q = x / a
            else:
                if x % a:
                    return None
                q = x // a
            coords.append(q)
            for j, y in row.items():
                v = rest.get(j, 0) - q * y
                if v:
                    rest[j] = v
                else:
                    rest.pop(j, None)
        if rest:
            return None
        return coords

    def contains(self, vector: Vector) -> bool:
        return self.coordinates(vector) is not None

    def contains_lattice(self, other: Lattice) -> bool:
        self._check(other)
        return all(self.contains(row) for row in other.sparse_basis)

    # Lattice algebra

    def __add__(self, other: Lattice) -> Lattice:
        self._check(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        return Lattice.span(self.sparse_basis + other.sparse_basis, self.ambient_rank, self.ring)

    def add_vectors(self, vectors: Iterable[Vector]) -> Lattice:
        return Lattice.span([*self.sparse_basis, *vectors], self.ambient_rank, self.ring)

    def intersection(self, other: Lattice) -> Lattice:
        self._check(other)
        if self.is_zero or other.is_zero:
            return Lattice.zero(self.ambient_rank, self.ring)
        if self.contains_lattice(other):
            return other
        kernel = kernel_rows(self.sparse_basis + other.sparse_basis, self.ambient_rank, self.ring)
        mine = (
            self._combination({i: c for i, c in row.items() if i < self.rank}) for row in kernel
        )
        return Lattice.span(mine, self.ambient_rank, self.ring)

    def image(self, m: DomainMatrix) -> Lattice:
        """Span of basis * m, a lattice in ring^(m columns)."""
        if m.shape[0] != self.ambient_rank:
            raise DimensionError(f"Map with {m.shape[0]} rows on ambient rank {self.ambient_rank}")
        m_rows = [sparse(row) for row in rows_of(m)]
        images = []
        for row in self.sparse_basis:
            out: SparseRow = {}
            for i, c in row.items():
                for j, x in m_rows[i].items():
                    out[j] = out.get(j, 0) + c * x
            images.append(out)
        return Lattice.span(images, m.shape[1], self.ring)

    @staticmethod
    def preimage(m: DomainMatrix, target: Lattice) -> Lattice:
        """{x : x * m in target}."""
        ring = target.ring
        source_rank, target_rank = m.shape
        if target_rank != target.ambient_rank:
            raise DimensionError(f"Map into rank {target_rank}, lattice in {target.ambient_rank}")
        stacked = [sparse(row) for row in rows_of(m)] + target.sparse_basis
        kernel = kernel_rows(stacked, target_rank, ring)
        return Lattice.span(
            ({i: c for i, c in row.items() if i < source_rank} for row in kernel), source_rank, ring
        )

    def saturation(self) -> Lattice:
        """Rational span intersected with ZZ^n (the lattice itself over QQ)."""
        if self.ring.is_field or self.is_zero:
            return self
        rational = Lattice.span(self.sparse_basis, self.ambient_rank, Ring.Q)
        scaled = []
        for row in rational.sparse_basis:
            denom = math.lcm(*(int(x.denominator) for x in row.values()))
            scaled.append({j: int(x.numerator) * (denom // int(x.denominator)) for j, x in row.items()})
        # kernel of the orthogonal complement recovers the saturated lattice
        transposed = _transpose(scaled, self.ambient_rank)
        ortho = kernel_rows(transposed, len(scaled), Ring.Z)
        if not ortho:
            return Lattice.full(self.ambient_rank, Ring.Z)
        perp = _transpose(ortho, self.ambient_rank)
        return Lattice.span(kernel_rows(perp, len(ortho), Ring.Z), self.ambient_rank, Ring.Z)

    # Quotients

    def quotient(self) -> PresentedAbelianGroup:
        """ring^n / self."""
        return PresentedAbelianGroup(self.ring, self.ambient_rank, self.basis)

    def quotient_of(self, sup: Lattice) -> PresentedAbelianGroup:
        """sup / self, presented on the basis of sup."""
        self._check(sup)
        relations = []
        for row in self.sparse_basis:
            coords = sup.coordinates(row)
            if coords is None:
                raise ContainmentError("Sublattice is not contained in the given superlattice")
            relations.append(tuple(coords))
        return PresentedAbelianGroup(self.ring, sup.rank, tuple(relations))


def _transpose(rows: Sequence[Mapping[int, Any]], ncols: int) -> list[SparseRow]:
    out: list[SparseRow] = [{} for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, x in row.items():
            out[j][i] = x
    return out


class LatticeBuilder:
    """Mutable span that grows one vector at a time, with early fullness checks."""

    def __init__(self, ambient_rank: int, ring: Ring):
        self.ambient_rank = ambient_rank
        self.ring = ring
        self._engine = Echelon(ambient_rank, ring)

    def add(self, vector: Vector) -> bool:
        """Insert a vector; True when the span grew."""
        return self._engine.insert(vector)

    def contains(self, vector: Vector) -> bool:
        return self._engine.contains(vector)

    def is_full(self) -> bool:
        return self._engine.is_full()

    @property
    def rank(self) -> int:
        return self._engine.rank

    def lattice(self) -> Lattice:
        engine = self._engine
        return Lattice(self.ring, self.ambient_rank, engine.basis())


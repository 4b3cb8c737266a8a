"""Finitely presented abelian groups and their invariant-factor summaries."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from .normal_forms import echelon_basis, snf
from .rings import Ring, matrix


class GroupSummary(BaseModel):
    """Isomorphism type of a finitely generated abelian group (or vector space)."""

    model_config = ConfigDict(frozen=True)

    ring: Ring = Ring.Z
    rank: int = Field(default=0, ge=0, description="Free rank")
    torsion: tuple[int, ...] = Field(default=(), description="Invariant factors > 1")

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append(self.ring.value if self.rank == 1 else f"{self.ring.value}^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class PresentedAbelianGroup:
    """Generators plus a relation matrix; the group is ring^generators / rowspace.

    Attributes:
        ring: Coefficient ring
        generators: Number of generators
        relations: Relation rows (each of length ``generators``)
    """

    ring: Ring
    generators: int
    relations: tuple[tuple[Any, ...], ...] = ()

    @classmethod
    def free(cls, ring: Ring, rank: int) -> PresentedAbelianGroup:
        return cls(ring, rank, ())

    def normalized(self) -> PresentedAbelianGroup:
        """Same group with its relation rows in canonical echelon form."""
        return PresentedAbelianGroup(
            self.ring, self.generators, echelon_basis(self.relations, self.generators, self.ring)
        )

    def invariant_factors(self) -> tuple[int, ...]:
        """Invariant factors of the relation matrix (all 1 over QQ).

        In canonical echelon form a row with pivot 1 has zeros in every other
        pivot column, so it only eliminates its own generator; such rows are
        dropped before the Smith normal form of what is left.
        """
        rows = echelon_basis(self.relations, self.generators, self.ring)
        if not rows:
            return ()
        if self.ring.is_field:
            return (1,) * len(rows)
        unit_cols, hard = set(), []
        for row in rows:
            col = next(j for j, x in enumerate(row) if x)
            if row[col] == 1:
                unit_cols.add(col)
            else:
                hard.append(row)
        if not hard:
            return (1,) * len(rows)
        keep = [j for j in range(self.generators) if j not in unit_cols]
        reduced = [[row[j] for j in keep] for row in hard]
        factors = snf(matrix(reduced, len(keep), self.ring)).invariant_factors
        return (1,) * len(unit_cols) + factors

    def summary(self) -> GroupSummary:
        factors = self.invariant_factors()
        return GroupSummary(
            ring=self.ring,
            rank=self.generators - len(factors),
            torsion=tuple(d for d in factors if d != 1),
        )

    @property
    def is_zero(self) -> bool:
        return self.summary().is_zero

    def __str__(self) -> str:
        return str(self.summary())

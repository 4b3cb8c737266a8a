"""Degrees of truncated FI-modules.

A degree is an integer or -inf (the zero module). Every degree computed from a
truncated module carries a flag saying whether the top represented degree was
nonzero, in which case the true degree may be larger.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from pydantic import BaseModel, ConfigDict, Field

from ..linalg.groups import GroupSummary
from ..linalg.rings import NEG_INF


class Degree(BaseModel):
    """An extended-integer degree; ``value`` None stands for -inf."""

    model_config = ConfigDict(frozen=True)

    value: int | None = None
    truncation_limited: bool = Field(default=False, description="True degree may exceed the truncation")

    @classmethod
    def from_nonzero(cls, nonzero: Iterable[bool]) -> Degree:
        """Degree of a sequence of groups indexed 0..N, given which are nonzero."""
        flags = list(nonzero)
        top = max((n for n, x in enumerate(flags) if x), default=None)
        return cls(value=top, truncation_limited=bool(flags) and flags[-1])

    @property
    def numeric(self) -> float:
        return NEG_INF if self.value is None else self.value

    @property
    def is_neg_inf(self) -> bool:
        return self.value is None

    def at_most(self, bound: float) -> bool:
        return self.numeric <= bound

    def __str__(self) -> str:
        text = "-inf" if self.value is None else str(self.value)
        return f"{text}+" if self.truncation_limited else text


def dmax(*values: float) -> float:
    """max with -inf as the identity."""
    return max(values, default=NEG_INF)


def as_degree(value: float, truncation_limited: bool = False) -> Degree:
    return Degree(value=None if value == NEG_INF else int(value), truncation_limited=truncation_limited)


class DegreeRow(BaseModel):
    """Isomorphism types of one graded object, degree by degree."""

    label: str
    groups: list[GroupSummary]
    degree: Degree


class DegreeTable(BaseModel):
    rows: list[DegreeRow] = Field(default_factory=list)

    def add(self, label: str, groups: Sequence[GroupSummary]) -> DegreeRow:
        row = DegreeRow(
            label=label,
            groups=list(groups),
            degree=Degree.from_nonzero(not g.is_zero for g in groups),
        )
        self.rows.append(row)
        return row

    def row(self, label: str) -> DegreeRow:
        for row in self.rows:
            if row.label == label:
                return row
        raise KeyError(label)

    def degree(self, label: str) -> Degree:
        return self.row(label).degree

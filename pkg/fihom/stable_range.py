"""Degree bookkeeping for first-quadrant spectral sequences of FI-modules.

Given E^2_{pq} => V_{p+q} with deg V_k <= 2k + d, E^2_{p0} = 0 for p > 0 and
the regularity estimate

    deg E^2_{pq} <= deg E^2_{0q} + deg E^2_{1q} - 1 + p,

the columns p = 0, 1 are bounded by induction on q from the abutment and the
sources of the differentials landing in them. The closed forms are

    deg E^2_{0k} <= 2^{k-2}(2d+9) - 2,    deg E^2_{1k} <= 2^{k-2}(2d+9) - 1,
    deg E^2_{pk} <= N_{p,k} = 2^{k-1}(2d+9) - 4 + p    (p >= 2),

and a module with these H_0 and H_1 degrees is the colimit of its pieces on
subsets of size < 2^{k-2}(2d+9). Degrees are ints with None for -inf.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction

from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

Bound = int | None


def _number(value: Fraction) -> int | float:
    return int(value) if value.denominator == 1 else float(value)


def _add(*terms: Bound) -> Bound:
    """Sum with -inf absorbing."""
    if any(t is None for t in terms):
        return None
    return sum(t for t in terms if t is not None)


def _max(*terms: Bound) -> Bound:
    values = [t for t in terms if t is not None]
    return max(values) if values else None


def _min(a: Bound, b: Bound) -> Bound:
    if a is None or b is None:
        return None
    return min(a, b)


def threshold(d: int, k: int) -> Fraction:
    """2^{k-2}(2d+9): the colimit is over subsets smaller than this."""
    return Fraction(2) ** (k - 2) * (2 * d + 9)


def colimit_cap(d: int, k: int) -> int:
    """Largest integer strictly below the threshold."""
    return math.ceil(threshold(d, k)) - 1


def putman_threshold(d: int, k: int) -> Fraction:
    """The earlier stable range 2^{k-2}(2d+16) - 3."""
    return Fraction(2) ** (k - 2) * (2 * d + 16) - 3


def n_bound(d: int, p: int, m: int) -> Fraction:
    """N_{p,m} = 2^{m-1}(2d+9) - 4 + p."""
    return Fraction(2) ** (m - 1) * (2 * d + 9) - 4 + p


class BoundRow(BaseModel):
    k: int
    h0_bound: Bound = Field(default=None, description="deg E^2_{0k}")
    h1_bound: Bound = Field(default=None, description="deg E^2_{1k}")
    higher: dict[int, Bound] = Field(default_factory=dict, description="p -> deg E^2_{pk}, p >= 2")
    threshold: int | float
    colimit_cap: int = Field(description="Largest |S| the colimit runs over")
    putman_threshold: int | float
    closed_form: bool | None = Field(default=None, description="Matches the closed forms")


class BoundTable(BaseModel):
    d: int
    k_max: int
    p_max: int
    applicable: bool = True
    reason: str = ""
    rows: list[BoundRow] = Field(default_factory=list)

    def row(self, k: int) -> BoundRow:
        for row in self.rows:
            if row.k == k:
                return row
        raise KeyError(k)

    @property
    def thresholds(self) -> dict[int, int | float]:
        return {row.k: row.threshold for row in self.rows}

    @property
    def ok(self) -> bool:
        return self.applicable and all(row.closed_form is not False for row in self.rows)


def _row(d: int, k: int, h0: Bound, h1: Bound, higher: dict[int, Bound]) -> BoundRow:
    return BoundRow(
        k=k,
        h0_bound=h0,
        h1_bound=h1,
        higher=higher,
        threshold=_number(threshold(d, k)),
        colimit_cap=colimit_cap(d, k),
        putman_threshold=_number(putman_threshold(d, k)),
    )


def congruence_bounds(d: int, k_max: int, p_max: int = 5) -> BoundTable:
    """The closed-form bounds for 2 <= k <= k_max."""
    if d < 0:
        raise ValueError(f"d must be non-negative, got {d}")
    if k_max < 2:
        raise ValueError(f"k_max must be at least 2, got {k_max}")
    table = BoundTable(d=d, k_max=k_max, p_max=p_max)
    for k in range(2, k_max + 1):
        base = 2 ** (k - 2) * (2 * d + 9)
        higher = {p: int(n_bound(d, p, k)) for p in range(2, p_max + 1)}
        table.rows.append(_row(d, k, base - 2, base - 1, higher))
    return table


class DegreeSpectralInput(BaseModel):
    """Hypotheses on E^2_{pq} => V_{p+q}."""

    d: int = Field(ge=0, description="deg V_k <= slope * k + d")
    slope: int = Field(default=2, ge=0)
    bottom_row_vanishes: bool = Field(default=True, description="E^2_{p0} = 0 for p > 0")
    regularity_estimate: bool = Field(
        default=True, description="deg E^2_pq <= deg E^2_0q + deg E^2_1q - 1 + p is assumed"
    )
    declared_h0: dict[int, Bound] = Field(default_factory=dict, description="Known bounds on deg E^2_{0q}")
    declared_h1: dict[int, Bound] = Field(default_factory=dict, description="Known bounds on deg E^2_{1q}")

    def abutment(self, k: int) -> int:
        return self.slope * k + self.d


def propagate_claim(spec: DegreeSpectralInput, k_max: int, p_max: int = 5) -> BoundTable:
    """Run the induction on q and compare with the closed forms.

    Columns 0 and 1 receive no outgoing differentials, so deg E^2 there is at
    most the larger of deg E^inf (a constituent of V_{p+q}) and the degrees of
    the sources E^2_{p+r, q-r+1} of incoming differentials, r >= 2.
    """
    table = BoundTable(d=spec.d, k_max=k_max, p_max=p_max)
    if not (spec.bottom_row_vanishes and spec.regularity_estimate):
        table.applicable = False
        table.reason = "needs E^2_{p0} = 0 for p > 0 and the regularity estimate"
        logger.warning(f"Claim inapplicable: {table.reason}")
        return table

    h0: list[Bound] = []
    h1: list[Bound] = []

    def entry(p: int, q: int) -> Bound:
        if q < 0:
            return None
        if p == 0:
            return h0[q]
        if p == 1:
            return h1[q]
        if q == 0:
            return None
        return _add(h0[q], h1[q], -1, p)

    for q in range(k_max + 1):
        # sources E^2_{r, q-r+1} -> E^2_{0q} and E^2_{1+r, q-r+1} -> E^2_{1q}
        into0 = _max(*(entry(r, q - r + 1) for r in range(2, q + 2)))
        into1 = _max(*(entry(1 + r, q - r + 1) for r in range(2, q + 2)))
        b0 = _max(spec.abutment(q), into0)
        b1 = None if q == 0 else _max(spec.abutment(q + 1), into1)
        if q in spec.declared_h0:
            b0 = _min(b0, spec.declared_h0[q])
        if q in spec.declared_h1:
            b1 = _min(b1, spec.declared_h1[q])
        h0.append(b0)
        h1.append(b1)
        logger.debug(f"q={q}: deg E0 <= {b0}, deg E1 <= {b1}")

    declared = bool(spec.declared_h0 or spec.declared_h1)
    for k in range(k_max + 1):
        higher = {p: entry(p, k) for p in range(2, p_max + 1)}
        row = _row(spec.d, k, h0[k], h1[k], higher)
        if not declared and k >= 2:
            closed = congruence_bounds(spec.d, k, p_max).row(k)
            row.closed_form = (row.h0_bound, row.h1_bound, row.higher) == (
                closed.h0_bound,
                closed.h1_bound,
                closed.higher,
            )
        elif not declared and k == 1:
            row.closed_form = (row.h0_bound, row.h1_bound) == (spec.d + 2, spec.d + 4) and all(
                row.higher[p] == int(n_bound(spec.d, p, 1)) for p in row.higher
            )
        table.rows.append(row)
    return table

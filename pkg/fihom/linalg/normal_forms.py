"""Hermite and Smith normal forms with unimodular transforms.

Over ZZ the echelon form is the canonical row Hermite normal form: positive
pivots, entries above a pivot reduced into [0, pivot). Over QQ it is the
reduced row echelon form. Both are produced by the same incremental engine,
:class:`Echelon`, which inserts one row at a time and optionally tracks the
row operations applied. Rows are held sparsely as ``{column: entry}`` dicts.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from sympy.core.intfunc import igcdex
from sympy.polys.matrices import DomainMatrix

from ..errors import DimensionError
from .rings import Ring, identity, matrix, ring_of, rows_of

SparseRow = dict[int, Any]


def _gcdex(a: Any, b: Any) -> tuple[int, int, int]:
    """Return (s, t, g) with s*a + t*b = g = gcd(a, b) >= 0."""
    s, t, g = igcdex(int(a), int(b))
    if g < 0:
        s, t, g = -s, -t, -g
    return s, t, g


def sparse(vector: Sequence[Any] | Mapping[int, Any]) -> SparseRow:
    if isinstance(vector, Mapping):
        return {j: x for j, x in vector.items() if x}
    return {j: x for j, x in enumerate(vector) if x}


def dense(row: Mapping[int, Any], ncols: int, zero: Any) -> tuple[Any, ...]:
    out = [zero] * ncols
    for j, x in row.items():
        out[j] = x
    return tuple(out)


def _axpy(y: SparseRow, a: Any, x: Mapping[int, Any]) -> None:
    """y += a * x, in place."""
    if not a:
        return
    for j, xj in x.items():
        v = y.get(j, 0) + a * xj
        if v:
            y[j] = v
        else:
            y.pop(j, None)


def _combine(p: Mapping[int, Any], q: Mapping[int, Any], s: Any, t: Any) -> SparseRow:
    """s * p + t * q."""
    out: SparseRow = {}
    if s:
        for j, x in p.items():
            out[j] = s * x
    _axpy(out, t, q)
    return {j: x for j, x in out.items() if x}


def _scale(p: Mapping[int, Any], s: Any) -> SparseRow:
    return {j: s * x for j, x in p.items()}


class Echelon:
    """Incremental echelon form of a growing set of row vectors.

    Pivot rows are kept in a dict keyed by pivot column. When ``track`` is set,
    every row carries the combination of inserted rows it equals, so the final
    transform is unimodular and rows reduced to zero give a basis of the left
    kernel of the inserted matrix.

    Args:
        ncols: Ambient dimension
        ring: Coefficient ring
        track: Record row operations (needed by :func:`hnf`)
    """

    def __init__(self, ncols: int, ring: Ring, *, track: bool = False):
        self.ncols = ncols
        self.ring = ring
        self.track = track
        self._zero = ring.domain.zero
        self._one = ring.domain.one
        self.pivots: dict[int, SparseRow] = {}
        self.combos: dict[int, SparseRow] = {}
        self.kernel: list[SparseRow] = []
        self.inserted = 0
        self._reduced = True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def insert(self, vector: Sequence[Any] | Mapping[int, Any], combo: Mapping[int, Any] | None = None) -> bool:
        """Insert a row; returns True when the span grew."""
        if not isinstance(vector, Mapping) and len(vector) != self.ncols:
            raise DimensionError(f"Vector of length {len(vector)} in ambient rank {self.ncols}")
        if self.track and combo is None:
            raise ValueError("Tracked echelon needs a combination vector")
        vec = {j: self.ring.domain.convert(x) for j, x in sparse(vector).items()}
        cmb = dict(combo) if combo is not None else None
        self.inserted += 1
        field = self.ring.is_field
        grew = False

        while vec:
            col = min(vec)
            b = vec[col]
            pivot = self.pivots.get(col)
            if pivot is None:
                if field and b != self._one:
                    inv = self._one / b
                    vec = _scale(vec, inv)
                    if cmb is not None:
                        cmb = _scale(cmb, inv)
                elif not field and b < 0:
                    vec = _scale(vec, -1)
                    if cmb is not None:
                        cmb = _scale(cmb, -1)
                self.pivots[col] = vec
                if cmb is not None:
                    self.combos[col] = cmb
                self._reduced = False
                return True

            a = pivot[col]
            if field or b % a == 0:
                q = b / a if field else b // a
                _axpy(vec, -q, pivot)
                if cmb is not None:
                    _axpy(cmb, -q, self.combos[col])
                continue

            # gcd step: replace the pivot row by s*p + t*v, keep (a/g)*v - (b/g)*p
            s, t, g = _gcdex(a, b)
            ag, bg = a // g, b // g
            self.pivots[col] = _combine(pivot, vec, s, t)
            vec = _combine(vec, pivot, ag, -bg)
            if cmb is not None:
                old = self.combos[col]
                self.combos[col] = _combine(old, cmb, s, t)
                cmb = _combine(cmb, old, ag, -bg)
            self._reduced = False
            # the pivot entry drops from a to g < a
            grew = True

        if cmb is not None:
            self.kernel.append(cmb)
        return grew

    def contains(self, vector: Sequence[Any] | Mapping[int, Any]) -> bool:
        """Membership in the current span, without inserting."""
        rest = {j: self.ring.domain.convert(x) for j, x in sparse(vector).items()}
        while rest:
            col = min(rest)
            pivot = self.pivots.get(col)
            if pivot is None:
                return False
            a, b = pivot[col], rest[col]
            if not self.ring.is_field and b % a:
                return False
            _axpy(rest, -(b / a if self.ring.is_field else b // a), pivot)
        return True

    def extend(self, vectors: Iterable[Sequence[Any] | Mapping[int, Any]]) -> bool:
        grew = False
        for v in vectors:
            grew = self.insert(v) or grew
        return grew

    def reduce(self) -> None:
        """Bring the pivot rows to canonical form (HNF over ZZ, RREF over QQ)."""
        if self._reduced:
            return
        cols = sorted(self.pivots)
        for idx, col in enumerate(cols):
            pivot = self.pivots[col]
            a = pivot[col]
            for upper in cols[:idx]:
                row = self.pivots[upper]
                x = row.get(col)
                if not x:
                    continue
                q = x / a if self.ring.is_field else x // a
                if q:
                    _axpy(row, -q, pivot)
                    if self.track:
                        _axpy(self.combos[upper], -q, self.combos[col])
        self._reduced = True

    def sparse_basis(self) -> list[SparseRow]:
        self.reduce()
        return [self.pivots[c] for c in sorted(self.pivots)]

    def basis(self) -> tuple[tuple[Any, ...], ...]:
        return tuple(dense(row, self.ncols, self._zero) for row in self.sparse_basis())

    def is_full(self) -> bool:
        """True when the span is the whole ambient group."""
        if self.rank < self.ncols:
            return False
        if self.ring.is_field:
            return True
        return all(row[col] == 1 for col, row in self.pivots.items())


@dataclass(frozen=True)
class HermiteForm:
    """Result of :func:`hnf`.

    Attributes:
        h: The nonzero rows of the canonical form
        u: Square unimodular transform with u * m = [h; 0]
        pivots: Pivot column of each row of h
    """

    h: DomainMatrix
    u: DomainMatrix
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.h.shape[0]

    @property
    def kernel(self) -> DomainMatrix:
        """Basis of the left kernel: the rows of u below rank."""
        rows = rows_of(self.u)[self.rank :]
        return DomainMatrix(rows, (len(rows), self.u.shape[1]), self.u.domain)


def _tracked(rows: Sequence[Sequence[Any] | Mapping[int, Any]], ncols: int, ring: Ring) -> Echelon:
    engine = Echelon(ncols, ring, track=True)
    for i, row in enumerate(rows):
        engine.insert(row, {i: ring.domain.one})
    engine.reduce()
    return engine


def hnf(m: DomainMatrix) -> HermiteForm:
    """Row Hermite normal form (RREF over QQ) with its unimodular transform."""
    ring = ring_of(m)
    nrows, ncols = m.shape
    engine = _tracked(rows_of(m), ncols, ring)
    zero = ring.domain.zero
    cols = sorted(engine.pivots)
    h_rows = [list(dense(engine.pivots[c], ncols, zero)) for c in cols]
    u_rows = [list(dense(r, nrows, zero)) for r in [engine.combos[c] for c in cols] + engine.kernel]
    return HermiteForm(
        h=DomainMatrix(h_rows, (len(h_rows), ncols), ring.domain),
        u=DomainMatrix(u_rows, (nrows, nrows), ring.domain),
        pivots=tuple(cols),
    )


def echelon_basis(
    rows: Iterable[Sequence[Any] | Mapping[int, Any]], ncols: int, ring: Ring
) -> tuple[tuple[Any, ...], ...]:
    """Canonical basis of the span of ``rows``."""
    engine = Echelon(ncols, ring)
    engine.extend(rows)
    return engine.basis()


def kernel_rows(
    rows: Sequence[Sequence[Any] | Mapping[int, Any]], ncols: int, ring: Ring
) -> list[SparseRow]:
    """A basis of {x : x * rows = 0}, as sparse rows indexed by input row."""
    return _tracked(rows, ncols, ring).kernel


def left_kernel(m: DomainMatrix) -> DomainMatrix:
    """Basis of {x : x * m = 0}, canonical."""
    ring = ring_of(m)
    rows = echelon_basis(kernel_rows(rows_of(m), m.shape[1], ring), m.shape[0], ring)
    return matrix(rows, m.shape[0], ring)


@dataclass(frozen=True)
class SmithForm:
    """Result of :func:`snf`.

    Attributes:
        invariant_factors: d_1 | d_2 | ... | d_r, r = rank
        left: Unimodular row transform
        right: Unimodular column transform, left * m * right is diagonal
    """

    invariant_factors: tuple[int, ...]
    left: DomainMatrix
    right: DomainMatrix

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def snf(m: DomainMatrix) -> SmithForm:
    """Smith normal form with transforms.

    Over QQ every invariant factor is 1.
    """
    ring = ring_of(m)
    nrows, ncols = m.shape
    a = rows_of(m)
    left = rows_of(identity(nrows, ring))
    right = rows_of(identity(ncols, ring))
    field = ring.is_field

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def row_op(i: int, j: int, s: Any, t: Any, u: Any, v: Any) -> None:
        # (R_i, R_j) <- (s R_i + t R_j, u R_i + v R_j)
        for mat in (a, left):
            ri, rj = mat[i], mat[j]
            mat[i] = [s * x + t * y for x, y in zip(ri, rj, strict=True)]
            mat[j] = [u * x + v * y for x, y in zip(ri, rj, strict=True)]

    def col_op(i: int, j: int, s: Any, t: Any, u: Any, v: Any) -> None:
        for mat in (a, right):
            for row in mat:
                ci, cj = row[i], row[j]
                row[i] = s * ci + t * cj
                row[j] = u * ci + v * cj

    def eliminate(p: Any, x: Any) -> tuple[Any, Any, Any, Any]:
        """Coefficients of a unimodular op sending (p, x) to (g, 0)."""
        if field:
            return ring.domain.one, ring.domain.zero, -x / p, ring.domain.one
        if x % p == 0:
            return 1, 0, -(x // p), 1
        s, t, g = _gcdex(p, x)
        return s, t, -(x // g), p // g

    diag: list[Any] = []
    t = 0
    while t < min(nrows, ncols):
        entries = [
            (abs(a[i][j]), i, j)
            for i in range(t, nrows)
            for j in range(t, ncols)
            if a[i][j]
        ]
        if not entries:
            break
        _, i0, j0 = min(entries)
        swap_rows(t, i0)
        swap_cols(t, j0)

        while True:
            for i in range(t + 1, nrows):
                if a[i][t]:
                    row_op(t, i, *eliminate(a[t][t], a[i][t]))
            for j in range(t + 1, ncols):
                if a[t][j]:
                    col_op(t, j, *eliminate(a[t][t], a[t][j]))
            if any(a[i][t] for i in range(t + 1, nrows)):
                continue
            if field:
                break
            p = a[t][t]
            offender = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % p),
                None,
            )
            if offender is None:
                break
            # pull a non-divisible row into the pivot row and repeat
            row_op(t, offender, 1, 1, 0, 1)

        if field:
            inv = ring.domain.one / a[t][t]
            a[t] = [inv * x for x in a[t]]
            left[t] = [inv * x for x in left[t]]
        elif a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        diag.append(1 if field else a[t][t])
        t += 1

    return SmithForm(
        invariant_factors=tuple(int(d) for d in diag),
        left=DomainMatrix(left, (nrows, nrows), ring.domain),
        right=DomainMatrix(right, (ncols, ncols), ring.domain),
    )

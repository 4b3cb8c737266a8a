"""Coefficient rings and dense matrix helpers over sympy's ZZ / QQ domains."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from enum import StrEnum
from typing import Any

from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from ..errors import DimensionError

# Matrices act on row vectors: x -> x * A.
IntMatrix = DomainMatrix
Row = tuple[Any, ...]

# Degree of the zero module.
NEG_INF: float = -math.inf


class Ring(StrEnum):
    """Coefficient ring of a module."""

    Z = "Z"
    Q = "Q"

    @property
    def domain(self):
        return ZZ if self is Ring.Z else QQ

    @property
    def is_field(self) -> bool:
        return self is Ring.Q

    def convert(self, value: Any) -> Any:
        """Convert an int, Fraction or string into a domain element."""
        if isinstance(value, str):
            value = value.strip()
            if "/" in value:
                num, den = value.split("/", 1)
                if self is Ring.Z:
                    raise DimensionError(f"Rational entry {value!r} in an integer matrix")
                return QQ(int(num), int(den))
            value = int(value)
        return self.domain.convert(value)


def ring_of(matrix: DomainMatrix) -> Ring:
    return Ring.Q if matrix.domain.is_Field else Ring.Z


def matrix(rows: Iterable[Sequence[Any]], cols: int, ring: Ring) -> DomainMatrix:
    """Build a dense matrix; ``cols`` fixes the width when there are no rows."""
    converted = [[ring.convert(x) for x in row] for row in rows]
    for row in converted:
        if len(row) != cols:
            raise DimensionError(f"Row of length {len(row)} in a matrix with {cols} columns")
    return DomainMatrix(converted, (len(converted), cols), ring.domain)


def zeros(nrows: int, ncols: int, ring: Ring) -> DomainMatrix:
    return DomainMatrix.zeros((nrows, ncols), ring.domain).to_dense()


def identity(n: int, ring: Ring) -> DomainMatrix:
    return DomainMatrix.eye(n, ring.domain).to_dense()


def rows_of(m: DomainMatrix) -> list[list[Any]]:
    return m.to_dense().to_list()


def vstack(blocks: Sequence[DomainMatrix], cols: int, ring: Ring) -> DomainMatrix:
    rows: list[list[Any]] = []
    for block in blocks:
        if block.shape[1] != cols:
            raise DimensionError(f"Block with {block.shape[1]} columns, expected {cols}")
        rows.extend(rows_of(block))
    return DomainMatrix(rows, (len(rows), cols), ring.domain)


def block_matrix(
    row_sizes: Sequence[int],
    col_sizes: Sequence[int],
    blocks: dict[tuple[int, int], DomainMatrix],
    ring: Ring,
) -> DomainMatrix:
    """Assemble a dense matrix from sparse (row-block, col-block) entries."""
    row_offsets = [0]
    for size in row_sizes:
        row_offsets.append(row_offsets[-1] + size)
    col_offsets = [0]
    for size in col_sizes:
        col_offsets.append(col_offsets[-1] + size)

    zero = ring.domain.zero
    out = [[zero] * col_offsets[-1] for _ in range(row_offsets[-1])]
    for (bi, bj), block in blocks.items():
        if block.shape != (row_sizes[bi], col_sizes[bj]):
            raise DimensionError(f"Block {(bi, bj)} has shape {block.shape}")
        r0, c0 = row_offsets[bi], col_offsets[bj]
        for i, row in enumerate(rows_of(block)):
            target = out[r0 + i]
            for j, x in enumerate(row):
                if x:
                    target[c0 + j] += x
    return DomainMatrix(out, (row_offsets[-1], col_offsets[-1]), ring.domain)


def vec_mat(vec: Sequence[Any], m: DomainMatrix) -> list[Any]:
    """Row vector times matrix."""
    if len(vec) != m.shape[0]:
        raise DimensionError(f"Vector of length {len(vec)} against {m.shape[0]} rows")
    zero = m.domain.zero
    out = [zero] * m.shape[1]
    for x, row in zip(vec, rows_of(m), strict=True):
        if not x:
            continue
        for j, y in enumerate(row):
            if y:
                out[j] += x * y
    return out


def is_zero_vector(vec: Iterable[Any]) -> bool:
    return not any(vec)


def as_python(value: Any) -> int | str:
    """JSON-safe integer or "p/q" string for a domain element."""
    if hasattr(value, "denominator") and value.denominator != 1:
        return f"{int(value.numerator)}/{int(value.denominator)}"
    if hasattr(value, "numerator"):
        value = value.numerator
    return int(value)


def equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    """Entrywise equality, independent of dense or sparse storage."""
    return a.shape == b.shape and rows_of(a) == rows_of(b)


def is_zero_matrix(m: DomainMatrix) -> bool:
    return all(not any(row) for row in rows_of(m))

"""Exact integer / rational linear algebra."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from typing import Any, NamedTuple

from .groups import GroupSummary, PresentedAbelianGroup
from .lattice import Lattice, LatticeBuilder
from .normal_forms import Echelon, HermiteForm, SmithForm, echelon_basis, hnf, left_kernel, snf
from .rings import NEG_INF, IntMatrix, Ring, identity, matrix, rows_of, vec_mat, zeros


class LatticeOps(NamedTuple):
    """The binary operations on a pair of lattices sharing an ambient rank."""

    sum: Lattice
    intersection: Lattice
    contains: Callable[[Sequence[Any]], bool]
    quotient: PresentedAbelianGroup


def lattice_ops(a: Lattice, b: Lattice) -> LatticeOps:
    """Sum, intersection, membership in ``a`` and the presentation of ambient / a."""
    return LatticeOps(
        sum=a + b,
        intersection=a.intersection(b),
        contains=a.contains,
        quotient=a.quotient(),
    )


__all__ = [
    "NEG_INF",
    "Echelon",
    "GroupSummary",
    "HermiteForm",
    "IntMatrix",
    "Lattice",
    "LatticeBuilder",
    "LatticeOps",
    "PresentedAbelianGroup",
    "Ring",
    "SmithForm",
    "echelon_basis",
    "hnf",
    "identity",
    "lattice_ops",
    "left_kernel",
    "matrix",
    "rows_of",
    "snf",
    "vec_mat",
    "zeros",
]

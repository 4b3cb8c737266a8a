"""Degreewise maps of FI-modules, their kernels, images and cokernels."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from sympy.polys.matrices import DomainMatrix

from ..errors import DimensionError, EquivarianceError
from ..linalg.lattice import Lattice
from ..linalg.rings import identity, matrix, rows_of, zeros
from .module import FIModule, Submodule, quotient_module, restrict

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FIMap:
    """phi_n: source_n -> target_n in ambient coordinates (row vectors)."""

    source: FIModule
    target: FIModule
    matrices: tuple[DomainMatrix, ...]

    def __post_init__(self) -> None:
        if self.source.ring != self.target.ring:
            raise DimensionError("Map between modules over different rings")
        top = min(self.source.truncation, self.target.truncation)
        if len(self.matrices) != top + 1:
            raise DimensionError(f"Expected {top + 1} matrices, got {len(self.matrices)}")
        for n, m in enumerate(self.matrices):
            if m.shape != (self.source.ranks[n], self.target.ranks[n]):
                raise DimensionError(f"phi_{n} has shape {m.shape}")

    @property
    def truncation(self) -> int:
        return len(self.matrices) - 1

    @classmethod
    def identity(cls, v: FIModule) -> FIMap:
        return cls(v, v, tuple(identity(r, v.ring) for r in v.ranks))

    @classmethod
    def zero(cls, source: FIModule, target: FIModule) -> FIMap:
        top = min(source.truncation, target.truncation)
        return cls(
            source,
            target,
            tuple(zeros(source.ranks[n], target.ranks[n], source.ring) for n in range(top + 1)),
        )

    @classmethod
    def inclusion(cls, sub: Submodule) -> FIMap:
        return cls(sub.module, sub.ambient, tuple(sub.embedding(n) for n in range(len(sub.lattices))))

    def compose(self, other: FIMap) -> FIMap:
        """self o other."""
        top = min(self.truncation, other.truncation)
        return FIMap(
            other.source,
            self.target,
            tuple(other.matrices[n] * self.matrices[n] for n in range(top + 1)),
        )

    def check_equivariance(self) -> list[str]:
        """Failures of phi o t_i = t_i o phi, phi o iota = iota o phi and R_src -> R_tgt."""
        src, tgt = self.source, self.target
        problems = []
        for n, phi in enumerate(self.matrices):
            rel = tgt.relations[n]
            if not rel.contains_lattice(src.relations[n].image(phi)):
                problems.append(f"degree {n}: relations are not mapped into relations")
            for i in range(1, n):
                diff = src.transposition(n, i) * phi - phi * tgt.transposition(n, i)
                if not all(rel.contains(row) for row in rows_of(diff)):
                    problems.append(f"degree {n}: does not commute with t_{i}")
            if n < self.truncation:
                diff = src.inclusions[n] * self.matrices[n + 1] - phi * tgt.inclusions[n]
                if not all(tgt.relations[n + 1].contains(row) for row in rows_of(diff)):
                    problems.append(f"degree {n}: does not commute with iota_{n}")
        return problems

    def require_equivariant(self) -> None:
        problems = self.check_equivariance()
        if problems:
            raise EquivarianceError("; ".join(problems))

    def kernel_lattices(self) -> tuple[Lattice, ...]:
        """{x : phi_n(x) in R_target}, in ambient coordinates of the source."""
        return tuple(
            Lattice.preimage(phi, self.target.relations[n]) for n, phi in enumerate(self.matrices)
        )

    def image_lattices(self) -> tuple[Lattice, ...]:
        """phi_n(ambient) + R_target, in ambient coordinates of the target."""
        return tuple(
            Lattice.row_space(phi, self.target.ring) + self.target.relations[n]
            for n, phi in enumerate(self.matrices)
        )


def _truncated(v: FIModule, top: int) -> FIModule:
    return v if v.truncation == top else v.truncate(top)


def kernel_of_map(phi: FIMap, name: str = "") -> Submodule:
    """ker(phi) as a submodule of phi.source."""
    phi.require_equivariant()
    lattices = phi.kernel_lattices()
    logger.debug(f"Kernel ranks: {[lat.rank for lat in lattices]}")
    return restrict(_truncated(phi.source, phi.truncation), lattices, name=name)


def image_of_map(phi: FIMap, name: str = "") -> Submodule:
    phi.require_equivariant()
    return restrict(_truncated(phi.target, phi.truncation), phi.image_lattices(), name=name)


def cokernel_of_map(phi: FIMap, name: str = "") -> FIModule:
    phi.require_equivariant()
    target = _truncated(phi.target, phi.truncation)
    return quotient_module(target, phi.image_lattices(), name=name)


def map_from_rows(source: FIModule, target: FIModule, rows: Sequence[Sequence[Sequence[int]]]) -> FIMap:
    """Build a map from nested integer rows, one matrix per degree."""
    return FIMap(
        source,
        target,
        tuple(matrix(r, target.ranks[n], source.ring) for n, r in enumerate(rows)),
    )

"""FB-modules: a free coefficient module per degree with an S_m action."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import permutations
from typing import Any

from sympy.polys.matrices import DomainMatrix

from ..errors import CoxeterError, DimensionError
from ..linalg.rings import Ring, equal, identity, matrix
from .permutations import Permutation, adjacent_word

logger = logging.getLogger(__name__)


def coxeter_violations(
    ts: Sequence[DomainMatrix], rank: int, ring: Ring
) -> list[tuple[str, str]]:
    """Relations of S_m failed by the matrices t_1..t_{m-1} (R1, R2, R3)."""
    if rank == 0:
        return []
    one = identity(rank, ring)
    out = []
    for i, t in enumerate(ts, start=1):
        if not equal(t * t, one):
            out.append(("R1", f"t_{i}^2 != id"))
    for i, ti in enumerate(ts, start=1):
        for j in range(i + 2, len(ts) + 1):
            tj = ts[j - 1]
            if not equal(ti * tj, tj * ti):
                out.append(("R2", f"t_{i} t_{j} != t_{j} t_{i}"))
    for i in range(1, len(ts)):
        a, b = ts[i - 1], ts[i]
        if not equal(a * b * a, b * a * b):
            out.append(("R3", f"t_{i} t_{i + 1} t_{i} != t_{i + 1} t_{i} t_{i + 1}"))
    return out


@dataclass(frozen=True)
class FBModule:
    """A sequence of S_m-representations W_0, ..., W_top on free modules.

    ``actions[m]`` holds the matrices of t_1..t_{m-1} acting on row vectors of
    length ``ranks[m]``. The Coxeter relations are checked on construction.
    """

    ring: Ring
    ranks: tuple[int, ...]
    actions: tuple[tuple[DomainMatrix, ...], ...]
    _perm_cache: dict[tuple[int, Permutation], DomainMatrix] = field(
        default_factory=dict, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        if len(self.ranks) != len(self.actions):
            raise DimensionError("FB ranks and actions cover different degrees")
        for m, (rank, ts) in enumerate(zip(self.ranks, self.actions, strict=True)):
            expected = max(m - 1, 0) if rank else 0
            if rank and len(ts) != expected:
                raise DimensionError(f"Degree {m} needs {expected} transposition matrices, got {len(ts)}")
            for t in ts:
                if t.shape != (rank, rank):
                    raise DimensionError(f"Degree {m} action of shape {t.shape}, rank {rank}")
            problems = coxeter_violations(ts, rank, self.ring)
            if problems:
                raise CoxeterError(f"Degree {m}: " + "; ".join(f"{r}: {d}" for r, d in problems))

    # Construction

    @classmethod
    def concentrated(
        cls,
        ring: Ring,
        degree: int,
        rank: int,
        transpositions: Sequence[Sequence[Sequence[Any]]],
    ) -> FBModule:
        """A single S_degree-representation, zero in every other degree."""
        ranks = [0] * (degree + 1)
        actions: list[tuple[DomainMatrix, ...]] = [()] * (degree + 1)
        ranks[degree] = rank
        actions[degree] = tuple(matrix(t, rank, ring) for t in transpositions)
        return cls(ring, tuple(ranks), tuple(actions))

    @classmethod
    def trivial(cls, degree: int, ring: Ring = Ring.Z) -> FBModule:
        return cls.concentrated(ring, degree, 1, [[[1]]] * max(degree - 1, 0))

    @classmethod
    def sign(cls, degree: int, ring: Ring = Ring.Z) -> FBModule:
        return cls.concentrated(ring, degree, 1, [[[-1]]] * max(degree - 1, 0))

    @classmethod
    def regular(cls, degree: int, ring: Ring = Ring.Z) -> FBModule:
        """Z[S_m] with basis the permutations of [m] in lex order, acted on by t_i o -."""
        basis = list(permutations(range(1, degree + 1)))
        index = {p: k for k, p in enumerate(basis)}
        ts = []
        for i in range(1, degree):
            rows = []
            for p in basis:
                moved = tuple(i + 1 if x == i else i if x == i + 1 else x for x in p)
                rows.append([1 if k == index[moved] else 0 for k in range(len(basis))])
            ts.append(rows)
        return cls.concentrated(ring, degree, len(basis), ts)

    @classmethod
    def preset(cls, name: str, degree: int, ring: Ring = Ring.Z) -> FBModule:
        builders = {"trivial": cls.trivial, "sign": cls.sign, "regular": cls.regular}
        if name not in builders:
            raise ValueError(f"Unknown FB preset {name!r}; expected one of {sorted(builders)}")
        return builders[name](degree, ring)

    def direct_sum(self, other: FBModule) -> FBModule:
        if other.ring != self.ring:
            raise DimensionError("Direct sum over different rings")
        top = max(self.top_degree, other.top_degree)
        ranks, actions = [], []
        for m in range(top + 1):
            a, b = self.rank(m), other.rank(m)
            ranks.append(a + b)
            if a + b == 0:
                actions.append(())
                continue
            ts = []
            for i in range(1, m):
                rows = [[0] * (a + b) for _ in range(a + b)]
                for blk, off, size in ((self, 0, a), (other, a, b)):
                    if not size:
                        continue
                    for r, row in enumerate(blk.transposition(m, i).to_dense().to_list()):
                        for c, x in enumerate(row):
                            rows[off + r][off + c] = x
                ts.append(matrix(rows, a + b, self.ring))
            actions.append(tuple(ts))
        return FBModule(self.ring, tuple(ranks), tuple(actions))

    # Access

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def rank(self, m: int) -> int:
        return self.ranks[m] if 0 <= m < len(self.ranks) else 0

    @property
    def nonzero_degrees(self) -> list[int]:
        return [m for m, r in enumerate(self.ranks) if r]

    def transposition(self, m: int, i: int) -> DomainMatrix:
        return self.actions[m][i - 1]

    def action(self, m: int, perm: Permutation) -> DomainMatrix:
        """Matrix of a permutation of [m] on W_m."""
        key = (m, perm)
        cached = self._perm_cache.get(key)
        if cached is not None:
            return cached
        out = identity(self.rank(m), self.ring)
        for j in adjacent_word(perm):
            out = out * self.transposition(m, j)
        self._perm_cache[key] = out
        return out

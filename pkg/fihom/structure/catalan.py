"""Catalan collections of subsets and the group-algebra operators built on them.

Sigma(b) is the set of b-subsets S of [2b] whose i-th smallest element is at
most 2i - 1; Sigma(a, b) keeps those containing [a]. For S with complement
t_1 < ... < t_b in [2b], J_S is the product of the commuting operators
id - (s_i t_i). The remaining operations check, by explicit lattices in
F = Z[Inj([d], [n])], the decompositions that drive saturation.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from enum import StrEnum
from functools import cached_property
from itertools import combinations

from pydantic import BaseModel
from sympy.polys.matrices import DomainMatrix

from ..errors import DimensionError, TruncationError
from ..fi.module import FIModule
from ..fi.permutations import Injection, injections, transposition
from ..linalg.lattice import Lattice, LatticeBuilder
from ..linalg.rings import Ring, rows_of, zeros

logger = logging.getLogger(__name__)

Subset = tuple[int, ...]


def satisfies_star(subset: Sequence[int]) -> bool:
    """The i-th smallest element is at most 2i - 1."""
    return all(x <= 2 * i - 1 for i, x in enumerate(sorted(subset), start=1))


def complement(subset: Sequence[int], b: int) -> Subset:
    """[2b] minus the subset, increasing."""
    return tuple(x for x in range(1, 2 * b + 1) if x not in subset)


@dataclass(frozen=True, order=True)
class CatalanSet:
    """A member of Sigma(b)."""

    b: int
    elements: Subset

    def __post_init__(self) -> None:
        if len(self.elements) != self.b or len(set(self.elements)) != self.b:
            raise DimensionError(f"{self.elements} is not a {self.b}-subset")
        if tuple(sorted(self.elements)) != self.elements:
            raise DimensionError(f"{self.elements} is not increasing")
        if self.elements and not (1 <= self.elements[0] and self.elements[-1] <= 2 * self.b):
            raise DimensionError(f"{self.elements} is not inside [{2 * self.b}]")
        if not satisfies_star(self.elements):
            raise DimensionError(f"{self.elements} has an element above 2i - 1")

    @property
    def complement(self) -> Subset:
        return complement(self.elements, self.b)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.elements, self.complement, strict=True))

    def __str__(self) -> str:
        return "".join(map(str, self.elements)) if self.b < 5 else ",".join(map(str, self.elements))


def enumerate_sigma(a: int, b: int) -> list[CatalanSet]:
    """Sigma(a, b) in lexicographic order."""
    if not 1 <= a <= b:
        raise ValueError(f"Sigma(a, b) needs 1 <= a <= b, got a={a}, b={b}")
    prefix = set(range(1, a + 1))
    return [
        CatalanSet(b, s)
        for s in combinations(range(1, 2 * b + 1), b)
        if prefix <= set(s) and satisfies_star(s)
    ]


def descendants(subset: Sequence[int]) -> list[Subset]:
    """The images of S under the group generated by the swaps (s_k t_k), sorted."""
    s = tuple(sorted(subset))
    t = complement(s, len(s))
    out = set()
    for mask in range(1 << len(s)):
        out.add(tuple(sorted(t[k] if mask >> k & 1 else s[k] for k in range(len(s)))))
    return sorted(out)


def is_lex_first(subset: Sequence[int]) -> bool:
    """S precedes all of its descendants; equivalent to membership in Sigma(|S|)."""
    s = tuple(sorted(subset))
    return descendants(s)[0] == s


@dataclass(frozen=True)
class GroupAlgebraOperator:
    """A signed sum of injections [source] -> [target]."""

    source_size: int
    target_size: int
    terms: tuple[tuple[int, Injection], ...]

    def __post_init__(self) -> None:
        for _, f in self.terms:
            if (f.source_size, f.target_size) != (self.source_size, self.target_size):
                raise DimensionError(f"Term {f} is not [{self.source_size}] -> [{self.target_size}]")

    @classmethod
    def pairing(cls, pairs: Sequence[tuple[int, int]], n: int) -> GroupAlgebraOperator:
        """J^{i_1}_{j_1} ... J^{i_m}_{j_m} in Z[S_n], the 2m indices distinct."""
        points = [x for p in pairs for x in p]
        if len(set(points)) != len(points):
            raise DimensionError(f"Pairs {pairs} share an index")
        if any(not 1 <= x <= n for x in points):
            raise DimensionError(f"Pairs {pairs} leave [{n}]")
        terms = []
        for mask in range(1 << len(pairs)):
            perm = tuple(range(1, n + 1))
            for k, (i, j) in enumerate(pairs):
                if mask >> k & 1:
                    swap = transposition(n, i, j)
                    perm = tuple(swap[x - 1] for x in perm)
            terms.append((-1 if bin(mask).count("1") % 2 else 1, Injection.from_permutation(perm)))
        return cls(n, n, tuple(terms))

    def act(self, f: Injection) -> dict[Injection, int]:
        """self . f = sum c (term o f), with cancellations removed."""
        out: dict[Injection, int] = {}
        for c, g in self.terms:
            h = g.compose(f)
            out[h] = out.get(h, 0) + c
        return {h: c for h, c in out.items() if c}

    def matrix(self, v: FIModule) -> DomainMatrix:
        """Matrix of the operator on V_source -> V_target."""
        out = zeros(v.ranks[self.source_size], v.ranks[self.target_size], v.ring)
        for c, f in self.terms:
            out = out + v.injection_matrix(f) * v.ring.convert(c)
        return out


def j_operator(s: CatalanSet, n: int) -> GroupAlgebraOperator:
    """J_S = prod_i J^{t_i}_{s_i} in Z[S_n]."""
    if n < 2 * s.b:
        raise DimensionError(f"J_S for S in Sigma({s.b}) needs n >= {2 * s.b}, got {n}")
    return GroupAlgebraOperator.pairing(s.pairs, n)


def canonical_generator(m: int, n: int) -> GroupAlgebraOperator:
    """J^1_2 J^3_4 ... J^{2m-1}_{2m}, the generator of I_m up to conjugation."""
    return GroupAlgebraOperator.pairing([(2 * i - 1, 2 * i) for i in range(1, m + 1)], n)


def jtilde_operator(n: int, a: int) -> GroupAlgebraOperator:
    """sum_{K in [a]} (-1)^|K| f_K: [n] -> [n+a], f_K(i) = n+i on K, i elsewhere."""
    if not 0 <= a <= n:
        raise ValueError(f"Need 0 <= a <= n, got a={a}, n={n}")
    terms = []
    for mask in range(1 << a):
        images = tuple(n + i if i <= a and mask >> (i - 1) & 1 else i for i in range(1, n + 1))
        terms.append((-1 if bin(mask).count("1") % 2 else 1, Injection(n, n + a, images)))
    return GroupAlgebraOperator(n, n + a, tuple(terms))


def jtilde_kernel(v: FIModule, n: int, a: int) -> Lattice:
    """Ambient coordinates of the kernel of J~_[a] on V_n (relations included)."""
    if n + a > v.truncation:
        raise TruncationError(f"J~_[{a}] at degree {n} needs truncation {n + a}, module has {v.truncation}")
    op = jtilde_operator(n, a)
    return Lattice.preimage(op.matrix(v), v.relations[n + a])


def ideal_annihilation_check(v: FIModule, m: int, n: int) -> bool:
    """I_m . V_n = 0, decided on the canonical generator.

    The generators of I_m form one conjugacy class and V_n is an S_n-module,
    so one generator annihilating V_n is enough.
    """
    if 2 * m > n:
        return True
    j0 = canonical_generator(m, n).matrix(v)
    rel = v.relations[n]
    return all(rel.contains(row) for row in rows_of(j0))


def annihilated_by_ideal(v: FIModule, m: int) -> bool:
    """I_m . V = 0 in every degree up to the truncation."""
    key = ("annihilated", m)
    if key not in v._cache:
        v._cache[key] = all(ideal_annihilation_check(v, m, n) for n in range(v.truncation + 1))
    return v._cache[key]


def pairings(points: Sequence[int], m: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """All sets of m disjoint pairs from the given points."""
    if m == 0:
        yield ()
        return
    points = tuple(points)
    for k, first in enumerate(points):
        for second in points[k + 1 :]:
            rest = tuple(x for x in points[k + 1 :] if x != second)
            for tail in pairings(rest, m - 1):
                yield ((first, second), *tail)


class SubgroupKind(StrEnum):
    ALL = "F"
    MISSING_S = "not-S"
    B = "b"
    A_B = "a,b"
    EQUAL_S = "=S"


@dataclass(frozen=True)
class InjectionBasisSubgroup:
    """A subgroup of F = Z[Inj([d], [n])] spanned by some of its basis injections."""

    d: int
    n: int
    selected: tuple[Injection, ...]

    @cached_property
    def basis(self) -> list[Injection]:
        return injections(self.d, self.n)

    @cached_property
    def index(self) -> dict[Injection, int]:
        return {f: k for k, f in enumerate(self.basis)}

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def lattice(self) -> Lattice:
        rows = [{self.index[f]: 1} for f in self.selected]
        return Lattice.span(rows, self.rank, Ring.Z)

    @cached_property
    def members(self) -> frozenset[Injection]:
        return frozenset(self.selected)

    def __contains__(self, f: Injection) -> bool:
        return f in self.members


def fsubgroup(
    d: int,
    n: int,
    kind: SubgroupKind | str,
    a: int | None = None,
    b: int | None = None,
    s: Sequence[int] | None = None,
) -> InjectionBasisSubgroup:
    """F, F^{not S}, F^b, F^{a,b} or F_{=S} as a span of basis injections."""
    kind = SubgroupKind(kind)
    fs = injections(d, n)
    if kind is SubgroupKind.ALL:
        keep = fs
    elif kind in (SubgroupKind.MISSING_S, SubgroupKind.EQUAL_S):
        if s is None:
            raise ValueError(f"Subgroup {kind.value} needs S")
        target = frozenset(s)
        if kind is SubgroupKind.MISSING_S:
            keep = [f for f in fs if not target <= f.image]
        else:
            window = set(range(1, 2 * len(target) + 1))
            keep = [f for f in fs if f.image & window == target]
    else:
        if b is None or (kind is SubgroupKind.A_B and a is None):
            raise ValueError(f"Subgroup {kind.value} needs its parameters")
        sets = [frozenset(c.elements) for c in enumerate_sigma(1 if kind is SubgroupKind.B else a, b)]
        keep = [f for f in fs if not any(t <= f.image for t in sets)]
    return InjectionBasisSubgroup(d, n, tuple(keep))


class PropositionCheck(BaseModel):
    name: str
    d: int
    n: int
    a: int | None = None
    b: int
    checked: bool = True
    reason: str = ""
    holds: bool | None = None


def verify_bigb(d: int, n: int, b: int) -> PropositionCheck:
    """F = I_b . F + F^b, by spanning J . f over every pairing J and basis f."""
    report = PropositionCheck(name="bigb", d=d, n=n, b=b)
    if n < b + d:
        report.checked, report.reason = False, f"needs n >= b + d = {b + d}"
        return report
    fb = fsubgroup(d, n, SubgroupKind.B, b=b)
    index = fb.index
    builder = LatticeBuilder(fb.rank, Ring.Z)
    for row in fb.lattice.sparse_basis:
        builder.add(row)
    if not builder.is_full():
        outside = [f for f in fb.basis if f not in fb]
        for pairs in pairings(range(1, n + 1), b):
            op = GroupAlgebraOperator.pairing(pairs, n)
            for f in outside:
                if any(not (f.image & set(p)) for p in pairs):
                    continue
                builder.add({index[g]: c for g, c in op.act(f).items()})
                if builder.is_full():
                    break
            if builder.is_full():
                break
    report.holds = builder.is_full()
    if not report.holds:
        logger.error(f"I_{b} F + F^{b} != F for d={d}, n={n}")
    return report


def verify_indb(d: int, n: int, a: int, b: int) -> PropositionCheck:
    """F^{a,b+1} lies in F^{a,b} + sum over S in Sigma(a,b) of J_S F_{=S}."""
    report = PropositionCheck(name="indb", d=d, n=n, a=a, b=b)
    if not (1 <= a <= b and 2 * b <= n):
        report.checked, report.reason = False, "needs 1 <= a <= b and 2b <= n"
        return report
    left = fsubgroup(d, n, SubgroupKind.A_B, a=a, b=b + 1)
    right = fsubgroup(d, n, SubgroupKind.A_B, a=a, b=b)
    index = right.index
    rows = list(right.lattice.sparse_basis)
    for s in enumerate_sigma(a, b):
        op = j_operator(s, n)
        for f in fsubgroup(d, n, SubgroupKind.EQUAL_S, s=s.elements).selected:
            rows.append({index[g]: c for g, c in op.act(f).items()})
    span = Lattice.span(rows, right.rank, Ring.Z)
    report.holds = span.contains_lattice(left.lattice)
    if not report.holds:
        logger.error(f"F^({a},{b + 1}) not covered for d={d}, n={n}")
    return report

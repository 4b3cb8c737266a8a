"""Injections [m] -> [n] and their factorization into generators of FI.

FI is generated by the adjacent transpositions t_i of each S_n and the
standard inclusions iota_n: [n] -> [n+1]. Every injection f: [m] -> [n]
factors as f = sigma o iota^(n-m) with sigma in S_n; sigma is then written as
a word in the t_i.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

from ..errors import DimensionError

Permutation = tuple[int, ...]  # one-line notation, 1-indexed images


@dataclass(frozen=True, order=True)
class Injection:
    """An injection [source_size] -> [target_size], given by its images."""

    source_size: int
    target_size: int
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.source_size:
            raise DimensionError(f"Injection with {len(self.images)} images from [{self.source_size}]")
        if self.source_size > self.target_size:
            raise DimensionError(f"No injection [{self.source_size}] -> [{self.target_size}]")
        if len(set(self.images)) != len(self.images):
            raise DimensionError(f"Images {self.images} are not distinct")
        if any(not 1 <= x <= self.target_size for x in self.images):
            raise DimensionError(f"Images {self.images} leave [{self.target_size}]")

    @classmethod
    def identity(cls, n: int) -> Injection:
        return cls(n, n, tuple(range(1, n + 1)))

    @classmethod
    def standard(cls, m: int, n: int) -> Injection:
        """The inclusion [m] ⊂ [n]."""
        return cls(m, n, tuple(range(1, m + 1)))

    @classmethod
    def order_preserving(cls, subset: Iterable[int], n: int) -> Injection:
        """ord_S: the order-preserving injection onto S."""
        images = tuple(sorted(subset))
        return cls(len(images), n, images)

    @classmethod
    def missing(cls, n: int, i: int) -> Injection:
        """The order-preserving injection [n-1] -> [n] whose image misses i."""
        return cls.order_preserving((x for x in range(1, n + 1) if x != i), n)

    @classmethod
    def from_permutation(cls, perm: Sequence[int]) -> Injection:
        return cls(len(perm), len(perm), tuple(perm))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    @property
    def is_bijection(self) -> bool:
        return self.source_size == self.target_size

    def compose(self, other: Injection) -> Injection:
        """self o other."""
        if other.target_size != self.source_size:
            raise DimensionError(
                f"Cannot compose [{other.source_size}]->[{other.target_size}] "
                f"with [{self.source_size}]->[{self.target_size}]"
            )
        return Injection(
            other.source_size, self.target_size, tuple(self(x) for x in other.images)
        )

    def factor(self) -> Permutation:
        """sigma in S_n with self = sigma o standard(m, n).

        The points outside [m] are sent, in increasing order, to the points
        outside the image.
        """
        rest = sorted(set(range(1, self.target_size + 1)) - self.image)
        return self.images + tuple(rest)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """p o q."""
    return tuple(p[x - 1] for x in q)


def inverse(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for i, x in enumerate(p, start=1):
        out[x - 1] = i
    return tuple(out)


def transposition(n: int, i: int, j: int) -> Permutation:
    perm = list(range(1, n + 1))
    perm[i - 1], perm[j - 1] = perm[j - 1], perm[i - 1]
    return tuple(perm)


def sign(p: Permutation) -> int:
    return -1 if len(adjacent_word(p)) % 2 else 1


@lru_cache(maxsize=4096)
def adjacent_word(perm: Permutation) -> tuple[int, ...]:
    """Indices (j_1, ..., j_k) with perm = t_{j_k} o ... o t_{j_1}.

    For a module acting on row vectors the matrix of perm is then
    T_{j_1} T_{j_2} ... T_{j_k}.
    """
    word = []
    w = list(perm)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                word.append(i + 1)
                changed = True
    return tuple(word)


def injections(m: int, n: int) -> list[Injection]:
    """All injections [m] -> [n], ordered lexicographically by images."""
    return [Injection(m, n, images) for images in permutations(range(1, n + 1), m)]


def subsets(n: int, k: int) -> list[tuple[int, ...]]:
    """k-subsets of [n] as sorted tuples, in lexicographic order."""
    return list(combinations(range(1, n + 1), k))

"""Seeded random module descriptions for the property suites.

Each module is free on one or two generators of degree <= 2 (FB rank <= 2 in
every degree) modulo, or spanned by, one to three elements of degree <= 3
whose coefficients lie in [-2, 2].
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterator
from itertools import combinations
from typing import Literal

from .linalg.rings import Ring
from .schema import ElementSpec, FBGenerator, LabelTerm, ModuleSpecFile

logger = logging.getLogger(__name__)

Mode = Literal["quotient", "submodule"]

MAX_GENERATOR_DEGREE = 2
MAX_FB_RANK = 2
MAX_ELEMENT_DEGREE = 3
COEFFICIENTS = (-2, -1, 1, 2)


def _generators(rng: random.Random) -> list[FBGenerator]:
    gens: list[FBGenerator] = []
    ranks: dict[int, int] = {}
    for _ in range(rng.randint(1, 2)):
        degree = rng.randint(0, MAX_GENERATOR_DEGREE)
        choices = ["trivial", "sign"] + (["regular"] if degree == 2 else [])
        gen = FBGenerator(degree=degree, preset=rng.choice(choices))
        if ranks.get(degree, 0) + gen.resolved_rank > MAX_FB_RANK:
            continue
        ranks[degree] = ranks.get(degree, 0) + gen.resolved_rank
        gens.append(gen)
    return gens


def _element(rng: random.Random, ranks: dict[int, int], degree: int) -> ElementSpec | None:
    labels = [
        (list(s), j)
        for m, r in sorted(ranks.items())
        if m <= degree
        for s in combinations(range(1, degree + 1), m)
        for j in range(1, r + 1)
    ]
    if not labels:
        return None
    picked = rng.sample(labels, min(len(labels), rng.randint(1, 3)))
    terms = [LabelTerm(subset=s, index=j, coefficient=rng.choice(COEFFICIENTS)) for s, j in picked]
    return ElementSpec(degree=degree, terms=terms)


def random_module_spec(
    rng: random.Random, ring: Ring = Ring.Z, mode: Mode = "quotient", truncation: int = 8
) -> ModuleSpecFile:
    """One random description; the same rng state gives the same module."""
    gens = _generators(rng)
    spec = ModuleSpecFile(ring=ring, truncation=truncation, fb_generators=gens, mode=mode)
    ranks = spec.fb_ranks()
    elements = []
    for _ in range(rng.randint(1, 3)):
        element = _element(rng, ranks, rng.randint(min(ranks), MAX_ELEMENT_DEGREE))
        if element is not None:
            elements.append(element)
    return spec.model_copy(update={"elements": elements})


def corpus(
    size: int, seed: int, mode: Mode = "quotient", rings: tuple[Ring, ...] = (Ring.Z, Ring.Q), truncation: int = 8
) -> Iterator[ModuleSpecFile]:
    """``size`` descriptions, alternating between the given rings."""
    rng = random.Random(seed)
    for i in range(size):
        spec = random_module_spec(rng, rings[i % len(rings)], mode, truncation)
        yield spec.model_copy(update={"name": f"corpus-{seed}-{i}"})

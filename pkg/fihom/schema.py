"""Module description files.

A description names an FB-module W by its generators, a list of elements of
the free module M(W) and a mode:

    quotient   W' = M(W) / <elements>
    submodule  V  = <elements> inside M(W)

Both modes keep M(W), the spanned submodule and the quotient, so commands that
need an ambient free module (``saturate``) work on either. Files are JSON, or
YAML when the suffix is ``.yaml`` / ``.yml``. See docs/input-schema.md.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Annotated, Any, Literal

import yaml
from pydantic import (
    AfterValidator,
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    ValidationError,
    field_validator,
    model_validator,
)

from .errors import CoxeterError, DimensionError, InputError
from .fi.fb import FBModule
from .fi.module import (
    FIModule,
    FreeBasisLabel,
    Submodule,
    free_fi_module,
    quotient_module,
    span_submodule,
)
from .linalg.rings import Ring

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

# Integers beyond this are written as strings.
_SAFE_INT = 2**53


def _normalize_entry(value: int | str) -> int | str:
    """Integers stay ints; "p/q" strings are reduced, and become ints when q = 1."""
    if isinstance(value, int):
        return value
    try:
        q = Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"{value!r} is not an integer or a fraction p/q") from None
    return int(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _serialize_entry(value: int | str) -> int | str:
    if isinstance(value, int) and abs(value) >= _SAFE_INT:
        return str(value)
    return value


Entry = Annotated[
    int | str,
    AfterValidator(_normalize_entry),
    PlainSerializer(_serialize_entry, when_used="json"),
]
FBPreset = Literal["trivial", "sign", "regular"]


class FBGenerator(BaseModel):
    """One S_degree-representation summand of W."""

    model_config = ConfigDict(extra="forbid")

    degree: int = Field(ge=0, le=16)
    preset: FBPreset | None = None
    rank: int | None = Field(default=None, ge=0)
    transpositions: list[list[list[Entry]]] | None = Field(
        default=None, description="Matrices of t_1..t_{degree-1} acting on row vectors"
    )

    @model_validator(mode="after")
    def _one_source(self) -> FBGenerator:
        if (self.preset is None) == (self.transpositions is None):
            raise ValueError("give exactly one of 'preset' and 'transpositions'")
        if self.preset is not None:
            if self.rank is not None and self.rank != self.preset_rank:
                raise ValueError(f"preset {self.preset} in degree {self.degree} has rank {self.preset_rank}")
            return self
        if self.rank is None:
            raise ValueError("'rank' is required with explicit transpositions")
        expected = max(self.degree - 1, 0)
        if len(self.transpositions) != expected:
            raise ValueError(f"degree {self.degree} needs {expected} transposition matrices")
        for t in self.transpositions:
            if len(t) != self.rank or any(len(row) != self.rank for row in t):
                raise ValueError(f"transposition matrices must be {self.rank}x{self.rank}")
        return self

    @property
    def preset_rank(self) -> int:
        return factorial(self.degree) if self.preset == "regular" else 1

    @property
    def resolved_rank(self) -> int:
        return self.preset_rank if self.preset is not None else self.rank or 0

    def fb_module(self, ring: Ring) -> FBModule:
        if self.preset is not None:
            return FBModule.preset(self.preset, self.degree, ring)
        return FBModule.concentrated(ring, self.degree, self.rank or 0, self.transpositions or [])


class LabelTerm(BaseModel):
    """coefficient * e_j in the summand W_S, |S| the generator degree."""

    model_config = ConfigDict(extra="forbid")

    subset: list[int]
    index: int = Field(default=1, ge=1)
    coefficient: Entry = 1

    @field_validator("subset")
    @classmethod
    def _strictly_increasing(cls, subset: list[int]) -> list[int]:
        if any(x < 1 for x in subset):
            raise ValueError(f"subset {subset} has entries below 1")
        if any(a >= b for a, b in zip(subset, subset[1:], strict=False)):
            raise ValueError(f"subset {subset} is not strictly increasing")
        return subset

    @property
    def label(self) -> FreeBasisLabel:
        return FreeBasisLabel(len(self.subset), tuple(self.subset), self.index)


class ElementSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    degree: int = Field(ge=0)
    terms: list[LabelTerm] = Field(default_factory=list)


class ModuleSpecFile(BaseModel):
    """A module description, as read from disk or produced by a preset."""

    model_config = ConfigDict(extra="forbid")

    schema_version: Literal[1] = SCHEMA_VERSION
    name: str = ""
    ring: Ring = Ring.Z
    truncation: int = Field(default=8, ge=0, le=16)
    fb_generators: list[FBGenerator] = Field(default_factory=list)
    elements: list[ElementSpec] = Field(default_factory=list)
    mode: Literal["quotient", "submodule"] = "quotient"

    def fb_ranks(self) -> dict[int, int]:
        """Rank of W_m for each generator degree m."""
        out: dict[int, int] = {}
        for g in self.fb_generators:
            out[g.degree] = out.get(g.degree, 0) + g.resolved_rank
        return out

    def check(self) -> None:
        """Label ranges, coefficient rings and Coxeter relations, each reported with its field."""
        ranks = self.fb_ranks()
        for e, element in enumerate(self.elements):
            for t, term in enumerate(element.terms):
                where = f"elements.{e}.terms.{t}"
                if term.subset and term.subset[-1] > element.degree:
                    raise InputError(f"subset {term.subset} is not inside [{element.degree}]", f"{where}.subset")
                available = ranks.get(len(term.subset), 0)
                if term.index > available:
                    raise InputError(
                        f"index {term.index} but W_{len(term.subset)} has rank {available}", f"{where}.index"
                    )
                try:
                    self.ring.convert(term.coefficient)
                except DimensionError as exc:
                    raise InputError(str(exc), f"{where}.coefficient") from exc
        for g, gen in enumerate(self.fb_generators):
            try:
                gen.fb_module(self.ring)
            except (CoxeterError, DimensionError) as exc:
                raise InputError(str(exc), f"fb_generators.{g}.transpositions") from exc

    def canonical_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


@dataclass(frozen=True)
class BuiltModule:
    """M(W), the span V of the elements and W' = M(W) / V."""

    spec: ModuleSpecFile
    free: FIModule
    sub: Submodule
    quotient: FIModule

    @property
    def subject(self) -> FIModule:
        """The module the description is about: W' in quotient mode, V otherwise."""
        return self.quotient if self.spec.mode == "quotient" else self.sub.module


def _field_path(loc: tuple[int | str, ...]) -> str:
    return ".".join(str(x) for x in loc) or "<root>"


def validate_spec(data: Any) -> ModuleSpecFile:
    """Validate already-decoded data, turning schema failures into InputError."""
    try:
        spec = ModuleSpecFile.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        more = f" (and {exc.error_count() - 1} more)" if exc.error_count() > 1 else ""
        raise InputError(f"{first['msg']}{more}", _field_path(first["loc"])) from exc
    spec.check()
    return spec


def parse_input(path: str | Path) -> ModuleSpecFile:
    """Read and validate a description file."""
    path = Path(path)
    if not path.is_file():
        raise InputError(f"{path} does not exist", "input")
    text = path.read_text(encoding="utf-8")
    try:
        if path.suffix.lower() in (".yaml", ".yml"):
            data = yaml.safe_load(text)
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise InputError(f"cannot decode {path.name}: {exc}", "input") from exc
    logger.info(f"Loaded module description {path}")
    return validate_spec(data)


def build_fb_module(spec: ModuleSpecFile) -> FBModule:
    """W as the direct sum of the generators, in file order."""
    w = FBModule(spec.ring, (0,), ((),))
    for gen in spec.fb_generators:
        w = w.direct_sum(gen.fb_module(spec.ring))
    return w


def build_module(spec: ModuleSpecFile) -> BuiltModule:
    """Construct M(W), V and M(W)/V up to the truncation.

    Elements above the truncation cannot change degrees <= N and are skipped.
    """
    w = build_fb_module(spec)
    free = free_fi_module(w, spec.truncation, name=f"M({spec.name})" if spec.name else "M")
    gens = []
    for element in spec.elements:
        if element.degree > spec.truncation:
            logger.info(f"Skipping element of degree {element.degree} above truncation {spec.truncation}")
            continue
        coefficients: dict[FreeBasisLabel, Any] = {}
        for term in element.terms:
            c = spec.ring.convert(term.coefficient)
            coefficients[term.label] = coefficients.get(term.label, spec.ring.domain.zero) + c
        gens.append(free.from_labels(element.degree, coefficients))
    name = spec.name or "V"
    sub = span_submodule(free, gens, name=name if spec.mode == "submodule" else f"span({name})")
    quotient = quotient_module(free, sub, name=name if spec.mode == "quotient" else f"M/{name}")
    logger.debug(f"Built {name}: free ranks {free.ranks}, span ranks {sub.module.ranks}")
    return BuiltModule(spec=spec, free=free, sub=sub, quotient=quotient)


"""The ``verify-props`` suites.

Each suite runs one family of checks over fixed cases or the seeded corpus and
returns a :class:`SuiteResult` counting passes, failures and cases the
truncation leaves open.
"""

from __future__ import annotations

import logging
import random
import time
from collections.abc import Callable, Iterator
from itertools import combinations
from math import comb
from typing import Any

from pydantic import BaseModel, Field
from sympy.polys.matrices.normalforms import invariant_factors

from .config import Defaults
from .corpus import corpus
from .errors import InputError
from .fi.fb import FBModule
from .fi.functors import generation_degree_from_derivative, h0
from .fi.module import free_fi_module
from .homology.colimit import minimal_degree
from .homology.koszul import (
    HomologyTable,
    derivative_homology_check,
    euler_characteristic_check,
    fi_homology,
    regularity_check,
    resolution_check,
)
from .homology.syzygy import relation_degree_check
from .linalg.groups import GroupSummary
from .linalg.normal_forms import hnf, snf
from .linalg.rings import Ring, matrix, rows_of
from .presets import preset_spec
from .schema import BuiltModule, ModuleSpecFile, build_module
from .stable_range import (
    DegreeSpectralInput,
    congruence_bounds,
    propagate_claim,
    putman_threshold,
    threshold,
)
from .structure.catalan import (
    descendants,
    enumerate_sigma,
    ideal_annihilation_check,
    is_lex_first,
    verify_bigb,
    verify_indb,
)
from .structure.saturation import check_saturation_prime, saturation_grid, torsion_threshold

logger = logging.getLogger(__name__)

NORMAL_FORM_SAMPLES = 200
SHARPNESS_CASES = ((1, 2), (1, 3), (2, 3))


class SuiteOptions(BaseModel):
    truncation: int = 8
    p_max: int = 3
    a_max: int = 4
    corpus_size: int = 50
    corpus_seed: int = 0
    catalan_d_max: int = 3
    catalan_b_max: int = 3
    catalan_n_max: int = 8

    @classmethod
    def from_defaults(cls, defaults: Defaults, **overrides: Any) -> SuiteOptions:
        values = {name: getattr(defaults, name) for name in cls.model_fields}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class SuiteResult(BaseModel):
    name: str
    checked: int = 0
    passed: int = 0
    inconclusive: int = 0
    skipped: int = Field(default=0, description="Cases whose hypotheses do not hold")
    violations: list[str] = Field(default_factory=list)
    data: dict[str, Any] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def tally(self, holds: bool | None, what: str) -> None:
        self.checked += 1
        if holds is True:
            self.passed += 1
        elif holds is None:
            self.inconclusive += 1
        else:
            self.violations.append(what)
            logger.error(f"[{self.name}] violation: {what}")


def _catalan(opts: SuiteOptions) -> SuiteResult:
    result = SuiteResult(name="catalan")
    counts = []
    for b in range(1, 11):
        count = len(enumerate_sigma(1, b))
        counts.append(count)
        result.tally(count == comb(2 * b, b) // (b + 1), f"|Sigma({b})| = {count}")
    result.data["counts"] = counts
    for b in range(1, 6):
        sigma = {s.elements for s in enumerate_sigma(1, b)}
        lex_first = {s for s in combinations(range(1, 2 * b + 1), b) if is_lex_first(s)}
        result.tally(sigma == lex_first, f"Sigma({b}) differs from the lex-first representatives")
        for s in sigma:
            result.tally(len(descendants(s)) == 2**b, f"{s} has {len(descendants(s))} descendants")
    return result


def _ballot(a: int, b: int) -> int:
    return comb(2 * b - a, b - a) * (a + 1) // (b + 1)


def _sigma_tables(opts: SuiteOptions) -> SuiteResult:
    result = SuiteResult(name="sigma-tables")
    for b in range(1, 7):
        for a in range(1, b + 1):
            size = len(enumerate_sigma(a, b))
            result.tally(size == _ballot(a, b), f"|Sigma({a},{b})| = {size}, expected {_ballot(a, b)}")
    result.data["sigma_a_4"] = {str(a): [str(s) for s in enumerate_sigma(a, 4)] for a in range(1, 5)}
    return result


def _free_acyclicity(opts: SuiteOptions) -> SuiteResult:
    result = SuiteResult(name="free-acyclicity")
    n_max = min(opts.truncation, 7)
    cases = [("trivial", m) for m in range(4)] + [("regular", m) for m in (2, 3)] + [("sign", m) for m in (2, 3)]
    for kind, m in cases:
        free = free_fi_module(FBModule.preset(kind, m), n_max, name=f"M({kind}_{m})")
        table = fi_homology(free, 3)
        result.tally(table.degree(0).value == m, f"deg H0(M({kind}_{m})) = {table.degree(0)}")
        for p in range(1, 4):
            for n in range(n_max + 1):
                group = table.group(p, n)
                result.tally(group.is_zero, f"H{p}(M({kind}_{m}))_{n} = {group}")
        if kind == "trivial":
            for n in range(min(n_max, 4) + 1):
                euler = euler_characteristic_check(free, n)
                result.tally(euler.ok, f"Euler characteristic of M({kind}_{m}) at n={n}")
    return result


def _sharpness(opts: SuiteOptions) -> SuiteResult:
    result = SuiteResult(name="sharpness")
    for k, d in SHARPNESS_CASES:
        top = k + d + 2
        built = build_module(preset_spec(f"sharpness:{k},{d}", Ring.Q, top))
        w = built.quotient
        # M(k) vanishes below degree k, so only k <= n < k + d is nonzero
        for n in range(k):
            result.tally(w.is_zero_at(n), f"sharpness({k},{d}) over Q: W_{n} = {w.summary(n)} below k")
        for n in range(k, top + 1):
            expected_zero = n >= k + d
            result.tally(w.is_zero_at(n) == expected_zero, f"sharpness({k},{d}) over Q: W_{n} = {w.summary(n)}")
        torsion = torsion_threshold(w, k, d)
        result.tally(torsion.holds, f"sharpness({k},{d}): torsion threshold {torsion.threshold}")
        result.tally(torsion.threshold == min(k, d) + d, f"sharpness({k},{d}): threshold is not sharp")
        colimit = minimal_degree(w)
        result.tally(colimit.agrees, f"sharpness({k},{d}): colimit degree {colimit.minimal}")
        result.tally(bool(colimit.failures), f"sharpness({k},{d}): no colimit failure below {colimit.minimal}")

    integral = build_module(preset_spec("sharpness:1,2", Ring.Z, 5)).quotient
    expected = GroupSummary(ring=Ring.Z, torsion=(2,))
    result.tally(integral.summary(3) == expected, f"sharpness(1,2) over Z: W_3 = {integral.summary(3)}")
    return result


def _certified_degrees(table: HomologyTable) -> tuple[int, int] | None:
    g0, g1 = table.degree(0), table.degree(1)
    if g0.truncation_limited or g1.truncation_limited:
        return None
    return int(max(g0.numeric, 0)), int(max(g1.numeric, 0))


def _regularity(opts: SuiteOptions) -> SuiteResult:
    result = SuiteResult(name="regularity")
    for spec in corpus(opts.corpus_size, opts.corpus_seed, "quotient", truncation=opts.truncation):
        w = build_module(spec).quotient
        table = fi_homology(w, max(opts.p_max, 1))
        result.tally(table.h0_consistent, f"{spec.name}: H0 from the Koszul complex")
        degrees = _certified_degrees(table)
        if degrees is None:
            result.tally(None, f"{spec.name}: deg H0 or deg H1 reaches the truncation")
            continue
        k, d = degrees
        report = regularity_check(w, k, d, opts.p_max, table)
        for row in report.rows:
            result.tally(row.holds, f"{spec.name}: deg H{row.p} = {row.degree} > {row.bound}")
        relations = relation_degree_check(w)
        result.tally(relations.holds, f"{spec.name}: relations in degree {relations.relation_degree}")
    return result


def _submodule_corpus(opts: SuiteOptions) -> Iterator[tuple[ModuleSpecFile, BuiltModule, int, int]]:
    """Submodule-mode corpus with k = deg H_0(M) and d = deg H_0(V)."""
    for spec in corpus(opts.corpus_size, opts.corpus_seed, "submodule", truncation=opts.truncation):
        built = build_module(spec)
        k = int(max(h0(built.free).degree.numeric, 0))
        d = int(max(h0(built.sub.module).degree.numeric, 0))
        yield spec, built, k, d


def _saturation(opts: SuiteOptions) -> SuiteResult:
    result = SuiteResult(name="saturation")
    for spec, built, k, d in _submodule_corpus(opts):
        grid = saturation_grid(built.sub, opts.a_max, k, d)
        bad = {(c.n, c.a) for c in grid.violations}
        mismatched = {(c.n, c.a) for c in grid.derivative_mismatches}
        for cell in grid.cells:
            result.tally((cell.n, cell.a) not in bad, f"{spec.name}: saturation at n={cell.n}, a={cell.a}")
            if cell.derivative_kernel_zero is not None:
                result.tally(
                    (cell.n, cell.a) not in mismatched,
                    f"{spec.name}: derivative kernel disagrees with saturation at n={cell.n}, a={cell.a}",
                )
    return result


def _saturation_prime(opts: SuiteOptions) -> SuiteResult:
    result = SuiteResult(name="saturation-prime")
    for spec, built, k, d in _submodule_corpus(opts):
        v = built.sub.module
        cap = min(k, d)
        for n in range(cap + d + 1, v.truncation + 1):
            for a in range(1, min(n, opts.a_max, v.truncation - n) + 1):
                report = check_saturation_prime(v, n, a, cap)
                if not report.applicable:
                    result.skipped += 1
                    continue
                result.tally(report.equal, f"{spec.name}: facets != ker J~ at n={n}, a={a}")
                if report.generated_by_facets is not None:
                    result.tally(report.generated_by_facets, f"{spec.name}: V_{n} not spanned by {cap + 1} facets")
    return result


def _colimit(opts: SuiteOptions) -> SuiteResult:
    result = SuiteResult(name="colimit")
    truncation = min(opts.truncation, 6)
    for spec in corpus(opts.corpus_size, opts.corpus_seed, "quotient", truncation=truncation):
        report = minimal_degree(build_module(spec).quotient)
        result.tally(report.agrees, f"{spec.name}: colimit degree {report.minimal} vs {report.homology_bound}")
    return result


def _stable_range(opts: SuiteOptions) -> SuiteResult:
    result = SuiteResult(name="stable-range")
    table = congruence_bounds(1, 8)
    for k, value in table.thresholds.items():
        result.tally(value == 11 * 2 ** (k - 2), f"threshold for d=1, k={k} is {value}")
    for d in range(6):
        claim = propagate_claim(DegreeSpectralInput(d=d), 10, 5)
        for row in claim.rows:
            if row.closed_form is not None:
                result.tally(row.closed_form, f"propagated bounds for d={d}, k={row.k} miss the closed form")
        for k in range(2, 11):
            result.tally(putman_threshold(d, k) > threshold(d, k), f"no improvement at d={d}, k={k}")
    return result


def _derivative(opts: SuiteOptions) -> SuiteResult:
    result = SuiteResult(name="derivative")
    for spec, built, k, d in _submodule_corpus(opts):
        report = derivative_homology_check(built.sub, k, d, opts.a_max)
        for row in report.rows:
            result.tally(row.holds, f"{spec.name}: derivative degrees at a={row.a}")
            bound = d + min(k, d) - row.a
            remark: bool | None = True
            if not row.kernel_degree.at_most(bound):
                remark = None if row.kernel_degree.truncation_limited else False
            result.tally(remark, f"{spec.name}: deg ker D^{row.a} = {row.kernel_degree} > {bound}")
        generation = generation_degree_from_derivative(built.quotient, opts.a_max)
        result.tally(generation.ok, f"{spec.name}: generation degree from derivatives")
    return result


def _resolution(opts: SuiteOptions) -> SuiteResult:
    result = SuiteResult(name="resolution")
    for s in range(6):
        for t in range(s, 6):
            report = resolution_check(s, t)
            result.tally(report.resolves, f"C_*({s}, {t}) is not a resolution")
    return result


def _hnf_is_canonical(h_rows: list[list[int]], pivots: tuple[int, ...]) -> bool:
    for r, (row, col) in enumerate(zip(h_rows, pivots, strict=True)):
        if row[col] <= 0 or any(row[:col]):
            return False
        if any(not 0 <= h_rows[above][col] < row[col] for above in range(r)):
            return False
    return list(pivots) == sorted(set(pivots))


def _normal_forms(opts: SuiteOptions) -> SuiteResult:
    result = SuiteResult(name="normal-forms")
    rng = random.Random(opts.corpus_seed)
    for i in range(NORMAL_FORM_SAMPLES):
        rows = [[rng.randint(-5, 5) for _ in range(6)] for _ in range(6)]
        m = matrix(rows, 6, Ring.Z)
        ours = snf(m).invariant_factors
        oracle = tuple(sorted(abs(int(x)) for x in invariant_factors(m) if x))
        result.tally(tuple(sorted(ours)) == oracle, f"sample {i}: SNF {ours} vs {oracle}")

        form = hnf(m)
        h_rows = [[int(x) for x in row] for row in rows_of(form.h)]
        reduced = [[int(x) for x in row] for row in rows_of(form.u * m)]
        zero_tail = [[0] * 6] * (6 - form.rank)
        unimodular = abs(int(form.u.det())) == 1
        result.tally(
            unimodular and reduced == h_rows + zero_tail and _hnf_is_canonical(h_rows, form.pivots),
            f"sample {i}: HNF is not a canonical unimodular reduction",
        )
        result.tally(form.rank == snf(m).rank, f"sample {i}: HNF and SNF ranks differ")
    return result


def _props_3(opts: SuiteOptions) -> SuiteResult:
    result = SuiteResult(name="props-3")
    for d in range(opts.catalan_d_max + 1):
        for b in range(1, opts.catalan_b_max + 1):
            for n in (b + d, b + d + 1):
                if n <= opts.catalan_n_max:
                    result.tally(verify_bigb(d, n, b).holds, f"I_b F + F^b != F at d={d}, n={n}, b={b}")
            for a in range(1, b + 1):
                for n in (2 * b, 2 * b + 1):
                    if n <= opts.catalan_n_max:
                        check = verify_indb(d, n, a, b)
                        result.tally(check.holds, f"F^(a,b+1) not covered at d={d}, n={n}, a={a}, b={b}")
    for k in range(4):
        principal = build_module(preset_spec(f"principal:{k}", Ring.Z, opts.catalan_n_max)).free
        for n in range(opts.catalan_n_max + 1):
            result.tally(ideal_annihilation_check(principal, k + 1, n), f"I_{k + 1} M({k})_{n} != 0")
    return result


SUITES: dict[str, Callable[[SuiteOptions], SuiteResult]] = {
    "catalan": _catalan,
    "sigma-tables": _sigma_tables,
    "free-acyclicity": _free_acyclicity,
    "sharpness": _sharpness,
    "regularity": _regularity,
    "saturation": _saturation,
    "saturation-prime": _saturation_prime,
    "colimit": _colimit,
    "stable-range": _stable_range,
    "derivative": _derivative,
    "resolution": _resolution,
    "normal-forms": _normal_forms,
    "props-3": _props_3,
}
SUITE_NAMES = (*SUITES, "all")


def run_suite(name: str, opts: SuiteOptions) -> list[SuiteResult]:
    """Run one suite, or every suite for ``all``."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise InputError(f"unknown suite {name!r}; expected one of {', '.join(SUITE_NAMES)}", "suite")
    results = []
    for suite in names:
        start = time.perf_counter()
        logger.info(f"Running suite {suite}")
        result = SUITES[suite](opts)
        logger.info(
            f"Suite {suite}: {result.passed}/{result.checked} passed, {len(result.violations)} violations "
            f"in {time.perf_counter() - start:.1f}s"
        )
        results.append(result)
    return results

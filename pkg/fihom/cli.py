"""Command-line entry point.

    fihom <command> [--input FILE | --preset NAME] [--ring Z|Q] [--trunc N]
                    [--pmax P] [--amax A] [--d D] [--kmax K] [--a A] [--b B]
                    [--suite NAME] [--json | --tsv] [--verbose | --debug]

The report goes to stdout, logs to stderr. Exit status: 0 all checks pass,
1 a check failed, 2 input error, 3 a check was left open by the truncation.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from typing import Any

from pydantic import BaseModel, Field, ValidationError

from . import __version__
from .config import Defaults, get_settings
from .errors import FIHomError, InputError
from .fi.degrees import DegreeTable
from .fi.functors import degree_table, derivative_kernel_degrees, h0, iterated_derivative, torsion_kernel
from .fi.module import validate_presentation
from .homology.colimit import minimal_degree, subset_colimit
from .homology.koszul import fi_homology, homology_degree_table, regularity_check
from .linalg.rings import Ring
from .presets import preset_spec
from .reports import ExitStatus, Report
from .schema import BuiltModule, ModuleSpecFile, build_module, parse_input, validate_spec
from .stable_range import DegreeSpectralInput, congruence_bounds, propagate_claim
from .structure.catalan import descendants, enumerate_sigma
from .structure.saturation import check_saturation_prime, saturation_grid, torsion_threshold
from .suites import SUITE_NAMES, SuiteOptions, run_suite

logger = logging.getLogger(__name__)

MODULE_COMMANDS = ("homology", "degrees", "saturate", "colimit", "validate")
STANDALONE_COMMANDS = ("catalan", "bounds", "verify-props")


class CommandFlags(BaseModel):
    """Numeric flags of one invocation, after defaults are applied."""

    p_max: int = Field(ge=0, le=8)
    a_max: int = Field(ge=1, le=8)
    d: int = Field(default=1, ge=0, le=64)
    k_max: int = Field(default=8, ge=2, le=40)
    a: int = Field(default=1, ge=1)
    b: int = Field(default=4, ge=1, le=8)
    suite: str = "all"
    truncation: int | None = Field(default=None, ge=0, le=16)
    corpus_size: int | None = Field(default=None, ge=1)
    seed: int | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace, defaults: Defaults) -> CommandFlags:
        given = {
            "p_max": args.pmax if args.pmax is not None else defaults.p_max,
            "a_max": args.amax if args.amax is not None else defaults.a_max,
            "d": args.d,
            "k_max": args.kmax,
            "a": args.a,
            "b": args.b,
            "suite": args.suite,
            "truncation": args.trunc,
            "corpus_size": args.corpus_size,
            "seed": args.seed,
        }
        return cls(**{k: v for k, v in given.items() if v is not None})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fihom",
        description="Exact FI-homology, saturation and stable-range checks for truncated FI-modules.",
    )
    parser.add_argument("command", choices=[*MODULE_COMMANDS, *STANDALONE_COMMANDS])
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--input", help="Module description (.json, .yaml)")
    source.add_argument("--preset", help="principal:m, free:<trivial|sign|regular>:m, sharpness:k,d or zero")
    parser.add_argument("--ring", choices=[r.value for r in Ring], help="Override the coefficient ring")
    parser.add_argument("--trunc", type=int, help="Override the truncation N")
    parser.add_argument("--pmax", type=int, help="Largest homological degree")
    parser.add_argument("--amax", type=int, help="Largest derivative order")
    parser.add_argument("--d", type=int, help="Abutment offset for bounds")
    parser.add_argument("--kmax", type=int, help="Largest k for bounds")
    parser.add_argument("--a", type=int, help="Prefix size for catalan")
    parser.add_argument("--b", type=int, help="Catalan parameter")
    parser.add_argument("--suite", choices=SUITE_NAMES, help="Suite for verify-props (default: all)")
    parser.add_argument("--corpus-size", type=int, help="Modules per corpus suite")
    parser.add_argument("--seed", type=int, help="Corpus seed")
    output = parser.add_mutually_exclusive_group()
    output.add_argument("--json", dest="format", action="store_const", const="json", default="json")
    output.add_argument("--tsv", dest="format", action="store_const", const="tsv")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Log progress to stderr")
    verbosity.add_argument("--debug", action="store_true", help="Log matrix shapes and ranks to stderr")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def configure_logging(verbose: bool = False, debug: bool = False) -> None:
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    logging.getLogger("fihom").setLevel(level)


def load_spec(args: argparse.Namespace, defaults: Defaults) -> ModuleSpecFile | None:
    """The module description named on the command line, with --ring/--trunc applied."""
    if args.command in STANDALONE_COMMANDS:
        if args.input or args.preset:
            raise InputError(f"'{args.command}' does not take a module", "input")
        return None
    if args.preset:
        ring = Ring(args.ring) if args.ring else Ring(defaults.ring)
        truncation = args.trunc if args.trunc is not None else defaults.truncation
        if not 0 <= truncation <= 16:
            raise InputError(f"truncation {truncation} outside 0..16", "trunc")
        return preset_spec(args.preset, ring, truncation)
    if not args.input:
        raise InputError(f"'{args.command}' needs --input or --preset", "input")
    spec = parse_input(args.input)
    overrides: dict[str, Any] = {}
    if args.ring:
        overrides["ring"] = args.ring
    if args.trunc is not None:
        overrides["truncation"] = args.trunc
    if overrides:
        spec = validate_spec({**spec.model_dump(mode="json"), **overrides})
    return spec


# Commands


def _homology(built: BuiltModule, flags: CommandFlags, report: Report) -> None:
    v = built.subject
    table = fi_homology(v, max(flags.p_max, 1))
    degrees = degree_table(v.name or "V", v)
    degrees.rows.extend(homology_degree_table(table).rows)
    report.add_table("degrees", degrees)
    report.add_table("homology", table)
    report.record(table.h0_consistent, "H0 from the Koszul complex equals the direct quotient")
    for p, deg in enumerate(table.degrees):
        if deg.truncation_limited:
            report.caveat(f"deg H{p} reaches the truncation {v.truncation}")
            report.escalate(ExitStatus.INCONCLUSIVE)
    g0, g1 = table.degree(0), table.degree(1)
    if g0.truncation_limited or g1.truncation_limited:
        return
    k, d = int(max(g0.numeric, 0)), int(max(g1.numeric, 0))
    regularity = regularity_check(v, k, d, flags.p_max, table)
    report.add_table("regularity", regularity)
    for row in regularity.rows:
        report.record(row.holds, f"deg H{row.p} <= {row.bound}")


def _degrees(built: BuiltModule, flags: CommandFlags, report: Report) -> None:
    v = built.subject
    table = degree_table(v.name or "V", v)
    generators = h0(v)
    degree_table("H0", generators.module, table)
    if v.truncation >= 1:
        degree_table("KV", torsion_kernel(v).module, table)
    for a in range(1, min(flags.a_max, v.truncation) + 1):
        degree_table(f"D^{a}", iterated_derivative(v, a), table)
    table.rows.extend(derivative_kernel_degrees(built.sub, flags.a_max).rows)
    report.add_table("degrees", table)
    _flag_limited(table, report)
    if generators.degree.truncation_limited:
        report.escalate(ExitStatus.INCONCLUSIVE)


def _flag_limited(table: DegreeTable, report: Report) -> None:
    for row in table.rows:
        if row.degree.truncation_limited:
            report.caveat(f"degree of {row.label} reaches the truncation")


def _saturate(built: BuiltModule, flags: CommandFlags, report: Report) -> None:
    v = built.sub
    grid = saturation_grid(v, flags.a_max)
    report.add_table("saturation", grid)
    for cell in grid.violations:
        report.record(False, f"facet sum saturated at n={cell.n}, a={cell.a}")
    for cell in grid.derivative_mismatches:
        report.record(False, f"saturation matches ker D^{cell.a} at n={cell.n}")

    cap = min(grid.k, grid.d)
    primes = []
    module = v.module
    for n in range(grid.threshold + 1, module.truncation + 1):
        for a in range(1, min(n, flags.a_max, module.truncation - n) + 1):
            prime = check_saturation_prime(module, n, a, cap)
            primes.append(prime)
            if prime.applicable:
                report.record(prime.equal, f"facet sum of V equals ker J~ at n={n}, a={a}")
    report.add_table("saturation_prime", primes)

    torsion = torsion_threshold(built.quotient, grid.k, grid.d)
    report.add_table("torsion", torsion)
    if torsion.holds is not None:
        report.record(torsion.holds, f"M/V torsion-free from degree {torsion.bound}")
    if torsion.truncation_limited:
        report.caveat("torsion reaches the truncation; the threshold may be higher")
        report.escalate(ExitStatus.INCONCLUSIVE)


def _colimit(built: BuiltModule, flags: CommandFlags, report: Report) -> None:
    w = built.subject
    result = minimal_degree(w)
    report.add_table("colimit", result)
    report.record(result.agrees, "minimal colimit degree equals max(deg H0, deg H1)")
    if result.failures:
        t = result.failures[0]
        witness = subset_colimit(w, t, result.minimal - 1)
        report.add_table(
            "witness",
            {
                "t_size": t,
                "n_cap": result.minimal - 1,
                "colimit": witness.colimit.summary(),
                "module": w.summary(t),
                "surjective": witness.surjective,
                "injective": witness.injective,
            },
        )


def _validate(built: BuiltModule, flags: CommandFlags, report: Report) -> None:
    report.add_table("spec", built.spec.model_dump(mode="json"))
    report.add_table("ranks", {"free": list(built.free.ranks), "span": list(built.sub.module.ranks)})
    for label, module in (("free", built.free), ("subject", built.subject)):
        presentation = validate_presentation(module)
        report.add_table(f"presentation_{label}", presentation)
        report.record(presentation.ok, f"FI relations hold on the {label} module")


def _catalan(flags: CommandFlags, report: Report) -> None:
    if flags.a > flags.b:
        raise InputError(f"need a <= b, got a={flags.a}, b={flags.b}", "a")
    sigma = enumerate_sigma(flags.a, flags.b)
    report.add_table(
        "sigma",
        {
            "a": flags.a,
            "b": flags.b,
            "size": len(sigma),
            "rows": [
                {"subset": str(s), "complement": list(s.complement), "descendants": len(descendants(s.elements))}
                for s in sigma
            ],
        },
    )


def _bounds(flags: CommandFlags, report: Report) -> None:
    table = congruence_bounds(flags.d, flags.k_max, max(flags.p_max, 2))
    report.add_table("bounds", table)
    claim = propagate_claim(DegreeSpectralInput(d=flags.d), flags.k_max, max(flags.p_max, 2))
    report.add_table("claim", claim)
    for row in claim.rows:
        if row.closed_form is not None:
            report.record(row.closed_form, f"propagated bounds match the closed forms at k={row.k}")


def _verify_props(flags: CommandFlags, report: Report) -> None:
    defaults = get_settings().defaults
    opts = SuiteOptions.from_defaults(
        defaults,
        truncation=flags.truncation,
        p_max=flags.p_max,
        a_max=flags.a_max,
        corpus_size=flags.corpus_size,
        corpus_seed=flags.seed,
    )
    for result in run_suite(flags.suite, opts):
        report.add_table(f"suite:{result.name}", result)
        if result.violations:
            report.error(f"{result.name}: {len(result.violations)} violations")
        elif result.inconclusive:
            report.caveat(f"{result.name}: {result.inconclusive} checks left open by the truncation")
            report.escalate(ExitStatus.INCONCLUSIVE)


ModuleCommand = Callable[[BuiltModule, CommandFlags, Report], None]
StandaloneCommand = Callable[[CommandFlags, Report], None]

MODULE_HANDLERS: dict[str, ModuleCommand] = {
    "homology": _homology,
    "degrees": _degrees,
    "saturate": _saturate,
    "colimit": _colimit,
    "validate": _validate,
}
STANDALONE_HANDLERS: dict[str, StandaloneCommand] = {
    "catalan": _catalan,
    "bounds": _bounds,
    "verify-props": _verify_props,
}


def run(command: str, spec: ModuleSpecFile | None, flags: CommandFlags) -> Report:
    """Dispatch one command and collect its report."""
    report = Report(command=command, arguments=flags.model_dump(mode="json"))
    logger.info(f"Running {command}")
    if command in MODULE_HANDLERS:
        if spec is None:
            raise InputError(f"'{command}' needs a module", "input")
        report.arguments["module"] = {"name": spec.name, "ring": spec.ring.value, "truncation": spec.truncation}
        MODULE_HANDLERS[command](build_module(spec), flags, report)
    elif command in STANDALONE_HANDLERS:
        STANDALONE_HANDLERS[command](flags, report)
    else:
        raise InputError(f"unknown command {command!r}", "command")
    logger.info(f"{command} finished with status {report.status.name}")
    return report


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point."""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.debug)
    defaults = get_settings().defaults
    try:
        flags = CommandFlags.from_args(args, defaults)
        spec = load_spec(args, defaults)
        report = run(args.command, spec, flags)
    except ValidationError as exc:
        first = exc.errors()[0]
        message = f"{'.'.join(str(x) for x in first['loc'])}: {first['msg']}"
        logger.error(message)
        report = Report(command=args.command)
        report.error(message, ExitStatus.INPUT_ERROR)
    except FIHomError as exc:
        logger.error(str(exc))
        report = Report(command=args.command)
        report.error(str(exc), ExitStatus.INPUT_ERROR)

    sys.stdout.write(report.to_tsv() if args.format == "tsv" else report.to_json())
    return int(report.status)


if __name__ == "__main__":
    sys.exit(main())

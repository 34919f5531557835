"""
Command line interface.

The `superpy` command parses its arguments with argparse into a validated
`CommandRequest`, runs it, and prints either a text or a JSON report.

Exit codes:
    0: Success.
    1: A domain error (e.g. enumeration over ℚ, a non-unit where a unit is
       needed), or a failed verification run.
    2: Unreadable input: a malformed spec file, an element or field that does
       not parse, or invalid flags.

Example:
    ```bash
    superpy ufsr --library free_f2_pair
    superpy factor --spec tests/specs/f2_t1t2.json --element "t1*t2" --format json
    superpy census --seed 0 --samples 50 --field F2
    superpy verify-paper --override dual_numbers=tests/specs/free_q_pair.json --only dual-numbers
    ```
"""

import argparse
import json
import logging
import os
import re
import sys

from enum import Enum
from pathlib import Path
from typing import Any, Optional, Sequence

from pydantic import Field, ValidationError, field_validator, model_validator

from superpy import __version__, catalog
from superpy._superpy_model import _SuperpyModel
from superpy.algebra import AlgebraSpec, Superalgebra, build_algebra
from superpy.census import DEFAULT_CENSUS_GENERATORS, DEFAULT_CENSUS_SAMPLES, DEFAULT_SEED, run_census
from superpy.exceptions import ParseError, SpecError, SuperpyError
from superpy.factorization import DEFAULT_SEARCH_CAP, FactorizationMode
from superpy.scalars import ScalarDomain
from superpy.superpoly import zint_square_report
from superpy.verification import run_verification

_logger = logging.getLogger(__name__)

LOG_LEVEL_ENV = "SUPERPY_LOG_LEVEL"
"""Environment variable holding the log level of the command line.

Defaults to WARNING when unset or not a level name."""

_FIELD = re.compile(r"Q|F(\d+)")


class Command(str, Enum):
    INFO = "info"
    ELEMENTS = "elements"
    UNITS = "units"
    IRREDUCIBLES = "irreducibles"
    FACTOR = "factor"
    UFSR = "ufsr"
    IDEALS = "ideals"
    KSDIM = "ksdim"
    REGULAR = "regular"
    VERIFY_PAPER = "verify-paper"
    CENSUS = "census"
    ZINT = "zint"


VERIFY_ALIAS = "verify"
"""Short name accepted for `verify-paper`."""


ALGEBRA_COMMANDS = frozenset(
    {
        Command.INFO,
        Command.ELEMENTS,
        Command.UNITS,
        Command.IRREDUCIBLES,
        Command.FACTOR,
        Command.UFSR,
        Command.IDEALS,
        Command.KSDIM,
        Command.REGULAR,
    }
)
"""Commands that act on one algebra, given by --spec or --library."""


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


def parse_field(text: str) -> ScalarDomain:
    """Parse "Q" or "F<p>" into a field.

    Raises:
        ParseError: If the text is neither.
        pydantic.ValidationError: If p is not a prime.
    """
    match = _FIELD.fullmatch(text.strip())
    if match is None:
        raise ParseError(f"unknown field {text!r}, expected Q or F<p>", 0)
    if match.group(1) is None:
        return ScalarDomain.rationals()
    return ScalarDomain.prime_field(int(match.group(1)))


class CommandRequest(_SuperpyModel):
    """One validated invocation.

    Attributes:
        command (Command): What to run.
        spec_path (Optional[Path]): A JSON algebra spec.
        library (Optional[str]): A library algebra name, used instead of spec_path.
        element (Optional[str]): The element to factor; required by `factor` only.
        format (OutputFormat): Text or JSON output.
        seed (int): Seed of every random choice.
        cap (int): Recursion cap of factorization searches.
        max_gens (int): Generator bound of census samples.
        samples (int): Census size.
        field (Optional[str]): Field override, "Q" or "F<p>".
        jobs (int): Census worker processes.
        prime (Optional[int]): The prime of the `zint` report.
        mode (FactorizationMode): Notion of factorization for `factor` and `ufsr`.
        overrides (list[str]): NAME=PATH pairs replacing library algebras in `verify-paper`.
        only (list[str]): Check name prefixes `verify-paper` restricts itself to.
    """

    command: Command
    spec_path: Optional[Path] = None
    library: Optional[str] = None
    element: Optional[str] = None
    format: OutputFormat = OutputFormat.TEXT
    seed: int = DEFAULT_SEED
    cap: int = Field(default=DEFAULT_SEARCH_CAP, ge=1)
    max_gens: int = DEFAULT_CENSUS_GENERATORS
    samples: int = Field(default=DEFAULT_CENSUS_SAMPLES, ge=0)
    field: Optional[str] = None
    jobs: int = Field(default=1, ge=1)
    prime: Optional[int] = None
    mode: FactorizationMode = FactorizationMode.FULL
    overrides: list[str] = []
    only: list[str] = []

    @field_validator("command", mode="before")
    @classmethod
    def _resolve_alias(cls, command: Any) -> Any:
        return Command.VERIFY_PAPER if command == VERIFY_ALIAS else command

    @model_validator(mode="after")
    def _check_arguments(self) -> "CommandRequest":
        if (self.element is not None) != (self.command is Command.FACTOR):
            raise ValueError("--element is required by factor and accepted by no other command")
        if self.command in ALGEBRA_COMMANDS:
            if (self.spec_path is None) == (self.library is None):
                raise ValueError(f"{self.command.value} needs exactly one of --spec and --library")
        elif self.spec_path is not None or self.library is not None:
            raise ValueError(f"{self.command.value} takes no algebra")
        if self.command is Command.ZINT and self.prime is None:
            raise ValueError("zint needs --prime")
        if (self.overrides or self.only) and self.command is not Command.VERIFY_PAPER:
            raise ValueError("--override and --only are accepted by verify-paper only")
        return self

    def load_algebra(self) -> Superalgebra:
        """Build the algebra named by --spec or --library, over --field if given.

        Raises:
            OSError: If the spec file cannot be read.
            pydantic.ValidationError: If the spec file is malformed.
            SpecError: If the spec defines no superalgebra.
        """
        field = parse_field(self.field) if self.field else None
        if self.library is not None:
            return catalog.build(self.library, field)
        spec = AlgebraSpec.from_file(self.spec_path)
        if field is not None:
            spec = spec.model_copy(update={"field": field})
        return build_algebra(spec)

    def verification_overrides(self) -> dict[str, AlgebraSpec]:
        """Read the specs named by --override.

        Raises:
            ParseError: If an override is not of the form NAME=PATH.
            OSError: If a spec file cannot be read.
            pydantic.ValidationError: If a spec file is malformed.
        """
        specs = {}
        for item in self.overrides:
            name, sep, path = item.partition("=")
            if not (sep and name and path):
                raise ParseError(f"--override expects NAME=PATH, got {item!r}", 0)
            specs[name.strip()] = AlgebraSpec.from_file(Path(path))
        return specs


class CommandResult(_SuperpyModel):
    exit_code: int
    payload: Any
    text: str
    error: bool = False

    def render(self, output_format: OutputFormat) -> str:
        if output_format is OutputFormat.JSON:
            return json.dumps(self.payload, indent=2)
        return self.text


# ==================== commands ====================


def _info(request: CommandRequest, algebra: Superalgebra) -> CommandResult:
    structure = algebra.structure
    j = structure.canonical_superideal()
    payload = {
        "field": str(algebra.domain),
        "generators": list(algebra.generators),
        "relations": list(algebra.spec.relations),
        "dims": list(algebra.dims),
        "basis": algebra.basis_labels(),
        "size": algebra.size,
        "unit_count": structure.unit_count() if algebra.is_finite else None,
        "canonical_superideal_dims": list(j.dims),
        "superreduction_dims": list(structure.superreduction().residue_dims),
        "local": structure.is_local(),
        "superdomain": structure.is_superdomain(),
        "superfield": structure.is_superfield(),
    }
    text = "\n".join(
        [
            f"algebra: {algebra}",
            f"basis: {', '.join(payload['basis'])}",
            f"dims: {algebra.dims[0]}|{algebra.dims[1]}",
            f"canonical superideal: {j.dims[0]}|{j.dims[1]}",
            f"superdomain: {payload['superdomain']}, superfield: {payload['superfield']}",
        ]
    )
    return CommandResult(exit_code=0, payload=payload, text=text)


def _listing(elements: list) -> CommandResult:
    names = [str(x) for x in elements]
    return CommandResult(exit_code=0, payload=names, text="\n".join(names))


def _factor(request: CommandRequest, algebra: Superalgebra) -> CommandResult:
    x = algebra.parse(request.element)
    report = algebra.factorization.report(x, cap=request.cap, mode=request.mode)
    lines = [f"{report.subject}: {report.class_count} factorization class(es), {report.verdict}"]
    lines.extend(f"  {report.subject} = " + "".join(f"({f})" for f in factors) for factors in report.factorizations)
    return CommandResult(exit_code=0, payload=report.to_dict(), text="\n".join(lines))


def _ufsr(request: CommandRequest, algebra: Superalgebra) -> CommandResult:
    service = algebra.factorization
    if not algebra.is_finite:
        verdict = service.structural_ufsr_check()
    elif request.mode is FactorizationMode.HOMOGENEOUS:
        verdict = service.homogeneous_ufsr_check(cap=request.cap)
    elif request.mode is FactorizationMode.EVEN:
        verdict = service.even_ufsr_check(cap=request.cap)
    else:
        verdict = service.ufsr_check(cap=request.cap)
    lines = [f"{verdict.status.value} ({verdict.method.value}, {verdict.mode.value}): {verdict.detail}"]
    if verdict.witness is not None:
        lines.append(f"witness: {verdict.witness.element}")
        lines.extend(f"  {f}" for f in verdict.witness.factorizations)
    return CommandResult(exit_code=0, payload=verdict.to_dict(), text="\n".join(lines))


def _ideals(request: CommandRequest, algebra: Superalgebra) -> CommandResult:
    structure = algebra.structure
    reports = [
        structure.canonical_superideal().report("canonical superideal"),
        structure.nilradical().report("nilradical"),
        structure.maximal_ideal().report("maximal ideal"),
        structure.jacobson_radical().report("jacobson radical"),
    ]
    reduction = structure.superreduction().report()
    payload = {"ideals": [r.to_dict() for r in reports], "superreduction": reduction.to_dict()}
    lines = [f"{r.name}: {r.dims[0]}|{r.dims[1]}, prime={r.prime}, nilpotency index={r.nilpotency_index}" for r in reports]
    lines.append(f"superreduction: {', '.join(reduction.residue_basis)}")
    return CommandResult(exit_code=0, payload=payload, text="\n".join(lines))


def _ksdim(request: CommandRequest, algebra: Superalgebra) -> CommandResult:
    report = algebra.dimension.report()
    text = f"Ksdim {report.even}|{report.odd}, cotangent {report.cotangent}, regular={report.regular}"
    return CommandResult(exit_code=0, payload=report.to_dict(), text=text)


def _regular(request: CommandRequest, algebra: Superalgebra) -> CommandResult:
    dimension = algebra.dimension
    ksdim, cotangent = dimension.ksdim(), dimension.cotangent_sdim().sdim
    payload = {"regular": ksdim == cotangent, "ksdim": str(ksdim), "cotangent": str(cotangent)}
    text = f"regular={payload['regular']} (Ksdim {ksdim}, cotangent {cotangent})"
    return CommandResult(exit_code=0, payload=payload, text=text)


def _verify(request: CommandRequest) -> CommandResult:
    report = run_verification(
        overrides=request.verification_overrides(),
        only=request.only or None,
        census_samples=request.samples,
        seed=request.seed,
    )
    lines = [f"{'pass' if c.passed else 'FAIL'}  {c.name}" + (f"  ({c.detail})" if c.detail else "") for c in report.checks]
    lines.append(f"{len(report.checks) - len(report.failures)}/{len(report.checks)} checks passed")
    return CommandResult(exit_code=0 if report.passed else 1, payload=report.to_dict(), text="\n".join(lines))


def _census(request: CommandRequest) -> CommandResult:
    field = parse_field(request.field) if request.field else None
    report = run_census(seed=request.seed, samples=request.samples, max_gens=request.max_gens, field=field, jobs=request.jobs)
    lines = ["index field n dims ufsr superdomain superfield regular ksdim nilpotency"]
    for row in report.rows:
        dims = f"{row.dims[0]}|{row.dims[1]}" if row.dims else "-"
        lines.append(
            f"{row.index} {row.field} {row.generators} {dims} {row.ufsr} {row.superdomain} "
            f"{row.superfield} {row.regular} {row.ksdim} {row.nilpotency_index}"
            + (f"  error: {row.error}" if row.error else "")
            + (f"  skipped: {row.skipped}" if row.skipped else "")
        )
    lines.append(f"{report.ufsr_superdomains} UFSR superdomains, {report.counterexamples} counterexamples")
    exit_code = 0 if report.counterexamples == 0 else 1
    return CommandResult(exit_code=exit_code, payload=report.to_dict(), text="\n".join(lines))


def _zint(request: CommandRequest) -> CommandResult:
    report = zint_square_report(request.prime)
    lines = [f"{report.square} = " + " = ".join("".join(f"({f})" for f in factors) for factors in report.factorizations)]
    lines.append(f"non-associate: {report.non_associate}, factors irreducible: {report.factors_irreducible}")
    return CommandResult(exit_code=0, payload=report.to_dict(), text="\n".join(lines))


_ALGEBRA_HANDLERS = {
    Command.INFO: _info,
    Command.ELEMENTS: lambda request, algebra: _listing(list(algebra.elements())),
    Command.UNITS: lambda request, algebra: _listing(algebra.structure.units()),
    Command.IRREDUCIBLES: lambda request, algebra: _listing(algebra.factorization.irreducibles()),
    Command.FACTOR: _factor,
    Command.UFSR: _ufsr,
    Command.IDEALS: _ideals,
    Command.KSDIM: _ksdim,
    Command.REGULAR: _regular,
}

_HANDLERS = {
    Command.VERIFY_PAPER: _verify,
    Command.CENSUS: _census,
    Command.ZINT: _zint,
}


def run(request: CommandRequest) -> CommandResult:
    """Run a request and map errors to exit codes.

    Returns:
        CommandResult: The report, or an error payload with exit code 1 or 2.
    """
    try:
        if request.command in ALGEBRA_COMMANDS:
            algebra = request.load_algebra()
            _logger.debug(f"running {request.command.value} on {algebra}")
            return _ALGEBRA_HANDLERS[request.command](request, algebra)
        return _HANDLERS[request.command](request)
    except (ParseError, SpecError, ValidationError, OSError) as e:
        _logger.error(f"Invalid input for {request.command.value}: {e}")
        return CommandResult(exit_code=2, payload={"error": str(e)}, text=f"error: {e}", error=True)
    except SuperpyError as e:
        _logger.error(f"Error running {request.command.value}: {e}")
        return CommandResult(exit_code=1, payload={"error": str(e)}, text=f"error: {e}", error=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superpy", description="Exact computations in supercommutative superrings.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.TEXT.value)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed of every random choice.")

    algebra = argparse.ArgumentParser(add_help=False)
    source = algebra.add_mutually_exclusive_group(required=True)
    source.add_argument("--spec", dest="spec_path", type=Path, help="JSON algebra spec.")
    source.add_argument("--library", choices=sorted(catalog.library()), help="Library algebra.")
    algebra.add_argument("--field", help="Base field override, Q or F<p>.")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--cap", type=int, default=DEFAULT_SEARCH_CAP, help="Factorization recursion cap.")
    search.add_argument("--mode", choices=[m.value for m in FactorizationMode], default=FactorizationMode.FULL.value)

    subparsers = parser.add_subparsers(dest="command", required=True)
    for command, help_text in [
        (Command.INFO, "Summarize an algebra."),
        (Command.ELEMENTS, "List every element (finite fields)."),
        (Command.UNITS, "List every unit (finite fields)."),
        (Command.IRREDUCIBLES, "List every irreducible (finite fields)."),
        (Command.IDEALS, "Report the canonical ideals and the superreduction."),
        (Command.KSDIM, "Report Krull and cotangent superdimensions."),
        (Command.REGULAR, "Decide regularity."),
    ]:
        subparsers.add_parser(command.value, parents=[common, algebra], help=help_text)
    factor = subparsers.add_parser(Command.FACTOR.value, parents=[common, algebra, search], help="Factor an element.")
    factor.add_argument("--element", required=True)
    subparsers.add_parser(Command.UFSR.value, parents=[common, algebra, search], help="Decide unique factorization.")

    verify = subparsers.add_parser(
        Command.VERIFY_PAPER.value, aliases=[VERIFY_ALIAS], parents=[common], help="Run the verification suite."
    )
    verify.add_argument("--samples", type=int, default=DEFAULT_CENSUS_SAMPLES, help="Size of the census check.")
    verify.add_argument(
        "--override",
        dest="overrides",
        action="append",
        metavar="NAME=PATH",
        help="Replace a library algebra of the suite with a JSON spec.",
    )
    verify.add_argument("--only", action="append", metavar="PREFIX", help="Run only the checks with this name prefix.")

    census = subparsers.add_parser(Command.CENSUS.value, parents=[common], help="Classify random algebras.")
    census.add_argument("--samples", type=int, default=DEFAULT_CENSUS_SAMPLES)
    census.add_argument("--max-gens", type=int, default=DEFAULT_CENSUS_GENERATORS)
    census.add_argument("--field", help="F2 or F3; drawn per sample when omitted.")
    census.add_argument("--jobs", type=int, default=1, help="Worker processes.")

    zint = subparsers.add_parser(Command.ZINT.value, parents=[common], help="Factor p² in the dual integers.")
    zint.add_argument("--prime", type=int, required=True)
    return parser


def _configure_logging() -> None:
    level = os.getenv(LOG_LEVEL_ENV, "WARNING").upper()
    logging.basicConfig(level=logging._nameToLevel.get(level, logging.WARNING))


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of the `superpy` script.

    Returns:
        int: The exit code.
    """
    _configure_logging()
    args = build_parser().parse_args(argv)
    values = {key: value for key, value in vars(args).items() if value is not None}
    try:
        request = CommandRequest(**values)
    except ValidationError as e:
        _logger.error(f"Invalid arguments: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2
    result = run(request)
    output = result.render(request.format)
    print(output, file=sys.stderr if result.error else sys.stdout)
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())

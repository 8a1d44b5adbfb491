"""Command-line interface.

```
pgdef solve -n 7
pgdef construct -p 2 -n 5 --verify kunneth
pgdef order presentations/b2.gp
pgdef homology --degree 2 --via table presentations/b2.gp
pgdef certify --mode table presentations/b2.gp
pgdef table -p 2 --max-n 7
pgdef gs-check -d 4 --def 0
pgdef parse --format gap presentations/b2.gp
```

Every subcommand accepts ``--json`` for a versioned JSON report and ``-v``
for logging on standard error. A file argument of ``-`` reads standard input.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, NoReturn

from pydantic import BaseModel, Field

from . import __version__
from ._config import PgdefConfig
from ._constants import REPORT_SCHEMA_VERSION
from ._exceptions import (
    CosetLimitExceeded,
    OrderCeilingExceeded,
    PgdefError,
    PresentationSyntaxError,
)
from .coset_enum import enumerate_cosets
from .deficiency import (
    DeficiencyCertificate,
    certify,
    construct,
    deficiency_of_counts,
    figure_one_table,
    golod_shafarevich_check,
    group_name,
    solve,
)
from .homology import homology
from .presentations import parse_presentation, render_presentation
from .presentations.model import Presentation
from .types.enums import CertificationMode, EnumerationStrategy, HomologyVia, OutputFormat

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE_ERROR = 2
EXIT_COSET_LIMIT = 3
EXIT_CEILING = 4
EXIT_UNCERTIFIED = 5
EXIT_USAGE = 64


class Report(BaseModel):
    """The JSON report printed with ``--json``. Deterministic apart from ``timings``."""

    schema_version: str = REPORT_SCHEMA_VERSION
    tool_version: str = __version__
    command: str
    parameters: dict[str, Any] = Field(default_factory=dict)
    results: dict[str, Any] = Field(default_factory=dict)
    exit_code: int = EXIT_OK
    timings: dict[str, float] = Field(default_factory=dict)


class _Outcome(BaseModel):
    lines: list[str]
    results: dict[str, Any]
    exit_code: int = EXIT_OK


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_presentation(path: str) -> Presentation:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_presentation(text)


def _certificate_lines(certificate: DeficiencyCertificate) -> list[str]:
    lines = [f"lower bound: {certificate.lower_bound}"]
    if certificate.h1 is not None:
        lines.append(f"H1: {certificate.h1}")
    if certificate.h2 is not None:
        lines.append(f"H2: {certificate.h2}")
    if certificate.certified:
        lines.append(f"upper bound: {certificate.upper_bound}")
        lines.append(f"certified deficiency: {certificate.certified_value}")
    elif certificate.upper_bound is not None:
        lines.append(f"upper bound: {certificate.upper_bound}")
        lines.append(f"deficiency: unknown, in [{certificate.lower_bound}, {certificate.upper_bound}]")
    else:
        lines.append(f"deficiency: unknown ({certificate.error})")
    return lines


def _certificate_exit(certificate: DeficiencyCertificate) -> int:
    if certificate.certified:
        return EXIT_OK
    if certificate.error_type == CosetLimitExceeded.__name__:
        return EXIT_COSET_LIMIT
    return EXIT_UNCERTIFIED


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_solve(args: argparse.Namespace, config: PgdefConfig) -> _Outcome:
    counts = solve(args.n)
    name = group_name(counts, ascii=args.ascii)
    return _Outcome(
        lines=[
            f"(r, s, t) = ({counts.r}, {counts.s}, {counts.t})",
            f"m = {counts.trace_m}, d = {counts.trace_d}",
            f"group: {name}",
            f"deficiency: {deficiency_of_counts(counts)}",
        ],
        results={"counts": counts.model_dump(), "name": name, "deficiency": deficiency_of_counts(counts)},
    )


def _cmd_construct(args: argparse.Namespace, config: PgdefConfig) -> _Outcome:
    presentation = construct(args.p, args.n)
    counts = presentation.counts
    lines = [render_presentation(presentation, args.format)]
    results: dict[str, Any] = {
        "presentation": presentation.model_dump(mode="json", by_alias=True),
        "counts": list(counts),
        "name": group_name(presentation.pedigree, ascii=args.ascii) if presentation.pedigree else None,
    }
    exit_code = EXIT_OK
    if args.verify:
        certificate = certify(presentation, args.verify, config=config)
        lines.extend(_certificate_lines(certificate))
        results["certificate"] = certificate.model_dump(mode="json", by_alias=True, exclude={"presentation"})
        exit_code = _certificate_exit(certificate)
    return _Outcome(lines=lines, results=results, exit_code=exit_code)


def _cmd_order(args: argparse.Namespace, config: PgdefConfig) -> _Outcome:
    table = enumerate_cosets(_read_presentation(args.file), config=config)
    return _Outcome(lines=[str(table.num_cosets)], results={"order": table.num_cosets})


def _cmd_homology(args: argparse.Namespace, config: PgdefConfig) -> _Outcome:
    group = homology(_read_presentation(args.file), args.degree, via=args.via, config=config)
    return _Outcome(
        lines=[str(group)],
        results={"degree": args.degree, "via": str(args.via), "group": group.model_dump(), "text": str(group)},
    )


def _cmd_certify(args: argparse.Namespace, config: PgdefConfig) -> _Outcome:
    certificate = certify(_read_presentation(args.file), args.mode, config=config)
    return _Outcome(
        lines=_certificate_lines(certificate),
        results={"certificate": certificate.model_dump(mode="json", by_alias=True)},
        exit_code=_certificate_exit(certificate),
    )


def _cmd_table(args: argparse.Namespace, config: PgdefConfig) -> _Outcome:
    rows = figure_one_table(args.p, args.max_n, ascii=args.ascii)
    lines = [
        f"{-row.n:>5}  {row.name:<12} (r, s, t) = ({row.counts.r}, {row.counts.s}, {row.counts.t})" for row in rows
    ]
    return _Outcome(lines=lines, results={"rows": [row.model_dump() for row in rows]})


def _cmd_gs_check(args: argparse.Namespace, config: PgdefConfig) -> _Outcome:
    verdict = golod_shafarevich_check(args.d, args.deficiency)
    status = "consistent" if verdict.consistent else "violation"
    return _Outcome(
        lines=[f"{status}: {verdict.deficiency} {'<' if verdict.consistent else '>='} {verdict.threshold}"],
        results={"verdict": verdict.model_dump()},
        exit_code=EXIT_OK if verdict.consistent else EXIT_FAILURE,
    )


def _cmd_parse(args: argparse.Namespace, config: PgdefConfig) -> _Outcome:
    presentation = _read_presentation(args.file)
    return _Outcome(
        lines=[render_presentation(presentation, args.format)],
        results={
            "presentation": presentation.model_dump(mode="json", by_alias=True),
            "counts": list(presentation.counts),
        },
    )


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print a JSON report instead of text.")
    common.add_argument("-v", "--verbose", action="count", default=0, help="Log to standard error (-vv for debug).")
    common.add_argument(
        "--max-cosets", type=int, default=None, help="Coset limit (default: $PGDEF_MAX_COSETS or 65536)."
    )
    common.add_argument(
        "--strategy", choices=[s.value for s in EnumerationStrategy], default=None, help="Coset enumeration strategy."
    )
    common.add_argument("--ceiling", type=int, default=None, help="Largest group order for the H2 table oracle.")

    parser = _ArgumentParser(prog="pgdef", description="Finite p-groups of every non-positive deficiency.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    formats = [f.value for f in OutputFormat]

    solve_parser = subparsers.add_parser("solve", parents=[common], help="Block counts for deficiency -n.")
    solve_parser.add_argument("-n", type=int, required=True)
    solve_parser.add_argument("--ascii", action="store_true", help="ASCII group names.")
    solve_parser.set_defaults(handler=_cmd_solve)

    construct_parser = subparsers.add_parser("construct", parents=[common], help="Build the witness presentation.")
    construct_parser.add_argument("-p", type=int, required=True)
    construct_parser.add_argument("-n", type=int, required=True)
    construct_parser.add_argument("--format", choices=formats, default=OutputFormat.TEXT.value)
    construct_parser.add_argument("--verify", choices=[m.value for m in CertificationMode], default=None)
    construct_parser.add_argument("--ascii", action="store_true", help="ASCII group names.")
    construct_parser.set_defaults(handler=_cmd_construct)

    order_parser = subparsers.add_parser("order", parents=[common], help="Group order by coset enumeration.")
    order_parser.add_argument("file")
    order_parser.set_defaults(handler=_cmd_order)

    homology_parser = subparsers.add_parser("homology", parents=[common], help="H1 or H2 of a presentation.")
    homology_parser.add_argument("file")
    homology_parser.add_argument("--degree", type=int, choices=[1, 2], required=True)
    homology_parser.add_argument("--via", choices=[v.value for v in HomologyVia], default=None)
    homology_parser.set_defaults(handler=_cmd_homology)

    certify_parser = subparsers.add_parser("certify", parents=[common], help="Certify the deficiency of a file.")
    certify_parser.add_argument("file")
    certify_parser.add_argument("--mode", choices=[m.value for m in CertificationMode], default="table")
    certify_parser.set_defaults(handler=_cmd_certify)

    table_parser = subparsers.add_parser("table", parents=[common], help="Witness groups for n = 0..max-n.")
    table_parser.add_argument("-p", type=int, required=True)
    table_parser.add_argument("--max-n", type=int, required=True)
    table_parser.add_argument("--ascii", action="store_true", help="ASCII group names.")
    table_parser.set_defaults(handler=_cmd_table)

    gs_parser = subparsers.add_parser("gs-check", parents=[common], help="Golod-Shafarevich screen.")
    gs_parser.add_argument("-d", type=int, required=True)
    gs_parser.add_argument("--def", dest="deficiency", type=int, required=True)
    gs_parser.set_defaults(handler=_cmd_gs_check)

    parse_parser = subparsers.add_parser("parse", parents=[common], help="Parse and re-render a presentation.")
    parse_parser.add_argument("file")
    parse_parser.add_argument("--format", choices=formats, default=OutputFormat.TEXT.value)
    parse_parser.set_defaults(handler=_cmd_parse)

    return parser


def _configure_logging(verbosity: int) -> None:
    if verbosity <= 0:
        return
    logging.basicConfig(
        level=logging.DEBUG if verbosity > 1 else logging.INFO,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _parameters(args: argparse.Namespace) -> dict[str, Any]:
    skip = {"handler", "json", "verbose", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _error_exit(error: Exception) -> int:
    if isinstance(error, (PresentationSyntaxError, FileNotFoundError)):
        return EXIT_PARSE_ERROR
    if isinstance(error, CosetLimitExceeded):
        return EXIT_COSET_LIMIT
    if isinstance(error, OrderCeilingExceeded):
        return EXIT_CEILING
    if isinstance(error, ValueError):
        return EXIT_USAGE
    return EXIT_FAILURE


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, dispatch the subcommand and print its report; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    _configure_logging(args.verbose)
    config = PgdefConfig.from_env().with_overrides(
        max_cosets=args.max_cosets, h2_order_ceiling=args.ceiling, strategy=args.strategy
    )
    if args.command == "homology" and args.via is None:
        args.via = HomologyVia.PRESENTATION.value if args.degree == 1 else HomologyVia.TABLE.value

    logger.debug("running %s with %s", args.command, _parameters(args))
    handler: Callable[[argparse.Namespace, PgdefConfig], _Outcome] = args.handler
    started = time.perf_counter()
    try:
        outcome = handler(args, config)
    except (PgdefError, FileNotFoundError, ValueError) as e:
        code = _error_exit(e)
        print(f"pgdef {args.command}: {e}", file=sys.stderr)
        if args.json:
            report = Report(
                command=args.command,
                parameters=_parameters(args),
                results={"error": str(e), "error_type": type(e).__name__},
                exit_code=code,
                timings={"total_seconds": time.perf_counter() - started},
            )
            print(report.model_dump_json(indent=2))
        return code

    elapsed = time.perf_counter() - started
    if args.json:
        report = Report(
            command=args.command,
            parameters=_parameters(args),
            results=outcome.results,
            exit_code=outcome.exit_code,
            timings={"total_seconds": elapsed},
        )
        print(report.model_dump_json(indent=2))
    else:
        print("\n".join(outcome.lines))
    return outcome.exit_code


def main() -> None:
    sys.exit(run())


__all__ = ["Report", "build_parser", "main", "run"]

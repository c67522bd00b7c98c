"""Summary: Command-line interface for OpenQuantal.

Importance: Provides a local entry point for checking, searching, and converting structures.
Alternatives: Drive the engine from notebooks only.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from openquantal.app import AppServices, build_context
from openquantal.catalog import CATALOG, catalog_names, load_entry
from openquantal.config import AppConfig
from openquantal.errors import (
    CapExceededError,
    InconsistencyError,
    InputError,
    PreconditionError,
    StructureError,
)
from openquantal.lattice import FiniteLattice
from openquantal.report import render
from openquantal.services import CONVERSION_TARGETS
from openquantal.structure_file import StructureFile, dumps, load, parse_document

logger = logging.getLogger(__name__)

EXIT_INPUT_ERROR = 3
EXIT_RED_FLAG = 2
CATALOG_PREFIX = "catalog:"


def build_parser() -> argparse.ArgumentParser:
    """Summary: Build the CLI argument parser.

    Importance: Defines the supported commands and their shared flags.
    Alternatives: Use a CLI framework like Typer or Click.
    """

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=None, help="Raise every exhaustive cap")
    common.add_argument("--seed", type=int, default=None, help="Seed for sampled checks")
    common.add_argument("--json", action="store_true", help="Emit the report as JSON")
    common.add_argument("--witnesses", action="store_true", help="Print witnesses and details")
    common.add_argument("--no-cache", action="store_true", help="Recompute cached reports")

    parser = argparse.ArgumentParser(description="OpenQuantal CLI")
    subparsers = parser.add_subparsers(dest="command", required=True)

    check = subparsers.add_parser("check", parents=[common], help="Run the full check suite")
    check.add_argument("path", type=str, help="Structure file or catalog:<name>")
    check.add_argument("--roundtrip", action="store_true", help="Also verify the round trip")

    search = subparsers.add_parser(
        "search", parents=[common], help="Search structures matching an axiom pattern"
    )
    search.add_argument("frame", type=str, help="powerset:<n>, chain:<n>, or a frame file")
    search.add_argument("pattern", type=str, help='Pattern such as "B∧O∧U∧¬R"')

    convert = subparsers.add_parser("convert", parents=[common], help="Convert a structure")
    convert.add_argument("path", type=str)
    convert.add_argument("--to", type=str, required=True, choices=CONVERSION_TARGETS)
    convert.add_argument("--out", type=str, default=None, help="Write the converted file here")

    for name, text in (
        ("bisections", "List local bisections and their laws"),
        ("cover", "Build the étale cover and embeddability checks"),
        ("roundtrip", "Verify the quantale/groupoid round trip"),
    ):
        command = subparsers.add_parser(name, parents=[common], help=text)
        command.add_argument("path", type=str)

    history = subparsers.add_parser("history", help="List archived reports")
    history.add_argument("--limit", type=int, default=10)
    history.add_argument("--filter", dest="filter_command", type=str, default=None)

    subparsers.add_parser("catalog", help="List named catalog instances")
    return parser


def load_structure(path: str) -> StructureFile:
    """Summary: Load a structure file, a catalog instance, or a path missing its .json suffix.

    Importance: `check fixtures/qA` and `check catalog:q-a` both work.
    Alternatives: Require exact file names.
    """

    if path.startswith(CATALOG_PREFIX):
        return load_entry(path[len(CATALOG_PREFIX) :])
    candidate = Path(path)
    if not candidate.exists() and candidate.with_suffix(".json").exists():
        candidate = candidate.with_suffix(".json")
    return load(candidate)


def _search_frame(frame: str) -> str | FiniteLattice:
    if ":" in frame and not Path(frame).exists():
        return frame
    structure = load_structure(frame)
    if structure.kind != "frame":
        raise InputError(f"expected a frame file, got {structure.kind}", location=frame)
    return structure.subject


def _dispatch(args: argparse.Namespace, services: AppServices) -> int:
    if args.command == "catalog":
        for name in catalog_names():
            entry = CATALOG[name]
            print(f"{name} ({entry.kind}): {entry.description}")
        return 0

    if args.command == "history":
        for stored in services.archive.history(args.limit, args.filter_command):
            print(
                f"{stored.id}: {stored.command} {stored.title} ({stored.kind}) "
                f"exit {stored.exit_code} at {stored.created_at}"
            )
        return 0

    use_cache = not args.no_cache
    if args.command == "search":
        report = services.search.search(
            _search_frame(args.frame), args.pattern, witnesses=args.witnesses, use_cache=use_cache
        )
    elif args.command == "convert":
        structure = load_structure(args.path)
        conversion = services.convert.convert(structure, args.to)
        parse_document(conversion.document, f"{args.path} --to {args.to}")
        if args.out:
            target = Path(args.out)
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(dumps(conversion.document), encoding="utf-8")
            conversion.report.values["written"] = str(target)
        else:
            sys.stdout.write(dumps(conversion.document))
        report = conversion.report
    else:
        structure = load_structure(args.path)
        if args.command == "check":
            report = services.checks.check(
                structure, roundtrip=args.roundtrip, use_cache=use_cache
            )
        elif args.command == "bisections":
            report = services.bisections.bisections(structure)
        elif args.command == "cover":
            report = services.cover.cover(structure)
        else:
            report = services.roundtrip.roundtrip(structure)

    stream = sys.stdout if args.command != "convert" or args.out else sys.stderr
    stream.write(render(report, as_json=args.json, witnesses=args.witnesses))
    return report.exit_code


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Summary: Execute a CLI command and return its exit status.

    Importance: 0 clean, 1 classification-negative, 2 red flag, 3 input error.
    Alternatives: Raise SystemExit from inside each command.
    """

    parser = build_parser()
    args = parser.parse_args(argv)
    config = AppConfig.from_env()
    logging.basicConfig(
        level=config.log_level,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    context = build_context(config)
    services = context.services(
        config.with_overrides(cap=getattr(args, "cap", None), seed=getattr(args, "seed", None))
    )
    try:
        return _dispatch(args, services)
    except InconsistencyError as exc:
        logger.error("Red flag: %s", exc)
        print(f"red flag: {exc}", file=sys.stderr)
        return EXIT_RED_FLAG
    except (
        InputError,
        StructureError,
        PreconditionError,
        CapExceededError,
        FileNotFoundError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()

# -*- coding: utf-8 -*-

"""The ``nilpotentia`` command line."""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import IO, Any, Dict, List, Optional, Sequence, Type

from django.core.exceptions import ImproperlyConfigured

from nilpotentia import __version__
from nilpotentia.catalog import entry
from nilpotentia.census import (
    CensusConfig,
    CensusFilter,
    Modulo,
    enumerate_semigroups,
    find_minimal_non_nilpotent,
)
from nilpotentia.classify import classify
from nilpotentia.core import Semigroup, parse_semigroup
from nilpotentia.exceptions import InputFormatError, InvalidSemigroup, NilpotentiaError
from nilpotentia.nilpotency import decide_nilpotent, positively_engel_degree
from nilpotentia.rees import build_rees, glue_spec_from_dict, glued_union, rees_spec_from_dict
from nilpotentia.structure import MinimalityMode, is_minimal_non_nilpotent
from nilpotentia.utils import jp, stable_json

logger = logging.getLogger(__name__)

VERBOSITY_LEVELS = {
    0: logging.ERROR,
    1: logging.WARNING,
    2: logging.INFO,
    3: logging.DEBUG,
}


def read_input(path: str) -> str:
    """Read a file, or standard input when the path is ``-``."""
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputFormatError(f"Cannot read {path}: {e.strerror}.", path=path)


def read_json(path: str) -> Any:
    """Read and decode a JSON document."""
    try:
        return json.loads(read_input(path))
    except json.JSONDecodeError as e:
        raise InputFormatError(f"{path} is not valid JSON: {e}.", path=path)


class Subcommand:
    """An argparse subcommand: its help text, its arguments and its handler.

    ``handle`` returns JSON-serializable data for standard output, or None
    if the command wrote its own output.
    """

    name: str = ""
    help: str = ""

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Add the command's arguments to its subparser."""

    def handle(self, options: argparse.Namespace) -> Any:
        """Run the command."""
        raise NotImplementedError


class SemigroupCommand(Subcommand):
    """A command reading one semigroup from a file."""

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("file", help="Semigroup JSON or plain text; - for stdin.")

    def semigroup(self, options: argparse.Namespace) -> Semigroup:
        return parse_semigroup(read_input(options.file))

    def describe(self, options: argparse.Namespace, semigroup: Semigroup) -> Dict[str, Any]:
        return {
            "source": options.file,
            "order": semigroup.order,
            "elements": list(semigroup.elements),
        }


def _add_mode_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--mode",
        choices=[m.value for m in MinimalityMode],
        default=MinimalityMode.FOUR_GENERATOR.value,
        help="Which proper subsemigroups the minimality check examines.",
    )


class AnalyzeCommand(SemigroupCommand):
    name = "analyze"
    help = "Nilpotency, minimality and classification in one report."

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        _add_mode_argument(parser)
        parser.add_argument(
            "--strict",
            action="store_true",
            help="Also decide nilpotency with words from S only.",
        )

    def handle(self, options: argparse.Namespace) -> Any:
        semigroup = self.semigroup(options)
        mode = MinimalityMode(options.mode)
        started = time.perf_counter()

        report: Dict[str, Any] = {
            "input": self.describe(options, semigroup),
            "nilpotency": decide_nilpotent(semigroup).as_dict(semigroup),
            "minimality": is_minimal_non_nilpotent(semigroup, mode=mode).as_dict(
                semigroup
            ),
            "classification": classify(semigroup, mode=mode).as_dict(semigroup),
            "version": __version__,
        }
        if options.strict:
            report["strict_nilpotency"] = decide_nilpotent(
                semigroup, strict=True
            ).as_dict(semigroup)
        report["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
        return report


class ClassCommand(SemigroupCommand):
    name = "class"
    help = "Decide nilpotency: the class, or a witness of non-nilpotency."

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        parser.add_argument(
            "--strict", action="store_true", help="Use words from S only."
        )

    def handle(self, options: argparse.Namespace) -> Any:
        semigroup = self.semigroup(options)
        return decide_nilpotent(semigroup, strict=options.strict).as_dict(semigroup)


class MinimalCommand(SemigroupCommand):
    name = "minimal"
    help = "Decide minimal non-nilpotency, reporting offenders."

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        _add_mode_argument(parser)

    def handle(self, options: argparse.Namespace) -> Any:
        semigroup = self.semigroup(options)
        mode = MinimalityMode(options.mode)
        return is_minimal_non_nilpotent(semigroup, mode=mode).as_dict(semigroup)


class ClassifyCommand(SemigroupCommand):
    name = "classify"
    help = "Classify as Nilpotent, NotMinimal, Schmidt or U1 to U5."

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        _add_mode_argument(parser)
        parser.add_argument(
            "--all-ideals",
            action="store_true",
            help="Check that every qualifying inverse ideal gives the same type.",
        )

    def handle(self, options: argparse.Namespace) -> Any:
        semigroup = self.semigroup(options)
        return classify(
            semigroup,
            mode=MinimalityMode(options.mode),
            all_ideals=options.all_ideals,
        ).as_dict(semigroup)


class EngelCommand(SemigroupCommand):
    name = "engel"
    help = "Report the positively Engel degree."

    def handle(self, options: argparse.Namespace) -> Any:
        semigroup = self.semigroup(options)
        return {"positively_engel_degree": positively_engel_degree(semigroup)}


class ReesCommand(Subcommand):
    name = "rees"
    help = "Rees matrix semigroups."

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("action", choices=["build"])
        parser.add_argument("specfile", help="ReesSpec JSON; - for stdin.")

    def handle(self, options: argparse.Namespace) -> Any:
        semigroup, _ = build_rees(rees_spec_from_dict(read_json(options.specfile)))
        return semigroup.as_dict()


class GlueCommand(Subcommand):
    name = "glue"
    help = "Build a glued union M ∪ T."

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("specfile", help="GlueSpec JSON; - for stdin.")

    def handle(self, options: argparse.Namespace) -> Any:
        spec = glue_spec_from_dict(read_json(options.specfile))
        return glued_union(spec).as_dict()


class CatalogCommand(Subcommand):
    name = "catalog"
    help = "Emit a named semigroup with its expected facts."

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("entry", help="e.g. f7, u5_c2, y6, s3.")

    def handle(self, options: argparse.Namespace) -> Any:
        return entry(options.entry).as_dict()


class CensusCommand(Subcommand):
    name = "census"
    help = "Enumerate semigroups of a small order, one JSON line per class."

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--order", type=int, required=True)
        parser.add_argument(
            "--modulo", choices=[m.value for m in Modulo], default=Modulo.ISO.value
        )
        parser.add_argument(
            "--filter",
            choices=[f.value for f in CensusFilter],
            default=CensusFilter.ALL.value,
        )
        parser.add_argument("--shards", type=int, default=1)
        parser.add_argument("--out", default="-", help="Output file; - for stdout.")

    def handle(self, options: argparse.Namespace) -> Any:
        config = CensusConfig(
            order=options.order,
            modulo=Modulo(options.modulo),
            shards=options.shards,
            filter=CensusFilter(options.filter),
            threads=options.threads,
        )
        if config.filter == CensusFilter.MINIMAL_NON_NILPOTENT:
            lines = (
                {**s.as_dict(), "classification": c.as_dict(s)}
                for s, c in find_minimal_non_nilpotent(config)
            )
        else:
            lines = (s.as_dict() for s in enumerate_semigroups(config))

        if options.out == "-":
            self.write_lines(lines, sys.stdout, options)
        else:
            with open(options.out, "w", encoding="utf-8") as stream:
                self.write_lines(lines, stream, options)
        return None

    def write_lines(self, lines: Any, stream: IO[str], options: argparse.Namespace) -> None:
        for data in lines:
            if options.query:
                data = jp(options.query, data)
            stream.write(stable_json(data) + "\n")


COMMANDS: List[Type[Subcommand]] = [
    AnalyzeCommand,
    ClassCommand,
    MinimalCommand,
    ClassifyCommand,
    EngelCommand,
    ReesCommand,
    GlueCommand,
    CatalogCommand,
    CensusCommand,
]


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with every subcommand."""
    parser = argparse.ArgumentParser(
        prog="nilpotentia",
        description="Malcev nilpotency of finite semigroups.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--pretty", action="store_true", help="Indent JSON output for reading."
    )
    parser.add_argument("--query", help="A JMESPath expression applied to the output.")
    parser.add_argument(
        "--threads", type=int, default=1, help="Worker processes for the census."
    )
    parser.add_argument(
        "-v",
        "--verbosity",
        type=int,
        choices=sorted(VERBOSITY_LEVELS),
        default=1,
        help="0 = errors only, 1 = warnings, 2 = info, 3 = debug.",
    )

    subparsers = parser.add_subparsers(dest="command", required=True)
    for command_class in COMMANDS:
        command = command_class()
        subparser = subparsers.add_parser(command.name, help=command.help)
        command.add_arguments(subparser)
        subparser.set_defaults(handler=command)
    return parser


def render(data: Any, pretty: bool = False) -> str:
    """Render output data as JSON."""
    if pretty:
        return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)
    return stable_json(data)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line.

    Args:
        argv: The arguments; ``sys.argv[1:]`` by default.

    Returns:
        int: 0 on success, 2 for unreadable or invalid input, 1 for any other
            error.
    """
    options = build_parser().parse_args(argv)
    logging.basicConfig(
        level=VERBOSITY_LEVELS[options.verbosity],
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        data = options.handler.handle(options)
    except (InputFormatError, InvalidSemigroup) as e:
        sys.stderr.write(stable_json(e.as_dict()) + "\n")
        return 2
    except NilpotentiaError as e:
        sys.stderr.write(stable_json(e.as_dict()) + "\n")
        return 1
    except ImproperlyConfigured as e:
        sys.stderr.write(
            stable_json({"error": "ImproperlyConfigured", "message": str(e)}) + "\n"
        )
        return 1

    if data is not None:
        if options.query:
            data = jp(options.query, data)
        sys.stdout.write(render(data, pretty=options.pretty) + "\n")
    return 0

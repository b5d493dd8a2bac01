# src/cli/app.py
import argparse
import json
import logging
import sys
from collections.abc import Sequence
from datetime import UTC, datetime
from pathlib import Path
from typing import TextIO

from rich.console import Console
from rich.logging import RichHandler

from src import __version__
from src.cli.commands.base import BaseCommand, CommandResult
from src.cli.output import FORMATTERS
from src.config import OUTPUT_FORMATS, RunConfig, default_mmax
from src.models.base import DEFAULT_MMAX, DomainError
from src.storage.abstract import AbstractFanStorage
from src.storage.json_storage import StorageError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE = 2

GLOBAL_KEYS = frozenset(
    {"command", "action", "output_format", "output", "meta", "verbose"}
)


def configure_logging(verbose: bool, stream: TextIO | None = None) -> None:
    """Route all logging to stderr through rich; stdout carries payloads only."""
    handler = RichHandler(
        console=Console(file=stream or sys.stderr),
        show_time=False,
        show_path=verbose,
    )
    root = logging.getLogger()
    for existing in list(root.handlers):
        if isinstance(existing, RichHandler):
            root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)


def _global_options() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=OUTPUT_FORMATS,
        default=argparse.SUPPRESS,
        dest="output_format",
    )
    common.add_argument("--output", metavar="PATH", default=argparse.SUPPRESS)
    common.add_argument("--meta", action="store_true", default=argparse.SUPPRESS)
    common.add_argument(
        "--verbose", "-v", action="store_true", default=argparse.SUPPRESS
    )
    return common


class CyConeCLI:
    """Main CLI application class."""

    def __init__(
        self,
        storage: AbstractFanStorage,
        commands: Sequence[BaseCommand] | None = None,
        stdout: TextIO | None = None,
        stderr: TextIO | None = None,
    ) -> None:
        """Initialize CLI application."""
        self.storage = storage
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr

        common = _global_options()
        self.parser = argparse.ArgumentParser(
            prog="cycone",
            description="Exact invariants of degenerations of P^2 and CY surface pairs",
            formatter_class=argparse.RawDescriptionHelpFormatter,
            parents=[common],
        )
        self.subparsers = self.parser.add_subparsers(
            dest="command", metavar="COMMAND", help="Available commands"
        )

        self._register_commands(commands or [], common)

    def _register_commands(
        self, commands: Sequence[BaseCommand], common: argparse.ArgumentParser
    ) -> None:
        """Register CLI commands."""
        self.commands: dict[str, BaseCommand] = {}
        for cmd in commands:
            subparser = self.subparsers.add_parser(cmd.name, help=cmd.help)
            cmd.configure(subparser, [common])
            self.commands[cmd.name] = cmd

    def _config(self, parsed: argparse.Namespace) -> RunConfig:
        output = getattr(parsed, "output", None)
        params = {
            k: v
            for k, v in vars(parsed).items()
            if k not in GLOBAL_KEYS
        }
        mmax = params.get("mmax")
        if mmax is None:
            mmax = default_mmax() if "mmax" in params else DEFAULT_MMAX
        return RunConfig(
            command=parsed.command,
            action=parsed.action,
            params=params,
            output_format=getattr(parsed, "output_format", "json"),
            output_path=Path(output) if output else None,
            mmax=mmax,
            meta=getattr(parsed, "meta", False),
            verbose=getattr(parsed, "verbose", False),
        )

    def _write_meta(self, config: RunConfig, argv: Sequence[str]) -> None:
        meta = {
            "version": __version__,
            "command": f"{config.command} {config.action}",
            "argv": list(argv),
            "timestamp": datetime.now(UTC).isoformat(),
        }
        self.stderr.write(json.dumps({"meta": meta}) + "\n")

    def _emit(self, config: RunConfig, result: CommandResult) -> None:
        formatter_cls = FORMATTERS[config.output_format]
        if config.output_path is None:
            formatter_cls(self.stdout, self.stderr).display(result)
            return
        try:
            config.output_path.parent.mkdir(parents=True, exist_ok=True)
            with open(config.output_path, "w", encoding="utf-8", newline="") as f:
                formatter_cls(f, self.stderr).display(result)
        except OSError as e:
            raise StorageError(f"Failed to write output: {e}") from e

    def _fail(self, result: CommandResult, output_format: str = "json") -> int:
        FORMATTERS[output_format](self.stdout, self.stderr).error(result)
        return EXIT_DOMAIN_ERROR

    def run(self, args: list[str] | None = None) -> int:
        """Run the CLI application with the given arguments."""
        argv = list(args or [])
        if not argv:
            self.parser.print_usage(self.stderr)
            return EXIT_USAGE

        try:
            parsed_args = self.parser.parse_args(argv)
        except SystemExit as e:
            return EXIT_OK if e.code in (0, None) else EXIT_USAGE

        if not parsed_args.command:
            self.parser.print_usage(self.stderr)
            return EXIT_USAGE

        configure_logging(getattr(parsed_args, "verbose", False), self.stderr)
        output_format = getattr(parsed_args, "output_format", "json")
        try:
            config = self._config(parsed_args)
            if config.meta:
                self._write_meta(config, argv)
            logger.debug("Running %s %s", config.command, config.action)

            result = self.commands[config.command].execute(parsed_args)
            if not result.success:
                return self._fail(result, output_format)
            self._emit(config, result)
            return EXIT_OK

        except (DomainError, StorageError) as e:
            return self._fail(CommandResult.failure(e), output_format)

        except Exception as e:
            logger.exception("Unexpected error")
            return self._fail(
                CommandResult(False, f"Unexpected error: {e}", code="internal_error"),
                output_format,
            )


def build_app(
    storage: AbstractFanStorage | None = None,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
) -> CyConeCLI:
    from src.cli.commands.cone import ConeCommand
    from src.cli.commands.degen import DegenCommand
    from src.cli.commands.markov import MarkovCommand
    from src.cli.commands.misc import MiscCommand
    from src.cli.commands.svalue import SValueCommand
    from src.cli.commands.typeii import TypeIICommand
    from src.cli.commands.wps import WpsCommand
    from src.storage.json_storage import JsonFanStorage

    storage = storage or JsonFanStorage()
    commands: list[BaseCommand] = [
        MarkovCommand(),
        WpsCommand(storage),
        SValueCommand(storage),
        DegenCommand(storage),
        ConeCommand(),
        TypeIICommand(storage),
        MiscCommand(),
    ]
    return CyConeCLI(storage, commands, stdout, stderr)


def run(argv: Sequence[str] | None = None) -> int:
    """Parse argv, execute one subcommand and return the exit code."""
    return build_app().run(list(sys.argv[1:] if argv is None else argv))


def main() -> None:
    """CLI entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()

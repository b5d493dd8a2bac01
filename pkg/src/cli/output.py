# src/cli/output.py
import csv
import json
import sys
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, TextIO

from rich.console import Console
from rich.table import Table

from src.cli.commands.base import CommandResult
from src.models.base import format_rational


def to_jsonable(value: Any) -> Any:
    """Exact numbers become "p/q" strings; containers are converted recursively."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int | Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    return str(value)


def _cell(value: Any) -> str:
    converted = to_jsonable(value)
    if isinstance(converted, dict | list):
        return json.dumps(converted, ensure_ascii=False, separators=(",", ":"))
    if converted is None:
        return ""
    if isinstance(converted, bool):
        return "true" if converted else "false"
    return str(converted)


def write_error(stream: TextIO, result: CommandResult) -> None:
    payload = {
        "code": result.code or "error",
        "message": result.message,
        "context": to_jsonable(result.context or {}),
    }
    stream.write(json.dumps(payload, ensure_ascii=False) + "\n")


def table_rows(result: CommandResult) -> list[dict[str, Any]]:
    if result.rows is not None:
        return result.rows
    if isinstance(result.data, list):
        return result.data
    if isinstance(result.data, dict):
        return [result.data]
    return []


class OutputFormatter(ABC):
    """Abstract base class for formatting command output."""

    def __init__(self, stream: TextIO | None = None, err: TextIO | None = None) -> None:
        self.stream = stream or sys.stdout
        self.err = err or sys.stderr

    @abstractmethod
    def display(self, result: CommandResult) -> None:
        """Display command execution result."""

    def error(self, result: CommandResult) -> None:
        """Write the {code, message, context} error object to the error stream."""
        write_error(self.err, result)


class JsonOutput(OutputFormatter):
    """Payload as one JSON document with insertion-ordered keys."""

    def display(self, result: CommandResult) -> None:
        payload = json.dumps(to_jsonable(result.data), ensure_ascii=False)
        self.stream.write(payload + "\n")


class CsvOutput(OutputFormatter):
    """RFC-4180 table with a mandatory header row; nested cells are JSON."""

    def display(self, result: CommandResult) -> None:
        rows = table_rows(result)
        columns: list[str] = []
        for row in rows:
            columns.extend(k for k in row if k not in columns)
        writer = csv.writer(self.stream, lineterminator="\r\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in columns])


class ConsoleOutput(OutputFormatter):
    """Rich console output formatter."""

    def __init__(self, stream: TextIO | None = None, err: TextIO | None = None) -> None:
        super().__init__(stream, err)
        self.console = Console(file=self.stream)

    def display(self, result: CommandResult) -> None:
        """
        Display command result using Rich formatting.

        Args:
            result: Command execution result
        """
        self.console.print(f"\n[green]{result.message}[/green]\n")

        if result.rows is not None or isinstance(result.data, list):
            self._display_table(table_rows(result))
        elif isinstance(result.data, dict):
            self._display_dict(result.data)

    def _display_table(self, data: list[dict[str, Any]]) -> None:
        if not data:
            self.console.print("[yellow]No rows[/yellow]")
            return

        table = Table(show_header=True, header_style="bold magenta")
        columns = list(data[0].keys())
        for column in columns:
            table.add_column(column.replace("_", " ").title())

        for item in data:
            table.add_row(*(self._format(c, item.get(c)) for c in columns))

        self.console.print(table)

    def _display_dict(self, data: dict[str, Any]) -> None:
        table = Table(show_header=False, box=None)
        table.add_column("Field", style="bold blue")
        table.add_column("Value")

        for key, value in data.items():
            table.add_row(key.replace("_", " ").title(), self._format(key, value))

        self.console.print(table)

    @staticmethod
    def _format(key: str, value: Any) -> str:
        text = _cell(value)
        # Highlight checks
        if isinstance(value, bool):
            return f"[green]{text}[/green]" if value else f"[yellow]{text}[/yellow]"
        if key in {"identified_as", "state", "route"} and value:
            return f"[cyan]{text}[/cyan]"
        return text


FORMATTERS: dict[str, type[OutputFormatter]] = {
    "json": JsonOutput,
    "csv": CsvOutput,
    "pretty": ConsoleOutput,
}

# tests/test_output.py
import io
import json
from fractions import Fraction
from unittest.mock import call

from rich.table import Table

from src.cli.commands.base import CommandResult
from src.cli.output import (
    ConsoleOutput,
    CsvOutput,
    JsonOutput,
    table_rows,
    to_jsonable,
    write_error,
)
from src.models.cy_pairs import CurvePair

# Constants for test assertions
EXPECTED_PRINTS_FOR_TWO_RESULTS = 4  # 2 messages + 2 tables
EXPECTED_PRINTS_FOR_EMPTY_TEST = 2  # message + "No rows"


class TestToJsonable:
    def test_numbers_become_strings(self):
        assert to_jsonable(Fraction(3, 4)) == "3/4"
        assert to_jsonable(9) == "9"
        assert to_jsonable(Fraction(-6, 2)) == "-3"

    def test_booleans_and_none_are_kept(self):
        assert to_jsonable(True) is True
        assert to_jsonable(None) is None

    def test_containers(self):
        value = {1: [Fraction(1, 2), (2, 3)], "name": "P^2"}
        assert to_jsonable(value) == {"1": ["1/2", ["2", "3"]], "name": "P^2"}

    def test_objects_with_to_dict(self):
        assert to_jsonable(CurvePair.of({"p": Fraction(1, 2)})) == {"p": "1/2"}


class TestJsonOutput:
    def test_single_document(self, sample_data):
        stream = io.StringIO()
        JsonOutput(stream).display(
            CommandResult(success=True, message="ok", data=sample_data["single"])
        )

        text = stream.getvalue()
        assert text.endswith("\n")
        assert json.loads(text) == {
            "volume": "9",
            "index": "2",
            "name": "P(1,1,4)",
            "flat": True,
        }

    def test_key_order_is_preserved(self, sample_data):
        stream = io.StringIO()
        JsonOutput(stream).display(
            CommandResult(success=True, message="ok", data=sample_data["single"])
        )
        keys = list(json.loads(stream.getvalue()))
        assert keys == ["volume", "index", "name", "flat"]

    def test_identical_runs_are_byte_identical(self, sample_data):
        outputs = []
        for _ in range(2):
            stream = io.StringIO()
            JsonOutput(stream).display(
                CommandResult(success=True, message="ok", data=sample_data["multiple"])
            )
            outputs.append(stream.getvalue())
        assert outputs[0] == outputs[1]


class TestCsvOutput:
    def test_header_and_crlf(self, sample_data):
        stream = io.StringIO()
        CsvOutput(stream).display(
            CommandResult(success=True, message="ok", data=sample_data["multiple"])
        )

        lines = stream.getvalue().split("\r\n")
        assert lines[0] == "a,b,c,weights"
        assert lines[1] == '1,1,1,"[""1"",""1"",""1""]"'
        assert lines[-1] == ""
        assert len(lines) == 4  # noqa: PLR2004

    def test_rows_take_precedence(self):
        result = CommandResult(
            success=True,
            message="ok",
            data={"n": 1, "d": [1, 1]},
            rows=[{"k": 0, "d_k": 1}, {"k": 1, "d_k": 1}],
        )
        stream = io.StringIO()
        CsvOutput(stream).display(result)
        assert stream.getvalue() == "k,d_k\r\n0,1\r\n1,1\r\n"

    def test_header_only_for_empty_tables(self):
        stream = io.StringIO()
        CsvOutput(stream).display(CommandResult(success=True, message="ok", data=[]))
        assert stream.getvalue() == "\r\n"

    def test_missing_cells_are_empty(self):
        result = CommandResult(
            success=True, message="ok", data=[{"a": 1}, {"a": 2, "flag": False}]
        )
        stream = io.StringIO()
        CsvOutput(stream).display(result)
        assert stream.getvalue() == "a,flag\r\n1,\r\n2,false\r\n"

    def test_table_rows_of_a_dict(self):
        assert table_rows(CommandResult(True, "ok", {"S": 1})) == [{"S": 1}]
        assert table_rows(CommandResult(True, "ok")) == []


class TestConsoleOutput:
    """Test cases for ConsoleOutput."""

    def test_display_success_message(self, mock_console):
        output = ConsoleOutput()
        output.display(CommandResult(success=True, message="Test message"))

        mock_console.print.assert_called_with("\n[green]Test message[/green]\n")

    def test_display_table_data(self, mock_console, sample_data):
        output = ConsoleOutput()
        result = CommandResult(
            success=True, message="Found triples", data=sample_data["multiple"]
        )

        output.display(result)

        assert mock_console.print.call_args_list[0] == call(
            "\n[green]Found triples[/green]\n"
        )
        table = mock_console.print.call_args_list[1][0][0]
        assert isinstance(table, Table)
        assert table.show_header is True
        assert table.header_style == "bold magenta"

    def test_display_dict_data(self, mock_console, sample_data):
        output = ConsoleOutput()
        result = CommandResult(
            success=True, message="Invariants", data=sample_data["single"]
        )

        output.display(result)

        table = mock_console.print.call_args_list[1][0][0]
        assert isinstance(table, Table)
        assert table.show_header is False
        assert table.box is None

    def test_two_results(self, mock_console):
        output = ConsoleOutput()
        output.display(CommandResult(True, "first", {"state": "stable"}))
        output.display(CommandResult(True, "second", {"flat": True}))

        assert len(mock_console.print.call_args_list) == EXPECTED_PRINTS_FOR_TWO_RESULTS

    def test_empty_data_handling(self, mock_console):
        output = ConsoleOutput()

        output.display(CommandResult(success=True, message="No data", data=None))
        assert mock_console.print.call_count == 1

        output.display(CommandResult(success=True, message="No data", data=[]))
        assert mock_console.print.call_count == 1 + EXPECTED_PRINTS_FOR_EMPTY_TEST

    def test_highlighting(self):
        assert ConsoleOutput._format("flat", True) == "[green]true[/green]"
        assert ConsoleOutput._format("flat", False) == "[yellow]false[/yellow]"
        assert ConsoleOutput._format("state", "stable") == "[cyan]stable[/cyan]"
        assert ConsoleOutput._format("S", Fraction(3, 2)) == "3/2"

    def test_renders_to_stream(self):
        stream = io.StringIO()
        ConsoleOutput(stream).display(CommandResult(True, "S = 2", {"S": Fraction(2)}))
        assert "S = 2" in stream.getvalue()


class TestErrors:
    def test_write_error(self):
        stream = io.StringIO()
        result = CommandResult(
            False, "bad weights", code="not_well_formed", context={"pair": [0, 1]}
        )

        write_error(stream, result)

        assert json.loads(stream.getvalue()) == {
            "code": "not_well_formed",
            "message": "bad weights",
            "context": {"pair": ["0", "1"]},
        }

    def test_formatter_error_goes_to_error_stream(self):
        out, err = io.StringIO(), io.StringIO()
        JsonOutput(out, err).error(CommandResult(False, "boom"))

        assert out.getvalue() == ""
        assert json.loads(err.getvalue())["code"] == "error"

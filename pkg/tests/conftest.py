# tests/conftest.py
import io
from fractions import Fraction
from pathlib import Path
from typing import Any
from unittest.mock import Mock

import pytest
from _pytest.monkeypatch import MonkeyPatch
from rich.console import Console

from src.cli.app import CyConeCLI, build_app
from src.cli.commands.base import BaseCommand, CommandResult
from src.cli.output import OutputFormatter
from src.models.cy_pairs import OrbifoldPolarization
from src.models.lattice import LatticeVector
from src.models.toric import ToricDivisor, ToricSurface, wps
from src.storage.abstract import AbstractFanStorage
from src.storage.json_storage import InMemoryFanStorage, JsonFanStorage


@pytest.fixture
def plane() -> ToricSurface:
    """P^2 with rays (1,0), (0,1), (-1,-1)."""
    return wps(1, 1, 1, name="P^2")


@pytest.fixture
def p114() -> ToricSurface:
    """P(1,1,4), the first Markov degeneration of P^2."""
    return wps(1, 1, 4)


@pytest.fixture
def hirzebruch_f1() -> ToricSurface:
    """F_1, the blowup of P^2 at a torus-fixed point."""
    rays = ((1, 0), (1, 1), (0, 1), (-1, -1))
    return ToricSurface(rays=tuple(LatticeVector(x, y) for x, y in rays), name="F_1")


@pytest.fixture
def zero_boundary(plane) -> ToricDivisor:
    return ToricDivisor.zero(plane)


@pytest.fixture
def half_polarization() -> OrbifoldPolarization:
    """deg L = 1/2 with a single half point; its cone is P(1,1,2)."""
    return OrbifoldPolarization(Fraction(1, 2), (("p0", Fraction(1, 2)),))


@pytest.fixture
def quarter_polarization() -> OrbifoldPolarization:
    """deg L = 1/4 with a single quarter point; its cone is P(1,1,4)."""
    return OrbifoldPolarization(Fraction(1, 4), (("p0", Fraction(1, 4)),))


@pytest.fixture
def fan_file(tmp_path) -> Path:
    """Create a temporary fan file path."""
    return tmp_path / "fans" / "fan.json"


@pytest.fixture(params=[JsonFanStorage, InMemoryFanStorage])
def storage(request) -> AbstractFanStorage:
    """Parametrized fixture providing both fan storage implementations."""
    storage_class: type[AbstractFanStorage] = request.param
    return storage_class()


@pytest.fixture
def memory_storage() -> InMemoryFanStorage:
    return InMemoryFanStorage()


class MockCommand(BaseCommand):
    """Mock command with a single action returning a fixed result."""

    def __init__(self, name: str, result: CommandResult) -> None:
        super().__init__()
        self.name = name
        self.result = result

    def add_actions(self, actions, parents) -> None:
        actions.add_parser("run", parents=parents)

    def handlers(self):
        return {"run": lambda args: self.result}


class MockOutput(OutputFormatter):
    """Mock output formatter for testing."""

    def __init__(self) -> None:
        super().__init__(io.StringIO(), io.StringIO())
        self.displayed_results: list[CommandResult] = []

    def display(self, result: CommandResult) -> None:
        self.displayed_results.append(result)


@pytest.fixture
def mock_command_result() -> CommandResult:
    """Fixture providing a mock command result."""
    return CommandResult(success=True, message="Test succeeded", data={"value": 1})


@pytest.fixture
def mock_command(mock_command_result) -> MockCommand:
    return MockCommand("test", mock_command_result)


@pytest.fixture
def mock_output() -> MockOutput:
    return MockOutput()


@pytest.fixture
def streams() -> dict[str, io.StringIO]:
    """Fresh stdout and stderr buffers for one CLI run."""
    return {"stdout": io.StringIO(), "stderr": io.StringIO()}


@pytest.fixture
def cli_app(memory_storage, streams, monkeypatch: MonkeyPatch) -> CyConeCLI:
    """Fixture providing the full CLI wired to in-memory fans and string buffers."""
    monkeypatch.delenv("CYCONE_MMAX", raising=False)
    return build_app(memory_storage, streams["stdout"], streams["stderr"])


@pytest.fixture
def cli_args() -> dict[str, dict[str, list[str]]]:
    """Fixture providing CLI argument combinations per command."""
    return {
        "markov": {
            "enumerate": ["markov", "enumerate", "--bound", "13"],
            "dn": ["markov", "dn", "--n", "4"],
            "catalog": ["markov", "appendixA", "--bound", "5"],
        },
        "wps": {
            "info": ["wps", "info", "1", "1", "4"],
            "not_well_formed": ["wps", "info", "2", "2", "1"],
        },
        "svalue": {
            "conic_line": ["svalue", "conic-line", "--t", "1/2"],
            "float": ["svalue", "conic-line", "--t", "0.5"],
        },
        "misc": {
            "typeiii_bad": ["misc", "typeiii", "--d", "4"],
        },
    }


@pytest.fixture
def mock_console(monkeypatch) -> Mock:
    """Fixture providing a mocked Rich console."""
    console = Mock(spec=Console)
    monkeypatch.setattr("src.cli.output.Console", lambda *args, **kwargs: console)
    return console


@pytest.fixture
def sample_data() -> dict[str, Any]:
    """Fixture providing sample payloads for the output formatters."""
    return {
        "single": {"volume": Fraction(9), "index": 2, "name": "P(1,1,4)", "flat": True},
        "multiple": [
            {"a": 1, "b": 1, "c": 1, "weights": [1, 1, 1]},
            {"a": 1, "b": 1, "c": 2, "weights": [1, 1, 4]},
        ],
    }

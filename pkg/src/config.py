# src/config.py
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from src.models.base import DEFAULT_MMAX, DomainError

MMAX_ENV = "CYCONE_MMAX"
OUTPUT_FORMATS = ("json", "csv", "pretty")


def default_mmax(environ: dict[str, str] | None = None) -> int:
    """
    Filtration depth from CYCONE_MMAX, or the built-in default.

    Raises:
        DomainError: If the variable is set to anything but a positive integer
    """
    env = os.environ if environ is None else environ
    raw = env.get(MMAX_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MMAX
    try:
        value = int(raw)
    except ValueError as e:
        raise DomainError(
            "bad_config", f"{MMAX_ENV} must be a positive integer, got {raw!r}"
        ) from e
    if value < 1:
        raise DomainError(
            "bad_config", f"{MMAX_ENV} must be a positive integer, got {raw!r}"
        )
    return value


@dataclass(frozen=True)
class RunConfig:
    """One parsed invocation: the subcommand, its parameters and output settings."""

    command: str
    action: str
    params: dict[str, Any] = field(default_factory=dict)
    output_format: str = "json"
    output_path: Path | None = None
    mmax: int = DEFAULT_MMAX
    meta: bool = False
    verbose: bool = False

    def __post_init__(self) -> None:
        if not self.command or not self.action:
            raise DomainError("bad_config", "Exactly one subcommand is required")
        if self.output_format not in OUTPUT_FORMATS:
            raise DomainError(
                "bad_config", f"Unknown output format: {self.output_format}"
            )
        if self.mmax < 1:
            raise DomainError("bad_config", "Bounds must be positive")
        for key in ("bound", "mmax"):
            value = self.params.get(key)
            if isinstance(value, int) and value < 1:
                raise DomainError(
                    "bad_config", f"--{key} must be positive, got {value}", {key: value}
                )

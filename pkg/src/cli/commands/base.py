# src/cli/commands/base.py
import logging
from abc import ABC, abstractmethod
from argparse import ArgumentParser, Namespace, _SubParsersAction
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any

from src.config import default_mmax
from src.models.base import DomainError
from src.models.toric import ToricSurface
from src.storage.abstract import AbstractFanStorage
from src.storage.json_storage import StorageError

logger = logging.getLogger(__name__)

Handler = Callable[[Namespace], "CommandResult"]


@dataclass
class CommandResult:
    """Base class for command execution results."""

    success: bool
    message: str
    data: Any | None = None
    rows: list[dict[str, Any]] | None = None
    code: str | None = None
    context: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def failure(cls, error: DomainError | StorageError) -> "CommandResult":
        if isinstance(error, DomainError):
            return cls(False, error.message, code=error.code, context=error.context)
        return cls(False, str(error), code="storage_error")


class BaseCommand(ABC):
    """
    Base class for all CLI commands.

    A command is a top-level group; each of its actions is a nested subparser
    whose name is stored in args.action.
    """

    help = ""

    def __init__(self, storage: AbstractFanStorage | None = None) -> None:
        self.name = self.__class__.__name__.lower().replace("command", "")
        self.storage = storage

    def configure(
        self, parser: ArgumentParser, parents: Sequence[ArgumentParser]
    ) -> None:
        """Configure the action subparsers of this command."""
        actions = parser.add_subparsers(dest="action", metavar="ACTION", required=True)
        self.add_actions(actions, list(parents))

    @abstractmethod
    def add_actions(
        self,
        actions: "_SubParsersAction[ArgumentParser]",
        parents: list[ArgumentParser],
    ) -> None:
        """Register one subparser per action."""
        raise NotImplementedError

    @abstractmethod
    def handlers(self) -> dict[str, Handler]:
        """Map action names to their handlers."""
        raise NotImplementedError

    def execute(self, args: Namespace) -> CommandResult:
        """Run the selected action; domain and storage failures become results."""
        try:
            return self.handlers()[args.action](args)
        except (DomainError, StorageError) as e:
            logger.debug("%s %s failed: %s", self.name, args.action, e)
            return CommandResult.failure(e)

    def load_fan(self, location: str) -> ToricSurface:
        """
        Read a fan file through the configured storage.

        Raises:
            StorageError: If no storage is configured or the file cannot be read
        """
        return self.require_storage().load(location)

    def require_storage(self) -> AbstractFanStorage:
        if self.storage is None:
            raise StorageError("No fan storage configured")
        return self.storage

    @staticmethod
    def resolve_mmax(args: Namespace) -> int:
        """--mmax when given, else CYCONE_MMAX, else the default depth."""
        mmax = getattr(args, "mmax", None)
        return mmax if mmax is not None else default_mmax()

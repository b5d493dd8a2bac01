# src/storage/json_storage.py
import json
import logging
from pathlib import Path
from threading import Lock
from typing import Any

from src.models.toric import ToricSurface

from .abstract import AbstractFanStorage

logger = logging.getLogger(__name__)


class StorageError(Exception):
    """Custom exception for storage-related errors."""


class JsonFanStorage(AbstractFanStorage):
    """Fan files on disk in the {rays, name} JSON form."""

    def __init__(self) -> None:
        self._lock = Lock()  # For thread-safe file operations

    def _load_data(self, path: Path) -> dict[str, Any]:
        if not path.exists():
            raise StorageError(f"Fan file not found: {path}")
        try:
            with self._lock, open(path, encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise StorageError(f"Fan file contains invalid JSON: {e}") from e
        except OSError as e:
            raise StorageError(f"Failed to read fan file: {e}") from e
        if not isinstance(data, dict):
            raise StorageError(f"Fan file must hold a JSON object: {path}")
        return data

    def _save_data(self, path: Path, data: dict[str, Any]) -> None:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with self._lock, open(path, "w", encoding="utf-8") as f:
                json.dump(data, f, indent=2, ensure_ascii=False)
                f.write("\n")
        except OSError as e:
            raise StorageError(f"Failed to write fan file: {e}") from e

    def load(self, location: str | Path) -> ToricSurface:
        path = Path(location)
        surface = ToricSurface.from_dict(self._load_data(path))
        logger.debug("Loaded %d-ray fan from %s", len(surface), path)
        return surface

    def save(self, location: str | Path, surface: ToricSurface) -> None:
        self._save_data(Path(location), surface.to_dict())

    def exists(self, location: str | Path) -> bool:
        return Path(location).exists()


class InMemoryFanStorage(AbstractFanStorage):
    """In-memory implementation of fan storage for testing."""

    def __init__(self) -> None:
        self._storage: dict[str, dict[str, Any]] = {}

    def load(self, location: str | Path) -> ToricSurface:
        data = self._storage.get(str(location))
        if data is None:
            raise StorageError(f"Fan file not found: {location}")
        return ToricSurface.from_dict(data)

    def save(self, location: str | Path, surface: ToricSurface) -> None:
        self._storage[str(location)] = surface.to_dict()

    def exists(self, location: str | Path) -> bool:
        return str(location) in self._storage

# src/storage/abstract.py
from abc import ABC, abstractmethod
from pathlib import Path

from src.models.toric import ToricSurface


class AbstractFanStorage(ABC):
    """Abstract base class defining how fan files are read and written."""

    @abstractmethod
    def load(self, location: str | Path) -> ToricSurface:
        """
        Read a fan from its JSON form.

        Args:
            location: Where the fan is stored

        Returns:
            The validated ToricSurface

        Raises:
            StorageError: If the fan cannot be read or is not valid JSON
            DomainError: If the rays do not form a complete fan
        """

    @abstractmethod
    def save(self, location: str | Path, surface: ToricSurface) -> None:
        """
        Write a fan in its JSON form, replacing any previous content.

        Raises:
            StorageError: If the fan cannot be written
        """

    @abstractmethod
    def exists(self, location: str | Path) -> bool:
        """Check whether a fan is stored at location."""

"""
Result Repository Interface

Defines the contract for writing run results.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import List, Optional


class IResultRepository(ABC):
    """Interface for result persistence"""

    @abstractmethod
    def save_json(self, name: str, payload: dict) -> Path:
        """
        Write a JSON document

        Args:
            name: File name relative to the output location
            payload: JSON-serializable mapping

        Returns:
            Path of the written file
        """
        pass

    @abstractmethod
    def save_table(self, name: str, rows: List[dict], columns: Optional[List[str]] = None) -> Path:
        """
        Write a table as CSV

        Args:
            name: File name relative to the output location
            rows: One mapping per row
            columns: Column order; defaults to first-seen key order

        Returns:
            Path of the written file
        """
        pass

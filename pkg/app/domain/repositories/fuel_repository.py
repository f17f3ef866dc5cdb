"""
Fuel Repository Interface

Defines the contract for fuel database lookups.
"""

from abc import ABC, abstractmethod
from typing import List, Optional

from app.domain.entities.gas import Fuel


class IFuelRepository(ABC):
    """Interface for fuel lookups"""

    @abstractmethod
    def get_by_name(self, name: str) -> Optional[Fuel]:
        """
        Get a fuel by name or alias

        Args:
            name: Fuel name, matched case-insensitively

        Returns:
            The fuel if found, None otherwise
        """
        pass

    @abstractmethod
    def list_names(self) -> List[str]:
        """
        List canonical fuel names

        Returns:
            Names in database order
        """
        pass

    @abstractmethod
    def list_all(self) -> List[Fuel]:
        """
        List every fuel record

        Returns:
            Fuels in database order
        """
        pass

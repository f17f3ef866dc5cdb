"""
Fuel Repository Implementation

Built-in fuels, optionally extended or overridden by a YAML fuel file.
"""

import logging
from pathlib import Path
from typing import List, Optional, Set, Union

import yaml
from pydantic import ValidationError

from app.domain.entities.gas import Fuel
from app.domain.exceptions import ConfigError
from app.domain.reference_data import BUILTIN_FUELS
from app.domain.repositories.fuel_repository import IFuelRepository
from app.domain.services.gasmodel import find_fuel, normalize_fuel_name

logger = logging.getLogger(__name__)


class FuelRepositoryImpl(IFuelRepository):
    """
    Fuel database

    A fuel file holds either a list of records or a mapping with a ``fuels``
    list; a record whose name matches a built-in replaces it. Names and
    aliases must stay unambiguous across the whole database.
    """

    def __init__(self, fuel_file: Optional[Union[str, Path]] = None):
        self._fuels: List[Fuel] = list(BUILTIN_FUELS)
        if fuel_file is not None:
            for fuel in self._load(Path(fuel_file)):
                self._add(fuel)

    @staticmethod
    def _keys(fuel: Fuel) -> Set[str]:
        return {normalize_fuel_name(name) for name in (fuel.name, *fuel.aliases)}

    def _add(self, fuel: Fuel) -> None:
        key = normalize_fuel_name(fuel.name)
        replaced = next(
            (i for i, existing in enumerate(self._fuels) if normalize_fuel_name(existing.name) == key), None
        )
        for i, existing in enumerate(self._fuels):
            shared = self._keys(fuel) & self._keys(existing)
            if i != replaced and shared:
                raise ConfigError(
                    f"fuel {fuel.name} reuses name or alias '{sorted(shared)[0]}' of {existing.name}",
                    field="fuels",
                )
        if replaced is None:
            self._fuels.append(fuel)
        else:
            logger.info(f"Fuel file overrides fuel {self._fuels[replaced].name}")
            self._fuels[replaced] = fuel

    @staticmethod
    def _load(path: Path) -> List[Fuel]:
        try:
            with path.open("r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except OSError as e:
            raise ConfigError(f"cannot read fuel file {path}: {e}", field="fuel_file")
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            raise ConfigError(f"invalid YAML in fuel file {path}", field="fuel_file",
                              line=mark.line + 1 if mark else None)

        records = data.get("fuels", []) if isinstance(data, dict) else data
        if not isinstance(records, list):
            raise ConfigError(f"fuel file {path} must contain a list of fuels", field="fuels")

        fuels = []
        for i, record in enumerate(records):
            try:
                fuels.append(Fuel.model_validate(record))
            except ValidationError as e:
                first = e.errors()[0]
                field = ".".join(str(p) for p in ("fuels", i, *first["loc"]))
                raise ConfigError(first["msg"], field=field)
        logger.info(f"Loaded {len(fuels)} fuels from {path}")
        return fuels

    def get_by_name(self, name: str) -> Optional[Fuel]:
        return find_fuel(self._fuels, name)

    def list_names(self) -> List[str]:
        return [fuel.name for fuel in self._fuels]

    def list_all(self) -> List[Fuel]:
        return list(self._fuels)

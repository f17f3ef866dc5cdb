"""
Working Gas and Fuel Entities
"""

from typing import Optional, Tuple

from pydantic import BaseModel, Field, model_validator


class GasProperties(BaseModel):
    """
    Calorically perfect gas

    R is derived from cp and k when omitted and checked against them when given.
    """
    cp: float = Field(..., gt=0, description="Specific heat (J/kgK)")
    k: float = Field(..., gt=1, description="Specific-heat ratio")
    R: Optional[float] = Field(None, gt=0, description="Gas constant (J/kgK)")

    model_config = {"frozen": True}

    @model_validator(mode="before")
    @classmethod
    def fill_gas_constant(cls, data):
        if isinstance(data, dict) and data.get("R") is None:
            try:
                cp, k = float(data["cp"]), float(data["k"])
            except (KeyError, TypeError, ValueError):
                return data
            if k != 0:
                data = {**data, "R": cp * (k - 1.0) / k}
        return data

    @model_validator(mode="after")
    def check_gas_constant(self):
        expected = self.cp * (self.k - 1.0) / self.k
        if abs(self.R - expected) > 1e-9 * expected:
            raise ValueError(f"R={self.R} inconsistent with cp(k-1)/k={expected}")
        return self

    @property
    def isentropic_exponent(self) -> float:
        """(k-1)/k"""
        return (self.k - 1.0) / self.k


class Fuel(BaseModel):
    """
    Fuel record

    Attributes:
        name: Canonical identifier
        c: Carbon atoms per molecule
        h: Hydrogen atoms per molecule
        FHV: Heating value (MJ/kg)
        chem_exergy: Specific chemical exergy (MJ/kg)
        molecular_weight: g/mol
        aliases: Alternative names accepted by lookup
    """
    name: str = Field(..., min_length=1)
    c: int = Field(..., ge=0)
    h: int = Field(..., ge=1)
    FHV: float = Field(..., gt=0)
    chem_exergy: float = Field(..., gt=0)
    molecular_weight: float = Field(..., gt=0)
    aliases: Tuple[str, ...] = ()

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def check_chemical_exergy(self):
        if self.chem_exergy < 0.9 * self.FHV:
            raise ValueError(
                f"chem_exergy {self.chem_exergy} MJ/kg is implausibly low for FHV {self.FHV} MJ/kg"
            )
        return self

    @property
    def formula(self) -> str:
        carbon = "" if self.c == 0 else ("C" if self.c == 1 else f"C{self.c}")
        hydrogen = "H" if self.h == 1 else f"H{self.h}"
        return f"{carbon}{hydrogen}"

    @property
    def heating_value_j(self) -> float:
        """Heating value in J/kg"""
        return self.FHV * 1.0e6

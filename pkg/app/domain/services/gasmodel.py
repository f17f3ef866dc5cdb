"""
Gas Model

ISA troposphere, inlet-air cooling, and fuel lookup with the hydrocarbon
chemical-exergy correlation.
"""

import logging
from typing import Iterable, Optional

from app.domain.entities.atmosphere import R_AIR, AmbientState, InletState
from app.domain.entities.gas import Fuel
from app.domain.exceptions import FuelNotFoundError, NotApplicableError, OutOfRangeError
from app.domain.reference_data import BUILTIN_FUELS
from app.domain.repositories.fuel_repository import IFuelRepository

logger = logging.getLogger(__name__)

SEA_LEVEL_TEMPERATURE = 288.15  # K
SEA_LEVEL_PRESSURE = 101.325  # kPa
LAPSE_RATE = 0.0065  # K/m
BAROMETRIC_EXPONENT = 5.2561
TROPOPAUSE_ALTITUDE = 11000.0  # m

COLD_AIR_CP = 1005.0  # J/kgK


def isa_ambient(altitude: float) -> AmbientState:
    """
    ISA troposphere state

    Args:
        altitude: Geometric altitude in [0, 11000] m

    Returns:
        Ambient temperature, pressure and density

    Raises:
        OutOfRangeError: altitude outside the troposphere
    """
    if not 0.0 <= altitude <= TROPOPAUSE_ALTITUDE:
        raise OutOfRangeError(
            f"altitude {altitude} m outside the modelled troposphere [0, {TROPOPAUSE_ALTITUDE:.0f}] m"
        )
    T0 = SEA_LEVEL_TEMPERATURE - LAPSE_RATE * altitude
    P0 = SEA_LEVEL_PRESSURE * (T0 / SEA_LEVEL_TEMPERATURE) ** BAROMETRIC_EXPONENT
    rho0 = P0 * 1000.0 / (R_AIR * T0)
    return AmbientState(altitude=altitude, T0=T0, P0=P0, rho0=rho0)


def air_density(T: float, P: float) -> float:
    """Ideal-gas air density (kg/m^3) at T (K) and P (kPa)"""
    return P * 1000.0 / (R_AIR * T)


def apply_inlet_cooling(
    ambient: AmbientState,
    delta_T: float,
    mass_flow: float,
    cop: float,
    cp_air: float = COLD_AIR_CP,
) -> InletState:
    """
    Engine face state after the chiller

    Heating (delta_T > 0) is free; cooling removes m*cp*|delta_T|.

    Args:
        ambient: Ambient state
        delta_T: Inlet temperature change (K)
        mass_flow: Intake mass flow (kg/s)
        cop: Chiller coefficient of performance
        cp_air: Specific heat of the intake air (J/kgK)

    Returns:
        InletState; the chiller's shaft draw is ``InletState.chiller_power(cop)``
    """
    if cop <= 0:
        raise OutOfRangeError(f"chiller COP must be positive, got {cop}")
    if mass_flow < 0:
        raise OutOfRangeError(f"mass flow must be non-negative, got {mass_flow}")
    load = mass_flow * cp_air * max(0.0, -delta_T) / 1000.0
    return InletState(T1=ambient.T0 + delta_T, P1=ambient.P0, delta_T=delta_T, chiller_heat_load=load)


def chemical_exergy_correlation(fuel: Fuel) -> float:
    """
    Hydrocarbon chemical-exergy correlation (MJ/kg)

    Diagnostic only: it disagrees with the tabulated values, which remain
    authoritative in Fuel.chem_exergy.

    Raises:
        NotApplicableError: fuel without carbon
    """
    if fuel.c < 1:
        raise NotApplicableError(
            f"chemical-exergy correlation needs a hydrocarbon; {fuel.name} has no carbon"
        )
    return fuel.FHV * (1.04224 + 0.11925 * fuel.c / fuel.h - 0.042 / fuel.c)


def normalize_fuel_name(name: str) -> str:
    return name.strip().lower().replace("-", "_").replace(" ", "_")


def fuel_matches(fuel: Fuel, name: str) -> bool:
    """True when name is the fuel's name or one of its aliases"""
    key = normalize_fuel_name(name)
    return key == normalize_fuel_name(fuel.name) or any(
        key == normalize_fuel_name(alias) for alias in fuel.aliases
    )


def find_fuel(fuels: Iterable[Fuel], name: str) -> Optional[Fuel]:
    for fuel in fuels:
        if fuel_matches(fuel, name):
            return fuel
    return None


def fuel_lookup(name: str, repository: Optional[IFuelRepository] = None) -> Fuel:
    """
    Find a fuel by name

    Args:
        name: Fuel name or alias
        repository: Fuel database; the built-in fuels when None

    Returns:
        The Fuel record

    Raises:
        FuelNotFoundError: unknown name, with the available names
    """
    if repository is None:
        fuel = find_fuel(BUILTIN_FUELS, name)
        available = [f.name for f in BUILTIN_FUELS]
    else:
        fuel = repository.get_by_name(name)
        available = repository.list_names()
    if fuel is None:
        raise FuelNotFoundError(name, available)
    return fuel



"""
Performance Metrics

TSFC, efficiencies, specific thrust and the NOx severity index of a completed
cycle.
"""

import math

from app.domain.entities.gas import Fuel
from app.domain.entities.performance import CyclePerformance, EmissionInputs
from app.domain.exceptions import UndefinedMetricError

# NOx severity index reference constants
SNOX_REFERENCE_PRESSURE = 2965.0  # kPa
SNOX_REFERENCE_TEMPERATURE = 826.0  # K
NOX_RATE_FACTOR = 23.0


def tsfc(fuel_flow: float, thrust_kN: float) -> float:
    """Thrust-specific fuel consumption (g/kNs)"""
    if thrust_kN <= 0:
        raise UndefinedMetricError(f"TSFC undefined for non-positive thrust {thrust_kN} kN")
    return fuel_flow * 1000.0 / thrust_kN


def kinetic_energy_term(
    m_hot: float,
    m_cold: float,
    m_fuel: float,
    hot_velocity: float,
    cold_velocity: float,
    V0: float,
) -> float:
    """
    Jet kinetic-energy gain (W, without the factor 1/2)

    The core ram term uses the core flow only; the bypass stream carries its
    own ram term.
    """
    return (
        (m_hot + m_fuel) * hot_velocity ** 2
        - m_hot * V0 ** 2
        + m_cold * (cold_velocity ** 2 - V0 ** 2)
    )


def thermal_efficiency(kinetic_term: float, fuel_flow: float, fuel: Fuel) -> float:
    if fuel_flow <= 0:
        raise UndefinedMetricError("thermal efficiency undefined without fuel flow")
    return kinetic_term / (2.0 * fuel_flow * fuel.heating_value_j)


def propulsive_efficiency(thrust_kN: float, V0: float, kinetic_term: float) -> float:
    """Thrust power over the kinetic term; zero at V0 = 0"""
    if V0 == 0:
        return 0.0
    if kinetic_term <= 0:
        raise UndefinedMetricError(f"propulsive efficiency undefined for kinetic term {kinetic_term:.3g} W")
    return thrust_kN * 1000.0 * V0 / kinetic_term


def overall_efficiency(eta_thermal: float, eta_propulsive: float) -> float:
    return eta_thermal * eta_propulsive


def tsf(thrust_kN: float, intake_flow: float) -> float:
    """Specific thrust (Ns/kg)"""
    if intake_flow <= 0:
        raise UndefinedMetricError("specific thrust undefined without intake flow")
    return thrust_kN * 1000.0 / intake_flow


def snox(inputs: EmissionInputs) -> float:
    """NOx severity index from combustor-inlet pressure, temperature and humidity"""
    return (inputs.P4 / SNOX_REFERENCE_PRESSURE) ** 0.4 * math.exp(
        (inputs.T4 - SNOX_REFERENCE_TEMPERATURE) / 194.0 + (6.29 - 100.0 * inputs.war) / 53.2
    )


def nox_rate(snox_index: float, fuel_flow: float) -> float:
    """NOx generation (g/s)"""
    if fuel_flow < 0:
        raise UndefinedMetricError(f"negative fuel flow {fuel_flow}")
    return NOX_RATE_FACTOR * snox_index * fuel_flow


def evaluate_performance(
    thrust_kN: float,
    fuel_flow: float,
    fuel: Fuel,
    m_hot: float,
    m_cold: float,
    hot_velocity: float,
    cold_velocity: float,
    V0: float,
    emission: EmissionInputs,
    eta_exergetic: float,
    offtake: float,
) -> CyclePerformance:
    """
    Assemble CyclePerformance for a closed cycle

    Raises:
        UndefinedMetricError: non-positive thrust or kinetic term
    """
    kinetic = kinetic_energy_term(m_hot, m_cold, fuel_flow, hot_velocity, cold_velocity, V0)
    eta_th = thermal_efficiency(kinetic, fuel_flow, fuel)
    eta_p = propulsive_efficiency(thrust_kN, V0, kinetic)
    index = snox(emission)
    return CyclePerformance(
        thrust=thrust_kN,
        tsfc=tsfc(fuel_flow, thrust_kN),
        eta_thermal=eta_th,
        eta_propulsive=eta_p,
        eta_overall=overall_efficiency(eta_th, eta_p),
        eta_exergetic=eta_exergetic,
        tsf=tsf(thrust_kN, m_hot + m_cold),
        fuel_flow=fuel_flow,
        snox=index,
        nox_rate=nox_rate(index, fuel_flow),
        offtake=offtake,
        intake_mass_flow=m_hot + m_cold,
        flight_speed=V0,
    )

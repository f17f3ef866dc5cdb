"""
Turbofan Cycle

Station-by-station design-point model of a two-spool separate-flow turbofan
with inlet-air cooling. Temperatures in K, pressures in kPa, mass flows in
kg/s, powers in kW, thrust in kN.
"""

import logging
import math
from typing import Optional, Tuple

from app.domain.entities.atmosphere import AmbientState, InletState
from app.domain.entities.cycle_solution import CycleSolution
from app.domain.entities.engine import (
    EngineSpec,
    FlightCondition,
    NozzleExit,
    PowerLedger,
    StationId,
    StationState,
    StationTable,
)
from app.domain.entities.gas import Fuel, GasProperties
from app.domain.entities.performance import EmissionInputs
from app.domain.exceptions import InfeasibleCycleError, InvalidRatioError, OutOfRangeError
from app.domain.services import exergy, performance
from app.domain.services.gasmodel import (
    SEA_LEVEL_PRESSURE,
    SEA_LEVEL_TEMPERATURE,
    air_density,
    apply_inlet_cooling,
    isa_ambient,
)

logger = logging.getLogger(__name__)

# Static sea-level ISA density the design mass flow refers to
REFERENCE_DENSITY = air_density(SEA_LEVEL_TEMPERATURE, SEA_LEVEL_PRESSURE)


def diffuser(inlet: InletState, mach: float, gas: GasProperties, mdot: float = 0.0) -> StationState:
    """Ideal diffuser: full stagnation recovery at the engine-face Mach number"""
    if mach < 0:
        raise OutOfRangeError(f"Mach number must be non-negative, got {mach}")
    T2 = inlet.T1 * (1.0 + 0.5 * (gas.k - 1.0) * mach ** 2)
    P2 = inlet.P1 * (T2 / inlet.T1) ** (gas.k / (gas.k - 1.0))
    return StationState(station=StationId.DIFFUSER_EXIT, T=T2, P=P2, mdot=mdot)


def compress(
    state_in: StationState,
    pi: float,
    eta: float,
    gas: GasProperties,
    station: StationId,
    mdot: Optional[float] = None,
) -> Tuple[StationState, float]:
    """
    Adiabatic compression

    Args:
        state_in: Upstream station
        pi: Pressure ratio (>= 1)
        eta: Isentropic efficiency
        gas: Gas properties
        station: Id of the exit station
        mdot: Mass flow through the component; upstream flow when None

    Returns:
        (exit state, specific work J/kg)
    """
    if pi < 1.0:
        raise InvalidRatioError(f"pressure ratio {pi} below 1 at station {station.label}")
    if not 0.0 < eta <= 1.0:
        raise OutOfRangeError(f"efficiency {eta} outside (0, 1]")
    T_out = state_in.T + state_in.T / eta * (pi ** gas.isentropic_exponent - 1.0)
    work = gas.cp * (T_out - state_in.T)
    flow = state_in.mdot if mdot is None else mdot
    return StationState(station=station, T=T_out, P=state_in.P * pi, mdot=flow), work


def split_flow(m_total: float, alpha: float) -> Tuple[float, float]:
    """(core, bypass) mass flows for bypass ratio alpha"""
    if alpha <= 0:
        raise InvalidRatioError(f"bypass ratio must be positive, got {alpha}")
    m_hot = m_total / (alpha + 1.0)
    return m_hot, m_total - m_hot


def combustor(
    state_in: StationState,
    TIT: float,
    fuel: Fuel,
    eta_cc: float,
    drop_frac: float,
    cp_avg: float,
) -> Tuple[StationState, float, float]:
    """
    Heat addition up to the turbine inlet temperature

    TIT equal to T4 is the zero-heat boundary.

    Returns:
        (combustor exit state, fuel flow kg/s, heat rate kW)

    Raises:
        InfeasibleCycleError: TIT below the compressor delivery temperature
    """
    if TIT < state_in.T:
        raise InfeasibleCycleError(
            f"TIT {TIT:.1f} K below compressor delivery temperature {state_in.T:.1f} K",
            station=StationId.COMBUSTOR_EXIT,
        )
    heat_rate = state_in.mdot * cp_avg * (TIT - state_in.T) / 1000.0
    fuel_flow = heat_rate / (fuel.FHV * 1000.0 * eta_cc)
    state_out = StationState(
        station=StationId.COMBUSTOR_EXIT,
        T=TIT,
        P=state_in.P * (1.0 - drop_frac),
        mdot=state_in.mdot + fuel_flow,
    )
    return state_out, fuel_flow, heat_rate


def turbine_expand_to_power(
    state_in: StationState,
    required_power: float,
    eta: float,
    gas: GasProperties,
    station: StationId,
) -> StationState:
    """
    Expand until the turbine delivers the required shaft power (kW)

    Raises:
        InfeasibleCycleError: over-extraction or a non-positive pressure bracket
    """
    if required_power < 0:
        raise OutOfRangeError(f"required power must be non-negative, got {required_power}")
    if required_power == 0:
        return StationState(station=station, T=state_in.T, P=state_in.P, mdot=state_in.mdot)

    available = state_in.mdot * gas.cp * state_in.T / 1000.0
    if required_power >= available:
        raise InfeasibleCycleError(
            f"turbine asked for {required_power:.0f} kW but the flow carries only {available:.0f} kW",
            station=station,
        )
    T_out = state_in.T - required_power * 1000.0 / (state_in.mdot * gas.cp)
    bracket = 1.0 - (1.0 / eta) * (1.0 - T_out / state_in.T)
    if bracket <= 0:
        raise InfeasibleCycleError(
            f"turbine expansion bracket {bracket:.4f} is not positive (efficiency {eta})",
            station=station,
        )
    P_out = state_in.P * bracket ** (gas.k / (gas.k - 1.0))
    return StationState(station=station, T=T_out, P=P_out, mdot=state_in.mdot)


def critical_pressure_ratio(eta: float, gas: GasProperties) -> float:
    """Nozzle pressure ratio P/Pa at which a convergent nozzle chokes"""
    base = 1.0 - (1.0 / eta) * (gas.k - 1.0) / (gas.k + 1.0)
    return base ** (-gas.k / (gas.k - 1.0))


def nozzle(
    state_in: StationState,
    eta: float,
    gas: GasProperties,
    ambient_P: float,
    station: StationId = StationId.HOT_NOZZLE_EXIT,
) -> NozzleExit:
    """
    Convergent nozzle with choking check

    Raises:
        InfeasibleCycleError: upstream pressure below ambient
    """
    if state_in.P < ambient_P:
        raise InfeasibleCycleError(
            f"nozzle supply pressure {state_in.P:.3f} kPa below ambient {ambient_P:.3f} kPa",
            station=station,
        )
    pr_crit = critical_pressure_ratio(eta, gas)
    if state_in.P / ambient_P < pr_crit:
        choked = False
        P_exit = ambient_P
        drop = 1.0 - (ambient_P / state_in.P) ** gas.isentropic_exponent
        velocity = math.sqrt(2.0 * eta * gas.k / (gas.k - 1.0) * gas.R * state_in.T * drop)
        T_exit = state_in.T - velocity ** 2 / (2.0 * gas.cp)
    else:
        choked = True
        P_exit = state_in.P / pr_crit
        T_exit = 2.0 * state_in.T / (gas.k + 1.0)
        velocity = math.sqrt(gas.k * gas.R * T_exit)

    if velocity > 0:
        density = P_exit * 1000.0 / (gas.R * T_exit)
        area = state_in.mdot / (density * velocity)
    else:
        area = 0.0 if state_in.mdot == 0 else math.inf
    return NozzleExit(
        velocity=velocity,
        exit_pressure=P_exit,
        exit_temperature=T_exit,
        exit_area=area,
        choked=choked,
        mdot=state_in.mdot,
    )


def _pressure_thrust(exit_: NozzleExit, ambient_P: float) -> float:
    if exit_.exit_pressure == ambient_P:
        return 0.0
    return exit_.exit_area * (exit_.exit_pressure - ambient_P)


def thrust(
    hot: NozzleExit,
    cold: NozzleExit,
    m_hot: float,
    m_cold: float,
    m_fuel: float,
    V0: float,
    ambient_P: float,
) -> Tuple[float, float, float]:
    """(hot, cold, total) thrust in kN, momentum plus pressure terms"""
    f_hot = ((m_hot + m_fuel) * hot.velocity - m_hot * V0) / 1000.0 + _pressure_thrust(hot, ambient_P)
    f_cold = (m_cold * cold.velocity - m_cold * V0) / 1000.0 + _pressure_thrust(cold, ambient_P)
    return f_hot, f_cold, f_hot + f_cold


def flight_speed(mach: float, T0: float, gas: GasProperties) -> float:
    """V0 = Ma * a(T0), the speed of sound of the undisturbed ambient air"""
    return mach * math.sqrt(gas.k * gas.R * T0)


def inlet_mach(V0: float, T1: float, gas: GasProperties) -> float:
    """Mach number of the intake stream at the (cooled) engine face"""
    return V0 / math.sqrt(gas.k * gas.R * T1)


def intake_mass_flow(spec: EngineSpec, inlet: InletState) -> float:
    """Design mass flow scaled by the post-cooling inlet density"""
    return spec.design_mass_flow * air_density(inlet.T1, inlet.P1) / REFERENCE_DENSITY


def _exit_station(station: StationId, exit_: NozzleExit) -> StationState:
    return StationState(station=station, T=exit_.exit_temperature, P=exit_.exit_pressure, mdot=exit_.mdot)


def run_cycle(spec: EngineSpec, cond: FlightCondition, fuel: Fuel) -> CycleSolution:
    """
    Full design-point cycle

    Args:
        spec: Engine specification
        cond: Flight condition incl. inlet temperature change
        fuel: Fuel burned in the combustor

    Returns:
        CycleSolution with stations, power ledger and performance

    Raises:
        InfeasibleCycleError: with the failing station attached
    """
    gases = spec.gas_props
    ambient: AmbientState = isa_ambient(cond.altitude)

    # Mass flow follows the density of the cooled intake air
    face = InletState(T1=ambient.T0 + cond.delta_T, P1=ambient.P0, delta_T=cond.delta_T)
    m_total = intake_mass_flow(spec, face)

    inlet = apply_inlet_cooling(ambient, cond.delta_T, m_total, spec.chiller_cop, gases.diffuser.cp)
    offtake = spec.aux_offtake + inlet.chiller_power(spec.chiller_cop)
    # Flight speed is set by the ambient air; cooling changes only the local Mach number
    V0 = flight_speed(cond.mach, ambient.T0, gases.diffuser)

    try:
        s0 = StationState(station=StationId.AMBIENT, T=ambient.T0, P=ambient.P0, mdot=m_total)
        s1 = StationState(station=StationId.INLET, T=inlet.T1, P=inlet.P1, mdot=m_total)
        s2 = diffuser(inlet, inlet_mach(V0, inlet.T1, gases.diffuser), gases.diffuser, mdot=m_total)

        s31, w_fan_specific = compress(s2, spec.pi_fan, spec.eta_fan, gases.fan, StationId.FAN_EXIT)
        m_hot, m_cold = split_flow(m_total, spec.alpha)
        s32, w_lpc_specific = compress(s31, spec.pi_lpc, spec.eta_lpc, gases.lpc, StationId.LPC_EXIT, mdot=m_hot)
        s4, w_hpc_specific = compress(s32, spec.pi_hpc, spec.eta_hpc, gases.hpc, StationId.HPC_EXIT)

        w_fan = m_total * w_fan_specific / 1000.0
        w_lpc = m_hot * w_lpc_specific / 1000.0
        w_hpc = m_hot * w_hpc_specific / 1000.0

        s5, fuel_flow, heat_rate = combustor(
            s4, spec.TIT, fuel, spec.eta_combustor, spec.combustor_pressure_drop_frac, gases.combustor.cp
        )
        s6 = turbine_expand_to_power(s5, w_hpc + offtake, spec.eta_hpt, gases.hpt, StationId.HPT_EXIT)
        s7 = turbine_expand_to_power(s6, w_fan + w_lpc, spec.eta_lpt, gases.lpt, StationId.LPT_EXIT)

        hot_exit = nozzle(s7, spec.eta_nozzle_hot, gases.hot_nozzle, ambient.P0, StationId.HOT_NOZZLE_EXIT)
        cold_in = StationState(station=StationId.FAN_EXIT, T=s31.T, P=s31.P, mdot=m_cold)
        cold_exit = nozzle(cold_in, spec.eta_nozzle_cold, gases.cold_nozzle, ambient.P0, StationId.COLD_NOZZLE_EXIT)
    except InfeasibleCycleError as e:
        logger.debug(f"Infeasible cycle for {spec.name} at {cond}: {e}")
        raise

    f_hot, f_cold, f_total = thrust(hot_exit, cold_exit, m_hot, m_cold, fuel_flow, V0, ambient.P0)

    stations = StationTable(stations=(
        s0, s1, s2, s31, s32, s4, s5, s6, s7,
        _exit_station(StationId.HOT_NOZZLE_EXIT, hot_exit),
        _exit_station(StationId.COLD_NOZZLE_EXIT, cold_exit),
    ))
    ledger = PowerLedger(
        w_fan=w_fan, w_lpc=w_lpc, w_hpc=w_hpc,
        w_hpt=w_hpc + offtake, w_lpt=w_fan + w_lpc, w_offtake=offtake,
    )

    fuel_exergy = exergy.fuel_exergy_rate(fuel_flow, fuel)
    perf = performance.evaluate_performance(
        thrust_kN=f_total,
        fuel_flow=fuel_flow,
        fuel=fuel,
        m_hot=m_hot,
        m_cold=m_cold,
        hot_velocity=hot_exit.velocity,
        cold_velocity=cold_exit.velocity,
        V0=V0,
        emission=EmissionInputs(P4=s4.P, T4=s4.T, war=spec.war),
        eta_exergetic=exergy.engine_exergetic_efficiency(f_total, V0, fuel_exergy),
        offtake=offtake,
    )
    return CycleSolution(
        spec=spec,
        condition=cond,
        fuel=fuel,
        ambient=ambient,
        inlet=inlet,
        stations=stations,
        ledger=ledger,
        hot_nozzle=hot_exit,
        cold_nozzle=cold_exit,
        m_hot=m_hot,
        m_cold=m_cold,
        fuel_flow=fuel_flow,
        heat_rate=heat_rate,
        flight_speed=V0,
        thrust_hot=f_hot,
        thrust_cold=f_cold,
        performance=perf,
    )

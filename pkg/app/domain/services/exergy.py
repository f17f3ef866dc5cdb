"""
Exergy Audit

Physical flow exergy referenced to the ambient dead state, component
exergetic efficiencies and destruction rates, and entropy generation.
"""

import logging
import math
from typing import List, Optional, Tuple

from app.domain.entities.atmosphere import AmbientState
from app.domain.entities.engine import GasPropertySet, PowerLedger, StationId, StationState, StationTable
from app.domain.entities.exergy import ComponentExergyRecord, ExergyComponent, ExergyReport, FlowExergy
from app.domain.entities.gas import Fuel, GasProperties
from app.domain.exceptions import UndefinedMetricError

logger = logging.getLogger(__name__)


def specific_flow_exergy(T: float, P: float, ambient: AmbientState, gas: GasProperties) -> float:
    """Ideal-gas flow exergy (J/kg), (h - h0) - T0 (s - s0)"""
    T0, P0 = ambient.T0, ambient.P0
    return gas.cp * (T - T0) - T0 * (gas.cp * math.log(T / T0) - gas.R * math.log(P / P0))


def physical_exergy(station: StationState, ambient: AmbientState, gas: GasProperties) -> FlowExergy:
    specific = specific_flow_exergy(station.T, station.P, ambient, gas)
    return FlowExergy(station=station.station, specific=specific, rate=station.mdot * specific / 1000.0)


def fuel_exergy_rate(fuel_flow: float, fuel: Fuel) -> float:
    """Chemical exergy supplied with the fuel (kW)"""
    if fuel_flow < 0:
        raise UndefinedMetricError(f"negative fuel flow {fuel_flow}")
    return fuel_flow * fuel.chem_exergy * 1000.0


def engine_exergetic_efficiency(thrust_kN: float, V0: float, fuel_exergy: float) -> float:
    """Thrust power over fuel exergy; zero at V0 = 0"""
    if V0 == 0:
        return 0.0
    if fuel_exergy <= 0:
        raise UndefinedMetricError("exergetic efficiency undefined without fuel exergy")
    return thrust_kN * V0 / fuel_exergy


def _compressor_record(component: ExergyComponent, work: float, psi_in: float, psi_out: float) -> ComponentExergyRecord:
    gain = psi_out - psi_in
    return ComponentExergyRecord(
        component=component,
        eta_ex=gain / work if work > 0 else None,
        destruction=work + psi_in - psi_out,
    )


def _turbine_record(component: ExergyComponent, work: float, psi_in: float, psi_out: float) -> ComponentExergyRecord:
    drop = psi_in - psi_out
    return ComponentExergyRecord(
        component=component,
        eta_ex=work / drop if drop > 0 else None,
        destruction=drop - work,
    )


def component_exergy_audit(
    stations: StationTable,
    ledger: PowerLedger,
    fuel_exergy: float,
    ambient: AmbientState,
    gas_props: GasPropertySet,
    verbatim_combustor: bool = False,
) -> List[ComponentExergyRecord]:
    """
    Exergy accounts of fan, LPC, HPC, combustor, HPT and LPT

    Args:
        stations: Complete station table
        ledger: Shaft powers
        fuel_exergy: Fuel chemical exergy rate (kW)
        ambient: Dead state
        gas_props: Gas per component
        verbatim_combustor: Use (inlet - fuel) exergy as the combustor
            efficiency denominator instead of (inlet + fuel)

    Returns:
        Six records in gas-path order
    """
    table = stations.as_dict()
    m_hot = table[StationId.LPC_EXIT].mdot

    def rate(station: StationId, mdot: Optional[float] = None) -> float:
        state = table[station]
        specific = specific_flow_exergy(state.T, state.P, ambient, gas_props.for_station(station))
        return (state.mdot if mdot is None else mdot) * specific / 1000.0

    psi2 = rate(StationId.DIFFUSER_EXIT)
    psi31 = rate(StationId.FAN_EXIT)
    psi31_core = rate(StationId.FAN_EXIT, m_hot)
    psi32 = rate(StationId.LPC_EXIT)
    psi4 = rate(StationId.HPC_EXIT)
    psi5 = rate(StationId.COMBUSTOR_EXIT)
    psi6 = rate(StationId.HPT_EXIT)
    psi7 = rate(StationId.LPT_EXIT)

    if verbatim_combustor:
        logger.warning("Combustor exergetic efficiency uses the (inlet - fuel) denominator")
        denominator = psi4 - fuel_exergy
    else:
        denominator = psi4 + fuel_exergy
    combustor = ComponentExergyRecord(
        component=ExergyComponent.COMBUSTOR,
        eta_ex=psi5 / denominator if denominator > 0 else None,
        destruction=psi4 + fuel_exergy - psi5,
    )

    return [
        _compressor_record(ExergyComponent.FAN, ledger.w_fan, psi2, psi31),
        _compressor_record(ExergyComponent.LPC, ledger.w_lpc, psi31_core, psi32),
        _compressor_record(ExergyComponent.HPC, ledger.w_hpc, psi32, psi4),
        combustor,
        _turbine_record(ExergyComponent.HPT, ledger.w_hpt, psi5, psi6),
        _turbine_record(ExergyComponent.LPT, ledger.w_lpt, psi6, psi7),
    ]


def entropy_rise(state_in: StationState, state_out: StationState, gas: GasProperties) -> float:
    """Specific entropy change s_out - s_in of an ideal gas (J/kgK)"""
    return gas.cp * math.log(state_out.T / state_in.T) - gas.R * math.log(state_out.P / state_in.P)


def jet_exergy(exit_state: StationState, velocity: float, ambient: AmbientState, gas: GasProperties) -> float:
    """Flow plus kinetic exergy carried by a jet, in the engine frame (kW)"""
    specific = specific_flow_exergy(exit_state.T, exit_state.P, ambient, gas) + 0.5 * velocity ** 2
    return exit_state.mdot * specific / 1000.0


def nozzle_record(
    component: ExergyComponent,
    supply: StationState,
    exit_state: StationState,
    velocity: float,
    ambient: AmbientState,
    gas: GasProperties,
) -> Tuple[ComponentExergyRecord, float]:
    """
    Exergy account of an adiabatic nozzle

    Destruction is T0 times the entropy generated between supply and exit,
    so it does not depend on the exergy balance it is later checked against.

    Returns:
        (record, jet exergy rate kW)
    """
    jet = jet_exergy(exit_state, velocity, ambient, gas)
    supplied = supply.mdot * specific_flow_exergy(supply.T, supply.P, ambient, gas) / 1000.0
    destruction = ambient.T0 * supply.mdot * entropy_rise(supply, exit_state, gas) / 1000.0
    record = ComponentExergyRecord(
        component=component,
        eta_ex=jet / supplied if supplied > 0 else None,
        destruction=destruction,
    )
    return record, jet


def entropy_generation(records: List[ComponentExergyRecord], exhaust_residual: float, T0: float) -> float:
    """Total destruction over the dead-state temperature (kW/K)"""
    if T0 <= 0:
        raise UndefinedMetricError(f"dead-state temperature must be positive, got {T0}")
    destroyed = sum(r.destruction for r in records if r.component != ExergyComponent.EXHAUST)
    return (destroyed + exhaust_residual) / T0


def audit_cycle(solution, verbatim_combustor: bool = False) -> ExergyReport:
    """
    Exergy report of a CycleSolution

    Both jets are valued at their nozzle exit states (stations 8 and 9) with
    their kinetic exergy; what thrust power does not recover is booked on the
    exhaust pseudo-component.
    """
    ambient = solution.ambient
    gases = solution.spec.gas_props
    stations = solution.stations
    table = stations.as_dict()

    flows = tuple(
        physical_exergy(state, ambient, gases.for_station(state.station))
        for state in stations.stations
    )
    fuel_exergy = fuel_exergy_rate(solution.fuel_flow, solution.fuel)
    records = component_exergy_audit(
        stations, solution.ledger, fuel_exergy, ambient, gases, verbatim_combustor=verbatim_combustor
    )

    fan_exit = table[StationId.FAN_EXIT]
    bypass_supply = fan_exit.model_copy(update={"mdot": solution.m_cold})
    hot, hot_jet = nozzle_record(
        ExergyComponent.HOT_NOZZLE, table[StationId.LPT_EXIT], table[StationId.HOT_NOZZLE_EXIT],
        solution.hot_nozzle.velocity, ambient, gases.hot_nozzle,
    )
    cold, cold_jet = nozzle_record(
        ExergyComponent.COLD_NOZZLE, bypass_supply, table[StationId.COLD_NOZZLE_EXIT],
        solution.cold_nozzle.velocity, ambient, gases.cold_nozzle,
    )
    records += [hot, cold]

    V0 = solution.flight_speed
    thrust_power = solution.performance.thrust * V0
    jets = hot_jet + cold_jet
    residual = jets - thrust_power
    records.append(ComponentExergyRecord(
        component=ExergyComponent.EXHAUST,
        eta_ex=thrust_power / jets if jets > 0 else None,
        destruction=residual,
    ))

    inlet = table[StationId.INLET]
    intake_specific = specific_flow_exergy(inlet.T, inlet.P, ambient, gases.diffuser) + 0.5 * V0 ** 2
    total = sum(r.destruction for r in records)
    report = ExergyReport(
        flows=flows,
        per_component=tuple(records),
        fuel_exergy_rate=fuel_exergy,
        intake_exergy_rate=inlet.mdot * intake_specific / 1000.0,
        useful_power=thrust_power,
        jet_exergy_rate=jets,
        offtake=solution.ledger.w_offtake,
        exhaust_residual=residual,
        total_destruction=total,
        entropy_generation=entropy_generation(records, residual, ambient.T0),
        engine_eta_ex=engine_exergetic_efficiency(solution.performance.thrust, V0, fuel_exergy),
        dead_state_temperature=ambient.T0,
    )
    if report.balance_error() > 0.005:
        cond = solution.condition
        logger.warning(f"Exergy balance of {solution.fuel.name} at Ma {cond.mach}, delta_T {cond.delta_T} K "
                       f"is open by {report.balance_error():.2%}")
    return report

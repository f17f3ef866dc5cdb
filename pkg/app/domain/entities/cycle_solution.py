"""
Cycle Solution

Everything a design-point cycle run produces, kept together so the exergy
audit and the reports can work from one immutable record.
"""

from pydantic import BaseModel

from app.domain.entities.atmosphere import AmbientState, InletState
from app.domain.entities.engine import (
    EngineSpec,
    FlightCondition,
    NozzleExit,
    PowerLedger,
    StationTable,
)
from app.domain.entities.gas import Fuel
from app.domain.entities.performance import CyclePerformance


class CycleSolution(BaseModel):
    """
    Result of run_cycle

    Attributes:
        stations: Station table 0..9
        ledger: Shaft powers (kW)
        performance: Scalar performance
        m_hot, m_cold: Core and bypass mass flows (kg/s)
        fuel_flow: kg/s
        heat_rate: Combustor heat addition (kW)
        flight_speed: V0 (m/s)
        thrust_hot, thrust_cold: Stream thrusts (kN)
    """
    spec: EngineSpec
    condition: FlightCondition
    fuel: Fuel
    ambient: AmbientState
    inlet: InletState
    stations: StationTable
    ledger: PowerLedger
    hot_nozzle: NozzleExit
    cold_nozzle: NozzleExit
    m_hot: float
    m_cold: float
    fuel_flow: float
    heat_rate: float
    flight_speed: float
    thrust_hot: float
    thrust_cold: float
    performance: CyclePerformance

    model_config = {"frozen": True}

    @property
    def intake_mass_flow(self) -> float:
        return self.m_hot + self.m_cold

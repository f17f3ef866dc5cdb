"""
Exergy Audit Entities

Flow exergy per station, per-component exergetic efficiency and destruction,
and the engine-level exergy report.
"""

from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from app.domain.entities.engine import StationId


class ExergyComponent(str, Enum):
    """Components carrying an exergy account"""
    FAN = "fan"
    LPC = "lpc"
    HPC = "hpc"
    COMBUSTOR = "combustor"
    HPT = "hpt"
    LPT = "lpt"
    HOT_NOZZLE = "hot_nozzle"
    COLD_NOZZLE = "cold_nozzle"
    EXHAUST = "exhaust"  # jet exergy beyond thrust power


class FlowExergy(BaseModel):
    """Physical exergy of the flow at a station"""
    station: StationId
    specific: float = Field(..., description="J/kg")
    rate: float = Field(..., description="kW")

    model_config = {"frozen": True}


class ComponentExergyRecord(BaseModel):
    """
    Exergy account of one component

    eta_ex is None when the defining ratio has a zero denominator.
    """
    component: ExergyComponent
    eta_ex: Optional[float] = None
    destruction: float = Field(..., description="kW")

    model_config = {"frozen": True}


class ExergyReport(BaseModel):
    """
    Engine exergy audit

    Attributes:
        flows: Physical exergy per station
        per_component: Component records, the exhaust pseudo-component last
        fuel_exergy_rate: Chemical exergy of the fuel (kW)
        intake_exergy_rate: Exergy of the intake stream incl. ram kinetic exergy (kW)
        useful_power: Thrust power F*V0 (kW)
        jet_exergy_rate: Flow plus kinetic exergy of both jets at stations 8 and 9 (kW)
        offtake: Shaft off-take leaving the engine (kW)
        exhaust_residual: jet_exergy_rate - useful_power (kW)
        total_destruction: Sum of all component destructions incl. exhaust (kW)
        entropy_generation: total_destruction / T0 (kW/K)
        engine_eta_ex: F*V0 / fuel exergy
        dead_state_temperature: T0 (K)
    """
    flows: Tuple[FlowExergy, ...]
    per_component: Tuple[ComponentExergyRecord, ...]
    fuel_exergy_rate: float = Field(..., ge=0)
    intake_exergy_rate: float
    useful_power: float
    jet_exergy_rate: float
    offtake: float = Field(..., ge=0)
    exhaust_residual: float
    total_destruction: float
    entropy_generation: float
    engine_eta_ex: float
    dead_state_temperature: float = Field(..., gt=0)

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def check_totals(self):
        total = sum(record.destruction for record in self.per_component)
        if abs(total - self.total_destruction) > 1e-9 * max(abs(total), 1.0):
            raise ValueError("total_destruction must equal the sum of component destructions")
        residual = self.jet_exergy_rate - self.useful_power
        if abs(self.exhaust_residual - residual) > 1e-9 * max(abs(self.jet_exergy_rate), 1.0):
            raise ValueError("exhaust_residual must equal jet exergy minus thrust power")
        expected = self.total_destruction / self.dead_state_temperature
        if abs(self.entropy_generation - expected) > 1e-9 * max(abs(expected), 1e-12):
            raise ValueError("entropy_generation must equal total_destruction / T0")
        return self

    def component(self, component: ExergyComponent) -> ComponentExergyRecord:
        for record in self.per_component:
            if record.component == component:
                return record
        raise KeyError(f"no exergy record for {component}")

    def flow(self, station: StationId) -> FlowExergy:
        for flow in self.flows:
            if flow.station == station:
                return flow
        raise KeyError(f"no flow exergy for station {station}")

    def largest_destruction(self) -> ComponentExergyRecord:
        """Largest destruction among real components (exhaust excluded)"""
        components = [r for r in self.per_component if r.component != ExergyComponent.EXHAUST]
        return max(components, key=lambda r: r.destruction)

    def balance_error(self) -> float:
        """
        Relative closure of the engine exergy balance

        Destructions of the turbomachinery and combustor come from exergy
        balances, nozzle destructions from entropy rise and the jets from
        their exit states, so the balance only closes when the diffuser ram
        rise and the nozzle expansions conserve energy at the flight speed.

        Returns:
            |inputs - outputs| / inputs, with inputs = fuel + intake exergy and
            outputs = thrust power + off-take + total destruction
        """
        inputs = self.fuel_exergy_rate + self.intake_exergy_rate
        outputs = self.useful_power + self.offtake + self.total_destruction
        if inputs == 0:
            return abs(outputs)
        return abs(inputs - outputs) / abs(inputs)

    def to_rows(self) -> List[dict]:
        """Rows for the component exergy CSV export"""
        return [
            {"component": r.component.value, "eta_ex": r.eta_ex, "E_D_kW": r.destruction}
            for r in self.per_component
        ]

    def summary(self) -> dict:
        """Flat scalars, used by sweep rows and optimization results"""
        row = {
            "fuel_exergy_rate": self.fuel_exergy_rate,
            "intake_exergy_rate": self.intake_exergy_rate,
            "jet_exergy_rate": self.jet_exergy_rate,
            "exhaust_residual": self.exhaust_residual,
            "total_destruction": self.total_destruction,
            "entropy_generation": self.entropy_generation,
            "engine_eta_ex": self.engine_eta_ex,
        }
        for record in self.per_component:
            row[f"eta_ex_{record.component.value}"] = record.eta_ex
            row[f"E_D_{record.component.value}"] = record.destruction
        return row

"""
Engine Domain Entities

Engine specification, flight condition and the station/power records produced
by a design-point cycle calculation.
"""

import math
from enum import IntEnum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from app.domain.entities.gas import GasProperties


class StationId(IntEnum):
    """Gas-path station numbering"""
    AMBIENT = 0
    INLET = 1
    DIFFUSER_EXIT = 2
    FAN_EXIT = 31
    LPC_EXIT = 32
    HPC_EXIT = 4
    COMBUSTOR_EXIT = 5
    HPT_EXIT = 6
    LPT_EXIT = 7
    HOT_NOZZLE_EXIT = 8
    COLD_NOZZLE_EXIT = 9

    @property
    def label(self) -> str:
        return f"{self.value} ({self.name.lower()})"


COLD_GAS = GasProperties(cp=1005.0, k=1.40)
HOT_GAS = GasProperties(cp=1148.0, k=1.33)
COMBUSTOR_GAS = GasProperties(cp=1250.0, k=1.33)


class GasPropertySet(BaseModel):
    """
    Gas properties per component

    The shorthand keys ``cold`` and ``hot`` set every cold-stream component
    (diffuser, fan, compressors, cold nozzle) or every hot-stream component
    (turbines, hot nozzle) at once; explicit component keys win.
    """
    diffuser: GasProperties = COLD_GAS
    fan: GasProperties = COLD_GAS
    lpc: GasProperties = COLD_GAS
    hpc: GasProperties = COLD_GAS
    combustor: GasProperties = COMBUSTOR_GAS  # only cp (C_avcc) is used
    hpt: GasProperties = HOT_GAS
    lpt: GasProperties = HOT_GAS
    hot_nozzle: GasProperties = HOT_GAS
    cold_nozzle: GasProperties = COLD_GAS

    model_config = {"frozen": True, "extra": "forbid"}

    @model_validator(mode="before")
    @classmethod
    def expand_shorthand(cls, data):
        if not isinstance(data, dict):
            return data
        data = dict(data)
        cold = data.pop("cold", None)
        hot = data.pop("hot", None)
        if cold is not None:
            for key in ("diffuser", "fan", "lpc", "hpc", "cold_nozzle"):
                data.setdefault(key, cold)
        if hot is not None:
            for key in ("hpt", "lpt", "hot_nozzle"):
                data.setdefault(key, hot)
        return data

    def for_station(self, station: StationId) -> GasProperties:
        """Gas used to evaluate the flow state at a station"""
        return {
            StationId.AMBIENT: self.diffuser,
            StationId.INLET: self.diffuser,
            StationId.DIFFUSER_EXIT: self.diffuser,
            StationId.FAN_EXIT: self.fan,
            StationId.LPC_EXIT: self.lpc,
            StationId.HPC_EXIT: self.hpc,
            StationId.COMBUSTOR_EXIT: self.hpt,
            StationId.HPT_EXIT: self.hpt,
            StationId.LPT_EXIT: self.lpt,
            StationId.HOT_NOZZLE_EXIT: self.hot_nozzle,
            StationId.COLD_NOZZLE_EXIT: self.cold_nozzle,
        }[station]


class FlightCondition(BaseModel):
    """Flight Mach number, altitude (m) and inlet-cooling temperature change (K)"""
    mach: float = Field(..., ge=0)
    altitude: float = Field(..., ge=0, le=11000)
    delta_T: float = 0.0
    name: Optional[str] = None

    model_config = {"frozen": True}

    def with_delta_T(self, delta_T: float) -> "FlightCondition":
        return FlightCondition(mach=self.mach, altitude=self.altitude, delta_T=delta_T, name=self.name)


class EngineSpec(BaseModel):
    """
    Separate-flow turbofan design-point specification

    Attributes:
        TIT: Turbine inlet temperature T5 (K)
        pi_fan, pi_lpc, pi_hpc: Pressure ratios
        alpha: Bypass ratio (cold/hot mass flow)
        design_mass_flow: Intake mass flow at the reference condition (kg/s)
        eta_*: Isentropic, nozzle and combustion efficiencies
        combustor_pressure_drop_frac: Total-pressure loss as a fraction of P4
        aux_offtake: Auxiliary shaft off-take charged to the HPT (kW)
        chiller_cop: Coefficient of performance of the inlet chiller
        war: Liquid water to air ratio used by the NOx severity index
        gas_props: Gas properties per component
    """
    name: str = "GENX-1B70"
    TIT: float = Field(1695.0, gt=400)
    pi_fan: float = Field(1.5, ge=1)
    pi_lpc: float = Field(1.3, ge=1)
    pi_hpc: float = Field(23.0, ge=1)
    alpha: float = Field(9.1, gt=0)
    design_mass_flow: float = Field(1155.43, gt=0)
    eta_fan: float = Field(0.91, gt=0, le=1)
    eta_lpc: float = Field(0.91, gt=0, le=1)
    eta_hpc: float = Field(0.91, gt=0, le=1)
    eta_hpt: float = Field(0.88, gt=0, le=1)
    eta_lpt: float = Field(0.88, gt=0, le=1)
    eta_nozzle_hot: float = Field(0.90, gt=0, le=1)
    eta_nozzle_cold: float = Field(0.90, gt=0, le=1)
    eta_combustor: float = Field(0.99, gt=0, le=1)
    combustor_pressure_drop_frac: float = Field(0.05, ge=0, le=0.1)
    aux_offtake: float = Field(50.0, ge=0)
    chiller_cop: float = Field(6.0, gt=0)
    war: float = Field(0.0, ge=0)
    gas_props: GasPropertySet = GasPropertySet()

    model_config = {"frozen": True}

    @property
    def pi_compressor(self) -> float:
        """Overall core compression pi_LPC * pi_HPC"""
        return self.pi_lpc * self.pi_hpc

    def with_design(self, TIT: float, pi_fan: float, pi_compressor: float, alpha: float) -> "EngineSpec":
        """
        Copy of this spec with new design variables

        The core pressure ratio is split between LPC and HPC in the same
        logarithmic proportion as this spec.

        Args:
            TIT: Turbine inlet temperature (K)
            pi_fan: Fan pressure ratio
            pi_compressor: Overall core pressure ratio
            alpha: Bypass ratio

        Returns:
            A validated EngineSpec
        """
        baseline = self.pi_compressor
        if baseline > 1.0 and pi_compressor >= 1.0:
            share = math.log(self.pi_lpc) / math.log(baseline)
            pi_lpc = pi_compressor ** share
        else:
            pi_lpc = 1.0
        pi_hpc = pi_compressor / pi_lpc
        values = dict(self)
        values.update(TIT=TIT, pi_fan=pi_fan, pi_lpc=pi_lpc, pi_hpc=pi_hpc, alpha=alpha)
        return EngineSpec(**values)


class StationState(BaseModel):
    """Total temperature (K), pressure (kPa) and mass flow (kg/s) at a station"""
    station: StationId
    T: float = Field(..., gt=0)
    P: float = Field(..., gt=0)
    mdot: float = Field(..., ge=0)

    model_config = {"frozen": True}


class StationTable(BaseModel):
    """Ordered station states of one cycle"""
    stations: Tuple[StationState, ...]

    model_config = {"frozen": True}

    def as_dict(self) -> Dict[StationId, StationState]:
        return {state.station: state for state in self.stations}

    def to_rows(self) -> List[dict]:
        """Rows for the station CSV export"""
        return [
            {
                "station": int(state.station),
                "T_K": state.T,
                "P_kPa": state.P,
                "mdot_kgps": state.mdot,
            }
            for state in self.stations
        ]


def _close(a: float, b: float, rel: float = 1e-6) -> bool:
    return abs(a - b) <= rel * max(abs(a), abs(b), 1e-9)


class PowerLedger(BaseModel):
    """Shaft powers of every spool component (kW)"""
    w_fan: float = Field(..., ge=0)
    w_lpc: float = Field(..., ge=0)
    w_hpc: float = Field(..., ge=0)
    w_hpt: float = Field(..., ge=0)
    w_lpt: float = Field(..., ge=0)
    w_offtake: float = Field(..., ge=0)

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def check_spool_balance(self):
        if not _close(self.w_hpt, self.w_hpc + self.w_offtake):
            raise ValueError("HP spool does not balance: w_hpt != w_hpc + w_offtake")
        if not _close(self.w_lpt, self.w_fan + self.w_lpc):
            raise ValueError("LP spool does not balance: w_lpt != w_fan + w_lpc")
        return self


class NozzleExit(BaseModel):
    """
    Convergent nozzle exit state

    exit_area is infinite when the jet velocity is zero and mass flows.
    """
    velocity: float = Field(..., ge=0)
    exit_pressure: float = Field(..., gt=0)
    exit_temperature: float = Field(..., gt=0)
    exit_area: float = Field(..., ge=0)
    choked: bool
    mdot: float = Field(0.0, ge=0)

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def check_area(self):
        if self.mdot > 0 and not self.exit_area > 0:
            raise ValueError("exit_area must be positive when mass flows")
        return self

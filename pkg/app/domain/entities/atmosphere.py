"""
Atmosphere Domain Entities

Ambient (ISA) state and the post-chiller engine inlet state.
"""

from pydantic import BaseModel, Field, model_validator

# Gas constant used wherever air density is needed (J/kgK)
R_AIR = 287.05


class AmbientState(BaseModel):
    """
    Ambient static conditions at flight altitude

    Attributes:
        altitude: Geometric altitude (m)
        T0: Static temperature (K)
        P0: Static pressure (kPa)
        rho0: Density (kg/m^3)
    """
    altitude: float
    T0: float = Field(..., gt=0)
    P0: float = Field(..., gt=0)
    rho0: float = Field(..., gt=0)

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def check_ideal_gas(self):
        expected = self.P0 * 1000.0 / (R_AIR * self.T0)
        if abs(self.rho0 - expected) > 1e-9 * expected:
            raise ValueError(f"rho0={self.rho0} inconsistent with ideal gas ({expected})")
        return self


class InletState(BaseModel):
    """
    Engine face state after the inlet-air chiller

    Attributes:
        T1: Inlet static temperature (K)
        P1: Inlet static pressure (kPa), equal to ambient
        delta_T: Temperature change applied by the chiller (K), negative when cooling
        chiller_heat_load: Heat removed from the intake air (kW)
    """
    T1: float = Field(..., gt=0)
    P1: float = Field(..., gt=0)
    delta_T: float
    chiller_heat_load: float = Field(0.0, ge=0)

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def check_heat_load(self):
        if self.delta_T >= 0 and self.chiller_heat_load != 0:
            raise ValueError("chiller_heat_load must be zero when the inlet is not cooled")
        return self

    def chiller_power(self, cop: float) -> float:
        """
        Shaft power the chiller draws from the engine

        Args:
            cop: Chiller coefficient of performance

        Returns:
            Off-take power (kW)
        """
        return self.chiller_heat_load / cop

"""
Cycle Performance Entities
"""

from pydantic import BaseModel, Field, model_validator

# Upper bound of the plausible efficiency range; optimizer designs beyond it
# come from a non-physical corner of the bounds and are scored infeasible
EFFICIENCY_CAP = 1.2


class EmissionInputs(BaseModel):
    """Combustor-inlet conditions driving the NOx severity index"""
    P4: float = Field(..., gt=0, description="kPa")
    T4: float = Field(..., gt=0, description="K")
    war: float = Field(0.0, ge=0, description="liquid water to air ratio")

    model_config = {"frozen": True}


class CyclePerformance(BaseModel):
    """
    Scalar performance of one design-point cycle

    Attributes:
        thrust: Total thrust (kN)
        tsfc: Thrust-specific fuel consumption (g/kNs)
        eta_thermal, eta_propulsive, eta_overall, eta_exergetic: fractions
        tsf: Specific thrust (Ns/kg)
        fuel_flow: kg/s
        snox: NOx severity index
        nox_rate: g/s
        offtake: Shaft off-take (kW)
        intake_mass_flow: kg/s
        flight_speed: m/s

    Efficiencies are not clamped here. within_efficiency_cap() checks them
    against [0, EFFICIENCY_CAP] (1.2), a loose band above 1 that tolerates
    correlation round-off while still catching a broken cycle; the optimizer
    treats any design outside it as infeasible.
    """
    thrust: float
    tsfc: float
    eta_thermal: float
    eta_propulsive: float
    eta_overall: float
    eta_exergetic: float
    tsf: float
    fuel_flow: float = Field(..., ge=0)
    snox: float = Field(..., ge=0)
    nox_rate: float = Field(..., ge=0)
    offtake: float = Field(..., ge=0)
    intake_mass_flow: float = Field(..., ge=0)
    flight_speed: float = Field(..., ge=0)

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def check_identities(self):
        product = self.eta_thermal * self.eta_propulsive
        if abs(self.eta_overall - product) > 1e-12 * max(abs(product), 1.0):
            raise ValueError("eta_overall must equal eta_thermal * eta_propulsive")
        if self.thrust > 0:
            expected = self.fuel_flow * 1000.0 / self.thrust
            if abs(self.tsfc - expected) > 1e-9 * max(expected, 1e-12):
                raise ValueError("tsfc inconsistent with fuel_flow / thrust")
        return self

    def within_efficiency_cap(self, cap: float = EFFICIENCY_CAP) -> bool:
        """True when every efficiency lies in [0, cap]"""
        values = (self.eta_thermal, self.eta_propulsive, self.eta_overall, self.eta_exergetic)
        return all(0.0 <= v <= cap for v in values)

    def metric(self, name: str) -> float:
        """Look up a scalar by field name"""
        if name not in type(self).model_fields:
            raise KeyError(f"unknown performance metric '{name}'")
        return getattr(self, name)

    def to_dict(self) -> dict:
        """Flat record with the field names above"""
        return self.model_dump()

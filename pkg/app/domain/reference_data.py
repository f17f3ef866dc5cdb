"""
Reference Data

Built-in GENX-1B70 engine, flight conditions, fuels, design bounds,
constraint bands, decision weights and the published values the model is
validated against.
"""

from typing import Dict

from app.domain.entities.decision import DecisionMatrix, WeightVector
from app.domain.entities.engine import EngineSpec, FlightCondition
from app.domain.entities.gas import Fuel
from app.domain.entities.optimization import (
    Bounds,
    ConstraintBand,
    ConstraintSet,
    DesignVector,
    ObjectiveCase,
)

# Engine and flight conditions

GENX_1B70 = EngineSpec()

TAKE_OFF = FlightCondition(mach=0.0, altitude=0.0, delta_T=0.0, name="take_off")
ON_DESIGN = FlightCondition(mach=0.85, altitude=10000.0, delta_T=0.0, name="on_design")

FLIGHT_CONDITIONS: Dict[str, FlightCondition] = {
    "take_off": TAKE_OFF,
    "on_design": ON_DESIGN,
}

# Fuels

JP10 = Fuel(name="JP10", c=10, h=16, FHV=42.075, chem_exergy=44.921, molecular_weight=136.0,
            aliases=("jp-10",))
NATURAL_GAS = Fuel(name="natural_gas", c=1, h=4, FHV=49.736, chem_exergy=55.168, molecular_weight=16.0,
                   aliases=("natural gas", "ng", "methane", "ch4"))
HYDROGEN = Fuel(name="hydrogen", c=0, h=2, FHV=118.429, chem_exergy=134.778, molecular_weight=2.0,
                aliases=("h2",))

BUILTIN_FUELS = (JP10, NATURAL_GAS, HYDROGEN)

# Optimization

OPTIMIZATION_FUEL = HYDROGEN

BASELINE_DESIGN = DesignVector(TIT=1695.0, delta_T=0.0, pi_fan=1.5, pi_compressor=29.9, alpha=9.1)

# Fan ratio lower bound widened from 3 so that the published optima stay reachable
DEFAULT_BOUNDS = Bounds(
    lower=DesignVector(TIT=1000.0, delta_T=-10.0, pi_fan=1.1, pi_compressor=28.0, alpha=7.5),
    upper=DesignVector(TIT=2000.0, delta_T=10.0, pi_fan=4.5, pi_compressor=32.0, alpha=10.0),
)

STRICT_BOUNDS = Bounds(
    lower=DesignVector(TIT=1000.0, delta_T=-10.0, pi_fan=3.0, pi_compressor=28.0, alpha=7.5),
    upper=DesignVector(TIT=2000.0, delta_T=10.0, pi_fan=4.5, pi_compressor=32.0, alpha=10.0),
)

BOUNDS_PRESETS: Dict[str, Bounds] = {"default": DEFAULT_BOUNDS, "strict": STRICT_BOUNDS}

CASE_CONSTRAINTS: Dict[ObjectiveCase, ConstraintSet] = {
    ObjectiveCase.THRUST_MAX: ConstraintSet(bands={
        "eta_thermal": ConstraintBand(minimum=0.50, maximum=0.75),
        "tsfc": ConstraintBand(minimum=2.0, maximum=8.0),
        "eta_propulsive": ConstraintBand(minimum=0.75, maximum=0.95),
    }),
    ObjectiveCase.THERMAL_EFFICIENCY_MAX: ConstraintSet(bands={
        "tsf": ConstraintBand(minimum=140.0, maximum=160.0),
        "tsfc": ConstraintBand(minimum=2.0, maximum=8.0),
        "eta_propulsive": ConstraintBand(minimum=0.75, maximum=0.95),
    }),
    ObjectiveCase.PROPULSIVE_EFFICIENCY_MAX: ConstraintSet(bands={
        "tsf": ConstraintBand(minimum=70.0, maximum=160.0),
        "tsfc": ConstraintBand(minimum=2.0, maximum=8.0),
        "eta_thermal": ConstraintBand(minimum=0.50, maximum=0.75),
    }),
}

PUBLISHED_OPTIMA: Dict[ObjectiveCase, DesignVector] = {
    ObjectiveCase.THRUST_MAX: DesignVector(TIT=1972.67, delta_T=-0.132, pi_fan=1.752, pi_compressor=28.505, alpha=10.666),
    ObjectiveCase.THERMAL_EFFICIENCY_MAX: DesignVector(TIT=1921.05, delta_T=-9.954, pi_fan=1.432, pi_compressor=31.998, alpha=9.008),
    ObjectiveCase.PROPULSIVE_EFFICIENCY_MAX: DesignVector(TIT=1494.71, delta_T=-9.765, pi_fan=1.138, pi_compressor=32.0, alpha=11.998),
}

# Decision making

DECISION_CRITERIA = ("eta_thermal", "eta_exergetic", "tsfc", "entropy_generation", "nox_rate")

DECISION_WEIGHTS: Dict[str, WeightVector] = {
    "economic": WeightVector(name="economic", weights=(0.99, 0.0, -0.95, 0.0, 0.0)),
    "exero_environmental": WeightVector(name="exero_environmental", weights=(0.0, 0.99, 0.0, -0.95, -0.90)),
}

# Hydrogen, on-design: case 1, case 2, case 3
PUBLISHED_OPTIMA_MATRIX = DecisionMatrix(
    alternatives=("case1", "case2", "case3"),
    criteria=DECISION_CRITERIA,
    values=(
        (0.5791, 0.28761, 6.58, 247.3, 5.186),
        (0.5806, 0.2364, 7.996, 301.50, 5.961),
        (0.5485, 0.3085, 8.008, 95.60, 2.733),
    ),
)

PUBLISHED_CLOSENESS: Dict[str, Dict[str, float]] = {
    "economic": {"case1": 0.81, "case2": 0.18, "case3": 0.05},
    "exero_environmental": {"case1": 0.21, "case2": 0.02, "case3": 0.77},
}

# Validation targets

PUBLISHED_TARGETS = {
    "take_off_thrust_kN": 310.0,
    "take_off_tsfc": 8.454,
    "on_design_thrust_kN": 72.5,
    "on_design_tsfc": 18.001,
    "hydrogen_thrust_kN": 73.26,
    "hydrogen_tsfc": 6.594,
    "hydrogen_eta_thermal": 0.5791,
    "hydrogen_eta_propulsive": 0.7795,
    "hydrogen_eta_exergetic": 0.2867,
    "hydrogen_entropy_generation": 208.0,
    "hydrogen_nox_rate": 4.714,
    "cooling_thrust_change": 0.1176,
    "cooling_fuel_flow_change": 0.1053,
}

import math

import pytest

from app.domain.entities.atmosphere import InletState
from app.domain.entities.engine import COLD_GAS, HOT_GAS, EngineSpec, NozzleExit, StationId, StationState
from app.domain.exceptions import InfeasibleCycleError, InvalidRatioError
from app.domain.reference_data import BUILTIN_FUELS, FLIGHT_CONDITIONS, GENX_1B70, JP10, ON_DESIGN, TAKE_OFF
from app.domain.services.cycle import (
    combustor,
    compress,
    critical_pressure_ratio,
    diffuser,
    intake_mass_flow,
    nozzle,
    run_cycle,
    split_flow,
    thrust,
    turbine_expand_to_power,
)
from app.domain.services.gasmodel import air_density, isa_ambient


def _state(T, P, mdot=100.0, station=StationId.HPC_EXIT):
    return StationState(station=station, T=T, P=P, mdot=mdot)


class TestComponents:
    def test_diffuser_at_cruise(self):
        s2 = diffuser(InletState(T1=223.15, P1=26.44, delta_T=0.0), 0.85, COLD_GAS)
        assert s2.T == pytest.approx(255.3952, rel=1e-6)
        assert s2.P == pytest.approx(42.405, rel=1e-4)

    def test_diffuser_static(self):
        s2 = diffuser(InletState(T1=288.15, P1=101.325, delta_T=0.0), 0.0, COLD_GAS)
        assert (s2.T, s2.P) == (288.15, 101.325)

    def test_fan_compression(self):
        s31, work = compress(_state(288.15, 101.325), 1.5, 0.91, COLD_GAS, StationId.FAN_EXIT)
        assert s31.T == pytest.approx(327.04, abs=0.01)
        assert s31.P == pytest.approx(151.9875)
        assert work == pytest.approx(1005.0 * (s31.T - 288.15))

    def test_unit_pressure_ratio_does_no_work(self):
        s, work = compress(_state(300.0, 100.0), 1.0, 0.9, COLD_GAS, StationId.LPC_EXIT)
        assert s.T == 300.0
        assert work == 0.0

    def test_pressure_ratio_below_one(self):
        with pytest.raises(InvalidRatioError):
            compress(_state(300.0, 100.0), 0.9, 0.9, COLD_GAS, StationId.LPC_EXIT)

    def test_split_flow(self):
        m_hot, m_cold = split_flow(1155.43, 9.1)
        assert m_hot == pytest.approx(114.399, rel=1e-5)
        assert m_cold == pytest.approx(1041.03, rel=1e-5)
        assert m_hot + m_cold == pytest.approx(1155.43, rel=1e-12)

    def test_split_flow_needs_positive_bypass(self):
        with pytest.raises(InvalidRatioError):
            split_flow(100.0, 0.0)

    def test_combustor_energy_balance(self):
        s4 = _state(800.0, 2900.0, mdot=114.4)
        s5, fuel_flow, heat_rate = combustor(s4, 1695.0, JP10, 0.99, 0.05, 1250.0)
        expected_heat = 114.4 * 1250.0 * 895.0 / 1000.0
        assert heat_rate == pytest.approx(expected_heat, rel=1e-12)
        assert fuel_flow == pytest.approx(expected_heat / (42.075e3 * 0.99), rel=1e-12)
        assert s5.P == pytest.approx(2755.0)
        assert s5.mdot == pytest.approx(114.4 + fuel_flow)

    def test_combustor_zero_heat_boundary(self):
        s5, fuel_flow, heat_rate = combustor(_state(900.0, 2900.0), 900.0, JP10, 0.99, 0.05, 1250.0)
        assert fuel_flow == 0.0
        assert heat_rate == 0.0
        assert s5.T == 900.0

    def test_combustor_tit_below_delivery_temperature(self):
        with pytest.raises(InfeasibleCycleError) as excinfo:
            combustor(_state(900.0, 2900.0), 850.0, JP10, 0.99, 0.05, 1250.0)
        assert excinfo.value.station == StationId.COMBUSTOR_EXIT

    def test_turbine_delivers_required_power(self):
        s5 = _state(1695.0, 2755.0, mdot=116.6, station=StationId.COMBUSTOR_EXIT)
        s6 = turbine_expand_to_power(s5, 40000.0, 0.88, HOT_GAS, StationId.HPT_EXIT)
        assert s6.T == pytest.approx(1695.0 - 40000.0e3 / (116.6 * 1148.0))
        assert s6.P < s5.P

    def test_turbine_zero_power(self):
        s5 = _state(1695.0, 2755.0, station=StationId.COMBUSTOR_EXIT)
        s6 = turbine_expand_to_power(s5, 0.0, 0.88, HOT_GAS, StationId.HPT_EXIT)
        assert (s6.T, s6.P) == (s5.T, s5.P)

    def test_turbine_over_extraction(self):
        s5 = _state(1000.0, 2000.0, mdot=10.0, station=StationId.COMBUSTOR_EXIT)
        with pytest.raises(InfeasibleCycleError) as excinfo:
            turbine_expand_to_power(s5, 20000.0, 0.88, HOT_GAS, StationId.HPT_EXIT)
        assert excinfo.value.station == StationId.HPT_EXIT

    def test_critical_pressure_ratio(self):
        assert critical_pressure_ratio(0.98, HOT_GAS) == pytest.approx(1.8758, rel=1e-4)

    def test_choked_nozzle(self):
        s7 = _state(900.0, 200.0, station=StationId.LPT_EXIT)
        exit_ = nozzle(s7, 0.9, HOT_GAS, 50.0)
        assert exit_.choked
        assert exit_.exit_pressure == pytest.approx(200.0 / critical_pressure_ratio(0.9, HOT_GAS))
        assert exit_.exit_temperature == pytest.approx(2.0 * 900.0 / 2.33)
        assert exit_.velocity == pytest.approx((1.33 * HOT_GAS.R * exit_.exit_temperature) ** 0.5)

    def test_unchoked_nozzle_expands_to_ambient(self):
        s9 = _state(330.0, 60.0, station=StationId.FAN_EXIT)
        exit_ = nozzle(s9, 0.9, COLD_GAS, 50.0, StationId.COLD_NOZZLE_EXIT)
        assert not exit_.choked
        assert exit_.exit_pressure == 50.0
        assert exit_.velocity > 0

    def test_static_thrust_is_pure_momentum(self):
        hot = NozzleExit(velocity=400.0, exit_pressure=101.325, exit_temperature=700.0, exit_area=0.5, choked=False)
        cold = NozzleExit(velocity=300.0, exit_pressure=101.325, exit_temperature=300.0, exit_area=2.0, choked=False)
        f_hot, f_cold, total = thrust(hot, cold, 100.0, 900.0, 2.0, 0.0, 101.325)
        assert f_hot == pytest.approx(102.0 * 400.0 / 1000.0)
        assert f_cold == pytest.approx(900.0 * 300.0 / 1000.0)
        assert total == pytest.approx(f_hot + f_cold)

    def test_choked_jet_adds_pressure_thrust(self):
        hot = NozzleExit(velocity=550.0, exit_pressure=60.0, exit_temperature=800.0, exit_area=0.4, choked=True)
        cold = NozzleExit(velocity=250.0, exit_pressure=26.44, exit_temperature=260.0, exit_area=3.0, choked=False)
        f_hot, f_cold, _ = thrust(hot, cold, 50.0, 450.0, 0.5, 250.0, 26.44)
        assert f_hot == pytest.approx((50.5 * 550.0 - 50.0 * 250.0) / 1000.0 + 0.4 * (60.0 - 26.44))
        assert f_cold == pytest.approx(0.0)

    def test_nozzle_supply_below_ambient(self):
        with pytest.raises(InfeasibleCycleError):
            nozzle(_state(330.0, 40.0, station=StationId.FAN_EXIT), 0.9, COLD_GAS, 50.0)


class TestRunCycle:
    def test_take_off_baseline(self, take_off_jp10):
        perf = take_off_jp10.performance
        assert perf.thrust == pytest.approx(318.29, rel=2e-3)
        assert perf.tsfc == pytest.approx(8.354, rel=2e-3)
        assert perf.intake_mass_flow == pytest.approx(1155.43, rel=1e-12)
        assert perf.eta_thermal == pytest.approx(0.4102, rel=2e-3)
        assert perf.snox == pytest.approx(2.1729, rel=2e-3)
        assert perf.eta_propulsive == 0.0

    def test_take_off_within_reference(self, take_off_jp10):
        assert abs(take_off_jp10.performance.thrust - 310.0) / 310.0 <= 0.05
        assert abs(take_off_jp10.performance.tsfc - 8.454) / 8.454 <= 0.12

    def test_on_design_baseline(self, on_design_jp10):
        perf = on_design_jp10.performance
        assert perf.intake_mass_flow == pytest.approx(389.25, rel=2e-3)
        assert perf.thrust == pytest.approx(52.972, rel=2e-3)
        assert perf.fuel_flow == pytest.approx(1.0168, rel=2e-3)
        assert perf.tsfc == pytest.approx(19.194, rel=2e-3)
        assert abs(perf.tsfc - 18.001) / 18.001 <= 0.12

    def test_on_design_thrust_below_published(self, on_design_jp10):
        # cruise intake is pinned by the ambient density at altitude
        assert on_design_jp10.performance.thrust < 72.5 * 0.92

    def test_station_table_complete(self, on_design_jp10):
        ids = [s.station for s in on_design_jp10.stations.stations]
        assert ids == list(StationId)

    def test_spools_balance(self, on_design_jp10):
        ledger = on_design_jp10.ledger
        assert ledger.w_hpt == pytest.approx(ledger.w_hpc + ledger.w_offtake, rel=1e-9)
        assert ledger.w_lpt == pytest.approx(ledger.w_fan + ledger.w_lpc, rel=1e-9)
        assert ledger.w_offtake == pytest.approx(50.0)

    def test_cooling_adds_chiller_offtake(self, on_design, jp10):
        solution = run_cycle(GENX_1B70, on_design.with_delta_T(-20.0), jp10)
        expected = 50.0 + solution.intake_mass_flow * 1005.0 * 20.0 / 1000.0 / 6.0
        assert solution.ledger.w_offtake == pytest.approx(expected, rel=1e-9)

    def test_take_off_thrust_falls_with_inlet_temperature(self, take_off, jp10):
        thrusts = [run_cycle(GENX_1B70, take_off.with_delta_T(dT), jp10).performance.thrust
                   for dT in (-20, -15, -10, -5, 0, 5, 10)]
        assert thrusts == pytest.approx([341.75, 335.74, 329.83, 324.02, 318.29, 310.22, 301.84], rel=2e-3)

    def test_on_design_sweep_values(self, on_design, jp10):
        cooled = run_cycle(GENX_1B70, on_design.with_delta_T(-20.0), jp10).performance
        heated = run_cycle(GENX_1B70, on_design.with_delta_T(10.0), jp10).performance
        assert cooled.intake_mass_flow == pytest.approx(427.57, rel=2e-3)
        assert cooled.thrust == pytest.approx(57.937, rel=2e-3)
        assert cooled.fuel_flow == pytest.approx(1.1980, rel=2e-3)
        assert cooled.snox == pytest.approx(0.6545, rel=2e-3)
        assert heated.intake_mass_flow == pytest.approx(372.55, rel=2e-3)
        assert heated.thrust == pytest.approx(49.894, rel=2e-3)

    def test_cooling_by_twenty_kelvin_raises_thrust(self, on_design_jp10, on_design, jp10):
        cooled = run_cycle(GENX_1B70, on_design.with_delta_T(-20.0), jp10).performance
        base = on_design_jp10.performance
        change = (cooled.thrust - base.thrust) / base.thrust
        assert 0.09 <= change <= 0.14
        assert cooled.snox < base.snox

    def test_tit_below_delivery_temperature_names_station(self, jp10):
        spec = GENX_1B70.model_copy(update={"TIT": 600.0})
        with pytest.raises(InfeasibleCycleError) as excinfo:
            run_cycle(spec, TAKE_OFF, jp10)
        assert excinfo.value.station == StationId.COMBUSTOR_EXIT
        assert "combustor_exit" in str(excinfo.value)

    def test_with_design_keeps_core_ratio(self):
        spec = GENX_1B70.with_design(TIT=1800.0, pi_fan=1.7, pi_compressor=31.0, alpha=8.0)
        assert spec.pi_compressor == pytest.approx(31.0, rel=1e-12)
        assert spec.pi_lpc > 1.0
        assert isinstance(spec, EngineSpec)

    def test_with_design_at_baseline_is_identity(self):
        spec = GENX_1B70.with_design(TIT=1695.0, pi_fan=1.5, pi_compressor=29.9, alpha=9.1)
        assert spec.pi_lpc == pytest.approx(1.3, rel=1e-12)
        assert spec.pi_hpc == pytest.approx(23.0, rel=1e-12)

    def test_hot_day_at_cruise_is_still_closed(self, jp10):
        solution = run_cycle(GENX_1B70, ON_DESIGN.with_delta_T(10.0), jp10)
        assert solution.performance.thrust > 0

    def test_flight_speed_uses_ambient_temperature(self, on_design_jp10, on_design, jp10):
        cooled = run_cycle(GENX_1B70, on_design.with_delta_T(-20.0), jp10)
        expected = 0.85 * math.sqrt(1.4 * COLD_GAS.R * 223.15)
        assert cooled.flight_speed == pytest.approx(expected, rel=1e-12)
        assert cooled.flight_speed == pytest.approx(254.58, abs=0.01)
        assert cooled.flight_speed == on_design_jp10.flight_speed

    def test_ram_rise_matches_flight_speed_when_cooled(self, on_design, jp10):
        cooled = run_cycle(GENX_1B70, on_design.with_delta_T(-20.0), jp10)
        table = cooled.stations.as_dict()
        rise = table[StationId.DIFFUSER_EXIT].T - table[StationId.INLET].T
        assert rise == pytest.approx(cooled.flight_speed ** 2 / (2.0 * 1005.0), rel=1e-12)

    def test_intake_follows_cooled_inlet_density(self, on_design, jp10):
        cooled = run_cycle(GENX_1B70, on_design.with_delta_T(-20.0), jp10)
        ambient = isa_ambient(10000.0)
        expected = 1155.43 * air_density(ambient.T0 - 20.0, ambient.P0) / air_density(288.15, 101.325)
        assert cooled.intake_mass_flow == pytest.approx(expected, rel=1e-12)

    def test_static_intake_mass_flow(self):
        inlet = InletState(T1=268.15, P1=101.325, delta_T=-20.0)
        assert intake_mass_flow(GENX_1B70, inlet) == pytest.approx(1155.43 * 288.15 / 268.15, rel=1e-12)


SWEEP_CONDITIONS = [(name, dT) for name in ("take_off", "on_design") for dT in (-20.0, 0.0, 10.0)]


@pytest.mark.parametrize("condition_name, delta_T", SWEEP_CONDITIONS)
class TestCycleProperties:
    @pytest.fixture
    def condition(self, condition_name, delta_T):
        return FLIGHT_CONDITIONS[condition_name].with_delta_T(delta_T)

    def test_fuel_flow_ordering(self, condition):
        flows = {fuel.name: run_cycle(GENX_1B70, condition, fuel).fuel_flow for fuel in BUILTIN_FUELS}
        assert flows["hydrogen"] < flows["natural_gas"] < flows["JP10"]

    @pytest.mark.parametrize("fuel", BUILTIN_FUELS, ids=lambda f: f.name)
    def test_pressure_profile(self, condition, fuel):
        table = run_cycle(GENX_1B70, condition, fuel).stations.as_dict()
        rising = [table[s].P for s in (StationId.DIFFUSER_EXIT, StationId.FAN_EXIT, StationId.LPC_EXIT,
                                       StationId.HPC_EXIT)]
        falling = [table[s].P for s in (StationId.COMBUSTOR_EXIT, StationId.HPT_EXIT, StationId.LPT_EXIT,
                                        StationId.HOT_NOZZLE_EXIT)]
        assert all(b > a for a, b in zip(rising, rising[1:]))
        assert all(b <= a for a, b in zip(falling, falling[1:]))
        assert falling[0] < rising[-1]

    @pytest.mark.parametrize("fuel", BUILTIN_FUELS, ids=lambda f: f.name)
    def test_mass_closure(self, condition, fuel):
        solution = run_cycle(GENX_1B70, condition, fuel)
        table = solution.stations.as_dict()
        assert table[StationId.HOT_NOZZLE_EXIT].mdot == pytest.approx(solution.m_hot + solution.fuel_flow, rel=1e-12)
        assert table[StationId.COLD_NOZZLE_EXIT].mdot == pytest.approx(solution.m_cold, rel=1e-12)
        assert table[StationId.INLET].mdot == pytest.approx(solution.m_hot + solution.m_cold, rel=1e-12)


def test_unchoked_take_off_has_no_pressure_thrust(take_off_jp10):
    solution = take_off_jp10
    assert not solution.hot_nozzle.choked and not solution.cold_nozzle.choked
    assert solution.hot_nozzle.exit_pressure == solution.ambient.P0
    expected_hot = ((solution.m_hot + solution.fuel_flow) * solution.hot_nozzle.velocity) / 1000.0
    assert solution.thrust_hot == pytest.approx(expected_hot, rel=1e-12)
    assert solution.thrust_cold == pytest.approx(solution.m_cold * solution.cold_nozzle.velocity / 1000.0, rel=1e-12)

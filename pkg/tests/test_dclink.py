"""Tests of capacitor stress ratios and the midpoint voltage simulator."""

import math

import numpy as np
import pytest

from npcrel import (
    AppliedVoltage,
    CapacitorSpec,
    DomainError,
    NumericError,
    OperatingPoint,
    RedundantStatePolicy,
    native_index,
    neutral_point_current,
    pi_v,
    simulate_np_voltages,
    voltage_stress,
)

CAP = CapacitorSpec(capacitance_uf=470.0, v_rated=250.0)
CAPS = (CAP, CAP)


def _op(**kwargs):
    base = dict(m=1.0, phi=0.0, imax=2.0, f_out=50.0, f_sw=1000.0, vdc=300.0, ta=25.0)
    base.update(kwargs)
    return OperatingPoint(**base)


@pytest.fixture(scope="module")
def sim_spwm():
    return simulate_np_voltages("spwm", _op(), CAPS)


@pytest.fixture(scope="module")
def sim_thipwm():
    return simulate_np_voltages("thipwm", _op(m=native_index("thipwm", 1.0)), CAPS)


@pytest.fixture(scope="module")
def sim_svpwm_skewed():
    op = _op(m=native_index("svpwm", 1.0))
    return simulate_np_voltages("svpwm", op, CAPS, policy=RedundantStatePolicy(0.53))


class TestVoltageStress:
    """Operating-to-rated stress ratio and its failure-rate factor."""

    def test_known_ratios(self):
        assert abs(voltage_stress(AppliedVoltage(150.0), CAP) - 1.0) < 1e-12
        assert abs(voltage_stress(AppliedVoltage(90.0), CAP) - 0.6) < 1e-12

    def test_ripple_enters_with_peak_value(self):
        flat = voltage_stress(AppliedVoltage(100.0, 0.0), CAP)
        rippled = voltage_stress(AppliedVoltage(100.0, 10.0), CAP)
        assert abs((rippled - flat) * 0.6 * 250.0 - 10.0 * math.sqrt(2.0)) < 1e-9

    def test_stress_factor_values(self):
        assert abs(pi_v(0.6) - 2.0) < 1e-12
        assert abs(pi_v(1.0) - 13.86) < 5e-3
        assert pi_v(0.0) == 1.0

    def test_negative_stress_rejected(self):
        with pytest.raises(DomainError):
            pi_v(-0.2)

    def test_container_validation(self):
        with pytest.raises(DomainError):
            AppliedVoltage(-1.0)
        with pytest.raises(DomainError):
            CapacitorSpec(capacitance_uf=0.0, v_rated=250.0)
        with pytest.raises(DomainError):
            RedundantStatePolicy(1.1)


class TestNeutralPointCurrent:
    @pytest.mark.parametrize("strategy", ["spwm", "thipwm", "svpwm"])
    def test_symmetric_dwell_has_zero_mean(self, strategy):
        theta = (np.arange(6000) + 0.5) * (2.0 * math.pi / 6000)
        i_np = neutral_point_current(strategy, _op(m=0.8, phi=0.3), theta)
        assert abs(float(np.mean(i_np))) < 1e-12

    def test_skewed_dwell_injects_dc_component(self):
        theta = (np.arange(6000) + 0.5) * (2.0 * math.pi / 6000)
        op = _op(m=0.8)
        skew = neutral_point_current("spwm", op, theta, RedundantStatePolicy(0.6))
        assert float(np.mean(skew)) > 0.0

    def test_scalar_input(self):
        assert isinstance(neutral_point_current("spwm", _op(), 0.3), float)


class TestMidpointSimulation:
    def test_zero_load_holds_half_bus(self):
        result = simulate_np_voltages("spwm", _op(imax=0.0), CAPS)
        assert float(np.max(np.abs(result.v_c1 - 150.0))) < 1e-9
        assert float(np.max(np.abs(result.v_c2 - 150.0))) < 1e-9
        assert result.cap1.v_ac < 1e-12

    @pytest.mark.parametrize("fixture", ["sim_spwm", "sim_thipwm"])
    def test_even_dwell_keeps_bus_balanced(self, fixture, request):
        result = request.getfixturevalue(fixture)
        assert abs(result.cap1.v_dc - result.cap2.v_dc) < 1.5

    def test_skewed_dwell_unbalances_bus(self, sim_svpwm_skewed):
        assert sim_svpwm_skewed.cap2.v_dc > sim_svpwm_skewed.cap1.v_dc + 1.0

    def test_capacitor_voltages_sum_to_bus(self, sim_spwm):
        # the bus is stiff, so the split is exact sample by sample
        assert np.all(sim_spwm.v_c1 + sim_spwm.v_c2 == 300.0)

    def test_too_few_cycles_rejected(self):
        with pytest.raises(DomainError):
            simulate_np_voltages("spwm", _op(), CAPS, cycles=5)

    def test_too_coarse_step_rejected(self):
        with pytest.raises(NumericError):
            simulate_np_voltages("spwm", _op(), CAPS, dt=1e-3)


class TestTraceExport:
    def test_columnar_trace(self, sim_spwm, tmp_path):
        out = tmp_path / "trace.txt"
        sim_spwm.export_trace(out, stride=200)
        lines = out.read_text().splitlines()
        assert lines[0] == "# time_s v_c1_v v_c2_v"
        # 10 cycles at 1 us resolution, one row per 200 steps
        assert len(lines) == 1001
        assert len(lines[1].split()) == 3

    def test_invalid_stride_rejected(self, sim_spwm, tmp_path):
        with pytest.raises(DomainError):
            sim_spwm.export_trace(tmp_path / "trace.txt", stride=0)

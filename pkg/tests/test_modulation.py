"""Tests of the modulating references, switching states and duty cycles."""

import math

import numpy as np
import pytest

from npcrel import (
    DomainError,
    OperatingPoint,
    StrategyId,
    duty_cycles,
    load_current,
    modulating_function,
    switching_state,
    svpwm_band,
    svpwm_region,
    svpwm_waveform,
)

SQRT3 = math.sqrt(3.0)

# fine enough to catch the third-harmonic crest between grid points
PEAK_GRID = np.linspace(0.0, 2.0 * math.pi, 1_000_001)

ALL_STRATEGIES = (StrategyId.SPWM, StrategyId.THIPWM, StrategyId.SVPWM)


def _op(**kwargs):
    base = dict(m=1.0, phi=0.0, imax=2.0, f_out=50.0, f_sw=1000.0, vdc=300.0, ta=25.0)
    base.update(kwargs)
    return OperatingPoint(**base)


class TestStrategyId:
    """Strategy name parsing."""

    def test_parse_accepts_case_and_whitespace(self):
        assert StrategyId.parse("SPWM") is StrategyId.SPWM
        assert StrategyId.parse("  svpwm ") is StrategyId.SVPWM

    def test_parse_passes_through_enum(self):
        assert StrategyId.parse(StrategyId.THIPWM) is StrategyId.THIPWM

    def test_parse_rejects_unknown_name(self):
        with pytest.raises(DomainError):
            StrategyId.parse("dpwm")


class TestOperatingPoint:
    """Validation of the operating-point container."""

    @pytest.mark.parametrize("field, value", [
        ("m", 0.0),
        ("m", 1.2),
        ("phi", -0.1),
        ("phi", math.pi),
        ("imax", -1.0),
        ("f_sw", 400.0),
        ("vdc", 0.0),
        ("ta", -300.0),
    ])
    def test_rejects_out_of_range_fields(self, field, value):
        with pytest.raises(DomainError):
            _op(**{field: value})

    def test_accepts_zero_current(self):
        assert _op(imax=0.0).imax == 0.0


class TestSwitchingStates:
    """Gate patterns and leg output voltages of the three states."""

    def test_gate_patterns(self):
        assert switching_state(1).gates == (True, True, False, False)
        assert switching_state(2).gates == (False, True, True, False)
        assert switching_state(3).gates == (False, False, True, True)

    def test_output_voltages(self):
        vdc = 300.0
        assert switching_state(1).output_voltage(vdc) == 150.0
        assert switching_state(2).output_voltage(vdc) == 0.0
        assert switching_state(3).output_voltage(vdc) == -150.0

    def test_complementary_pairs(self):
        # (S1, S3) and (S2, S4) must never be on together
        for state in (1, 2, 3):
            gates = switching_state(state).gates
            assert gates[0] != gates[2]
            assert gates[1] != gates[3]

    def test_invalid_state_rejected(self):
        with pytest.raises(DomainError):
            switching_state(4)


class TestDutyCycles:
    def test_positive_reference(self):
        d = duty_cycles(0.5)
        assert abs(d.dt_p - 0.5) < 1e-12
        assert abs(d.dt_zp - 0.5) < 1e-12
        assert d.dt_zn == 0.0
        assert d.dt_n == 0.0

    def test_zero_reference_is_all_zero_state(self):
        d = duty_cycles(0.0)
        assert d.dt_p == 0.0
        assert abs(d.dt_zp + d.dt_zn - 1.0) < 1e-12
        assert d.dt_n == 0.0

    def test_negative_reference(self):
        d = duty_cycles(-0.3)
        assert abs(d.dt_n - 0.3) < 1e-12
        assert abs(d.dt_zn - 0.7) < 1e-12
        assert d.dt_p == 0.0
        assert d.dt_zp == 0.0

    def test_duties_sum_to_one_on_grid(self):
        mf = np.linspace(-1.0, 1.0, 4001)
        d = duty_cycles(mf)
        total = d.dt_p + d.dt_zp + d.dt_zn + d.dt_n
        assert float(np.max(np.abs(total - 1.0))) < 1e-12

    def test_overmodulation_rejected(self):
        with pytest.raises(DomainError):
            duty_cycles(1.1)


class TestLoadCurrent:
    def test_peak_scales_with_index(self):
        assert abs(load_current(1.0, math.pi / 2.0, 0.0, 10.0) - 10.0) < 1e-12
        assert abs(load_current(0.5, math.pi / 2.0, 0.0, 10.0) - 5.0) < 1e-12

    def test_zero_crossing_at_lag_angle(self):
        assert abs(load_current(0.8, 0.4, 0.4, 10.0)) < 1e-12

    def test_invalid_inputs_rejected(self):
        with pytest.raises(DomainError):
            load_current(0.0, 0.0, 0.0, 10.0)
        with pytest.raises(DomainError):
            load_current(0.5, 0.0, 0.0, -1.0)


class TestModulatingFunction:
    """Shared properties of the three reference generators."""

    def test_sine_reference_spot_value(self):
        assert abs(modulating_function("spwm", 0.8, math.pi / 6.0) - 0.4) < 1e-12

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_reference_leads_current_by_phi(self, strategy):
        phi = 0.35
        theta = np.linspace(0.0, 2.0 * math.pi, 721)
        lead = modulating_function(strategy, 0.9, theta, phi)
        shifted = modulating_function(strategy, 0.9, theta + phi, 0.0)
        assert float(np.max(np.abs(lead - shifted))) < 1e-12

    def test_third_harmonic_peak_reaches_unity(self):
        mf = modulating_function("thipwm", 1.0, PEAK_GRID)
        assert abs(float(np.max(np.abs(mf))) - 1.0) < 1e-9

    def test_third_harmonic_injection_identity(self):
        theta = np.linspace(0.0, 2.0 * math.pi, 721)
        m = 0.85
        thi = modulating_function("thipwm", m, theta)
        spwm = modulating_function("spwm", m, theta)
        injected = thi - (2.0 / SQRT3) * spwm
        expected = (2.0 * m / SQRT3) * np.sin(3.0 * theta) / 6.0
        assert float(np.max(np.abs(injected - expected))) < 1e-12

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    @pytest.mark.parametrize("m", [0.2, 0.5, 0.75, 1.0])
    def test_never_overmodulates(self, strategy, m):
        mf = modulating_function(strategy, m, PEAK_GRID[::10])
        assert float(np.max(np.abs(mf))) <= 1.0 + 1e-9

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_zero_mean_and_half_wave_antisymmetry(self, strategy):
        m = 0.9
        theta = (np.arange(20000) + 0.5) * (2.0 * math.pi / 20000)
        mf = modulating_function(strategy, m, theta)
        assert abs(float(np.mean(mf))) < 1e-9 * m
        half = modulating_function(strategy, m, theta + math.pi)
        assert float(np.max(np.abs(half + mf))) < 1e-9

    def test_invalid_index_rejected(self):
        with pytest.raises(DomainError):
            modulating_function("spwm", 1.5, 0.0)


class TestSvpwmGeometry:
    """Band and region bookkeeping of the vector diagram."""

    def test_band_edges(self):
        assert svpwm_band(0.3) == 1
        assert svpwm_band(0.5) == 1
        assert svpwm_band(0.5 + 1e-9) == 2
        assert svpwm_band(1.0 / SQRT3) == 2
        assert svpwm_band(1.0 / SQRT3 + 1e-9) == 3
        assert svpwm_band(1.0) == 3

    def test_band_rejects_invalid_index(self):
        with pytest.raises(DomainError):
            svpwm_band(0.0)

    def test_region_at_phase_axis(self):
        assert svpwm_region(0.4, 0.0) == 2
        assert svpwm_region(0.9, 0.0) == 4

    def test_middle_band_sweep_visits_every_region(self):
        alphas = np.linspace(-math.pi / 3.0, math.pi / 3.0, 2001)
        regions = [svpwm_region(0.55, a) for a in alphas]
        assert sorted(set(regions)) == list(range(1, 9))
        assert regions == sorted(regions)

    def test_full_index_collapses_inner_regions(self):
        # at m = 1 the crossing angle reaches the sector edge and the
        # regions between the crossings vanish
        alphas = np.linspace(-math.pi / 3.0, math.pi / 3.0, 2001)
        regions = {svpwm_region(1.0, a) for a in alphas}
        assert regions == {1, 4, 5, 8}

    def test_region_rejects_angle_outside_excursion(self):
        with pytest.raises(DomainError):
            svpwm_region(0.9, math.pi / 2.0)


class TestSvpwmWaveform:
    """Properties of the reconstructed space-vector reference."""

    @pytest.mark.parametrize("m", [0.3, 0.55, 0.9, 1.0])
    def test_peak_value_matches_index(self, m):
        # the crest belongs to the anchored segment touching the 90 degree
        # axis; the facing segment may carry a structural seam exactly there,
        # so probe both sides of the axis
        wave = svpwm_waveform(m)
        crest = max(wave.value(math.pi / 2.0 - 1e-9),
                    wave.value(math.pi / 2.0),
                    wave.value(math.pi / 2.0 + 1e-9))
        assert abs(crest - m) < 1e-9

    @pytest.mark.parametrize("m", [0.3, 0.55, 0.9, 1.0])
    def test_positive_half_stays_nonnegative(self, m):
        theta = np.linspace(0.0, math.pi, 5001)
        assert float(np.min(svpwm_waveform(m).value(theta))) >= -1e-12

    @pytest.mark.parametrize("m", [0.3, 0.55, 0.9, 1.0])
    def test_structural_seams_are_reported(self, m):
        # the diagram pins the phase of the anchored segments, so the
        # reconstruction keeps genuine steps at their peak-facing edges
        # instead of smoothing them away
        jumps = svpwm_waveform(m).boundary_jumps()
        assert len(jumps) > 0
        for theta, step in jumps:
            assert 0.0 < theta < math.pi
            assert step > 1e-9

    def test_waveform_cache_returns_same_object(self):
        assert svpwm_waveform(0.7) is svpwm_waveform(0.7)

    def test_value_preserves_shape(self):
        wave = svpwm_waveform(0.8)
        assert isinstance(wave.value(1.0), float)
        out = wave.value(np.zeros((3, 4)))
        assert out.shape == (3, 4)

"""Tests of configuration loading, defaults and deep-merging."""

import math

import pytest

from npcrel import ConfigError, StrategyId, default_config_text, load_config


def _write(tmp_path, text):
    path = tmp_path / "run.toml"
    path.write_text(text)
    return path


class TestDefaults:
    """The bundled document parses into the expected run configuration."""

    def test_mode_and_operating_point(self, cfg):
        assert cfg.mode == "reference"
        assert cfg.op.m == 1.0
        assert cfg.op.phi == 0.0
        assert cfg.op.imax == 2.0
        assert cfg.op.f_out == 50.0
        assert cfg.op.f_sw == 1000.0
        assert cfg.op.vdc == 300.0
        assert cfg.op.ta == 25.0

    def test_device_slots(self, cfg):
        assert cfg.devices.switch.name == "IRF740"
        assert cfg.devices.freewheel_diode.name == "IRF740_body"
        assert cfg.devices.clamp_diode.name == "MUR1560"

    def test_thermal_paths(self, cfg):
        assert cfg.thermal["switch"].r_jc == 1.0
        assert cfg.thermal["switch"].r_case_to_ambient == 61.0
        assert cfg.thermal["clamp_diode"].r_jc == 2.0
        assert cfg.thermal["clamp_diode"].r_case_to_ambient == 58.0

    def test_capacitor_settings(self, cfg):
        assert cfg.cap_spec.capacitance_uf == 470.0
        assert cfg.cap_spec.v_rated == 250.0
        assert cfg.cap_spec.pi_q == 10.0
        assert cfg.cap_spec.pi_sr == 1.0
        assert cfg.cap_hotspot_degc == 50.0

    def test_shared_stress_factors(self, cfg):
        assert cfg.factors.pi_a_switch == 8.0
        assert cfg.factors.pi_q_switch == 8.0
        assert cfg.factors.pi_q_diode == 8.0
        assert cfg.factors.pi_c_diode == 1.0
        assert cfg.factors.diode_vs == 0.5049
        assert cfg.factors.pi_e == 1.0

    def test_pinned_strategy_inputs(self, cfg):
        spwm = cfg.strategies[StrategyId.SPWM]
        assert spwm.pi_t_outer_switch == 2.136
        assert spwm.pi_t_inner_switch == 2.655
        assert spwm.cap1_applied.v_dc == 149.41
        assert spwm.redundancy_split == 0.5
        svpwm = cfg.strategies[StrategyId.SVPWM]
        assert svpwm.cap1_applied.v_dc == 113.22
        assert svpwm.cap2_applied.v_dc == 171.36
        assert svpwm.redundancy_split == 0.53

    def test_simulation_and_report_settings(self, cfg):
        assert cfg.dclink.r_bleed_ohm == 470.0
        assert cfg.dclink.cycles == 10
        assert cfg.dclink.dt_s == 1e-6
        assert cfg.report.m_points == 21
        assert cfg.report.phi_points == 19
        assert cfg.report.phi_max_deg == 90.0
        assert cfg.report.samples == 10000

    def test_default_text_is_the_document(self):
        assert "[operating_point]" in default_config_text()


class TestLoading:
    """Deep-merge semantics and error paths."""

    def test_single_key_override_keeps_the_rest(self, tmp_path):
        path = _write(tmp_path, "[operating_point]\nimax_a = 10.0\n")
        merged = load_config(path)
        assert merged.op.imax == 10.0
        assert merged.op.m == 1.0
        assert merged.strategies[StrategyId.SPWM].pi_t_outer_switch == 2.136

    def test_nested_strategy_override(self, tmp_path):
        path = _write(tmp_path, "[strategies.svpwm]\nredundancy_split = 0.6\n")
        merged = load_config(path)
        assert merged.strategies[StrategyId.SVPWM].redundancy_split == 0.6
        assert merged.strategies[StrategyId.SVPWM].pi_t_outer_switch == 1.942
        assert merged.strategies[StrategyId.SPWM].redundancy_split == 0.5

    def test_phi_given_in_degrees(self, tmp_path):
        path = _write(tmp_path, "[operating_point]\nphi_deg = 30.0\n")
        assert abs(load_config(path).op.phi - math.pi / 6.0) < 1e-12

    def test_mode_argument_overrides_document(self):
        assert load_config(mode="model").mode == "model"

    def test_unknown_section_rejected(self, tmp_path):
        path = _write(tmp_path, "[nonsense]\nx = 1\n")
        with pytest.raises(ConfigError, match="nonsense"):
            load_config(path)

    def test_unknown_mode_rejected(self, tmp_path):
        path = _write(tmp_path, 'mode = "hybrid"\n')
        with pytest.raises(ConfigError):
            load_config(path)

    def test_missing_file_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "absent.toml")

    def test_invalid_toml_rejected(self, tmp_path):
        path = _write(tmp_path, "[broken\n")
        with pytest.raises(ConfigError):
            load_config(path)

    def test_domain_violations_become_config_errors(self, tmp_path):
        path = _write(tmp_path, "[operating_point]\nm = 1.5\n")
        with pytest.raises(ConfigError, match="operating_point"):
            load_config(path)

    def test_unknown_device_rejected(self, tmp_path):
        path = _write(tmp_path, '[devices]\nswitch = "IGBT999"\n')
        with pytest.raises(ConfigError):
            load_config(path)

    def test_wrong_device_kind_rejected(self, tmp_path):
        path = _write(tmp_path, '[devices]\nswitch = "MUR1560"\n')
        with pytest.raises(ConfigError):
            load_config(path)

    def test_degenerate_report_grid_rejected(self, tmp_path):
        path = _write(tmp_path, "[report]\nm_points = 1\n")
        with pytest.raises(ConfigError):
            load_config(path)

    def test_too_few_simulation_cycles_rejected(self, tmp_path):
        path = _write(tmp_path, "[dclink]\ncycles = 5\n")
        with pytest.raises(ConfigError):
            load_config(path)

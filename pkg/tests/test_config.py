import pytest

from ebeats.config import load_config, require_intensity_grid, require_tau_grid
from ebeats.errors import ConfigError


def write(tmp_path, text):
    path = tmp_path / "run.ini"
    path.write_text(text, encoding="utf-8")
    return str(path)


GOOD = """\
[system]
omega = 1.0
omega_a = 1.1
omega_b = 1.1
g_a = 0.001
g_b = 0.001

[scenario]
type = werner
gamma = 0.8181818181818182
bell = phi_plus

[field]
kind = coherent
intensity = 20.0

[grid]
tau_min = 0.0
tau_max = 12.566370614359172
tau_steps = 500

[output]
path = out.csv
precision = 9
"""


def test_full_config_parses(tmp_path):
    cfg = load_config(write(tmp_path, GOOD))
    assert cfg.scenario_type == "werner"
    assert cfg.gamma == pytest.approx(9 / 11)
    assert cfg.bell == "phi_plus"
    assert cfg.field_kind == "coherent"
    assert cfg.intensity == 20.0
    assert cfg.tau_steps == 500
    assert cfg.output_path == "out.csv"
    assert cfg.system["g_a"] == 0.001
    require_tau_grid(cfg)


def test_defaults_without_sections(tmp_path):
    cfg = load_config(write(tmp_path, "[grid]\ntau_max = 6.28\ntau_steps = 10\n"))
    assert cfg.system["omega"] == 1.0
    assert cfg.system["omega_a"] == 1.1
    assert cfg.scenario_type == "pure_pure"
    assert cfg.theta_a == 0.0
    assert cfg.precision == 9


def test_unknown_key_rejected_with_line_number(tmp_path):
    text = "[system]\nomega = 1.0\nbogus_key = 3\n"
    with pytest.raises(ConfigError) as err:
        load_config(write(tmp_path, text))
    assert "bogus_key" in str(err.value)
    assert err.value.line == 3


def test_unknown_section_rejected(tmp_path):
    with pytest.raises(ConfigError) as err:
        load_config(write(tmp_path, "[grid]\ntau_max = 1\ntau_steps = 2\n\n[banana]\nx = 1\n"))
    assert "banana" in str(err.value)
    assert err.value.line == 5


def test_bad_float_reports_line(tmp_path):
    with pytest.raises(ConfigError) as err:
        load_config(write(tmp_path, "[system]\nomega = fast\n"))
    assert err.value.line == 2


def test_corrupted_file_is_config_error(tmp_path):
    with pytest.raises(ConfigError):
        load_config(write(tmp_path, "omega = 1.0 without a section\n"))


def test_missing_file_is_config_error(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "absent.ini"))


def test_zero_tau_steps_rejected(tmp_path):
    with pytest.raises(ConfigError) as err:
        load_config(write(tmp_path, "[grid]\ntau_max = 6.28\ntau_steps = 0\n"))
    assert err.value.line == 3


def test_werner_needs_gamma(tmp_path):
    with pytest.raises(ConfigError):
        load_config(write(tmp_path, "[scenario]\ntype = werner\n"))


def test_gamma_range_checked(tmp_path):
    with pytest.raises(ConfigError) as err:
        load_config(write(tmp_path, "[scenario]\ntype = werner\ngamma = 1.5\n"))
    assert err.value.line == 3


def test_fock_intensity_must_be_integer(tmp_path):
    with pytest.raises(ConfigError):
        load_config(write(tmp_path, "[field]\nkind = fock\nintensity = 1.5\n"))


def test_heatmap_grid_requirements(tmp_path):
    cfg = load_config(write(tmp_path, "[grid]\ntau_max = 6.28\ntau_steps = 10\n"))
    with pytest.raises(ConfigError):
        require_intensity_grid(cfg)


def test_inline_comments_allowed(tmp_path):
    cfg = load_config(write(tmp_path, "[field]\nkind = thermal  # geometric mixture\nintensity = 2\n"))
    assert cfg.field_kind == "thermal"

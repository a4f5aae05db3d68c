"""Plain-text run configuration: bracketed sections of key=value pairs.

Sections and keys:

* ``[system]``   omega, omega_a, omega_b, g_a, g_b (defaults: mode at 1.0,
  both atoms detuned by 0.1 with coupling 0.001, i.e. g/delta = 0.01).
* ``[scenario]`` type = pure_pure | werner; theta_a/theta_b for pure_pure,
  gamma and bell (phi_plus|phi_minus|psi_plus|psi_minus) for werner.
* ``[field]``    kind = fock | coherent | thermal; intensity = mean photon
  number (the Fock level n, |alpha|^2, or <n>).
* ``[grid]``     tau_min, tau_max, tau_steps; heatmaps also take
  intensity_min, intensity_max, intensity_steps.
* ``[output]``   path, precision (significant digits, default 9).

Unknown sections or keys are rejected with their line number.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field

from .errors import ConfigError

_KNOWN_KEYS = {
    "system": {"omega", "omega_a", "omega_b", "g_a", "g_b"},
    "scenario": {"type", "theta_a", "theta_b", "gamma", "bell"},
    "field": {"kind", "intensity"},
    "grid": {
        "tau_min",
        "tau_max",
        "tau_steps",
        "intensity_min",
        "intensity_max",
        "intensity_steps",
    },
    "output": {"path", "precision"},
}

_SYSTEM_DEFAULTS = {"omega": 1.0, "omega_a": 1.1, "omega_b": 1.1, "g_a": 0.001, "g_b": 0.001}


@dataclass
class RunConfig:
    """Parsed configuration; optional pieces stay None until a command
    requires them."""

    system: dict = field(default_factory=dict)
    scenario_type: str = "pure_pure"
    theta_a: float = 0.0
    theta_b: float = 0.0
    gamma: float | None = None
    bell: str | None = None
    field_kind: str = "fock"
    intensity: float | None = None
    tau_min: float = 0.0
    tau_max: float | None = None
    tau_steps: int | None = None
    intensity_min: float | None = None
    intensity_max: float | None = None
    intensity_steps: int | None = None
    output_path: str | None = None
    precision: int = 9


def _find_key_line(text: str, section: str, key: str) -> int | None:
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
        elif current == section and line.lower().startswith(key):
            rest = line[len(key):].lstrip()
            if rest.startswith("=") or rest.startswith(":"):
                return lineno
    return None


def _find_section_line(text: str, section: str) -> int | None:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.strip().lower() == f"[{section}]":
            return lineno
    return None


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc

    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(text, source=path)
    except configparser.ParsingError as exc:
        lineno = exc.errors[0][0] if getattr(exc, "errors", None) else None
        raise ConfigError(f"cannot parse config: {exc}", line=lineno) from exc
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config: {exc}") from exc

    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(
                f"unknown section [{section}]", line=_find_section_line(text, section)
            )
        for key in parser[section]:
            if key not in _KNOWN_KEYS[section]:
                raise ConfigError(
                    f"unknown key '{key}' in section [{section}]",
                    line=_find_key_line(text, section, key),
                )

    cfg = RunConfig()
    cfg.system = dict(_SYSTEM_DEFAULTS)

    def _get(section, key, conv, default=None):
        if not parser.has_option(section, key):
            return default
        raw = parser.get(section, key)
        try:
            return conv(raw)
        except ValueError as exc:
            raise ConfigError(
                f"bad value for {key} in [{section}]: {raw!r} ({exc})",
                line=_find_key_line(text, section, key),
            ) from exc

    for key in _SYSTEM_DEFAULTS:
        cfg.system[key] = _get("system", key, float, cfg.system[key])

    cfg.scenario_type = _get("scenario", "type", _scenario_type, cfg.scenario_type)
    cfg.theta_a = _get("scenario", "theta_a", float, cfg.theta_a)
    cfg.theta_b = _get("scenario", "theta_b", float, cfg.theta_b)
    cfg.gamma = _get("scenario", "gamma", float, cfg.gamma)
    cfg.bell = _get("scenario", "bell", _bell_name, cfg.bell)

    cfg.field_kind = _get("field", "kind", _field_kind, cfg.field_kind)
    cfg.intensity = _get("field", "intensity", _nonneg_float, cfg.intensity)

    cfg.tau_min = _get("grid", "tau_min", float, cfg.tau_min)
    cfg.tau_max = _get("grid", "tau_max", float, cfg.tau_max)
    cfg.tau_steps = _get("grid", "tau_steps", _positive_int, cfg.tau_steps)
    cfg.intensity_min = _get("grid", "intensity_min", _nonneg_float, cfg.intensity_min)
    cfg.intensity_max = _get("grid", "intensity_max", _nonneg_float, cfg.intensity_max)
    cfg.intensity_steps = _get("grid", "intensity_steps", _positive_int, cfg.intensity_steps)

    cfg.output_path = _get("output", "path", str, cfg.output_path)
    cfg.precision = _get("output", "precision", _positive_int, cfg.precision)

    _cross_validate(cfg, text)
    return cfg


def _scenario_type(raw: str) -> str:
    value = raw.strip().lower()
    if value not in ("pure_pure", "werner"):
        raise ValueError("expected pure_pure or werner")
    return value


def _field_kind(raw: str) -> str:
    value = raw.strip().lower()
    if value not in ("fock", "coherent", "thermal"):
        raise ValueError("expected fock, coherent or thermal")
    return value


def _bell_name(raw: str) -> str:
    value = raw.strip().lower()
    if value not in ("phi_plus", "phi_minus", "psi_plus", "psi_minus"):
        raise ValueError("expected one of phi_plus, phi_minus, psi_plus, psi_minus")
    return value


def _positive_int(raw: str) -> int:
    value = int(raw)
    if value <= 0:
        raise ValueError("must be a positive integer")
    return value


def _nonneg_float(raw: str) -> float:
    value = float(raw)
    if value < 0:
        raise ValueError("must be >= 0")
    return value


def _cross_validate(cfg: RunConfig, text: str):
    if cfg.scenario_type == "werner":
        if cfg.gamma is None:
            raise ConfigError("werner scenario requires gamma in [scenario]")
        if not 0.0 <= cfg.gamma <= 1.0:
            raise ConfigError(
                f"gamma={cfg.gamma} outside [0, 1]", line=_find_key_line(text, "scenario", "gamma")
            )
    if cfg.field_kind == "fock" and cfg.intensity is not None:
        if cfg.intensity != math.floor(cfg.intensity):
            raise ConfigError(
                "fock intensity must be an integer photon number",
                line=_find_key_line(text, "field", "intensity"),
            )


def require_tau_grid(cfg: RunConfig):
    if cfg.tau_max is None or cfg.tau_steps is None:
        raise ConfigError("command needs tau_max and tau_steps in [grid]")
    if cfg.tau_max <= cfg.tau_min:
        raise ConfigError("tau_max must exceed tau_min")


def require_intensity(cfg: RunConfig):
    if cfg.intensity is None:
        raise ConfigError("command needs intensity in [field]")


def require_intensity_grid(cfg: RunConfig):
    missing = cfg.intensity_max is None or cfg.intensity_steps is None
    if missing:
        raise ConfigError(
            "heatmap needs intensity_min, intensity_max and intensity_steps in [grid]"
        )
    lo = 0.0 if cfg.intensity_min is None else cfg.intensity_min
    if cfg.intensity_steps > 1 and cfg.intensity_max <= lo:
        raise ConfigError("intensity_max must exceed intensity_min")

"""Request/response models of the HTTP service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

BellName = Literal["phi_plus", "phi_minus", "psi_plus", "psi_minus"]
FieldName = Literal["fock", "coherent", "thermal"]
RouteName = Literal["exact", "effective", "closed"]


class SystemModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    omega: float = 1.0
    omega_a: float = 1.1
    omega_b: float = 1.1
    g_a: float = 0.001
    g_b: float = 0.001


class ScenarioModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["pure_pure", "werner"] = "pure_pure"
    theta_a: float = 0.0
    theta_b: float = 0.0
    gamma: float | None = Field(default=None, ge=0.0, le=1.0)
    bell: BellName = "phi_plus"


class FieldModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: FieldName = "fock"
    intensity: float = Field(default=0.0, ge=0.0)


class TauGridModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tau_min: float = 0.0
    tau_max: float
    steps: int = Field(ge=1)


class IntensityGridModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    intensity_min: float = Field(default=0.0, ge=0.0)
    intensity_max: float = Field(ge=0.0)
    steps: int = Field(ge=1)


class EvolveRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    system: SystemModel = SystemModel()
    scenario: ScenarioModel = ScenarioModel()
    field: FieldModel = FieldModel()
    grid: TauGridModel
    route: RouteName = "closed"


class EvolveResponse(BaseModel):
    taus: list[float]
    times: list[float]
    concurrence: list[float]
    route: RouteName
    header: dict[str, str]


class HeatmapRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    system: SystemModel = SystemModel()
    scenario: ScenarioModel = ScenarioModel()
    field_kind: FieldName = "coherent"
    tau_grid: TauGridModel
    intensity_grid: IntensityGridModel
    route: RouteName = "closed"
    threads: int = Field(default=1, ge=1, le=64)


class HeatmapResponse(BaseModel):
    taus: list[float]
    intensities: list[float]
    values: list[list[float]]  # rows follow the intensity axis
    route: RouteName
    header: dict[str, str]


class BeatsRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    system: SystemModel = SystemModel()
    scenario: ScenarioModel = ScenarioModel()
    field: FieldModel = FieldModel()
    grid: TauGridModel
    route: RouteName = "closed"
    refine_rounds: int = Field(default=3, ge=0, le=8)
    dead_threshold: float = Field(default=1e-3, gt=0.0)


class BeatsResponse(BaseModel):
    has_beats: bool
    centers: list[float]
    fwhms: list[float]
    valleys: list[tuple[float, float]]
    header: dict[str, str]


class ValidateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    system: SystemModel = SystemModel()
    tol: float = Field(default=5e-3, gt=0.0)
    tau_steps: int = Field(default=50, ge=2)
    fock_levels: list[int] = [0, 1, 2]
    thermal_mean_n: float = Field(default=0.5, ge=0.0)
    negative_control_eps: float = Field(default=0.1, gt=0.0)


class CheckModel(BaseModel):
    name: str
    passed: bool
    informational: bool = False
    detail: str = ""


class ValidateResponse(BaseModel):
    passed: bool
    checks: list[CheckModel]

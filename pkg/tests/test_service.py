import math

import numpy as np
import pytest
from fastapi.testclient import TestClient

from ebeats.service.api import app

client = TestClient(app)


def evolve_payload(**overrides):
    payload = {
        "scenario": {"type": "pure_pure", "theta_a": 0.0, "theta_b": 0.0},
        "field": {"kind": "fock", "intensity": 0},
        "grid": {"tau_min": 0.0, "tau_max": 2 * math.pi, "steps": 41},
        "route": "closed",
    }
    payload.update(overrides)
    return payload


def test_health():
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


class TestEvolve:
    def test_vacuum_sine_series(self):
        response = client.post("/evolve", json=evolve_payload())
        assert response.status_code == 200
        data = response.json()
        taus = np.array(data["taus"])
        np.testing.assert_allclose(data["concurrence"], np.abs(np.sin(taus / 2)), atol=1e-12)
        assert data["header"]["scenario"] == "pure_pure"
        assert data["header"]["g_over_delta"] == "0.01"
        assert len(data["times"]) == 41

    def test_werner_fock_constant(self):
        payload = evolve_payload(
            scenario={"type": "werner", "gamma": 9 / 11, "bell": "phi_plus"},
            field={"kind": "fock", "intensity": 3},
        )
        data = client.post("/evolve", json=payload).json()
        np.testing.assert_allclose(data["concurrence"], 8 / 11, atol=1e-10)
        assert data["header"]["gamma"].startswith("0.8181818")

    def test_unknown_field_rejected(self):
        response = client.post("/evolve", json=evolve_payload(bogus=1))
        assert response.status_code == 422

    def test_bad_grid_rejected(self):
        payload = evolve_payload(grid={"tau_min": 1.0, "tau_max": 1.0, "steps": 5})
        response = client.post("/evolve", json=payload)
        assert response.status_code == 400

    def test_werner_without_gamma_rejected(self):
        payload = evolve_payload(scenario={"type": "werner"})
        response = client.post("/evolve", json=payload)
        assert response.status_code == 400

    def test_closed_route_distinct_atoms_rejected(self):
        payload = evolve_payload(system={"omega_a": 1.1, "omega_b": 1.3})
        response = client.post("/evolve", json=payload)
        assert response.status_code == 422


class TestHeatmap:
    def test_shape_and_rows(self):
        payload = {
            "scenario": {"type": "werner", "gamma": 9 / 11},
            "field_kind": "thermal",
            "tau_grid": {"tau_min": 0.0, "tau_max": 4 * math.pi, "steps": 32},
            "intensity_grid": {"intensity_min": 0.0, "intensity_max": 6.0, "steps": 5},
            "route": "closed",
        }
        data = client.post("/heatmap", json=payload).json()
        values = np.array(data["values"])
        assert values.shape == (5, 32)
        np.testing.assert_allclose(values[0], 8 / 11, atol=1e-10)  # vacuum row
        assert data["intensities"] == [0.0, 1.5, 3.0, 4.5, 6.0]

    def test_fock_intensities_rounded_unique(self):
        payload = {
            "scenario": {"type": "werner", "gamma": 0.9},
            "field_kind": "fock",
            "tau_grid": {"tau_min": 0.0, "tau_max": 2.0, "steps": 4},
            "intensity_grid": {"intensity_min": 0.0, "intensity_max": 2.0, "steps": 5},
        }
        data = client.post("/heatmap", json=payload).json()
        assert data["intensities"] == [0.0, 1.0, 2.0]


class TestBeats:
    def test_werner_coherent_beats(self):
        payload = {
            "scenario": {"type": "werner", "gamma": 9 / 11},
            "field": {"kind": "coherent", "intensity": 20.0},
            "grid": {"tau_min": 0.0, "tau_max": 3 * math.pi, "steps": 3001},
        }
        data = client.post("/beats", json=payload).json()
        assert data["has_beats"]
        np.testing.assert_allclose(data["centers"], [math.pi, 2 * math.pi], atol=1e-3)
        assert len(data["valleys"]) >= 2

    def test_fock_werner_no_beats(self):
        payload = {
            "scenario": {"type": "werner", "gamma": 9 / 11},
            "field": {"kind": "fock", "intensity": 2},
            "grid": {"tau_min": 0.0, "tau_max": 4 * math.pi, "steps": 501},
        }
        data = client.post("/beats", json=payload).json()
        assert not data["has_beats"]
        assert data["centers"] == []


class TestValidate:
    def test_default_suite_passes(self):
        response = client.post("/validate", json={})
        assert response.status_code == 200
        data = response.json()
        assert data["passed"]
        hard = [c for c in data["checks"] if not c["informational"]]
        assert all(c["passed"] for c in hard)
        control = [c for c in data["checks"] if c["informational"] and "negative control" in c["name"]]
        assert any(not c["passed"] for c in control)  # breakdown demonstrated

    def test_non_dispersive_system_fails(self):
        payload = {"system": {"omega_a": 1.1, "omega_b": 1.1, "g_a": 0.01, "g_b": 0.01}}
        data = client.post("/validate", json=payload).json()
        assert not data["passed"]

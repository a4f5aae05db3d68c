"""Command-line client for the simulation service.

Commands build JSON requests from a key=value config file and send them to
the HTTP service: by default an in-process instance of the app (no server
needed), or a remote one via --server. Results land as CSV files.

Exit codes: 0 success, 1 computation error, 2 configuration error.
"""

from __future__ import annotations

import argparse
import asyncio
import sys

import httpx

from .config import (
    RunConfig,
    load_config,
    require_intensity,
    require_intensity_grid,
    require_tau_grid,
)
from .errors import ConfigError, EbeatsError


class ComputationError(EbeatsError):
    """Server-side failure, surfaced verbatim."""


def _post(path: str, payload: dict, server: str | None) -> dict:
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            response = client.post(path, json=payload)
    else:
        from .service.api import app

        async def _go():
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://ebeats.internal", timeout=None
            ) as client:
                return await client.post(path, json=payload)

        response = asyncio.run(_go())
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        raise ComputationError(f"{path} failed ({response.status_code}): {detail}")
    return response.json()


# ---------------------------------------------------------------------------
# config -> request payloads


def _system_payload(cfg: RunConfig) -> dict:
    return dict(cfg.system)


def _scenario_payload(cfg: RunConfig) -> dict:
    if cfg.scenario_type == "werner":
        return {"type": "werner", "gamma": cfg.gamma, "bell": cfg.bell or "phi_plus"}
    return {"type": "pure_pure", "theta_a": cfg.theta_a, "theta_b": cfg.theta_b}


def _evolve_payload(cfg: RunConfig, route: str) -> dict:
    require_tau_grid(cfg)
    require_intensity(cfg)
    return {
        "system": _system_payload(cfg),
        "scenario": _scenario_payload(cfg),
        "field": {"kind": cfg.field_kind, "intensity": cfg.intensity},
        "grid": {"tau_min": cfg.tau_min, "tau_max": cfg.tau_max, "steps": cfg.tau_steps},
        "route": route,
    }


def _heatmap_payload(cfg: RunConfig, route: str, threads: int) -> dict:
    require_tau_grid(cfg)
    require_intensity_grid(cfg)
    return {
        "system": _system_payload(cfg),
        "scenario": _scenario_payload(cfg),
        "field_kind": cfg.field_kind,
        "tau_grid": {"tau_min": cfg.tau_min, "tau_max": cfg.tau_max, "steps": cfg.tau_steps},
        "intensity_grid": {
            "intensity_min": cfg.intensity_min or 0.0,
            "intensity_max": cfg.intensity_max,
            "steps": cfg.intensity_steps,
        },
        "route": route,
        "threads": threads,
    }


# ---------------------------------------------------------------------------
# CSV output


def _formatter(precision: int):
    fmt = f"%.{precision}g"

    def _format(value: float) -> str:
        return fmt % value

    return _format


def _write_csv(path: str, header: dict[str, str], columns: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key, value in header.items():
            fh.write(f"# {key}={value}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _output_path(cfg: RunConfig, override: str | None) -> str:
    path = override or cfg.output_path
    if not path:
        raise ConfigError("no output path: set [output] path or pass --output")
    return path


def _sibling_path(path: str, suffix: str) -> str:
    if path.endswith(".csv"):
        return path[: -len(".csv")] + suffix + ".csv"
    return path + suffix


# ---------------------------------------------------------------------------
# commands


def cmd_evolve(args) -> int:
    cfg = load_config(args.config)
    data = _post("/evolve", _evolve_payload(cfg, args.route), args.server)
    fmt = _formatter(cfg.precision)
    rows = (
        (fmt(tau), fmt(t), fmt(c))
        for tau, t, c in zip(data["taus"], data["times"], data["concurrence"])
    )
    path = _output_path(cfg, args.output)
    _write_csv(path, data["header"], ["tau", "time", "concurrence"], rows)
    print(f"wrote {len(data['taus'])} rows to {path}")
    return 0


def cmd_heatmap(args) -> int:
    cfg = load_config(args.config)
    data = _post("/heatmap", _heatmap_payload(cfg, args.route, args.threads), args.server)
    fmt = _formatter(cfg.precision)

    def rows():
        for intensity, row in zip(data["intensities"], data["values"]):
            for tau, value in zip(data["taus"], row):
                yield (fmt(tau), fmt(intensity), fmt(value))

    path = _output_path(cfg, args.output)
    _write_csv(path, data["header"], ["tau", "mean_n", "concurrence"], rows())
    print(f"wrote {len(data['intensities']) * len(data['taus'])} rows to {path}")
    return 0


def cmd_beats(args) -> int:
    cfg = load_config(args.config)
    payload = _evolve_payload(cfg, args.route)
    payload["refine_rounds"] = args.refine_rounds
    data = _post("/beats", payload, args.server)
    fmt = _formatter(cfg.precision)

    if not data["has_beats"]:
        print("no beats detected (series constant or monotone)")
    else:
        print(f"{len(data['centers'])} beats:")
        for center, width in zip(data["centers"], data["fwhms"]):
            print(f"  center tau={fmt(center)}  fwhm={fmt(width)}")
    if data["valleys"]:
        print(f"{len(data['valleys'])} dead valleys:")
        for lo, hi in data["valleys"]:
            print(f"  tau in [{fmt(lo)}, {fmt(hi)}]")

    path = _output_path(cfg, args.output)
    _write_csv(
        path,
        data["header"],
        ["beat_center_tau", "fwhm_tau"],
        ((fmt(c), fmt(w)) for c, w in zip(data["centers"], data["fwhms"])),
    )
    valley_path = _sibling_path(path, "_valleys")
    _write_csv(
        valley_path,
        data["header"],
        ["valley_start_tau", "valley_end_tau"],
        ((fmt(lo), fmt(hi)) for lo, hi in data["valleys"]),
    )
    print(f"wrote beat centers to {path}, valleys to {valley_path}")
    return 0


def cmd_validate(args) -> int:
    payload: dict = {"tol": args.tol}
    if args.config:
        cfg = load_config(args.config)
        payload["system"] = _system_payload(cfg)
    data = _post("/validate", payload, args.server)
    for check in data["checks"]:
        tag = "INFO" if check["informational"] else ("PASS" if check["passed"] else "FAIL")
        print(f"[{tag}] {check['name']}: {check['detail']}")
    print("overall:", "PASS" if data["passed"] else "FAIL")
    return 0 if data["passed"] else 1


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("ebeats.service.api:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ebeats",
        description="entanglement dynamics of two atoms dispersively coupled to one field mode",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config_required=True):
        p.add_argument("--config", required=config_required, help="key=value config file")
        p.add_argument("--output", help="output CSV path (overrides [output] path)")
        p.add_argument(
            "--route",
            choices=["exact", "effective", "closed"],
            default="closed",
            help="evolution route (default: closed)",
        )
        p.add_argument("--server", help="base URL of a running service (default: in-process)")
        p.add_argument("--threads", type=int, default=1, help="parallel scan rows")

    p_evolve = sub.add_parser("evolve", help="concurrence time series -> CSV")
    common(p_evolve)
    p_evolve.set_defaults(func=cmd_evolve)

    p_heatmap = sub.add_parser("heatmap", help="concurrence over (tau x intensity) -> CSV")
    common(p_heatmap)
    p_heatmap.set_defaults(func=cmd_heatmap)

    p_beats = sub.add_parser("beats", help="beat centers, widths and dead valleys")
    common(p_beats)
    p_beats.add_argument("--refine-rounds", type=int, default=3, help="bisection refinement rounds")
    p_beats.set_defaults(func=cmd_beats)

    p_validate = sub.add_parser("validate", help="cross-route validation suite")
    common(p_validate, config_required=False)
    p_validate.add_argument("--tol", type=float, default=5e-3, help="trace-distance tolerance")
    p_validate.set_defaults(func=cmd_validate)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (EbeatsError, httpx.HTTPError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

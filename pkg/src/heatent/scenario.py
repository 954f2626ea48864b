"""Scenario files for the ``protocol`` command: loading, validation, reports."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .protocol import (
    DEFAULT_INTERSECTION_TOL,
    Measurement,
    RecoveryReport,
    RecoveryResult,
    ScanConfig,
    recover,
    simulate_and_recover,
)

_TOKEN = re.compile(r'"(?:[^"\\]|\\.)*"|[{}\[\],:]|[^\s{}\[\],:"]+')


class ScenarioError(ValueError):
    """Invalid scenario file; the message is anchored as ``file:line: ...``."""


@dataclass(frozen=True)
class SimulateBlock:
    true_lambda: float
    betas: tuple[float, ...]
    extra_betas: tuple[float, ...] = ()
    noise_sigma: float = 0.0
    seed: int = 0


@dataclass(frozen=True)
class Scenario:
    h: float = 1.0
    measurements: tuple[Measurement, ...] = ()
    scan: ScanConfig = field(default_factory=ScanConfig)
    intersection_tol: float = DEFAULT_INTERSECTION_TOL
    simulate: SimulateBlock | None = None


def load_schema() -> dict:
    text = resources.files("heatent").joinpath("scenario.schema.json").read_text()
    return json.loads(text)


def _value_lines(text: str) -> dict[tuple, int]:
    """Map every JSON path in ``text`` to the line on which its value (or key) starts."""
    lines: dict[tuple, int] = {}
    stack: list[list] = []  # [kind, key_or_index, expecting_key]
    line, pos = 1, 0
    for m in _TOKEN.finditer(text):
        line += text.count("\n", pos, m.start())
        pos = m.start()
        tok = m.group()
        top = stack[-1] if stack else None
        if top is not None and top[0] == "obj" and top[2]:
            if tok == "}":
                stack.pop()
            elif tok.startswith('"'):
                top[1], top[2] = json.loads(tok), False
                lines.setdefault(tuple(f[1] for f in stack), line)
            continue
        if tok == ":":
            continue
        if tok == ",":
            if top is not None:
                if top[0] == "obj":
                    top[2] = True
                else:
                    top[1] += 1
            continue
        if tok in "}]":
            stack.pop()
            continue
        lines.setdefault(tuple(f[1] for f in stack), line)
        if tok == "{":
            stack.append(["obj", None, True])
        elif tok == "[":
            stack.append(["arr", 0, False])
    return lines


def _locate(path: tuple, lines: dict[tuple, int]) -> int:
    while path not in lines and path:
        path = path[:-1]
    return lines.get(path, 1)


def _describe(err: jsonschema.ValidationError) -> tuple[tuple, str]:
    path = tuple(err.absolute_path)
    where = "/".join(map(str, path)) or "<root>"
    if err.validator == "additionalProperties":
        allowed = set(err.schema.get("properties", {}))
        extra = sorted(k for k in err.instance if k not in allowed)
        return path + (extra[0],), f"unknown key {extra[0]!r} in {where}"
    return path, f"{where}: {err.message}"


def parse_scenario(text: str, source: str = "<scenario>") -> Scenario:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"{source}:{e.lineno}: invalid JSON: {e.msg}") from None

    validator = jsonschema.Draft202012Validator(load_schema())
    errors = [_describe(e) for e in validator.iter_errors(data)]
    if errors:
        lines = _value_lines(text)
        line, msg = min((_locate(path, lines), msg) for path, msg in errors)
        raise ScenarioError(f"{source}:{line}: {msg}")

    has_meas, has_sim = "measurements" in data, "simulate" in data
    if has_meas == has_sim:
        raise ScenarioError(
            f"{source}:1: exactly one of 'measurements' or 'simulate' is required"
        )

    scan = ScanConfig(**data.get("scan", {}))
    sim = None
    if has_sim:
        s = data["simulate"]
        sim = SimulateBlock(
            true_lambda=float(s["true_lambda"]),
            betas=tuple(float(b) for b in s["betas"]),
            extra_betas=tuple(float(b) for b in s.get("extra_betas", ())),
            noise_sigma=float(s.get("noise_sigma", 0.0)),
            seed=int(s.get("seed", 0)),
        )
    return Scenario(
        h=float(data.get("h", 1.0)),
        measurements=tuple(
            Measurement(float(m["beta"]), float(m["c_meas"]))
            for m in data.get("measurements", ())
        ),
        scan=scan,
        intersection_tol=float(data.get("intersection_tol", DEFAULT_INTERSECTION_TOL)),
        simulate=sim,
    )


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    return parse_scenario(path.read_text(), str(path))


def run_scenario(sc: Scenario) -> tuple[RecoveryResult, RecoveryReport | None]:
    if sc.simulate is None:
        return recover(sc.measurements, sc.h, sc.scan, sc.intersection_tol), None
    s = sc.simulate
    report = simulate_and_recover(
        s.true_lambda,
        sc.h,
        s.betas,
        noise_sigma=s.noise_sigma,
        seed=s.seed,
        scan=sc.scan,
        tol=sc.intersection_tol,
        extra_betas=s.extra_betas,
    )
    return report.result, report


def _r6(x: float | None) -> float | None:
    return None if x is None else round(float(x), 6) + 0.0


def report_dict(sc: Scenario, result: RecoveryResult, sim: RecoveryReport | None) -> dict[str, Any]:
    out: dict[str, Any] = {
        "status": result.status.value,
        "lambda_p": _r6(result.lambda_p),
        "concurrence": _r6(result.concurrence),
        "matches": [_r6(v) for v in result.matches],
        "h": sc.h,
        "candidate_sets": [
            {
                "beta": cs.measurement.beta,
                "c_meas": cs.measurement.c_meas,
                "lambdas": [_r6(v) for v in cs.lambdas],
                "tangent": list(cs.tangent),
                "warnings": cs.warnings,
            }
            for cs in result.candidate_sets
        ],
        "tolerances": {
            "intersection_tol": result.intersection_tol,
            "refine_tol": sc.scan.refine_tol,
            "near_tangent_tol": sc.scan.near_tangent_tol,
            "grid_points": sc.scan.grid_points,
            "lambda_max": sc.scan.lambda_max,
        },
    }
    if sim is not None:
        out["simulate"] = {
            "true_lambda": sim.true_lambda,
            "noise_sigma": sim.noise_sigma,
            "seed": sim.seed,
            "error": sim.error,
        }
    return out

"""Batch front end: JSON in, JSON report out.

Exit status is 0 when every check in the report passes, 1 on an invariant
failure (the report then carries an ``error`` object or ``passed: false``),
and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import acceptance
from .curvequad import ConfigPoint, QuadratureSpec
from .eisenstein import gram_and_discriminant, signature
from .errors import SixLinesError
from .inverse import (
    BRANCH_ORDER,
    ZERO_ORDER_ROWS,
    expected_zero_pattern,
    vanishing_residual,
    x_of_period,
    zero_pattern,
)
from .modgroup import act_on_D, random_level_element
from .periodmap import PeriodPoint, embed_jD, forward

SCHEMA = "1"
COMMANDS = (
    "forward", "invert", "roundtrip", "theta-vanish", "table-zeros",
    "orbit-check", "lattice-check", "selftest",
)
ROUNDTRIP_BAR = 1e-6
ON_IMAGE_BAR = 1e-8


class UsageError(Exception):
    pass


@dataclass
class JobConfig:
    command: str
    inputs: dict = field(default_factory=dict)
    quad_tol: float = 1e-10
    theta_eps: float = 1e-12
    seed: int = 0
    output_path: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not (self.quad_tol > 0 and self.theta_eps > 0):
            raise UsageError("tolerances must be positive")

    @property
    def spec(self) -> QuadratureSpec:
        return QuadratureSpec(abs_tol=self.quad_tol, rel_tol=self.quad_tol)


def _jsonable(x: Any) -> Any:
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _complex(v) -> complex:
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, (int, float)):
        return complex(v)
    raise UsageError(f"expected a number or [re, im] pair, got {v!r}")


def _configs(job: JobConfig, default: Callable[[], list[ConfigPoint]]) -> list[ConfigPoint]:
    raw = job.inputs.get("points")
    if raw is None:
        return default()
    try:
        return [ConfigPoint(float(x1), float(x2)) for x1, x2 in raw]
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SixLinesError):
            raise
        raise UsageError(f"points must be a list of [x1, x2] pairs: {exc}") from exc


def _period_points(job: JobConfig) -> list[PeriodPoint]:
    raw = job.inputs.get("points")
    if not isinstance(raw, list):
        raise UsageError("invert expects {\"points\": [{\"eta\": .., \"z1\": .., \"z2\": ..}, ...]}")
    try:
        return [PeriodPoint(_complex(r["eta"]), _complex(r["z1"]), _complex(r["z2"])) for r in raw]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed period point: {exc}") from exc


def cmd_forward(job: JobConfig) -> tuple[bool, Any]:
    out = []
    for cfg in _configs(job, lambda: [ConfigPoint(0.3, 0.5)]):
        p = forward(cfg, job.spec)
        s = embed_jD(p)
        out.append({
            "x": [cfg.x1, cfg.x2], "t": cfg.t, "eta": p.eta, "z1": p.z1, "z2": p.z2,
            "tau": s.tau, "zeta": s.zeta, "re_eta_positive": p.eta.real > 0,
        })
    return all(r["re_eta_positive"] for r in out), out


def cmd_invert(job: JobConfig) -> tuple[bool, Any]:
    out = []
    for p in _period_points(job):
        r = x_of_period(p, job.theta_eps)
        out.append({"x1_hat": r.x1_hat, "x2_hat": r.x2_hat, "vanish_residual": r.vanish_residual})
    return True, out


def cmd_roundtrip(job: JobConfig) -> tuple[bool, Any]:
    n = int(job.inputs.get("n", 7))
    margin = float(job.inputs.get("margin", 0.05))
    err = imag = 0.0
    cfgs = acceptance.grid_configs(n, margin)
    for cfg in cfgs:
        r = x_of_period(forward(cfg, job.spec), job.theta_eps)
        err = max(err, abs(r.x1_hat.real - cfg.x1), abs(r.x2_hat.real - cfg.x2))
        imag = max(imag, r.max_imag())
    return err < ROUNDTRIP_BAR, {"points": len(cfgs), "max_abs_err": err, "max_imag": imag}


def cmd_theta_vanish(job: JobConfig) -> tuple[bool, Any]:
    out = []
    for cfg in _configs(job, acceptance.grid_configs):
        res = vanishing_residual(forward(cfg, job.spec), job.theta_eps)
        out.append({"x": [cfg.x1, cfg.x2], "residual": res})
    return max(r["residual"] for r in out) < ON_IMAGE_BAR, out


def cmd_table_zeros(job: JobConfig) -> tuple[bool, Any]:
    expected = expected_zero_pattern()
    out = []
    for cfg in _configs(job, lambda: list(acceptance.PATTERN_CONFIGS)):
        tau = embed_jD(forward(cfg, job.spec)).tau
        pattern = zero_pattern(tau, job.theta_eps)
        out.append({"x": [cfg.x1, cfg.x2], "pattern": pattern.astype(int),
                    "matches": bool(np.array_equal(pattern, expected))})
    report = {"rows": [list(m) for m in ZERO_ORDER_ROWS], "columns": list(BRANCH_ORDER),
              "expected": expected.astype(int), "points": out}
    return all(r["matches"] for r in out), report


def cmd_orbit_check(job: JobConfig) -> tuple[bool, Any]:
    count = int(job.inputs.get("count", 20))
    word_len = int(job.inputs.get("word_len", 4))
    rng = random.Random(job.seed)
    out = []
    for cfg in _configs(job, lambda: [ConfigPoint(0.3, 0.5)]):
        p = forward(cfg, job.spec)
        dev = res = 0.0
        for _ in range(count):
            q = act_on_D(random_level_element(rng, word_len), p)
            r = x_of_period(q, job.theta_eps)
            dev = max(dev, abs(r.x1_hat - cfg.x1), abs(r.x2_hat - cfg.x2))
            res = max(res, r.vanish_residual)
        out.append({"x": [cfg.x1, cfg.x2], "max_x_dev": dev, "max_residual": res})
    return all(r["max_x_dev"] < ROUNDTRIP_BAR and r["max_residual"] < ON_IMAGE_BAR for r in out), out


def cmd_lattice_check(job: JobConfig) -> tuple[bool, Any]:
    gram, det = gram_and_discriminant()
    sig = signature(gram)
    return det == 9 and tuple(sig) == (2, 2), {"gram": gram, "det": det, "signature": list(sig)}


def cmd_selftest(job: JobConfig) -> tuple[bool, Any]:
    results = acceptance.run_all()
    out = []
    for r in results:
        # wall-clock time would break byte-identical reports
        detail = {k: v for k, v in r.detail.items() if k != "seconds"}
        out.append({"criterion": r.number, "name": r.name, "passed": r.passed, "detail": detail})
    return all(r.passed for r in results), out


HANDLERS: dict[str, Callable[[JobConfig], tuple[bool, Any]]] = {
    "forward": cmd_forward,
    "invert": cmd_invert,
    "roundtrip": cmd_roundtrip,
    "theta-vanish": cmd_theta_vanish,
    "table-zeros": cmd_table_zeros,
    "orbit-check": cmd_orbit_check,
    "lattice-check": cmd_lattice_check,
    "selftest": cmd_selftest,
}


def run(job: JobConfig) -> tuple[int, dict]:
    """Execute a job; returns (exit status, report)."""
    report: dict[str, Any] = {
        "schema": SCHEMA,
        "command": job.command,
        "config": {"quad_tol": job.quad_tol, "theta_eps": job.theta_eps, "seed": job.seed},
    }
    try:
        passed, result = HANDLERS[job.command](job)
    except SixLinesError as exc:
        report.update(passed=False, error={"code": exc.code, "type": type(exc).__name__, "message": str(exc)})
        return 1, report
    report.update(passed=bool(passed), result=result)
    return (0 if passed else 1), report


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sixlines", description=__doc__.splitlines()[0])
    ap.add_argument("--command", required=True, choices=COMMANDS)
    ap.add_argument("--input", help="JSON input file, or - for stdin")
    ap.add_argument("--quad-tol", type=float, default=1e-10)
    ap.add_argument("--theta-eps", type=float, default=1e-12)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", help="write the report here instead of stdout")
    return ap


def _read_input(path: str | None) -> dict:
    if path is None:
        return {}
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    data = json.loads(text) if text.strip() else {}
    if isinstance(data, list):
        data = {"points": data}
    if not isinstance(data, dict):
        raise UsageError("input JSON must be an object or a list of points")
    return data


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = JobConfig(args.command, _read_input(args.input), args.quad_tol,
                        args.theta_eps, args.seed, args.out)
        status, report = run(job)
    except (UsageError, OSError, json.JSONDecodeError) as exc:
        print(f"sixlines: error: {exc}", file=sys.stderr)
        return 2
    except SixLinesError as exc:
        # raised while parsing inputs, e.g. a point outside the chamber
        status, report = 1, {"schema": SCHEMA, "command": args.command, "passed": False,
                             "error": {"code": exc.code, "type": type(exc).__name__, "message": str(exc)}}
    text = json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())

"""The nine end-to-end acceptance checks, shared by the test suite and ``selftest``.

Each check returns a :class:`CriterionResult` whose ``detail`` carries the
measured quantities, so callers can assert on them directly.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .curvequad import ChainId, ConfigPoint, QuadratureSpec, chain_magnitude, config_on_fiber
from .eisenstein import gram_and_discriminant, signature
from .inverse import (
    VANISH_THRESHOLD,
    expected_zero_pattern,
    residual_at,
    t_inverse,
    vanishing_residual,
    x_of_period,
    zero_pattern,
)
from .modgroup import act_on_D, act_on_siegel, embed_jG, is_in_gamma, is_in_level, random_level_element
from .periodmap import PeriodPoint, embed_jD, forward
from .quadrature import appell_f1, gauss_2f1
from .theta import ThetaChar, theta_value

QUAD_SPEC = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-13)
THETA_EPS = 1e-12


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"criterion {self.number} [{self.name}]: {'PASS' if self.passed else 'FAIL'}"


def grid_configs(n: int = 7, margin: float = 0.05) -> list[ConfigPoint]:
    """n x n grid of the chamber, keeping every wall at least ``margin`` away.

    x1 runs over [margin, 1 - 2 margin]; for each x1, x2 runs over
    [margin, 1 - x1 - margin].
    """
    out = []
    for x1 in np.linspace(margin, 1 - 2 * margin, n):
        for s in np.linspace(0.0, 1.0, n):
            x2 = margin + s * (1 - x1 - 2 * margin)
            out.append(ConfigPoint(float(x1), float(x2)))
    return out


def random_configs(count: int, seed: int, margin: float = 0.05) -> list[ConfigPoint]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        x1 = rng.uniform(margin, 1 - 2 * margin)
        x2 = rng.uniform(margin, 1 - x1 - margin)
        out.append(ConfigPoint(x1, x2))
    return out


def symmetric_config_for_t(t: float) -> ConfigPoint:
    """The point x1 = x2 = x with (1 - 2x)/(1 - x)^2 = t."""
    y = (1 - math.sqrt(1 - t)) / t
    return ConfigPoint(1 - y, 1 - y)


def guard_forward(cfg: ConfigPoint, spec: QuadratureSpec = QUAD_SPEC) -> tuple[PeriodPoint, list[str]]:
    """forward() plus the structural checks on (eta, tau); returns any failures."""
    p = forward(cfg, spec)
    s = embed_jD(p)
    issues = []
    if not p.eta.real > 0:
        issues.append("Re eta <= 0")
    if s.tau[0, 1] != s.tau[1, 0]:
        issues.append("tau not symmetric")
    if not np.linalg.eigvalsh(s.tau.imag).min() > 0:
        issues.append("Im tau not positive definite")
    if s.tau[0, 1] != -0.5 or s.tau[1, 0] != -0.5:
        issues.append("tau_12 != -1/2")
    return p, issues


def criterion_1(spec: QuadratureSpec = QUAD_SPEC, eps: float = THETA_EPS) -> CriterionResult:
    start = time.perf_counter()
    err = imag = 0.0
    cfgs = grid_configs()
    for cfg in cfgs:
        r = x_of_period(forward(cfg, spec), eps)
        err = max(err, abs(r.x1_hat.real - cfg.x1), abs(r.x2_hat.real - cfg.x2))
        imag = max(imag, r.max_imag())
    elapsed = time.perf_counter() - start
    ok = err < 1e-6 and imag < 1e-7 and elapsed < 120
    return CriterionResult(1, "round trip", ok, {
        "points": len(cfgs), "max_abs_err": err, "max_imag": imag, "seconds": elapsed})


def random_off_image(count: int, seed: int) -> list[PeriodPoint]:
    rng = random.Random(seed)
    pts = []
    for _ in range(count):
        eta = complex(rng.uniform(0.3, 3.0), rng.uniform(-1.5, 1.5))
        z1 = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        z2 = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        pts.append(PeriodPoint(eta, z1, z2))
    return pts


def criterion_2(spec: QuadratureSpec = QUAD_SPEC, eps: float = THETA_EPS, seed: int = 2) -> CriterionResult:
    on = max(vanishing_residual(forward(cfg, spec), eps) for cfg in grid_configs())
    off = min(vanishing_residual(p, eps) for p in random_off_image(50, seed))
    return CriterionResult(2, "image characterization", on < 1e-8 and off >= 1e-2, {
        "max_on_image": on, "min_off_image": off})


PATTERN_CONFIGS = (ConfigPoint(0.3, 0.3), ConfigPoint(0.1, 0.6), ConfigPoint(0.45, 0.2))


def curve_sample_residuals(cfg: ConfigPoint, count: int, seed: int,
                           spec: QuadratureSpec = QUAD_SPEC, eps: float = THETA_EPS) -> list[float]:
    """Residual of theta_[1,2] at zeta(p) for random points p on the real segment 0 < u < 1 of C_t.

    The curve point over u is the endpoint of the chain from 0 to u, which
    is the third chain of the configuration ``config_on_fiber(t, u)``; its
    tau coincides with that of ``cfg``.
    """
    rng = random.Random(seed)
    tau = embed_jD(forward(cfg, spec)).tau
    out = []
    for _ in range(count):
        u = rng.uniform(0.05, 0.95)
        zeta = embed_jD(forward(config_on_fiber(cfg.t, u), spec)).zeta
        out.append(residual_at(tau, zeta, eps))
    return out


def criterion_3(spec: QuadratureSpec = QUAD_SPEC, eps: float = THETA_EPS, seed: int = 3) -> CriterionResult:
    expected = expected_zero_pattern()
    mismatches = 0
    for cfg in PATTERN_CONFIGS:
        tau = embed_jD(forward(cfg, spec)).tau
        mismatches += int(np.sum(zero_pattern(tau, eps) != expected))
    samples = curve_sample_residuals(PATTERN_CONFIGS[0], 5, seed, spec, eps)
    ok = mismatches == 0 and max(samples) < VANISH_THRESHOLD
    return CriterionResult(3, "zero pattern", ok, {
        "mismatches": mismatches, "max_curve_residual": max(samples)})


def criterion_4(spec: QuadratureSpec = QUAD_SPEC, eps: float = THETA_EPS) -> CriterionResult:
    errs = {}
    for t in (0.2, 0.5, 0.75):
        tau = embed_jD(forward(symmetric_config_for_t(t), spec)).tau
        t_hat = 1 / t_inverse(tau, eps)
        errs[str(t)] = abs(t_hat - t)
    return CriterionResult(4, "Schwarz inversion", max(errs.values()) < 1e-8, {"abs_err": errs})


def _beta(a: float, b: float) -> float:
    return math.gamma(a) * math.gamma(b) / math.gamma(a + b)


def closed_forms(cfg: ConfigPoint) -> dict[ChainId, float]:
    """Chain magnitudes from hypergeometric closed forms.

    The complete chains are Euler integrals (2F1); the incomplete chains
    over (0, L) are 3 L^(1/3) F1(1/3; 1/3, 1/3; 4/3; L, t L).
    """
    t = cfg.t
    out = {
        ChainId.GAMMA1: _beta(1 / 3, 1 / 3) * gauss_2f1(1 / 3, 1 / 3, 2 / 3, 1 - t),
        ChainId.GAMMA2: _beta(1 / 3, 2 / 3) * gauss_2f1(1 / 3, 1 / 3, 1.0, t),
    }
    for chain, x in ((ChainId.GAMMA3, cfg.x1), (ChainId.GAMMA4, cfg.x2)):
        L = 1 - x
        out[chain] = 3 * L ** (1 / 3) * appell_f1(1 / 3, 1 / 3, 1 / 3, 4 / 3, L, t * L)
    return out


def criterion_5(spec: QuadratureSpec = QUAD_SPEC, seed: int = 5) -> CriterionResult:
    worst_routes = worst_closed = 0.0
    for cfg in random_configs(20, seed):
        for chain in ChainId:
            a = chain_magnitude(chain, cfg, spec, "tanh-sinh")
            b = chain_magnitude(chain, cfg, spec, "gauss-jacobi")
            worst_routes = max(worst_routes, abs(a - b) / abs(b))
        for chain, ref in closed_forms(cfg).items():
            got = chain_magnitude(chain, cfg, spec)
            worst_closed = max(worst_closed, abs(got - ref) / abs(ref))
    ok = worst_routes < 1e-9 and worst_closed < 1e-9
    return CriterionResult(5, "quadrature oracle", ok, {
        "max_rel_two_routes": worst_routes, "max_rel_closed_form": worst_closed})


ORBIT_BASE = (ConfigPoint(0.3, 0.5), ConfigPoint(0.2, 0.2), ConfigPoint(0.6, 0.15))


def criterion_6(spec: QuadratureSpec = QUAD_SPEC, eps: float = THETA_EPS, seed: int = 6,
                count: int = 100) -> CriterionResult:
    rng = random.Random(seed)
    bases = [(cfg, forward(cfg, spec)) for cfg in ORBIT_BASE]
    membership = symplectic = True
    equiv = x_dev = 0.0
    for k in range(count):
        g = random_level_element(rng, rng.randint(1, 5))
        membership &= is_in_gamma(g.g) and is_in_level(g)
        sa = embed_jG(g)
        symplectic &= sa.is_symplectic()
        cfg, p = bases[k % len(bases)]
        q = act_on_D(g, p)
        lhs = embed_jD(q)
        rhs = act_on_siegel(sa, embed_jD(p))
        equiv = max(equiv, float(np.abs(lhs.tau - rhs.tau).max()), float(np.abs(lhs.zeta - rhs.zeta).max()))
        r = x_of_period(q, eps)
        x_dev = max(x_dev, abs(r.x1_hat - cfg.x1), abs(r.x2_hat - cfg.x2))
    ok = membership and symplectic and equiv < 1e-9 and x_dev < 1e-6
    return CriterionResult(6, "group suite", ok, {
        "elements": count, "membership": membership, "symplectic": symplectic,
        "max_equivariance_dev": equiv, "max_orbit_x_dev": x_dev})


def criterion_7() -> CriterionResult:
    gram, d = gram_and_discriminant()
    sig = signature(gram)
    return CriterionResult(7, "lattice", d == 9 and tuple(sig) == (2, 2), {"det": d, "signature": list(sig)})


def _third(rng: random.Random) -> tuple[Fraction, Fraction]:
    return tuple(Fraction(rng.randint(-3, 3), 3) for _ in range(2))


def criterion_8(spec: QuadratureSpec = QUAD_SPEC, eps: float = THETA_EPS, seed: int = 8) -> CriterionResult:
    rng = random.Random(seed)
    tau = embed_jD(forward(ConfigPoint(0.3, 0.5), spec)).tau
    quasi = trunc = 0.0
    for _ in range(50):
        ch = ThetaChar(_third(rng), _third(rng))
        c, d = _third(rng), _third(rng)
        cf = np.array([float(v) for v in c])
        df = np.array([float(v) for v in d])
        bd = np.array([float(ch.b[i] + d[i]) for i in range(2)])
        zeta = cf @ tau + df
        lhs = theta_value(ch, tau, zeta, eps)
        factor = np.exp(-1j * math.pi * (cf @ tau @ cf + 2 * cf @ bd))
        rhs = factor * theta_value(ch.shifted(c, d), tau, np.zeros(2), eps)
        quasi = max(quasi, float(abs(lhs - rhs)))
        trunc = max(trunc, abs(lhs - theta_value(ch, tau, zeta, eps, radius_scale=2.0)))
    return CriterionResult(8, "theta self-consistency", quasi < 1e-10 and trunc < eps, {
        "max_quasi_periodicity": quasi, "max_R_vs_2R": trunc})


def criterion_9(spec: QuadratureSpec = QUAD_SPEC) -> CriterionResult:
    cfgs = grid_configs() + random_configs(20, 9, margin=1e-3)
    failures = []
    for cfg in cfgs:
        _, issues = guard_forward(cfg, spec)
        failures += [f"{cfg}: {msg}" for msg in issues]
    return CriterionResult(9, "invariant guards", not failures, {
        "evaluations": len(cfgs), "failures": failures})


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9,
}


def run_all() -> list[CriterionResult]:
    return [CRITERIA[k]() for k in sorted(CRITERIA)]


__all__ = ["CRITERIA", "CriterionResult", "run_all", "grid_configs", "random_configs",
           "symmetric_config_for_t", "closed_forms", "curve_sample_residuals", "random_off_image",
           "guard_forward"]

"""Period integrals of the monodromy curve C_t : w^3 = u (1-u)^2 / (1 - t u).

The holomorphic form is psi_1 = w du / (u(1-u)) = u^(-2/3) (1-u)^(-1/3) (1-tu)^(-1/3) du.
Over each real chain gamma_i the branch of w is fixed by a ray, which makes
psi_1 a constant phase times the positive magnitude

    |u|^(-2/3) |1-u|^(-1/3) |1-tu|^(-1/3) |du|.

Every chain is oriented by increasing u and compactified to s in (0, 1):

=======  ================  ==================  ==========  =====================
chain    u-interval        substitution        w-ray       phase of psi_1
=======  ================  ==================  ==========  =====================
gamma1   (-inf, 0)         u = -s/(1-s)        e(1/2)      1
gamma2   (1/t, inf)        u = 1/(t s)         e(1/6)      omega^2
gamma3   (0, 1-x1)         u = (1-x1) s        e(1/3)      omega
gamma4   (0, 1-x2)         u = (1-x2) s        e(1/3)      omega
=======  ================  ==================  ==========  =====================

After substitution each integrand is s^a (1-s)^b times a factor analytic
on [0, 1], which is what both quadrature routes consume.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError
from .quadrature import gauss_jacobi, tanh_sinh

OMEGA = complex(-0.5, math.sqrt(3) / 2)

# min(x1, x2, 1-x1-x2, t, 1-t) must exceed this
BOUNDARY_MARGIN = 1e-6


@dataclass(frozen=True)
class ConfigPoint:
    """A special configuration in the real chamber 0 < x1, x2, x1 + x2 < 1."""

    x1: float
    x2: float

    def __post_init__(self):
        check_chamber(self.x1, self.x2)

    @property
    def t(self) -> float:
        return t_of_config(self)

    def swapped(self) -> ConfigPoint:
        return ConfigPoint(self.x2, self.x1)


class ChainId(enum.Enum):
    GAMMA1 = "gamma1"
    GAMMA2 = "gamma2"
    GAMMA3 = "gamma3"
    GAMMA4 = "gamma4"


CHAIN_PHASE = {
    ChainId.GAMMA1: 1.0 + 0j,
    ChainId.GAMMA2: OMEGA.conjugate(),
    ChainId.GAMMA3: OMEGA,
    ChainId.GAMMA4: OMEGA,
}

# Orientation sign per chain; pinned at (0.3, 0.3) by the theta-vanishing
# and round-trip identities, then frozen.
CHAIN_ORIENTATION = {
    ChainId.GAMMA1: 1,
    ChainId.GAMMA2: 1,
    ChainId.GAMMA3: 1,
    ChainId.GAMMA4: 1,
}


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_refinement_levels: int = 10

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_refinement_levels < 1:
            raise ValueError("max_refinement_levels must be >= 1")


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class CurvePeriods:
    """y_i = integral of psi_1 over beta_i, with the elliptic factor c_E set to 1."""

    y1: complex
    y2: complex
    y3: complex
    y4: complex

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.y1, self.y2, self.y3, self.y4)


def _t(x1: float, x2: float) -> float:
    # symmetric in x1, x2 bit-for-bit
    return (1 - (x1 + x2)) / ((1 - x1) * (1 - x2))


def check_chamber(x1: float, x2: float, margin: float = BOUNDARY_MARGIN) -> None:
    for v in (x1, x2):
        if not isinstance(v, (int, float)) or not math.isfinite(v):
            raise DomainError(f"configuration coordinates must be finite reals, got {v!r}")
    if not (0 < x1 and 0 < x2 and x1 + x2 < 1):
        raise DomainError(f"({x1}, {x2}) is outside the chamber 0 < x1, x2, x1 + x2 < 1")
    t = _t(x1, x2)
    if min(x1, x2, 1 - x1 - x2, t, 1 - t) < margin:
        raise DomainError(f"({x1}, {x2}) is within {margin:g} of the chamber boundary")


def t_of_config(cfg: ConfigPoint) -> float:
    """Cross-ratio t = (1 - x1 - x2) / ((1 - x1)(1 - x2)), in (0, 1) on the chamber."""
    check_chamber(cfg.x1, cfg.x2)
    return _t(cfg.x1, cfg.x2)


def config_on_fiber(t: float, u: float) -> ConfigPoint:
    """Chamber point whose delta_3 endpoint is the curve point over ``u`` on C_t.

    Moving along the real segment 0 < u < 1 of C_t with t fixed is the same
    as moving x1 = 1 - u, with x2 = 1 - iota(u) = u(1-t)/(1-tu) following.
    """
    if not (0 < t < 1 and 0 < u < 1):
        raise DomainError(f"need 0 < t < 1 and 0 < u < 1, got t={t}, u={u}")
    return ConfigPoint(1 - u, u * (1 - t) / (1 - t * u))


@dataclass(frozen=True)
class _Kernel:
    # integrand on (0,1): s^a (1-s)^b * smooth(s, 1-s)
    a: float
    b: float
    smooth: Callable[[np.ndarray, np.ndarray], np.ndarray]


def _chain_kernel(chain: ChainId, x1: float, x2: float) -> _Kernel:
    t = _t(x1, x2)
    if chain is ChainId.GAMMA1:
        # |u| = s/(1-s), 1-u = 1/(1-s), 1-tu = (1 - s + t s)/(1-s), du = ds/(1-s)^2
        return _Kernel(-2 / 3, -2 / 3, lambda s, sc: (sc + t * s) ** (-1 / 3))
    if chain is ChainId.GAMMA2:
        # u = 1/(t s) reduces the integrand to s^(-2/3)(1-s)^(-1/3)(1-ts)^(-1/3)
        return _Kernel(-2 / 3, -1 / 3, lambda s, sc: (sc + (1 - t) * s) ** (-1 / 3))
    if chain in (ChainId.GAMMA3, ChainId.GAMMA4):
        x = x1 if chain is ChainId.GAMMA3 else x2
        return _incomplete_kernel(t, 1 - x)
    raise ValueError(f"unknown chain {chain!r}")


def _incomplete_kernel(t: float, upper: float) -> _Kernel:
    # u = upper * s; 1 - u = (1 - upper) + upper * (1 - s), written to keep
    # precision when upper is close to 1
    L = upper
    scale = L ** (1 / 3)
    if L >= 1:
        if L > 1:
            raise DomainError("upper limit must not exceed 1")
        return _Kernel(-2 / 3, -1 / 3, lambda s, sc: (sc + (1 - t) * s) ** (-1 / 3))

    def smooth(s, sc):
        return scale * ((1 - L) + L * sc) ** (-1 / 3) * ((1 - t * L) + t * L * sc) ** (-1 / 3)

    return _Kernel(-2 / 3, 0.0, smooth)


def _tanh_sinh_kernel(k: _Kernel, spec: QuadratureSpec) -> complex:
    def f(s, sc):
        return s ** k.a * sc ** k.b * k.smooth(s, sc)

    val, _ = tanh_sinh(f, spec.abs_tol, spec.rel_tol, spec.max_refinement_levels)
    return val


def _gauss_jacobi_kernel(k: _Kernel, spec: QuadratureSpec) -> complex:
    val, _ = gauss_jacobi(k.smooth, k.a, k.b, spec.abs_tol, spec.rel_tol)
    return val


def chain_magnitude(chain: ChainId, cfg: ConfigPoint, spec: QuadratureSpec = DEFAULT_SPEC,
                    method: str = "tanh-sinh") -> float:
    """Integral of |psi_1| over the chain, i.e. the chain integral without its phase."""
    k = _chain_kernel(chain, cfg.x1, cfg.x2)
    if method == "tanh-sinh":
        val = _tanh_sinh_kernel(k, spec)
    elif method == "gauss-jacobi":
        val = _gauss_jacobi_kernel(k, spec)
    else:
        raise ValueError(f"unknown quadrature method {method!r}")
    return val.real


def chain_integral(chain: ChainId, cfg: ConfigPoint, spec: QuadratureSpec = DEFAULT_SPEC,
                   method: str = "tanh-sinh") -> complex:
    """phi'_i = integral of psi_1 over gamma_i on the branch fixed by its w-ray."""
    mag = chain_magnitude(chain, cfg, spec, method)
    return CHAIN_ORIENTATION[chain] * CHAIN_PHASE[chain] * mag


def incomplete_integral(t: float, upper: float, spec: QuadratureSpec = DEFAULT_SPEC,
                        method: str = "tanh-sinh") -> float:
    """Integral over 0 < u < upper <= 1 of u^(-2/3)(1-u)^(-1/3)(1-tu)^(-1/3) du, first sheet."""
    if not (0 < t < 1 and 0 < upper <= 1):
        raise DomainError(f"need 0 < t < 1 and 0 < upper <= 1, got t={t}, upper={upper}")
    k = _incomplete_kernel(t, upper)
    if method == "tanh-sinh":
        return _tanh_sinh_kernel(k, spec).real
    if method == "gauss-jacobi":
        return _gauss_jacobi_kernel(k, spec).real
    raise ValueError(f"unknown quadrature method {method!r}")


def chain_integrals(cfg: ConfigPoint, spec: QuadratureSpec = DEFAULT_SPEC,
                    method: str = "tanh-sinh") -> tuple[complex, complex, complex, complex]:
    return tuple(chain_integral(c, cfg, spec, method) for c in ChainId)


def periods_from_chains(p1: complex, p2: complex, p3: complex, p4: complex) -> CurvePeriods:
    """Z[omega]-linear change from the gamma-chains to the beta-cycles (c_E = 1)."""
    w = OMEGA
    w2 = OMEGA.conjugate()
    return CurvePeriods(
        y1=w * (1 - w2) * p2,
        y2=(1 - w2) * (p1 + p2),
        y3=(1 - w) * p3,
        y4=(1 - w2) * p4 - w2 * (1 - w2) * p2,
    )


def curve_periods(cfg: ConfigPoint, spec: QuadratureSpec = DEFAULT_SPEC,
                  method: str = "tanh-sinh") -> CurvePeriods:
    return periods_from_chains(*chain_integrals(cfg, spec, method))

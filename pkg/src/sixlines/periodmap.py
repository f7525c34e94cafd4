"""Period points (eta, z1, z2) in D = B x C^2 and the modular embedding into H_2 x C^2."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curvequad import DEFAULT_SPEC, OMEGA, ConfigPoint, CurvePeriods, QuadratureSpec, curve_periods
from .errors import DomainError, InvariantViolation

SQRT_M3 = 1j * math.sqrt(3)  # sqrt(-3) = omega - omega^2
U = np.array([[0, 1], [1, 0]])

# p_i for the branch points P_0, P_1, P_t, P_inf
BRANCH_CHARS = {
    "0": (0, 0),
    "1": (1, 0),
    "t": (0, 2),
    "inf": (1, 2),
}


@dataclass(frozen=True)
class PeriodPoint:
    eta: complex
    z1: complex
    z2: complex

    def __post_init__(self):
        if not (complex(self.eta).real > 0):
            raise DomainError(f"eta = {self.eta} is not in the right half-plane")

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (self.eta, self.z1, self.z2)


@dataclass(frozen=True, eq=False)
class SiegelPoint:
    tau: np.ndarray
    zeta: np.ndarray

    def __post_init__(self):
        tau = np.asarray(self.tau, dtype=complex)
        zeta = np.asarray(self.zeta, dtype=complex)
        if tau.shape != (2, 2) or zeta.shape != (2,):
            raise ValueError("SiegelPoint needs a 2x2 tau and a length-2 zeta")
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "zeta", zeta)

    def check(self, tol: float = 1e-12) -> None:
        """Raise unless tau is symmetric with positive definite imaginary part."""
        if abs(self.tau[0, 1] - self.tau[1, 0]) > tol * max(1.0, np.abs(self.tau).max()):
            raise InvariantViolation("tau is not symmetric")
        if np.linalg.eigvalsh(self.tau.imag).min() <= 0:
            raise InvariantViolation("Im(tau) is not positive definite")


def period_point_from_periods(y: CurvePeriods) -> PeriodPoint:
    """(y1/y2, y3/y2, -y4/y2).

    The second coordinate of z is <B3, xi'> / <B2, xi'> where the xi'-column
    of the period matrix is (y1, -y2, y4); hence the sign on z2.
    """
    if y.y2 == 0:
        raise InvariantViolation("y2 vanished")
    return PeriodPoint(y.y1 / y.y2, y.y3 / y.y2, -y.y4 / y.y2)


def forward(cfg: ConfigPoint, spec: QuadratureSpec = DEFAULT_SPEC,
            method: str = "tanh-sinh") -> PeriodPoint:
    """Period point of the configuration (x1, x2) with the standard marking."""
    y = curve_periods(cfg, spec, method)
    eta = y.y1 / y.y2
    if not eta.real > 0:
        raise InvariantViolation(f"Re(eta) = {eta.real} <= 0 at {cfg}; branch convention broken")
    return period_point_from_periods(y)


def tau_of_eta(eta: complex) -> np.ndarray:
    """Normalized period matrix (1/2) [[sqrt(-3)/eta, -1], [-1, sqrt(-3) eta]]."""
    eta = complex(eta)
    if not eta.real > 0:
        raise DomainError(f"eta = {eta} is not in the right half-plane")
    return 0.5 * np.array([[SQRT_M3 / eta, -1.0], [-1.0, SQRT_M3 * eta]], dtype=complex)


def zeta_of(eta: complex, z1: complex, z2: complex) -> np.ndarray:
    w, w2 = OMEGA, OMEGA.conjugate()
    a = z1 / (1 - w)
    b = z2 / (1 - w2)
    return 0.5 * np.array([(a - b) / eta, a + b], dtype=complex)


def embed_jD(p: PeriodPoint) -> SiegelPoint:
    """Modular embedding (eta, z) -> (tau(eta), zeta(z))."""
    return SiegelPoint(tau_of_eta(p.eta), zeta_of(p.eta, p.z1, p.z2))


def abel_jacobi_branch_points(tau: np.ndarray) -> dict[str, np.ndarray]:
    """zeta(P_i) = (1/3)(-p_i U tau + p_i) for the four branch points, as row vectors."""
    tau = np.asarray(tau, dtype=complex)
    out = {}
    for key, p in BRANCH_CHARS.items():
        p = np.array(p)
        out[key] = (-(p @ U) @ tau + p) / 3
    return out

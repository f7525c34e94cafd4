"""Theta-quotient inversion of the period map.

With tau = tau(eta) and zeta the normalized Abel-Jacobi image,

    u   = 1 - theta_[0,1]^3 / theta_[0,2]^3          at (tau, zeta(p))
    1/t = 1 - theta_00^3(tau, 0) / theta_[0,1]^3(tau, 0)
    x1  = theta_[0,1]^3 / theta_[0,2]^3              at (tau, zeta)
    x2  = the same quotient at (tau, iota*(zeta))

and the image of the period map is cut out by theta_[1,2] o j_D = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidPeriodError, SingularDenominatorError
from .periodmap import PeriodPoint, SiegelPoint, U, abel_jacobi_branch_points, embed_jD, tau_of_eta
from .theta import ALL_BRACKETS, ThetaChar, theta_value

# scale-free residual separating true zeros (~1e-9 or below) from nonzeros (~1e-1)
VANISH_THRESHOLD = 1e-6
DEFAULT_EPS = 1e-12

BRANCH_ORDER = ("0", "1", "t", "inf")

# orders of zero mod 3 of theta_[m] restricted to the curve, at P_0, P_1, P_t, P_inf
ZERO_ORDERS: dict[tuple[int, int], tuple[int, int, int, int]] = {
    (2, 1): (2, 0, 0, 0),
    (0, 1): (0, 2, 0, 0),
    (2, 0): (0, 0, 2, 0),
    (0, 0): (0, 0, 0, 2),
    (1, 1): (1, 1, 0, 0),
    (2, 2): (1, 0, 1, 0),
    (0, 2): (0, 1, 0, 1),
    (1, 0): (0, 0, 1, 1),
    (1, 2): (2, 2, 2, 2),
}
ZERO_ORDER_ROWS = tuple(ZERO_ORDERS)

_C01 = ThetaChar.bracket((0, 1))
_C02 = ThetaChar.bracket((0, 2))
_C00 = ThetaChar.bracket((0, 0))

# exponents r_i of the local rho-action at P_0, P_1, P_t, P_inf
_R = (1, 2, 2, 1)
_P = ((0, 0), (1, 0), (0, 2), (1, 2))


@dataclass(frozen=True)
class InverseResult:
    x1_hat: complex
    x2_hat: complex
    vanish_residual: float

    def max_imag(self) -> float:
        return max(abs(self.x1_hat.imag), abs(self.x2_hat.imag))


def _theta_all(tau, zeta, eps: float) -> dict[tuple[int, int], complex]:
    return {m: theta_value(ThetaChar.bracket(m), tau, zeta, eps) for m in ALL_BRACKETS}


def _cube_ratio(num: complex, den: complex, scale: float, eps: float, what: str) -> complex:
    if abs(den) <= max(eps, 1e-300) * scale:
        raise SingularDenominatorError(f"{what}: denominator theta value {abs(den):.3e} is numerically zero")
    return (num / den) ** 3


def residual_at(tau, zeta, eps: float = DEFAULT_EPS) -> float:
    """|theta_[1,2]| divided by the largest of the nine |theta_[m]| at (tau, zeta)."""
    vals = _theta_all(tau, zeta, eps)
    return abs(vals[(1, 2)]) / max(abs(v) for v in vals.values())


def vanishing_residual(p: PeriodPoint, eps: float = DEFAULT_EPS) -> float:
    s = embed_jD(p)
    return residual_at(s.tau, s.zeta, eps)


def u_from_point(s: SiegelPoint, eps: float = DEFAULT_EPS) -> complex:
    """The coordinate u of the curve point whose normalized Abel-Jacobi image is s.zeta."""
    num = theta_value(_C01, s.tau, s.zeta, eps)
    den = theta_value(_C02, s.tau, s.zeta, eps)
    scale = max(abs(num), abs(den), 1.0)
    return 1 - _cube_ratio(num, den, scale, eps, "u_from_point")


def t_inverse(tau, eps: float = DEFAULT_EPS) -> complex:
    """1/t from theta constants; the caller inverts to get t."""
    tau = np.asarray(tau, dtype=complex)
    zero = np.zeros(2)
    num = theta_value(_C00, tau, zero, eps)
    den = theta_value(_C01, tau, zero, eps)
    return 1 - _cube_ratio(num, den, max(abs(num), 1.0), eps, "t_inverse")


def iota_star(p: PeriodPoint) -> SiegelPoint:
    """(tau, zeta) -> (tau, zeta diag(1, -1) + (0, i eta / sqrt 3))."""
    s = embed_jD(p)
    zeta = s.zeta * np.array([1, -1]) + np.array([0, 1j * math.sqrt(3) / 3 * p.eta])
    return SiegelPoint(s.tau, zeta)


def _x_from(tau, zeta, eps: float) -> complex:
    num = theta_value(_C01, tau, zeta, eps)
    den = theta_value(_C02, tau, zeta, eps)
    return _cube_ratio(num, den, max(abs(num), 1.0), eps, "x_of_period")


def x_of_period(p: PeriodPoint, eps: float = DEFAULT_EPS,
                threshold: float = VANISH_THRESHOLD) -> InverseResult:
    """Recover (x1, x2) from a period point; complex output exposes branch errors."""
    res = vanishing_residual(p, eps)
    if res > threshold:
        raise InvalidPeriodError(f"period point is off the theta divisor (residual {res:.3e})")
    s = embed_jD(p)
    x1 = _x_from(s.tau, s.zeta, eps)
    x2 = _x_from(s.tau, iota_star(p).zeta, eps)
    return InverseResult(complex(x1), complex(x2), res)


def rho_congruence(m: Sequence[int]) -> tuple[int, int, int, int]:
    """(-1)^r_i (m + p_i) U (m + p_i)^t mod 3 at the four branch points."""
    m = np.asarray(m)
    out = []
    for r, p in zip(_R, _P):
        v = m + np.asarray(p)
        out.append(int((-1) ** r * int(v @ U @ v)) % 3)
    return tuple(out)


def expected_zero_pattern() -> np.ndarray:
    """Vanishing pattern read off the orders of zero, rows in ZERO_ORDER_ROWS order."""
    return np.array([[k > 0 for k in ZERO_ORDERS[m]] for m in ZERO_ORDER_ROWS])


def zero_pattern(tau, eps: float = DEFAULT_EPS, threshold: float = VANISH_THRESHOLD) -> np.ndarray:
    """9x4 booleans: does theta_[m] vanish at zeta(P_i)?

    Vanishing means |theta_[m]| below ``threshold`` times the largest of
    the nine values at the same point.  Rows follow ZERO_ORDER_ROWS; columns
    follow P_0, P_1, P_t, P_inf.
    """
    tau = np.asarray(tau, dtype=complex)
    points = abel_jacobi_branch_points(tau)
    out = np.zeros((len(ZERO_ORDER_ROWS), len(BRANCH_ORDER)), dtype=bool)
    for j, key in enumerate(BRANCH_ORDER):
        vals = _theta_all(tau, points[key], eps)
        scale = max(abs(v) for v in vals.values())
        for i, m in enumerate(ZERO_ORDER_ROWS):
            out[i, j] = abs(vals[m]) < threshold * scale
    return out


def zero_pattern_at_eta(eta: complex, eps: float = DEFAULT_EPS) -> np.ndarray:
    return zero_pattern(tau_of_eta(eta), eps)

"""Genus-2 Riemann theta functions with rational characteristics.

    theta_{a,b}(tau, zeta) = sum_{n in Z^2} exp(pi i [(n+a) tau (n+a)^t + 2 (n+a)(zeta+b)^t])

Vectors are rows.  The sum is taken over the shifted lattice points
v = n + a inside a disc around the Gaussian peak of |term|; the disc radius
comes from an explicit bound on the discarded tail, so the truncation
error is below the requested ``eps`` in absolute value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .periodmap import SiegelPoint, U

Rational2 = tuple[Fraction, Fraction]

# each lattice point owns a unit square; the squares meeting an annulus
# k <= r < k+1 lie inside the annulus widened by sqrt(2)/2 on both sides
_ANNULUS_AREA = math.pi * (1 + math.sqrt(2))


def _rat2(x: Iterable) -> Rational2:
    a, b = (Fraction(v) for v in x)
    return (a, b)


@dataclass(frozen=True)
class ThetaChar:
    a: Rational2
    b: Rational2

    def __post_init__(self):
        object.__setattr__(self, "a", _rat2(self.a))
        object.__setattr__(self, "b", _rat2(self.b))

    @classmethod
    def bracket(cls, m: Sequence[int]) -> ThetaChar:
        """[m] = (-m U / 3, m / 3)."""
        m0, m1 = (int(v) for v in m)
        return cls((Fraction(-m1, 3), Fraction(-m0, 3)), (Fraction(m0, 3), Fraction(m1, 3)))

    def shifted(self, c: Sequence, d: Sequence) -> ThetaChar:
        c, d = _rat2(c), _rat2(d)
        return ThetaChar((self.a[0] + c[0], self.a[1] + c[1]), (self.b[0] + d[0], self.b[1] + d[1]))

    def label(self) -> str:
        """Compact form used in the literature, e.g. '(-2,-1,1,2)/3'."""
        vals = self.a + self.b
        den = math.lcm(*(v.denominator for v in vals))
        nums = ",".join(str(int(v * den)) for v in vals)
        return f"({nums})/{den}" if den != 1 else f"({nums})"


def bracket_char(m: Sequence[int]) -> ThetaChar:
    return ThetaChar.bracket(m)


def _imag_data(tau: np.ndarray, zeta: np.ndarray) -> tuple[float, np.ndarray, float]:
    y = tau.imag
    y = (y + y.T) / 2
    ev = np.linalg.eigvalsh(y)
    if ev.min() <= 0:
        raise DomainError("Im(tau) is not positive definite")
    center = -np.linalg.solve(y, zeta.imag)
    peak = math.pi * float(zeta.imag @ np.linalg.solve(y, zeta.imag))
    return float(ev.min()), center, peak


def _tail_bound(radius: float, lam: float, peak: float) -> float:
    total = 0.0
    j = 0
    while True:
        r = radius + j
        term = _ANNULUS_AREA * (2 * r + 1) * math.exp(peak - math.pi * lam * r * r)
        total += term
        if j > 0 and term < 1e-3 * total or term == 0.0:
            # remaining annuli decay faster than geometrically
            return 2 * total
        j += 1


def truncation_radius(tau, zeta, eps: float) -> float:
    """Radius R such that terms with |n + a - center| > R sum to less than eps in modulus.

    center = -(Im zeta)(Im tau)^-1 is the peak of the Gaussian envelope; the
    bound uses the least eigenvalue of Im tau and a lattice-point count per
    unit-width annulus.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    tau = np.asarray(tau, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    lam, _, peak = _imag_data(tau, zeta)
    # the single-term bound gives a starting point, then walk outward
    r = math.sqrt(max(0.0, (peak + math.log(1 / eps)) / (math.pi * lam)))
    step = 0.01 * max(r, 1.0)
    while _tail_bound(r, lam, peak) >= eps:
        r += step
    return r


def _lattice_points(a: np.ndarray, center: np.ndarray, radius: float) -> np.ndarray:
    lo = np.floor(center - a - radius).astype(int)
    hi = np.ceil(center - a + radius).astype(int)
    n0, n1 = np.meshgrid(np.arange(lo[0], hi[0] + 1), np.arange(lo[1], hi[1] + 1), indexing="ij")
    n = np.stack([n0.ravel(), n1.ravel()], axis=1)
    v = n + a
    keep = np.sum((v - center) ** 2, axis=1) <= radius * radius
    return n[keep]


def theta_value(ch: ThetaChar, tau, zeta, eps: float = 1e-12, radius_scale: float = 1.0) -> complex:
    """theta_{a,b}(tau, zeta) with truncation error below eps.

    ``radius_scale`` > 1 widens the summation disc; used to audit the
    truncation bound.
    """
    tau = np.asarray(tau, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    lam, center, _ = _imag_data(tau, zeta)
    radius = truncation_radius(tau, zeta, eps) * radius_scale

    den = math.lcm(*(v.denominator for v in ch.a + ch.b))
    a_num = np.array([int(v * den) for v in ch.a])
    b_num = np.array([int(v * den) for v in ch.b])
    a = a_num / den

    n = _lattice_points(a, center, radius)
    v = n + a
    expo = 1j * math.pi * (np.einsum("ki,ij,kj->k", v, tau, v) + 2 * v @ zeta)
    # (n + a).b = n.b_num/den + a_num.b_num/den^2, reduced exactly
    k_n = (n @ b_num) % den
    k_0 = int(a_num @ b_num) % (den * den)
    phase_n = np.exp(2j * math.pi * k_n / den)
    phase_0 = np.exp(2j * math.pi * k_0 / (den * den))
    terms = np.exp(expo) * phase_n
    # sort by magnitude so small terms accumulate first
    order = np.argsort(np.abs(terms))
    return complex(phase_0 * np.sum(terms[order]))


def theta(ch: ThetaChar, s: SiegelPoint, eps: float = 1e-12) -> complex:
    return theta_value(ch, s.tau, s.zeta, eps)


def theta_bracket(m: Sequence[int], s: SiegelPoint, eps: float = 1e-12) -> complex:
    return theta_value(ThetaChar.bracket(m), s.tau, s.zeta, eps)


def quasi_periodicity_check(ch: ThetaChar, tau, c: Sequence, d: Sequence, eps: float = 1e-12) -> float:
    """|theta_{a,b}(tau, c tau + d) - exp(-pi i (c tau c + 2 c (b+d))) theta_{a+c,b+d}(tau, 0)|."""
    tau = np.asarray(tau, dtype=complex)
    c_r, d_r = _rat2(c), _rat2(d)
    if all(v == 0 for v in c_r + d_r):
        return 0.0
    cf = np.array([float(v) for v in c_r])
    df = np.array([float(v) for v in d_r])
    bd = np.array([float(ch.b[i] + d_r[i]) for i in range(2)])
    lhs = theta_value(ch, tau, cf @ tau + df, eps)
    factor = np.exp(-1j * math.pi * (cf @ tau @ cf + 2 * cf @ bd))
    rhs = factor * theta_value(ch.shifted(c_r, d_r), tau, np.zeros(2), eps)
    return float(abs(lhs - rhs))


ALL_BRACKETS = [(m0, m1) for m0 in range(3) for m1 in range(3)]

__all__ = [
    "ALL_BRACKETS",
    "ThetaChar",
    "U",
    "bracket_char",
    "quasi_periodicity_check",
    "theta",
    "theta_bracket",
    "theta_value",
    "truncation_radius",
]

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sixlines.errors import DomainError
from sixlines.periodmap import SiegelPoint, tau_of_eta
from sixlines.theta import (
    ALL_BRACKETS,
    ThetaChar,
    quasi_periodicity_check,
    theta,
    theta_bracket,
    theta_value,
    truncation_radius,
)

TAU_I = 1j * np.eye(2)
thirds = st.tuples(st.integers(-3, 3), st.integers(-3, 3)).map(lambda v: (Fraction(v[0], 3), Fraction(v[1], 3)))
etas = st.builds(complex, st.floats(0.3, 3), st.floats(-1.5, 1.5))
zetas = st.tuples(st.complex_numbers(max_magnitude=1.5), st.complex_numbers(max_magnitude=1.5)).map(np.array)


def mp_theta(a, b, tau, zeta, n=12):
    """Plain lattice sum in 30-digit arithmetic over a box around the Gaussian peak."""
    c0, c1 = np.rint(-np.linalg.solve(np.asarray(tau).imag, np.asarray(zeta).imag)).astype(int)
    with mpmath.workdps(30):
        t = [[mpmath.mpc(complex(tau[i, j])) for j in range(2)] for i in range(2)]
        z = [mpmath.mpc(complex(zeta[i])) + mpmath.mpf(b[i].numerator) / b[i].denominator for i in range(2)]
        tot = mpmath.mpc(0)
        for n0 in range(c0 - n, c0 + n + 1):
            for n1 in range(c1 - n, c1 + n + 1):
                v = (n0 + mpmath.mpf(a[0].numerator) / a[0].denominator,
                     n1 + mpmath.mpf(a[1].numerator) / a[1].denominator)
                q = sum(v[i] * t[i][j] * v[j] for i in range(2) for j in range(2))
                lin = v[0] * z[0] + v[1] * z[1]
                tot += mpmath.exp(mpmath.pi * 1j * (q + 2 * lin))
        return complex(tot)


def abs_sum(ch, tau, zeta):
    """Sum of |terms|: every term is positive at purely imaginary arguments."""
    tau, zeta = np.asarray(tau), np.asarray(zeta)
    return theta_value(ThetaChar(ch.a, (0, 0)), 1j * tau.imag, 1j * zeta.imag).real


def roundoff(ch, tau, zeta):
    """Double-precision budget: each phase pi v tau v is only known to ~1e-16 of its size."""
    tau, zeta = np.asarray(tau), np.asarray(zeta)
    center = np.linalg.solve(tau.imag, zeta.imag)
    reach = float(np.abs(center).max()) + 4
    phase = math.pi * reach ** 2 * float(np.abs(tau).max()) + 2 * math.pi * reach * float(np.abs(zeta).max())
    return 1e-15 * (1 + phase) * abs_sum(ch, tau, zeta)


def test_theta_constant_at_i():
    ref = float(mpmath.jtheta(3, 0, mpmath.exp(-mpmath.pi))) ** 2
    assert theta_value(ThetaChar((0, 0), (0, 0)), TAU_I, np.zeros(2)) == pytest.approx(ref, abs=1e-14)
    assert math.sqrt(ref) == pytest.approx(1.0864348112133080, abs=1e-15)


def test_bracket_characteristics():
    assert ThetaChar.bracket((1, 2)) == ThetaChar((Fraction(-2, 3), Fraction(-1, 3)), (Fraction(1, 3), Fraction(2, 3)))
    assert ThetaChar.bracket((0, 1)) == ThetaChar((Fraction(-1, 3), 0), (0, Fraction(1, 3)))
    assert ThetaChar.bracket((0, 0)) == ThetaChar((0, 0), (0, 0))
    assert ThetaChar.bracket((1, 2)).label() == "(-2,-1,1,2)/3"


@given(etas, zetas, st.sampled_from(ALL_BRACKETS))
def test_matches_brute_force_sum(eta, zeta, m):
    tau = tau_of_eta(eta)
    ch = ThetaChar.bracket(m)
    ref = mp_theta(ch.a, ch.b, tau, zeta)
    assert abs(theta_value(ch, tau, zeta) - ref) < 1e-12 + roundoff(ch, tau, zeta)


def test_odd_characteristic():
    ch = ThetaChar((Fraction(1, 2), 0), (Fraction(1, 2), 0))
    tau = tau_of_eta(0.9 + 0.2j)
    zeta = np.array([0.1 + 0.05j, -0.2 + 0.1j])
    assert theta_value(ch, tau, -zeta) == pytest.approx(-theta_value(ch, tau, zeta), abs=1e-13)
    assert abs(theta_value(ch, tau, np.zeros(2))) < 1e-14


@given(etas, zetas, thirds, thirds)
def test_integer_shift_in_zeta(eta, zeta, a, b):
    ch = ThetaChar(a, b)
    tau = tau_of_eta(eta)
    lhs = theta_value(ch, tau, zeta + np.array([1, 0]))
    rhs = cmath.exp(2j * math.pi * float(a[0])) * theta_value(ch, tau, zeta)
    assert abs(lhs - rhs) < 1e-11 * max(1.0, abs(rhs))


@given(etas, zetas, st.sampled_from(ALL_BRACKETS), st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
       st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
def test_characteristic_shift_law(eta, zeta, m, p, q):
    ch = ThetaChar.bracket(m)
    tau = tau_of_eta(eta)
    lhs = theta_value(ch.shifted(p, q), tau, zeta)
    phase = cmath.exp(2j * math.pi * float(ch.a[0] * q[0] + ch.a[1] * q[1]))
    rhs = phase * theta_value(ch, tau, zeta)
    assert abs(lhs - rhs) < 1e-11 * max(1.0, abs(rhs))


def test_quasi_periodicity_examples():
    tau = tau_of_eta(0.7 + 0.4j)
    ch0 = ThetaChar((0, 0), (0, 0))
    assert quasi_periodicity_check(ch0, tau, (0, 0), (0, 0)) == 0.0
    lhs = theta_value(ch0, tau, tau[0])
    rhs = cmath.exp(-1j * math.pi * tau[0, 0]) * theta_value(ch0, tau, np.zeros(2))
    assert abs(lhs - rhs) < 1e-12
    assert quasi_periodicity_check(ch0, tau, (1, 0), (0, 0)) < 1e-12


@given(etas, thirds, thirds, thirds, thirds)
def test_quasi_periodicity_random(eta, a, b, c, d):
    assert quasi_periodicity_check(ThetaChar(a, b), tau_of_eta(eta), c, d, 1e-12) < 1e-10


def test_truncation_radius_examples():
    r = truncation_radius(TAU_I, np.zeros(2), 1e-12)
    # the tail bound is certified, so R sits above the single-term estimate of ~2.97
    assert math.sqrt(12 * math.log(10) / math.pi) < r < 4
    assert truncation_radius(4 * TAU_I, np.zeros(2), 1e-12) < r
    radii = [truncation_radius(lam * TAU_I, np.zeros(2), 1e-12) for lam in (0.5, 1, 2, 4, 8)]
    assert radii == sorted(radii, reverse=True)


def test_truncation_center_shift():
    ch = ThetaChar((0, 0), (0, 0))
    zeta = np.array([0.3 + 2.5j, -0.1 - 1.7j])
    ref = mp_theta(ch.a, ch.b, TAU_I, zeta, n=10)
    assert abs(theta_value(ch, TAU_I, zeta) - ref) < 1e-12 + roundoff(ch, TAU_I, zeta)


@given(etas, zetas, st.sampled_from(ALL_BRACKETS))
def test_truncation_self_consistent(eta, zeta, m):
    tau = tau_of_eta(eta)
    ch = ThetaChar.bracket(m)
    diff = abs(theta_value(ch, tau, zeta) - theta_value(ch, tau, zeta, radius_scale=2.0))
    # the truncated tail is below eps; the rest is double-precision rounding
    assert diff < 1e-12 + roundoff(ch, tau, zeta)


def test_domain_error():
    with pytest.raises(DomainError):
        theta_value(ThetaChar((0, 0), (0, 0)), -TAU_I, np.zeros(2))
    with pytest.raises(ValueError):
        truncation_radius(TAU_I, np.zeros(2), 0.0)


def test_wrappers():
    s = SiegelPoint(tau_of_eta(1.1 + 0.2j), np.array([0.1, 0.2j]))
    ch = ThetaChar.bracket((2, 1))
    assert theta(ch, s) == theta_value(ch, s.tau, s.zeta)
    assert theta_bracket((2, 1), s) == theta_value(ch, s.tau, s.zeta)


def test_bracket_constants_finite():
    tau = tau_of_eta(0.8 + 0.1j)
    for m in ALL_BRACKETS:
        assert cmath.isfinite(theta_bracket(m, SiegelPoint(tau, np.zeros(2))))

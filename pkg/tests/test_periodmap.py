from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sixlines.curvequad import ConfigPoint, CurvePeriods
from sixlines.errors import DomainError, InvariantViolation
from sixlines.periodmap import (
    PeriodPoint,
    SiegelPoint,
    abel_jacobi_branch_points,
    embed_jD,
    forward,
    period_point_from_periods,
    tau_of_eta,
    zeta_of,
)

# hypergeometric closed forms of the chains, evaluated in 30-digit arithmetic
GOLDEN = {
    (0.3, 0.3): (
        complex(0.57522897758030747, 0.62679677245575636),
        complex(-0.18684829043270739, 0.59417876228084743),
        complex(-0.22243836900617047, 0.04949050637761117),
    ),
    (0.3, 0.5): (
        complex(0.57374653874225677, 0.51294341695623848),
        complex(-0.12032724489570573, 0.57610002343059203),
        complex(-0.2538033604718729, 0.08345861108344272),
    ),
}

etas = st.builds(complex, st.floats(0.05, 20), st.floats(-20, 20))
smalls = st.builds(complex, st.floats(-3, 3), st.floats(-3, 3))


@pytest.mark.parametrize("x", list(GOLDEN))
def test_forward_golden(x):
    got = forward(ConfigPoint(*x)).as_tuple()
    for g, ref in zip(got, GOLDEN[x]):
        assert abs(g - ref) < 1e-13


def test_period_point_rejects_left_half_plane():
    with pytest.raises(DomainError):
        PeriodPoint(-0.1 + 1j, 0, 0)
    with pytest.raises(DomainError):
        tau_of_eta(0j)


def test_forward_guard_on_wrong_branch():
    # y1/y2 with negative real part must never be returned silently
    with pytest.raises(DomainError):
        period_point_from_periods(CurvePeriods(-1, 1, 0, 0))
    with pytest.raises(InvariantViolation):
        period_point_from_periods(CurvePeriods(1, 0, 0, 0))


def test_embed_examples():
    s = embed_jD(PeriodPoint(1, 0, 0))
    r3 = math.sqrt(3)
    assert np.allclose(s.tau, [[1j * r3 / 2, -0.5], [-0.5, 1j * r3 / 2]], atol=1e-16)
    assert np.all(s.zeta == 0)
    tau = tau_of_eta(2)
    assert tau[0, 0] == pytest.approx(1j * r3 / 4)
    assert tau[1, 1] == pytest.approx(1j * r3)
    assert np.linalg.det(tau.imag) == pytest.approx(0.75)


@given(etas)
def test_tau_shape(eta):
    tau = tau_of_eta(eta)
    assert tau[0, 1] == -0.5 and tau[1, 0] == -0.5
    assert tau[0, 0] * tau[1, 1] == pytest.approx(-0.75, rel=1e-12)
    assert np.linalg.eigvalsh(tau.imag).min() > 0
    SiegelPoint(tau, np.zeros(2)).check()


@given(etas, smalls, smalls)
def test_embedding_injective(eta, z1, z2):
    s = embed_jD(PeriodPoint(eta, z1, z2))
    # eta from tau_22, z from zeta by inverting the 2x2 linear map
    eta_back = s.tau[1, 1] * 2 / (1j * math.sqrt(3))
    assert eta_back == pytest.approx(eta, rel=1e-12)
    w = complex(-0.5, math.sqrt(3) / 2)
    a = s.zeta[0] * eta + s.zeta[1]
    b = s.zeta[1] - s.zeta[0] * eta
    assert a * (1 - w) == pytest.approx(z1, abs=1e-9)
    assert b * (1 - w.conjugate()) == pytest.approx(z2, abs=1e-9)


def test_zeta_formula():
    w = complex(-0.5, math.sqrt(3) / 2)
    eta, z1, z2 = 1.3 + 0.4j, 0.2 - 0.1j, -0.3 + 0.5j
    zeta = zeta_of(eta, z1, z2)
    assert zeta[0] == pytest.approx((z1 / (1 - w) - z2 / (1 - w * w)) / eta / 2)
    assert zeta[1] == pytest.approx((z1 / (1 - w) + z2 / (1 - w * w)) / 2)


def test_branch_points():
    tau = tau_of_eta(0.8 + 0.3j)
    pts = abel_jacobi_branch_points(tau)
    assert np.all(pts["0"] == 0)
    assert pts["1"] == pytest.approx(np.array([1 - tau[1, 0], -tau[1, 1]]) / 3)
    assert pts["t"] == pytest.approx(np.array([-2 * tau[0, 0], 2 - 2 * tau[0, 1]]) / 3)
    assert pts["inf"] == pytest.approx((-(np.array([2, 1]) @ tau) + np.array([1, 2])) / 3)


@given(st.floats(0.02, 0.95), st.floats(0.02, 0.95))
def test_forward_in_ball(x1, x2):
    if x1 + x2 >= 0.97:
        return
    p = forward(ConfigPoint(x1, x2))
    assert p.eta.real > 0
    assert all(cmath.isfinite(v) for v in p.as_tuple())


def test_siegel_point_shape_checks():
    with pytest.raises(ValueError):
        SiegelPoint(np.eye(3), np.zeros(2))
    with pytest.raises(InvariantViolation):
        SiegelPoint(np.array([[1j, 0.1], [0.0, 1j]]), np.zeros(2)).check()
    with pytest.raises(InvariantViolation):
        SiegelPoint(np.array([[-1j, 0], [0, 1j]]), np.zeros(2)).check()

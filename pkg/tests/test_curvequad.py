from __future__ import annotations

import cmath
import math

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from sixlines.curvequad import (
    CHAIN_PHASE,
    OMEGA,
    ChainId,
    ConfigPoint,
    QuadratureSpec,
    chain_integral,
    chain_integrals,
    chain_magnitude,
    config_on_fiber,
    curve_periods,
    incomplete_integral,
    t_of_config,
)
from sixlines.errors import DomainError


def third():
    return mpmath.mpf(1) / 3


def closed_form(chain, x1, x2):
    """Hypergeometric values of the chain magnitudes, evaluated with mpmath."""
    a = third()
    t = (1 - x1 - x2) / ((1 - x1) * (1 - x2))
    if chain is ChainId.GAMMA1:
        return float(mpmath.beta(a, a) * mpmath.hyp2f1(a, a, 2 * a, 1 - t))
    if chain is ChainId.GAMMA2:
        return float(mpmath.beta(a, 2 * a) * mpmath.hyp2f1(a, a, 1, t))
    L = 1 - (x1 if chain is ChainId.GAMMA3 else x2)
    return float(3 * L ** a * mpmath.appellf1(a, a, a, 4 * a, L, t * L))


configs = st.tuples(st.floats(0.01, 0.97), st.floats(0.01, 0.97)).filter(lambda p: p[0] + p[1] < 0.98)
# mpmath's double series for F1 stalls once 1 - x is close to 1
oracle_configs = st.tuples(st.floats(0.05, 0.9), st.floats(0.05, 0.9)).filter(lambda p: p[0] + p[1] < 0.95)


def test_t_examples():
    assert math.isclose(t_of_config(ConfigPoint(0.5, 0.25)), 2 / 3, rel_tol=1e-15)
    assert math.isclose(ConfigPoint(1 / 3, 1 / 3).t, 3 / 4, rel_tol=1e-15)
    assert ConfigPoint(0.5, 0.5 - 1e-5).t < 1e-4


@pytest.mark.parametrize("x", [(0, 0.5), (0.5, 0.5), (-0.1, 0.3), (0.6, 0.6), (1e-7, 0.5),
                               (0.5, 0.5 - 1e-7), (float("nan"), 0.2), (float("inf"), 0.2)])
def test_chamber_guard(x):
    with pytest.raises(DomainError):
        ConfigPoint(*x)


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(abs_tol=0)
    with pytest.raises(ValueError):
        QuadratureSpec(max_refinement_levels=0)


def test_phases():
    assert CHAIN_PHASE[ChainId.GAMMA1] == 1
    assert cmath.isclose(CHAIN_PHASE[ChainId.GAMMA2], cmath.exp(-2j * math.pi / 3))
    assert cmath.isclose(CHAIN_PHASE[ChainId.GAMMA3], cmath.exp(2j * math.pi / 3))
    assert OMEGA == complex(-0.5, math.sqrt(3) / 2)


@settings(max_examples=20)
@given(oracle_configs)
def test_chains_match_hypergeometric_closed_forms(x):
    cfg = ConfigPoint(*x)
    for chain in ChainId:
        ref = closed_form(chain, *x)
        assert abs(chain_magnitude(chain, cfg) - ref) <= 1e-12 * ref


@given(configs)
def test_two_quadrature_routes_agree(x):
    cfg = ConfigPoint(*x)
    for chain in ChainId:
        a = chain_magnitude(chain, cfg, method="tanh-sinh")
        b = chain_magnitude(chain, cfg, method="gauss-jacobi")
        assert abs(a - b) <= 1e-10 * abs(b)


def test_gamma1_at_half_second_scheme():
    # x1 = x2 = x with (1 - 2x) / (1 - x)^2 = 1/2
    x = 1 - (2 - math.sqrt(2))
    cfg = ConfigPoint(x, x)
    assert math.isclose(cfg.t, 0.5, rel_tol=1e-14)
    a = chain_magnitude(ChainId.GAMMA1, cfg)
    b = chain_magnitude(ChainId.GAMMA1, cfg, method="gauss-jacobi")
    assert abs(a - b) < 1e-10 * a


def test_gamma3_endpoint_limit():
    # x1 -> 0 turns the gamma3 integral into the complete Euler integral
    t = 0.75
    ref = float(mpmath.beta(third(), 2 * third()) * mpmath.hyp2f1(third(), third(), 1, t))
    assert abs(incomplete_integral(t, 1.0) - ref) < 1e-13 * ref
    for delta in (1e-3, 1e-6, 1e-9):
        gap = ref - incomplete_integral(t, 1 - delta)
        # missing piece near u = 1 behaves like (3/2) delta^(2/3) (1-t)^(-1/3)
        assert gap == pytest.approx(1.5 * delta ** (2 / 3) * (1 - t) ** (-1 / 3), rel=0.01)


@pytest.mark.parametrize("t", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_euler_integral_family(t):
    ref = float(mpmath.beta(third(), 2 * third()) * mpmath.hyp2f1(third(), third(), 1, t))
    for method in ("tanh-sinh", "gauss-jacobi"):
        assert abs(incomplete_integral(t, 1.0, method=method) - ref) <= 1e-9 * ref


def test_incomplete_integral_domain():
    with pytest.raises(DomainError):
        incomplete_integral(0.5, 1.2)
    with pytest.raises(DomainError):
        incomplete_integral(1.0, 0.5)


@given(configs)
def test_exchange_symmetry(x):
    cfg = ConfigPoint(*x)
    sw = cfg.swapped()
    assert sw.t == cfg.t
    p = chain_integrals(cfg)
    q = chain_integrals(sw)
    assert p[0] == q[0] and p[1] == q[1]
    assert p[2] == q[3] and p[3] == q[2]


def test_diagonal_equal_chains():
    cfg = ConfigPoint(0.3, 0.3)
    assert chain_integral(ChainId.GAMMA3, cfg) == chain_integral(ChainId.GAMMA4, cfg)


def test_period_relations():
    cfg = ConfigPoint(0.3, 0.5)
    p1, p2, p3, p4 = chain_integrals(cfg)
    y = curve_periods(cfg)
    w, w2 = OMEGA, OMEGA.conjugate()
    assert abs(y.y2) == pytest.approx(abs((1 - w2) * (p1 + p2)), rel=1e-15)
    assert y.y1 == pytest.approx(w * (1 - w2) * p2, rel=1e-15)
    assert y.y3 == pytest.approx((1 - w) * p3, rel=1e-15)
    assert y.y4 == pytest.approx((1 - w2) * p4 - w2 * (1 - w2) * p2, rel=1e-15)


def test_re_eta_positive_on_grid():
    for i in range(1, 11):
        for j in range(1, 11):
            x1, x2 = i / 11, j / 11 * (1 - i / 11)
            y = curve_periods(ConfigPoint(x1, x2 * 0.999))
            assert (y.y1 / y.y2).real > 0


@given(configs)
def test_chains_finite_nonzero(x):
    for v in chain_integrals(ConfigPoint(*x)):
        assert cmath.isfinite(v) and abs(v) > 0


@given(st.floats(0.05, 0.95), st.floats(0.05, 0.95))
def test_config_on_fiber_keeps_t(t, u):
    try:
        cfg = config_on_fiber(t, u)
    except DomainError:
        assume(False)
    assert cfg.x1 == pytest.approx(1 - u)
    assert cfg.t == pytest.approx(t, rel=1e-12)


def test_unknown_method():
    with pytest.raises(ValueError):
        chain_magnitude(ChainId.GAMMA1, ConfigPoint(0.3, 0.3), method="simpson")

"""Quadrature on (0, 1) for integrands s^a (1-s)^b g(s) with a, b > -1.

Two unrelated rules are provided so that one can police the other:

* :func:`tanh_sinh` -- double-exponential rule; the integrand callback
  receives both ``s`` and ``1 - s`` computed without cancellation, so
  algebraic endpoint singularities are resolved down to underflow.
* :func:`gauss_jacobi` -- composite Gauss rule, graded toward both ends,
  whose end pieces carry the Jacobi weights s^a and (1-s)^b exactly.

:func:`gauss_2f1` is a plain power-series evaluation of 2F1 used as an
oracle for Euler-type integrals.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import expit, roots_jacobi

from .errors import NonConvergenceError

EndpointIntegrand = Callable[[np.ndarray, np.ndarray], np.ndarray]

# pi sinh t at t = 6 is ~634, so the outermost node sits at s ~ 1e-275:
# the neglected tail of s^a is below 1e-26 for every a >= -0.9, and s
# stays clear of underflow.
_T_MAX = 6.0


def _ts_nodes(h: float, offset: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    k = np.arange(-math.ceil(_T_MAX / h), math.ceil(_T_MAX / h) + 1)
    t = offset + k * h
    t = t[np.abs(t) <= _T_MAX]
    v = math.pi * np.sinh(t)
    s = expit(v)
    sc = expit(-v)
    w = math.pi * np.cosh(t) * s * sc
    return s, sc, w


def tanh_sinh(
    f: EndpointIntegrand,
    abs_tol: float = 1e-12,
    rel_tol: float = 1e-12,
    max_levels: int = 10,
) -> tuple[complex, float]:
    """Integrate ``f(s, 1-s)`` over (0, 1).

    Returns ``(value, error_estimate)``; the estimate is the change between
    the last two levels, which overstates the true error by a wide margin
    once the rule is in its double-exponential regime.
    """
    h = 0.5
    s, sc, w = _ts_nodes(h, 0.0)
    total = np.sum(w * f(s, sc))
    prev = h * total
    for _ in range(max_levels):
        # halving h only adds the odd midpoints
        s, sc, w = _ts_nodes(h, h / 2)
        total = total + np.sum(w * f(s, sc))
        h /= 2
        cur = h * total
        err = abs(cur - prev)
        if err <= max(abs_tol, rel_tol * abs(cur)):
            return complex(cur), float(err)
        prev = cur
    raise NonConvergenceError(
        f"tanh-sinh did not reach tolerance after {max_levels} levels (last change {err:.3e})"
    )


@lru_cache(maxsize=64)
def _jacobi_rule(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    # roots_jacobi weight is (1-x)^alpha (1+x)^beta on [-1, 1]; s = (1+x)/2
    x, w = roots_jacobi(n, b, a)
    s = (1 + x) / 2
    return s, w * 2.0 ** (-a - b - 1)


# scipy's Jacobi weights degrade beyond a few hundred nodes, so the rule is
# composite: pieces shrink geometrically toward each endpoint and every
# piece stays at n <= 128.
_GRADING_LEVELS = 26


def _graded_pieces(levels: int) -> list[tuple[float, float]]:
    edges = [0.5 ** k for k in range(1, levels + 1)]
    return [(edges[k + 1], edges[k]) for k in range(levels - 1)]


def _composite_jacobi(g: EndpointIntegrand, a: float, b: float, n: int) -> complex:
    """One evaluation of the graded composite rule with n nodes per piece.

    Left half: pieces [2^-(k+1), 2^-k] in s.  Right half: the same pieces in
    r = 1 - s, so 1 - s is never formed by subtraction near s = 1.
    """
    x, wx = _jacobi_rule(n, 0.0, 0.0)
    total = 0j
    for lo, hi in _graded_pieces(_GRADING_LEVELS):
        h = hi - lo
        d = lo + h * x
        wd = h * wx
        total += np.sum(wd * d ** a * (1 - d) ** b * g(d, 1 - d))
        total += np.sum(wd * (1 - d) ** a * d ** b * g(1 - d, d))
    h = 0.5 ** _GRADING_LEVELS
    # end pieces carry the singular weight exactly
    xa, wa = _jacobi_rule(n, a, 0.0)
    d = h * xa
    total += h ** (a + 1) * np.sum(wa * (1 - d) ** b * g(d, 1 - d))
    xb, wb = _jacobi_rule(n, b, 0.0)
    d = h * xb
    total += h ** (b + 1) * np.sum(wb * (1 - d) ** a * g(1 - d, d))
    return complex(total)


def gauss_jacobi(
    g: EndpointIntegrand,
    a: float,
    b: float,
    abs_tol: float = 1e-12,
    rel_tol: float = 1e-12,
    n0: int = 8,
    n_max: int = 128,
) -> tuple[complex, float]:
    """Integrate ``s^a (1-s)^b g(s, 1-s)`` over (0, 1) with Jacobi-weighted Gauss rules.

    The node count per piece doubles from ``n0`` until two successive
    values agree to tolerance.
    """
    n = n0
    prev = _composite_jacobi(g, a, b, n)
    while n < n_max:
        n *= 2
        cur = _composite_jacobi(g, a, b, n)
        err = abs(cur - prev)
        if err <= max(abs_tol, rel_tol * abs(cur)):
            return cur, float(err)
        prev = cur
    raise NonConvergenceError(f"Gauss-Jacobi did not converge with {n_max} nodes per piece")


def gauss_2f1(a: float, b: float, c: float, z: float, tol: float = 1e-15,
              max_terms: int = 2_000_000) -> float:
    """Gauss hypergeometric series sum_n (a)_n (b)_n / ((c)_n n!) z^n for |z| < 1."""
    if c <= 0 and float(c).is_integer():
        raise ValueError("c must not be a non-positive integer")
    if abs(z) >= 1:
        raise ValueError("series requires |z| < 1")
    term = 1.0
    terms = [term]
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        terms.append(term)
        # tail of a series with eventually geometric ratio ~|z|
        if n > 2 and abs(term) <= tol * abs(terms[0]) * (1 - abs(z)):
            return math.fsum(terms)
    raise NonConvergenceError(f"2F1 series did not converge within {max_terms} terms at z={z}")


def appell_f1(a: float, b1: float, b2: float, c: float, x: float, y: float,
              tol: float = 1e-15, max_terms: int = 100_000) -> float:
    """Appell F1(a; b1, b2; c; x, y) for 0 <= x, y < 1 as a 2F1-weighted power series in x.

    F1 = sum_m (a)_m (b1)_m / ((c)_m m!) x^m 2F1(a + m, b2; c + m; y).
    """
    if not (0 <= x < 1 and 0 <= y < 1):
        raise ValueError("series requires 0 <= x, y < 1")
    coef = 1.0
    terms = []
    for m in range(max_terms):
        term = coef * gauss_2f1(a + m, b2, c + m, y, tol)
        terms.append(term)
        if m > 2 and abs(term) <= tol * abs(terms[0]) * (1 - x):
            return math.fsum(terms)
        coef *= (a + m) * (b1 + m) / ((c + m) * (m + 1)) * x
    raise NonConvergenceError(f"F1 series did not converge within {max_terms} terms")

"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the production code paths they check:
the density oracle evaluates the textbook exponential-times-erfc product in
50-digit arithmetic, the CDF oracle integrates the density with composite
Gauss-Legendre panels, and the quantile oracle bisects that quadrature CDF.
"""

from __future__ import annotations

import mpmath as mp
import numpy as np
import pytest

from exgtools import ExGaussParams, exgauss_pdf
from exgtools.stats_utils import int_points_gauss, intsum

mp.mp.dps = 50


def pdf_oracle(x, p: ExGaussParams) -> float:
    """High-precision density: direct product form, 50 decimal digits."""
    xm, mu, sigma, tau = (mp.mpf(v) for v in (x, p.mu, p.sigma, p.tau))
    arg = (2 * mu + sigma**2 / tau - 2 * xm) / (2 * tau)
    u = (mu + sigma**2 / tau - xm) / (mp.sqrt(2) * sigma)
    return float(mp.exp(arg) * mp.erfc(u) / (2 * tau))


def support_window(p: ExGaussParams) -> tuple[float, float]:
    """Window holding all but ~1e-20 of the mass."""
    return p.mu - 10.0 * p.sigma, p.mu + 10.0 * p.sigma + 30.0 * p.tau


def quad_panels(a: float, b: float, panels: int = 40, order: int = 24):
    """Composite Gauss-Legendre partition of [a, b]."""
    edges = np.linspace(a, b, panels + 1)
    part: list[tuple[float, float]] = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        part.extend(int_points_gauss(float(lo), float(hi), order))
    return part


def quad_integral(f, a: float, b: float, panels: int = 40, order: int = 24) -> float:
    """Composite Gauss-Legendre integral; f may be vectorized over nodes."""
    part = np.asarray(quad_panels(a, b, panels, order))
    vals = np.asarray(f(part[:, 0]), dtype=float)
    return intsum(vals, part)


def cdf_oracle(x, p: ExGaussParams, panels: int = 40, order: int = 24) -> float:
    """CDF by quadrature of the density from far below the support."""
    lo, _ = support_window(p)
    if x <= lo:
        return 0.0
    return quad_integral(lambda t: exgauss_pdf(t, p), lo, float(x), panels, order)


def quantile_oracle(alpha: float, p: ExGaussParams, tol: float = 1e-9) -> float:
    """Right-tail point by bisection on the quadrature CDF."""
    target = 1.0 - alpha
    lo, hi = p.mu - 12.0 * p.sigma, p.mu + 12.0 * p.sigma + 80.0 * p.tau
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if cdf_oracle(mid, p) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


def fd_gradient(fun, theta, rel_step: float = 1e-5) -> np.ndarray:
    """Central finite differences of a scalar function of a 3-vector."""
    theta = np.asarray(theta, dtype=float)
    grad = np.empty(3)
    for i in range(3):
        h = rel_step * max(1.0, abs(theta[i]))
        tp = theta.copy()
        tp[i] += h
        tm = theta.copy()
        tm[i] -= h
        grad[i] = (fun(tp) - fun(tm)) / (2.0 * h)
    return grad


@pytest.fixture
def p_ref() -> ExGaussParams:
    """Workhorse parameter triple used across the suite."""
    return ExGaussParams(500.0, 50.0, 100.0)


@pytest.fixture
def p_young() -> ExGaussParams:
    """Triple whose 0.1% right-tail point is the documented 1472.84."""
    return ExGaussParams(451.09, 47.33, 146.81)

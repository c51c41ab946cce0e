"""Descriptive statistics, histograms and small numerical utilities.

Moments use the population convention (divide by N, not N-1) throughout:
the moment-matching estimator treats M, S and t as distribution statistics,
and mixing conventions would silently shift every converted parameter.
Histogram bins are half-open [lo, hi) with the last bin closed, spanning
exactly [min, max]; the default bin count is round(2*sqrt(N)) with
round-half-to-even.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .dist import ExGaussStats
from .errors import DataError, DomainError
from .special import betainc_reg

__all__ = [
    "Histogram",
    "histogram",
    "stats",
    "stats_his",
    "correlation",
    "minsquare",
    "int_points_gauss",
    "intsum",
    "integral",
    "zero",
    "AnovaResult",
    "anova",
]


def _as_sample(values, min_size: int = 1) -> np.ndarray:
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size < min_size:
        raise DataError(f"sample must hold at least {min_size} values, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise DataError("sample contains non-finite values")
    return arr


@dataclass(frozen=True)
class Histogram:
    """Equal-width binned view of a sample.

    densities are counts / (n_total * bin width), so they integrate to one
    over the histogram support.
    """

    edges: np.ndarray
    counts: np.ndarray
    densities: np.ndarray
    n_total: int

    @property
    def n_bins(self) -> int:
        return len(self.counts)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)


def default_bins(n: int) -> int:
    """Default bin count: round-half-even of 2*sqrt(N), at least 1."""
    return max(1, round(2.0 * math.sqrt(n)))


def histogram(values, n_bins: int | None = None) -> Histogram:
    """Bin a sample into n_bins equal-width bins spanning [min, max].

    The maximum value lands in the last bin (closed right edge); every
    other bin is half-open.  A sample whose values are all equal has no
    positive-width span and is rejected.
    """
    arr = _as_sample(values)
    if n_bins is None:
        n_bins = default_bins(arr.size)
    else:
        n_bins = int(n_bins)
        if n_bins < 1:
            raise DataError(f"n_bins must be >= 1, got {n_bins}")
    lo, hi = float(arr.min()), float(arr.max())
    if hi <= lo:
        raise DataError("degenerate sample: all values equal, zero-width bins")
    edges = np.linspace(lo, hi, n_bins + 1)
    counts, _ = np.histogram(arr, bins=edges)
    widths = np.diff(edges)
    densities = counts / (arr.size * widths)
    return Histogram(edges=edges, counts=counts, densities=densities, n_total=arr.size)


def stats(values) -> ExGaussStats:
    """Mean, population standard deviation and skewness of a sample."""
    arr = _as_sample(values, min_size=2)
    m = float(arr.mean())
    dev = arr - m
    s2 = float(np.mean(dev * dev))
    if s2 <= 0.0:
        raise DataError("sample standard deviation is zero")
    s = math.sqrt(s2)
    t = float(np.mean((dev / s) ** 3))
    return ExGaussStats(m, s, t)


def stats_his(h: Histogram) -> ExGaussStats:
    """Moments of binned data: bin centers weighted by counts."""
    if not isinstance(h, Histogram):
        raise DataError(f"expected Histogram, got {type(h).__name__}")
    if h.n_total < 2:
        raise DataError("histogram holds fewer than 2 observations")
    c = h.centers
    w = h.counts / h.n_total
    m = float(np.sum(w * c))
    s2 = float(np.sum(w * (c - m) ** 2))
    if s2 <= 0.0:
        raise DataError("degenerate histogram: zero variance across bins")
    s = math.sqrt(s2)
    t = float(np.sum(w * ((c - m) / s) ** 3))
    return ExGaussStats(m, s, t)


def correlation(xs, ys) -> float:
    """Pearson linear correlation coefficient of two equal-length samples."""
    x = _as_sample(xs, min_size=2)
    y = np.asarray(ys, dtype=float).ravel()
    if y.size != x.size:
        raise DataError(f"length mismatch: {x.size} vs {y.size}")
    if not np.all(np.isfinite(y)):
        raise DataError("sample contains non-finite values")
    dx = x - x.mean()
    dy = y - y.mean()
    vx = float(np.dot(dx, dx))
    vy = float(np.dot(dy, dy))
    if vx <= 0.0 or vy <= 0.0:
        raise DataError("correlation undefined for zero-variance sample")
    r = float(np.dot(dx, dy)) / math.sqrt(vx * vy)
    return min(1.0, max(-1.0, r))


def minsquare(points: Sequence[tuple[float, float]], degree: int) -> list[float]:
    """Least-squares polynomial fit; returns coefficients, constant first.

    Solved through the QR-based lstsq on the Vandermonde matrix.  Needs at
    least degree+1 distinct x values.
    """
    if degree < 0:
        raise DomainError(f"degree must be >= 0, got {degree}")
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise DataError("points must be a sequence of (x, y) pairs")
    x, y = pts[:, 0], pts[:, 1]
    if np.unique(x).size < degree + 1:
        raise DataError(
            f"need at least {degree + 1} distinct x values for degree {degree}, "
            f"got {np.unique(x).size}"
        )
    vand = np.vander(x, degree + 1, increasing=True)
    coef, _, rank, _ = np.linalg.lstsq(vand, y, rcond=None)
    if rank < degree + 1:
        raise DataError("rank-deficient least-squares system")
    return [float(c) for c in coef]


def int_points_gauss(a: float, b: float, n: int) -> list[tuple[float, float]]:
    """Gauss-Legendre nodes and weights mapped onto [a, b]."""
    if not a < b:
        raise DomainError(f"need a < b, got a={a!r}, b={b!r}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    nodes, weights = np.polynomial.legendre.leggauss(int(n))
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    return [(float(mid + half * z), float(half * w)) for z, w in zip(nodes, weights)]


def intsum(f_values, partition: Sequence[tuple[float, float]]) -> float:
    """Weighted sum of function values over a quadrature partition."""
    f = np.asarray(f_values, dtype=float).ravel()
    part = np.asarray(partition, dtype=float)
    if part.ndim != 2 or part.shape[1] != 2:
        raise DataError("partition must be a sequence of (node, weight) pairs")
    if f.size != part.shape[0]:
        raise DataError(f"length mismatch: {f.size} values vs {part.shape[0]} nodes")
    return float(np.dot(f, part[:, 1]))


def integral(f: Callable[[float], float], a: float, b: float, n: int = 64) -> float:
    """Gauss-Legendre integral of a scalar function over [a, b]."""
    part = int_points_gauss(a, b, n)
    vals = [f(node) for node, _ in part]
    return intsum(vals, part)


def zero(
    f: Callable[[float], float],
    bracket: tuple[float, float],
    tol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Root of f inside a sign-changing bracket (bisection/secant hybrid).

    The secant step is taken whenever it stays inside the current bracket
    and shrinks it; otherwise the step falls back to bisection, so
    convergence is unconditional.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise DomainError(f"bracket must satisfy lo < hi, got {bracket!r}")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise DomainError(f"no sign change on bracket {bracket!r}: f={flo!r}, {fhi!r}")
    x_prev, f_prev = lo, flo
    x_cur, f_cur = hi, fhi
    for _ in range(max_iter):
        if f_cur != f_prev:
            x_new = x_cur - f_cur * (x_cur - x_prev) / (f_cur - f_prev)
        else:
            x_new = 0.5 * (lo + hi)
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        f_new = f(x_new)
        if f_new == 0.0:
            return x_new
        if flo * f_new < 0.0:
            hi, fhi = x_new, f_new
        else:
            lo, flo = x_new, f_new
        x_prev, f_prev = x_cur, f_cur
        x_cur, f_cur = x_new, f_new
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


class AnovaResult(NamedTuple):
    f: float
    df_between: int
    df_within: int
    p: float


def anova(groups: Sequence) -> AnovaResult:
    """One-way fixed-effects ANOVA.

    Returns the F statistic, its degrees of freedom and the right-tail
    p-value computed through the regularized incomplete beta function.
    """
    if len(groups) < 2:
        raise DataError(f"ANOVA needs at least 2 groups, got {len(groups)}")
    arrs = [_as_sample(g, min_size=2) for g in groups]
    n_total = sum(a.size for a in arrs)
    grand = sum(float(a.sum()) for a in arrs) / n_total
    ss_between = sum(a.size * (float(a.mean()) - grand) ** 2 for a in arrs)
    ss_within = sum(float(np.sum((a - a.mean()) ** 2)) for a in arrs)
    df_between = len(arrs) - 1
    df_within = n_total - len(arrs)
    if ss_within <= 0.0:
        # All groups constant: F degenerates; identical groups mean F = 0.
        f_stat = 0.0 if ss_between == 0.0 else math.inf
        return AnovaResult(f_stat, df_between, df_within, 1.0 if f_stat == 0.0 else 0.0)
    f_stat = (ss_between / df_between) / (ss_within / df_within)
    if f_stat <= 0.0:
        p = 1.0
    else:
        p = betainc_reg(df_within / 2.0, df_between / 2.0,
                        df_within / (df_within + df_between * f_stat))
    return AnovaResult(float(f_stat), df_between, df_within, float(p))

"""Goodness of fit: Kolmogorov-Smirnov distance, parametric-bootstrap
p-values and model-based tail trimming.

ks_stat returns the count-scaled statistic N*D (D being the classical
two-sided KS distance between the empirical CDF and the fitted model);
ks_distance exposes the classical D.  The bootstrap compares like against
like, so the p-value is invariant under that scaling, and a diagnostic
knob lets tests verify exactly that.

bootstrap_p replays the fit on synthetic samples drawn from the fitted
model: replicate i draws from the sub-stream (seed, i), refits with the
same method (and the same bin rule for minsqr, re-initialised from the
replicate's own moments), and scores its own KS statistic.  The p-value is
the fraction of replicate statistics at or above the data's (ties count,
which errs on the conservative side).  Replicates are distributed over a
process pool capped by the EXG_THREADS environment variable; results are
identical for any worker count because each replicate's stream depends
only on (seed, index) and aggregation runs in index order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dist import ExGaussParams, exgauss_cdf, zalp_exgauss
from .errors import BootstrapRetryError, DomainError, ExgError
from .fit import MAXLKHD, MINSQR, FitResult, SearchConfig, max_lkhd, min_sqr
from .rng import RngStream, drand_exg
from .stats_utils import _as_sample

__all__ = [
    "GofReport",
    "TrimReport",
    "ks_stat",
    "ks_distance",
    "bootstrap_p",
    "trim",
]


@dataclass(frozen=True)
class GofReport:
    """Bootstrap goodness-of-fit summary for one dataset and method."""

    ks: float
    p: float
    replicates: int
    ks_mean: float
    ks_sd: float
    method: str
    seed: int
    fitted: ExGaussParams
    refit_failures: int = 0


@dataclass(frozen=True)
class TrimReport:
    """Outcome of model-based tail trimming."""

    lo_cut: float
    hi_cut: float
    n_removed_left: int
    n_removed_right: int
    n_total: int
    pre_fit: ExGaussParams
    trimmed: np.ndarray


def _ks_scaled(values, p: ExGaussParams, scaling: str) -> float:
    x = np.sort(_as_sample(values))
    n = x.size
    f = np.atleast_1d(exgauss_cdf(x, p))
    i = np.arange(1, n + 1, dtype=float)
    d_plus = float(np.max(i / n - f))
    d_minus = float(np.max(f - (i - 1.0) / n))
    d = max(d_plus, d_minus)
    if scaling == "count":
        return n * d
    if scaling == "classical":
        return d
    raise DomainError(f"unknown ks scaling {scaling!r}")


def ks_stat(values, p: ExGaussParams) -> float:
    """Count-scaled KS statistic N*D between a sample and a fitted model."""
    return _ks_scaled(values, p, "count")


def ks_distance(values, p: ExGaussParams) -> float:
    """Classical KS distance D in [0, 1]."""
    return _ks_scaled(values, p, "classical")


def _fit_by_method(values, method: str, n_bins, cfg: SearchConfig) -> FitResult:
    if method == MAXLKHD:
        return max_lkhd(values, cfg=cfg)
    if method == MINSQR:
        return min_sqr(values, n_bins=n_bins, cfg=cfg)
    raise DomainError(f"bootstrap method must be 'minsqr' or 'maxlkhd', got {method!r}")


def _run_replicate(index: int, seed: int, fitted: ExGaussParams, n: int,
                   method: str, n_bins, cfg: SearchConfig, retry_cap: int,
                   scaling: str):
    """One bootstrap replicate: draw, refit, score.  Returns (ks, retries)."""
    stream = RngStream(seed).substream(index)
    attempts = 0
    while True:
        sample = drand_exg(stream, fitted, size=n)
        try:
            refit = _fit_by_method(sample, method, n_bins, cfg)
        except ExgError as exc:
            attempts += 1
            if attempts >= retry_cap:
                raise BootstrapRetryError(index, attempts, exc) from exc
            continue
        return _ks_scaled(sample, refit.params, scaling), attempts


def _replicate_star(args):
    return _run_replicate(*args)


def _resolve_threads(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get("EXG_THREADS", "").strip()
        if env:
            threads = int(env)
        else:
            threads = os.cpu_count() or 1
    return max(1, int(threads))


def bootstrap_p(values, method: str, replicates: int, seed: int,
                cfg: SearchConfig | None = None, n_bins: int | None = None,
                threads: int | None = None, retry_cap: int = 5,
                ks_scaling: str = "count") -> GofReport:
    """Parametric-bootstrap p-value for an ex-Gaussian fit.

    Fits the data by `method`, then draws `replicates` synthetic samples of
    the same size from the fitted model, refits each identically and
    compares KS statistics.  Replicates whose refit raises are redrawn from
    the same sub-stream up to retry_cap times before aborting.
    """
    arr = _as_sample(values, min_size=3)
    if replicates < 1:
        raise DomainError(f"replicates must be >= 1, got {replicates}")
    cfg = cfg or SearchConfig()
    seed = int(seed)

    fitted = _fit_by_method(arr, method, n_bins, cfg).params
    ks_data = _ks_scaled(arr, fitted, ks_scaling)

    tasks = [
        (i, seed, fitted, arr.size, method, n_bins, cfg, retry_cap, ks_scaling)
        for i in range(replicates)
    ]
    workers = min(_resolve_threads(threads), replicates)
    if workers <= 1:
        results = [_replicate_star(t) for t in tasks]
    else:
        chunk = max(1, replicates // (8 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_replicate_star, tasks, chunksize=chunk))

    rep_ks = np.array([r[0] for r in results])
    retries = int(sum(r[1] for r in results))
    p = float(np.count_nonzero(rep_ks >= ks_data)) / replicates
    return GofReport(
        ks=float(ks_data),
        p=p,
        replicates=replicates,
        ks_mean=float(rep_ks.mean()),
        ks_sd=float(rep_ks.std()),  # population sd over the replicate values
        method=method,
        seed=seed,
        fitted=fitted,
        refit_failures=retries,
    )


def trim(values, tail_frac: float = 0.001, cfg: SearchConfig | None = None,
         left: bool = True, pre_fit: ExGaussParams | None = None) -> TrimReport:
    """Remove observations beyond model-based tail quantiles.

    A maximum-likelihood pre-fit locates the points with left and right
    tail area tail_frac; observations strictly beyond them are dropped
    (values exactly at a cut survive).  left=False keeps the left tail
    untouched, for protocols that only police slow outliers.  Passing
    pre_fit skips the internal fit, which is how re-trimming with frozen
    cuts stays a no-op.
    """
    arr = _as_sample(values, min_size=3)
    if not 0.0 < tail_frac < 0.5:
        raise DomainError(f"tail_frac must lie in (0, 0.5), got {tail_frac!r}")
    cfg = cfg or SearchConfig()
    pre = pre_fit if pre_fit is not None else max_lkhd(arr, cfg=cfg).params
    hi_cut = zalp_exgauss(tail_frac, pre)
    lo_cut = zalp_exgauss(1.0 - tail_frac, pre) if left else -math.inf
    keep = (arr >= lo_cut) & (arr <= hi_cut)
    return TrimReport(
        lo_cut=float(lo_cut),
        hi_cut=float(hi_cut),
        n_removed_left=int(np.count_nonzero(arr < lo_cut)),
        n_removed_right=int(np.count_nonzero(arr > hi_cut)),
        n_total=int(arr.size),
        pre_fit=pre,
        trimmed=arr[keep],
    )

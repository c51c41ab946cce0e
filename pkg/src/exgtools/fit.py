"""Parameter estimation: moment matching, histogram least squares and
maximum likelihood.

The two search-based fits use analytic gradients: writing d = (x - mu)/sigma,
r = sigma/tau, u = (r - d)/sqrt(2) and E(u) = (2/sqrt(pi)) exp(-u^2)/erfc(u)
(the negative log-derivative of erfc), the log-density derivatives are

    d(ln f)/d(mu)    = 1/tau - E(u)/(sqrt(2) sigma)
    d(ln f)/d(sigma) = sigma/tau^2 - E(u) (d/(sqrt(2) sigma) + 1/(sqrt(2) tau))
    d(ln f)/d(tau)   = -1/tau + d sigma/tau^2 - sigma^2/tau^3
                       + E(u) sigma/(sqrt(2) tau^2)

E(u) is evaluated through erfcx on both sides of u = 0, so the gradients
stay finite wherever the stable log-density does.  Finite-difference
property tests gate these formulas.

The search direction is the raw gradient (ascent for the likelihood,
descent for the squared residuals) with an Armijo backtracking line search
(contraction 0.5, slope factor 1e-4).  The initial trial step of each
iteration is the Barzilai-Borwein length from the previous accepted step,
which keeps plain gradient iterations practical inside bootstrap loops;
steps leaving the valid parameter domain count as objective -inf and
backtrack.  Convergence is declared when the gradient norm relative to
(1 + |objective|) drops below grad_tol.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dist import ExGaussParams, ExGaussStats, _pdf_kernel, stats_to_pars
from .errors import DataError, ExtremePointError, ParameterError
from .special import INV_SQRT2, TWO_OVER_SQRTPI, _erfcx_nonneg
from .stats_utils import Histogram, _as_sample, histogram, stats

__all__ = [
    "STAT",
    "MINSQR",
    "MAXLKHD",
    "SearchConfig",
    "FitResult",
    "fit_stat",
    "exg_lnlkhd",
    "max_lkhd",
    "exg_sqr",
    "min_sqr",
    "min_sqr_hist",
    "auto_init",
]

STAT = "stat"
MINSQR = "minsqr"
MAXLKHD = "maxlkhd"


@dataclass(frozen=True)
class SearchConfig:
    """Knobs of the gradient search.

    grad_tol is relative to (1 + |objective|); init_t_clamp replaces the
    sample skewness when it falls outside (0, 2) while building the
    automatic starting point.
    """

    grad_tol: float = 1e-8
    max_iter: int = 100_000
    init_t_clamp: float = 1.9

    def __post_init__(self):
        if not (self.grad_tol > 0.0 and math.isfinite(self.grad_tol)):
            raise ParameterError(f"grad_tol must be positive, got {self.grad_tol!r}")
        if self.max_iter < 1:
            raise ParameterError(f"max_iter must be >= 1, got {self.max_iter!r}")
        if not (0.0 < self.init_t_clamp < 2.0):
            raise ParameterError(
                f"init_t_clamp must lie in (0, 2), got {self.init_t_clamp!r}"
            )


@dataclass(frozen=True)
class FitResult:
    """Estimated parameters plus search diagnostics.

    objective is the log-likelihood (maxlkhd), the weighted residual sum of
    the final descent stage (minsqr; see min_sqr_hist), or None (stat).
    gradient_norm is the relative measure the convergence test uses; it is
    None for the search-free stat method.
    """

    params: ExGaussParams
    method: str
    objective: float | None
    iterations: int
    gradient_norm: float | None
    converged: bool
    n_bins: int | None = None


def _logpdf_terms(x: np.ndarray, mu: float, sigma: float, tau: float):
    """Per-point log-density and its parameter gradient components.

    Non-finite entries are possible for absurd observations (|x - mu|/sigma
    past 1e154); callers decide whether that raises or backtracks, so numpy
    warnings stay silenced here.
    """
    r = sigma / tau
    if not math.isfinite(r):
        return None
    with np.errstate(over="ignore", invalid="ignore"):
        d = (x - mu) / sigma
        u = (r - d) * INV_SQRT2
        logf = np.empty_like(d)
        e_u = np.empty_like(d)
        tail = u < 0.0
        main = ~tail
        if np.any(main):
            ex = _erfcx_nonneg(u[main])
            dm = d[main]
            logf[main] = -math.log(2.0 * tau) - 0.5 * dm * dm + np.log(ex)
            e_u[main] = TWO_OVER_SQRTPI / ex
        if np.any(tail):
            ut = u[tail]
            w = np.exp(-ut * ut)
            erfc_t = 2.0 - w * _erfcx_nonneg(-ut)
            logf[tail] = (
                -math.log(2.0 * tau) + (0.5 * r * r - d[tail] * r) + np.log(erfc_t)
            )
            e_u[tail] = TWO_OVER_SQRTPI * w / erfc_t
        g_mu = 1.0 / tau - e_u * (INV_SQRT2 / sigma)
        g_sigma = sigma / tau**2 - e_u * INV_SQRT2 * (d / sigma + 1.0 / tau)
        g_tau = (
            -1.0 / tau
            + d * sigma / tau**2
            - sigma**2 / tau**3
            + e_u * (INV_SQRT2 * sigma / tau**2)
        )
    return logf, g_mu, g_sigma, g_tau


def exg_lnlkhd(values, p: ExGaussParams):
    """Log-likelihood of a sample and its (mu, sigma, tau) gradient."""
    if not isinstance(p, ExGaussParams):
        raise ParameterError(f"expected ExGaussParams, got {type(p).__name__}")
    x = _as_sample(values)
    terms = _logpdf_terms(x, p.mu, p.sigma, p.tau)
    if terms is None:
        raise ParameterError(
            f"sigma/tau = {p.sigma / p.tau!r} overflows; parameters too degenerate"
        )
    logf, g_mu, g_sigma, g_tau = terms
    finite = np.isfinite(logf)
    if not np.all(finite):
        raise ExtremePointError(x[~finite])
    value = float(np.sum(logf))
    grad = np.array([np.sum(g_mu), np.sum(g_sigma), np.sum(g_tau)])
    return value, grad


def exg_sqr(h: Histogram, p: ExGaussParams):
    """Sum of squared density residuals over a histogram, with gradient.

    Residuals are (bin density - f at bin center), unweighted.
    """
    if not isinstance(h, Histogram):
        raise DataError(f"expected Histogram, got {type(h).__name__}")
    if not isinstance(p, ExGaussParams):
        raise ParameterError(f"expected ExGaussParams, got {type(p).__name__}")
    c = np.asarray(h.centers, dtype=float)
    terms = _logpdf_terms(c, p.mu, p.sigma, p.tau)
    if terms is None:
        raise ParameterError(
            f"sigma/tau = {p.sigma / p.tau!r} overflows; parameters too degenerate"
        )
    _, g_mu, g_sigma, g_tau = terms
    # f through the same kernel as exgauss_pdf, so a histogram built from
    # the density round-trips to an exact zero.
    f, _ = _pdf_kernel(c, p)
    resid = h.densities - f
    value = float(np.dot(resid, resid))
    # d(value)/d(theta) = sum 2 (f - density) * f * d(log f)/d(theta)
    w = 2.0 * (f - h.densities) * f
    grad = np.array([np.dot(w, g_mu), np.dot(w, g_sigma), np.dot(w, g_tau)])
    return value, grad


def auto_init(values, cfg: SearchConfig) -> ExGaussParams:
    """Moment-matching start point with the skewness clamp.

    Sample skewness at or above 2 is replaced by cfg.init_t_clamp; at or
    below 0 it is clamped to 0.1 so pathological samples still start the
    search inside the valid domain.
    """
    st = stats(values)
    t = st.t
    if t >= 2.0:
        t = cfg.init_t_clamp
    elif t <= 0.0:
        t = 0.1
    return stats_to_pars(ExGaussStats(st.m, st.s, t))


def fit_stat(values) -> FitResult:
    """Moment-matching fit: parameters whose M, S, t equal the sample's.

    Raises SkewnessRangeError when the sample skewness falls outside
    (0, 2), in which case no real parameters exist.
    """
    arr = _as_sample(values, min_size=3)
    params = stats_to_pars(stats(arr))
    return FitResult(
        params=params,
        method=STAT,
        objective=None,
        iterations=0,
        gradient_norm=None,
        converged=True,
    )


def _search(fun, theta0: np.ndarray, cfg: SearchConfig, maximize: bool):
    """Gradient ascent/descent with BB trial steps and Armijo backtracking.

    fun(theta) returns (value, grad) or None when theta is unusable;
    unusable trial points simply backtrack.  Returns
    (theta, value, iterations, rel_grad_norm, converged).
    """
    sign = 1.0 if maximize else -1.0
    theta = np.asarray(theta0, dtype=float)
    res = fun(theta)
    if res is None:
        raise ParameterError(f"objective undefined at start point {theta!r}")
    value, grad = res
    phi = sign * value
    g = sign * np.asarray(grad, dtype=float)

    scale = max(abs(theta[1]), abs(theta[2]), 1e-12)
    best_theta, best_phi = theta.copy(), phi
    prev_theta = prev_g = None
    alpha_prev = None
    iterations = 0

    for _ in range(cfg.max_iter):
        gnorm = float(np.linalg.norm(g))
        rel = gnorm / (1.0 + abs(phi))
        if rel <= cfg.grad_tol:
            break
        # Trial step: Barzilai-Borwein when history exists, else scale-based.
        alpha = None
        if prev_theta is not None:
            s = theta - prev_theta
            y = prev_g - g  # curvature of -phi along s
            sy = float(np.dot(s, y))
            if sy > 0.0:
                alpha = float(np.dot(s, s)) / sy
        if alpha is None or not math.isfinite(alpha) or alpha <= 0.0:
            alpha = alpha_prev if alpha_prev is not None else 0.1 * scale / gnorm
        alpha = min(alpha, 1e8 * scale / gnorm)

        accepted = False
        gsq = gnorm * gnorm
        # Below this, the Armijo gain is unresolvable in the objective's
        # floating precision; tolerance-neutral steps are then accepted so
        # the gradient can keep contracting to its own noise floor.
        resolution = 8.0 * np.finfo(float).eps * (1.0 + abs(phi))
        for _ in range(64):
            trial = theta + alpha * g
            if trial[1] > 0.0 and trial[2] > 0.0:
                res = fun(trial)
                if res is not None:
                    v_t, g_t = res
                    phi_t = sign * v_t
                    gain = 1e-4 * alpha * gsq
                    if math.isfinite(phi_t) and (
                        phi_t >= phi + gain
                        or (gain < resolution and phi_t >= phi - resolution)
                    ):
                        accepted = True
                        break
            alpha *= 0.5
        if not accepted:
            break
        if float(np.max(np.abs(trial - theta))) <= 1e-16 * (1.0 + float(np.max(np.abs(theta)))):
            # Step too small to move the iterate; gradient is at noise level.
            theta, phi, g = trial, phi_t, sign * np.asarray(g_t, dtype=float)
            iterations += 1
            break
        prev_theta, prev_g = theta, g
        theta, phi = trial, phi_t
        g = sign * np.asarray(g_t, dtype=float)
        alpha_prev = alpha
        iterations += 1
        if phi > best_phi:
            best_phi = phi
            best_theta = theta.copy()

    # Prefer the final iterate (where the criterion was checked) unless an
    # earlier one was better by more than the objective's float resolution.
    if phi < best_phi - 8.0 * np.finfo(float).eps * (1.0 + abs(best_phi)):
        theta = best_theta
    res = fun(theta)
    value, grad = res
    rel = float(np.linalg.norm(grad)) / (1.0 + abs(value))
    return theta, value, iterations, rel, rel <= cfg.grad_tol


def max_lkhd(values, init: ExGaussParams | None = None,
             cfg: SearchConfig | None = None) -> FitResult:
    """Maximum-likelihood fit by gradient ascent on the log-likelihood."""
    arr = _as_sample(values, min_size=3)
    cfg = cfg or SearchConfig()
    if init is None:
        init = auto_init(arr, cfg)

    def fun(theta):
        terms = _logpdf_terms(arr, theta[0], theta[1], theta[2])
        if terms is None:
            return None
        logf, g_mu, g_sigma, g_tau = terms
        value = float(np.sum(logf))
        if not math.isfinite(value):
            return None
        return value, np.array([np.sum(g_mu), np.sum(g_sigma), np.sum(g_tau)])

    theta, value, iters, rel, converged = _search(
        fun, np.array(init.as_tuple()), cfg, maximize=True
    )
    return FitResult(
        params=ExGaussParams(*theta),
        method=MAXLKHD,
        objective=value,
        iterations=iters,
        gradient_norm=rel,
        converged=converged,
    )


def _sqr_fun(h: Histogram, weights: np.ndarray):
    """Weighted squared-residual objective closure over a fixed histogram."""
    c = np.asarray(h.centers, dtype=float)
    dens = h.densities

    def fun(theta):
        try:
            p = ExGaussParams(theta[0], theta[1], theta[2])
        except ParameterError:
            return None
        terms = _logpdf_terms(c, p.mu, p.sigma, p.tau)
        if terms is None:
            return None
        _, g_mu, g_sigma, g_tau = terms
        f, _ = _pdf_kernel(c, p)
        resid = dens - f
        value = float(np.dot(weights * resid, resid))
        if not math.isfinite(value):
            return None
        w = 2.0 * weights * (f - dens) * f
        return value, np.array([np.dot(w, g_mu), np.dot(w, g_sigma), np.dot(w, g_tau)])

    return fun


def min_sqr_hist(h: Histogram, init: ExGaussParams | None = None,
                 cfg: SearchConfig | None = None) -> FitResult:
    """Least-squares fit against an already built histogram.

    Two descent stages: first on the plain residual sum (exg_sqr), then a
    reweighted pass with inverse-variance weights taken from the first
    stage's curve (bin-density variance f/(N*width), floored at one
    expected count).  The reweighting removes the excess spread that equal
    weighting gives the noisy peak bins; objective, gradient_norm and
    converged describe the final weighted stage.
    """
    cfg = cfg or SearchConfig()
    if init is None:
        from .stats_utils import stats_his

        st = stats_his(h)
        t = st.t
        if t >= 2.0:
            t = cfg.init_t_clamp
        elif t <= 0.0:
            t = 0.1
        init = stats_to_pars(ExGaussStats(st.m, st.s, t))

    ones = np.ones_like(h.densities)
    theta1, _, iters1, rel1, conv1 = _search(
        _sqr_fun(h, ones), np.array(init.as_tuple()), cfg, maximize=False
    )
    pilot = _logpdf_terms(np.asarray(h.centers, dtype=float),
                          theta1[0], theta1[1], theta1[2])
    f_pilot = np.exp(pilot[0])
    nw = h.n_total * h.widths
    var = np.maximum(f_pilot, 1.0 / nw) / nw
    theta, value, iters2, rel, converged = _search(
        _sqr_fun(h, 1.0 / var), theta1, cfg, maximize=False
    )
    return FitResult(
        params=ExGaussParams(*theta),
        method=MINSQR,
        objective=value,
        iterations=iters1 + iters2,
        gradient_norm=rel,
        converged=converged,
        n_bins=h.n_bins,
    )


def min_sqr(values, n_bins: int | None = None, init: ExGaussParams | None = None,
            cfg: SearchConfig | None = None) -> FitResult:
    """Least-squares fit: bins the sample, then descends the residual sum."""
    arr = _as_sample(values, min_size=3)
    cfg = cfg or SearchConfig()
    h = histogram(arr, n_bins)
    if init is None:
        init = auto_init(arr, cfg)
    return min_sqr_hist(h, init=init, cfg=cfg)

"""Legacy-named bindings over the exgtools ex-Gaussian toolkit.

Old analysis scripts address this API surface: scalar-first signatures,
tuple returns for parameter/statistics triples, and a module-level random
stream behind the ``drand`` family (seed 0 until :func:`set_seed` changes
it).  Every function is a thin delegation to exgtools; no numerics live
here.  Error classes are exgtools' own, which already derive from the
native ValueError/RuntimeError hierarchy, with diagnostics preserved.

Long-running calls (maxLKHD, minSQR) spend their time inside numpy kernels
that release the interpreter lock; stream objects remain single-owner.
"""

from __future__ import annotations

try:
    import exgtools as _xg
except ImportError as exc:  # pragma: no cover - environment misconfiguration
    raise ImportError(
        "exgutils-compat is a binding layer and needs the exgtools package "
        "installed (pip install exgtools)"
    ) from exc

__all__ = [
    "set_seed",
    "drand",
    "drand_exp",
    "drand_gauss",
    "drand_exg",
    "gaussian",
    "exgauss",
    "exgauss_lamb",
    "exgauss_lt",
    "exgauss_lamb_lt",
    "zalp_exgauss",
    "zalp_exgauss_lamb",
    "pars_to_stats",
    "stats_to_pars",
    "histogram",
    "stats",
    "stats_his",
    "correlation",
    "minsquare",
    "int_points_gauss",
    "intsum",
    "exgLKHD",
    "maxLKHD",
    "exgSQR",
    "minSQR",
    "zero",
    "integral",
    "ANOVA",
    "bind_all",
]

_stream = _xg.RngStream(0)


def set_seed(seed):
    """Reset the module stream; scripts call this once up front."""
    global _stream
    _stream = _xg.RngStream(int(seed))


def drand(size=None):
    """Uniform draw(s) on [0, 1) from the module stream."""
    return _xg.drand(_stream, size)


def drand_exp(tau, size=None):
    """Exponential draw(s) with mean tau."""
    return _xg.drand_exp(_stream, tau, size)


def drand_gauss(mu, sigma, size=None):
    """Gaussian draw(s)."""
    return _xg.drand_gauss(_stream, mu, sigma, size)


def drand_exg(mu, sigma, tau, size=None):
    """Ex-Gaussian draw(s)."""
    return _xg.drand_exg(_stream, _xg.ExGaussParams(mu, sigma, tau), size)


def gaussian(x, mu, sigma):
    """Gaussian density at x."""
    return _xg.gauss_pdf(x, mu, sigma)


def exgauss(x, mu, sigma, tau):
    """Ex-Gaussian density at x."""
    return _xg.exgauss_pdf(x, _xg.ExGaussParams(mu, sigma, tau))


def exgauss_lamb(z, lamb):
    """Standardized ex-Gaussian density with asymmetry lamb."""
    return _xg.exgauss_pdf_lamb(z, lamb)


def exgauss_lt(x, mu, sigma, tau):
    """Left tail (CDF) at x."""
    return _xg.exgauss_cdf(x, _xg.ExGaussParams(mu, sigma, tau))


def exgauss_lamb_lt(z, lamb):
    """Left tail of the standardized form."""
    return _xg.exgauss_cdf_lamb(z, lamb)


def zalp_exgauss(alpha, mu, sigma, tau):
    """Point leaving right-tail area alpha."""
    return _xg.zalp_exgauss(alpha, _xg.ExGaussParams(mu, sigma, tau))


def zalp_exgauss_lamb(alpha, lamb):
    """Standardized right-tail point."""
    return _xg.zalp_exgauss_lamb(alpha, lamb)


def pars_to_stats(mu, sigma, tau):
    """(mu, sigma, tau) -> (M, S, t)."""
    st = _xg.pars_to_stats(_xg.ExGaussParams(mu, sigma, tau))
    return (st.m, st.s, st.t)


def stats_to_pars(m, s, t):
    """(M, S, t) -> (mu, sigma, tau)."""
    p = _xg.stats_to_pars(_xg.ExGaussStats(m, s, t))
    return (p.mu, p.sigma, p.tau)


def histogram(data, n_ints=None):
    """Histogram of a dataset; returns the exgtools Histogram object."""
    return _xg.histogram(data, n_ints)


def stats(data):
    """(M, S, t) of a dataset."""
    st = _xg.stats(data)
    return (st.m, st.s, st.t)


def stats_his(his):
    """(M, S, t) of binned data."""
    st = _xg.stats_his(his)
    return (st.m, st.s, st.t)


def correlation(xs, ys):
    """Pearson correlation of two equal-length datasets."""
    return _xg.correlation(xs, ys)


def minsquare(points, degree):
    """Polynomial least squares; coefficients constant-first."""
    return _xg.minsquare(points, degree)


def int_points_gauss(a, b, n):
    """Gauss-Legendre (node, weight) partition of [a, b]."""
    return _xg.int_points_gauss(a, b, n)


def intsum(fvals, partition):
    """Weighted quadrature sum over a partition."""
    return _xg.intsum(fvals, partition)


def exgLKHD(data, mu, sigma, tau):
    """Log-likelihood and its (mu, sigma, tau) gradient."""
    value, grad = _xg.exg_lnlkhd(data, _xg.ExGaussParams(mu, sigma, tau))
    return value, (grad[0], grad[1], grad[2])


def maxLKHD(data, init=None):
    """(mu, sigma, tau) maximizing the likelihood of a dataset."""
    init_p = _xg.ExGaussParams(*init) if init is not None else None
    fit = _xg.max_lkhd(data, init=init_p)
    return fit.params.as_tuple()


def exgSQR(his, mu, sigma, tau):
    """Squared-residual sum over a histogram and its gradient."""
    value, grad = _xg.exg_sqr(his, _xg.ExGaussParams(mu, sigma, tau))
    return value, (grad[0], grad[1], grad[2])


def minSQR(his, init=None):
    """(mu, sigma, tau) minimizing the squared residuals of a histogram."""
    init_p = _xg.ExGaussParams(*init) if init is not None else None
    fit = _xg.min_sqr_hist(his, init=init_p)
    return fit.params.as_tuple()


def zero(func, a, b, tol=1e-12):
    """Root of func inside the sign-changing bracket [a, b]."""
    return _xg.zero(func, (a, b), tol)


def integral(func, a, b, n=64):
    """Gauss-Legendre integral of func over [a, b]."""
    return _xg.integral(func, a, b, n)


def ANOVA(groups):
    """One-way ANOVA: (F, df_between, df_within, p)."""
    res = _xg.anova(groups)
    return (res.f, res.df_between, res.df_within, res.p)


def bind_all():
    """The full legacy namespace as a dict (name -> callable)."""
    return {name: globals()[name] for name in __all__ if name != "bind_all"}

"""exgtools: fitting and significance testing for the ex-Gaussian distribution.

The ex-Gaussian (sum of a Gaussian and an independent exponential) is the
standard model for positively skewed data such as reaction times.  This
package evaluates its density, CDF and quantiles with overflow-safe
numerics, fits it by moment matching, histogram least squares or maximum
likelihood, scores fits with parametric-bootstrap KS p-values, and trims
samples at model-based tail quantiles.  The ``exg`` command line wraps the
same operations.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .dist import (
    BRANCH_ERFCX,
    BRANCH_GAUSS,
    BRANCH_TAIL,
    ExGaussParams,
    ExGaussStats,
    exgauss_cdf,
    exgauss_cdf_lamb,
    exgauss_pdf,
    exgauss_pdf_branches,
    exgauss_pdf_lamb,
    gauss_pdf,
    pars_to_stats,
    stats_to_pars,
    zalp_exgauss,
    zalp_exgauss_lamb,
)
from .errors import (
    BootstrapRetryError,
    DataError,
    DomainError,
    ExgError,
    ExtremePointError,
    FitError,
    ParameterError,
    SkewnessRangeError,
)
from .fit import (
    MAXLKHD,
    MINSQR,
    STAT,
    FitResult,
    SearchConfig,
    auto_init,
    exg_lnlkhd,
    exg_sqr,
    fit_stat,
    max_lkhd,
    min_sqr,
    min_sqr_hist,
)
from .gof import GofReport, TrimReport, bootstrap_p, ks_distance, ks_stat, trim
from .rng import RngStream, drand, drand_exg, drand_exp, drand_gauss
from .special import erfc, erfcx, norm_cdf
from .stats_utils import (
    AnovaResult,
    Histogram,
    anova,
    correlation,
    histogram,
    int_points_gauss,
    integral,
    intsum,
    minsquare,
    stats,
    stats_his,
    zero,
)

__all__ = [
    "__version__",
    # dist
    "ExGaussParams", "ExGaussStats", "exgauss_pdf", "exgauss_pdf_lamb",
    "exgauss_pdf_branches", "exgauss_cdf", "exgauss_cdf_lamb", "zalp_exgauss",
    "zalp_exgauss_lamb", "pars_to_stats", "stats_to_pars", "gauss_pdf",
    "BRANCH_ERFCX", "BRANCH_TAIL", "BRANCH_GAUSS",
    # special
    "erfcx", "erfc", "norm_cdf",
    # rng
    "RngStream", "drand", "drand_exp", "drand_gauss", "drand_exg",
    # stats utils
    "Histogram", "histogram", "stats", "stats_his", "correlation", "minsquare",
    "int_points_gauss", "intsum", "integral", "zero", "anova", "AnovaResult",
    # fit
    "STAT", "MINSQR", "MAXLKHD", "SearchConfig", "FitResult", "fit_stat",
    "exg_lnlkhd", "max_lkhd", "exg_sqr", "min_sqr", "min_sqr_hist", "auto_init",
    # gof
    "GofReport", "TrimReport", "ks_stat", "ks_distance", "bootstrap_p", "trim",
    # errors
    "ExgError", "ParameterError", "DomainError", "SkewnessRangeError",
    "DataError", "ExtremePointError", "FitError", "BootstrapRetryError",
]

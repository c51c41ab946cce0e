"""Exception hierarchy for exgtools.

Exit-code mapping used by the CLI: usage errors are raised by argparse
itself (exit 2), :class:`DataError` maps to exit 3, everything else
derived from :class:`ExgError` maps to exit 4.
"""

from __future__ import annotations


class ExgError(Exception):
    """Base class for all exgtools errors."""


class ParameterError(ExgError, ValueError):
    """Invalid distribution parameters (sigma or tau not strictly positive,
    or non-finite fields)."""


class DomainError(ExgError, ValueError):
    """Argument outside its mathematical domain (alpha, lamb, tail fractions...)."""


class SkewnessRangeError(DomainError):
    """Statistics triple cannot be converted to parameters because the
    skewness lies outside the open interval (0, 2).

    Carries the offending skewness in ``t``.
    """

    def __init__(self, t: float, message: str | None = None):
        self.t = float(t)
        if message is None:
            message = (
                f"skewness t={t!r} outside (0, 2): no real (mu, sigma, tau) exists"
            )
        super().__init__(message)


class DataError(ExgError, ValueError):
    """Malformed or unusable input data (bad file rows, empty samples,
    degenerate histograms)."""


class ExtremePointError(ExgError, ValueError):
    """Log-likelihood evaluation hit observations so extreme that even the
    stable log-density path is not finite.

    ``points`` holds the offending observations.
    """

    def __init__(self, points, message: str | None = None):
        self.points = list(points)
        if message is None:
            preview = ", ".join(repr(p) for p in self.points[:5])
            more = "" if len(self.points) <= 5 else f" (+{len(self.points) - 5} more)"
            message = f"log-density not finite at observations: {preview}{more}"
        super().__init__(message)


class FitError(ExgError, RuntimeError):
    """A fitting routine could not produce a usable result."""


class BootstrapRetryError(FitError):
    """A bootstrap replicate exhausted its refit retry budget."""

    def __init__(self, replicate: int, attempts: int, last_error: Exception):
        self.replicate = replicate
        self.attempts = attempts
        self.last_error = last_error
        super().__init__(
            f"replicate {replicate}: refit failed {attempts} times in a row; "
            f"last error: {last_error}"
        )

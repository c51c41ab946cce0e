"""Seedable random variate generation.

Generator choice: PCG64 behind numpy's Generator front end.  It is small,
well documented, and SeedSequence gives collision-free sub-streams, which
is what makes bootstrap replicates reproducible regardless of how they are
scheduled.  Sub-streams are derived as SeedSequence(seed, spawn_key=key),
so ``RngStream(seed).substream(i)`` is a pure function of (seed, i) and
distinct keys yield statistically independent, non-overlapping streams
(PCG64's documented guarantee is far beyond 2^40 draws per stream).

Gaussian draws use numpy's ziggurat standard_normal, exponential draws the
ziggurat standard_exponential; golden-value tests pin both, so the exact
sequences are part of the package contract for a fixed numpy major line.

An ex-Gaussian draw is literally one Gaussian draw followed by one
exponential draw from the same stream (blockwise for vector draws: n
Gaussians, then n exponentials).  A stream is single-owner: never share
one across threads; split sub-streams up front instead.
"""

from __future__ import annotations

import numpy as np

from .dist import ExGaussParams
from .errors import DomainError, ParameterError

__all__ = ["RngStream", "drand", "drand_exp", "drand_gauss", "drand_exg"]

_MAX_SEED = 2**64


class RngStream:
    """A seeded PCG64 stream; the root of reproducibility in this package."""

    __slots__ = ("seed", "_key", "_gen")

    def __init__(self, seed: int, _key: tuple[int, ...] = ()):
        if not isinstance(seed, (int, np.integer)):
            raise ParameterError(f"seed must be an integer, got {seed!r}")
        seed = int(seed)
        if not 0 <= seed < _MAX_SEED:
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self._key = tuple(int(k) for k in _key)
        ss = np.random.SeedSequence(seed, spawn_key=self._key)
        self._gen = np.random.Generator(np.random.PCG64(ss))

    def substream(self, *key: int) -> "RngStream":
        """Independent stream derived from (seed, existing key, key)."""
        return RngStream(self.seed, self._key + key)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, key={self._key})"


def drand(stream: RngStream, size=None):
    """Uniform draw(s) on [0, 1)."""
    return stream._gen.random(size)


def drand_exp(stream: RngStream, tau: float, size=None):
    """Exponential draw(s) with mean tau > 0."""
    if not tau > 0.0:
        raise DomainError(f"tau must be > 0, got {tau!r}")
    return tau * stream._gen.standard_exponential(size)


def drand_gauss(stream: RngStream, mu: float, sigma: float, size=None):
    """Gaussian draw(s) with mean mu and standard deviation sigma > 0."""
    if not sigma > 0.0:
        raise DomainError(f"sigma must be > 0, got {sigma!r}")
    return mu + sigma * stream._gen.standard_normal(size)


def drand_exg(stream: RngStream, p: ExGaussParams, size=None):
    """Ex-Gaussian draw(s): a Gaussian draw plus an exponential draw.

    Consumes the stream exactly like drand_gauss followed by drand_exp
    with the same size argument, which tests rely on.
    """
    if not isinstance(p, ExGaussParams):
        raise ParameterError(f"expected ExGaussParams, got {type(p).__name__}")
    return drand_gauss(stream, p.mu, p.sigma, size) + drand_exp(stream, p.tau, size)

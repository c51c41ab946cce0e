"""Special functions implemented in-repo: erfcx, erfc, the normal CDF and
the regularized incomplete beta function.

The scaled complementary error function erfcx(x) = exp(x^2) * erfc(x) is the
workhorse here: it is what keeps the ex-Gaussian density finite where the
naive exp * erfc product overflows on one side and underflows on the other.
For x >= 0 we evaluate the Shepherd & Laframboise (1981) rational
approximation in the transformed variable t = K / (K + x); for x < 0 the
reflection 2*exp(x^2) - erfcx(-x) applies.  Measured accuracy against a
50-digit reference: max relative error 7.7e-16 for x >= 0 and 5.7e-14 on
[-26.6, 0) (the reflection is limited by the rounding of exp(x^2) itself).
Arguments below -26.628 overflow double precision and return +inf.

All functions accept scalars or numpy arrays and are pure.
"""

from __future__ import annotations

import math

import numpy as np

SQRT2 = math.sqrt(2.0)
INV_SQRT2 = 1.0 / SQRT2
INV_SQRT2PI = 1.0 / math.sqrt(2.0 * math.pi)
TWO_OVER_SQRTPI = 2.0 / math.sqrt(math.pi)

# Transformation constant of the Shepherd-Laframboise fit.
_SL_K = 3.97886080735226
# exp(x^2) overflows past this point, so the x < 0 reflection returns inf.
_NEG_OVERFLOW = -26.628


# Chebyshev-economized polynomial coefficients of the fit, highest degree
# first, evaluated by Horner in u = K/(K + x) - 1/2.
_SL_COEF = (
    0.00127109764952614092,
    1.19314022838340944e-4,
    -0.003963850973605135,
    -8.70779635317295828e-4,
    0.00773672528313526668,
    0.00383335126264887303,
    -0.0127223813782122755,
    -0.0133823644533460069,
    0.0161315329733252248,
    0.0390976845588484035,
    0.00249367200053503304,
    -0.0838864557023001992,
    -0.119463959964325415,
    0.0166207924969367356,
    0.357524274449531043,
    0.805276408752910567,
    1.18902982909273333,
    1.37040217682338167,
    1.31314653831023098,
    1.07925515155856677,
    0.774368199119538609,
    0.490165080585318424,
    0.275374741597376782,
)


def _erfcx_nonneg(a):
    """Rational approximation of erfcx on a >= 0 (array valued)."""
    t = _SL_K / (a + _SL_K)
    u = t - 0.5
    y = _SL_COEF[0]
    for c in _SL_COEF[1:]:
        y = y * u + c
    return y * t


def erfcx(x):
    """Scaled complementary error function exp(x^2) * erfc(x).

    Parameters
    ----------
    x : float or ndarray

    Returns
    -------
    float or ndarray, matching the input shape.
    """
    a = np.abs(np.asarray(x, dtype=float))
    y = _erfcx_nonneg(a)
    neg = np.asarray(x, dtype=float) < 0.0
    if np.any(neg):
        xn = np.where(neg, a, 0.0)
        with np.errstate(over="ignore"):
            refl = 2.0 * np.exp(xn * xn) - y
        y = np.where(neg, refl, y)
    if np.ndim(x) == 0:
        return float(y)
    return y


def erfc(x):
    """Complementary error function, via erfcx (array friendly)."""
    xv = np.asarray(x, dtype=float)
    a = np.abs(xv)
    core = np.exp(-a * a) * _erfcx_nonneg(a)
    y = np.where(xv < 0.0, 2.0 - core, core)
    if np.ndim(x) == 0:
        return float(y)
    return y


def norm_cdf(x):
    """Standard normal CDF, accurate in both tails."""
    xv = np.asarray(x, dtype=float)
    y = 0.5 * erfc(-xv * INV_SQRT2)
    if np.ndim(x) == 0:
        return float(y)
    return y


def _betacf(a: float, b: float, x: float) -> float:
    # Modified Lentz evaluation of the incomplete-beta continued fraction.
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, 400):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-15:
            return h
    raise ArithmeticError(f"incomplete beta CF did not converge for a={a}, b={b}, x={x}")


def betainc_reg(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b) for a, b > 0, x in [0, 1].

    Continued-fraction evaluation, switching to the symmetric form when x is
    past the distribution bulk.  Accuracy is a few 1e-15 relative for
    moderate (a, b); worst observed against a 50-digit reference is below
    1e-12, comfortably inside the 1e-10 target needed for F-test tails.
    """
    if not (a > 0 and b > 0):
        raise ValueError(f"betainc_reg requires a, b > 0, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"betainc_reg requires x in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b

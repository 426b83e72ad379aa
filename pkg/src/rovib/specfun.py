"""Special functions used by the eigenfunction and normalization code.

Log-gamma (Lanczos), rising factorials, Gauss 2F1, terminating 3F2 at unit
argument and Jacobi polynomials.  Terminating hypergeometric sums are carried
out in exact rational arithmetic on the binary values of the inputs, so the
only rounding is the final conversion to float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, PoleError

__all__ = [
    "SeriesResult",
    "gauss_2f1",
    "hyper_3f2_unit",
    "jacobi_hypergeometric",
    "jacobi_poly",
    "ln_beta",
    "ln_gamma",
    "ln_gamma_sign",
    "pochhammer",
]

SERIES_TOL = 1e-14
SERIES_MAX_TERMS = 100_000

# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_EULER_GAMMA = 0.5772156649015329
# zeta(k) - 1 for k = 2, 3, ...; Taylor coefficients of log-gamma about 1 and 2
_ZETA_MINUS_ONE = (
    0.6449340668482264,
    0.2020569031595943,
    0.08232323371113819,
    0.03692775514336993,
    0.01734306198444914,
    0.008349277381922827,
    0.00407735619794434,
    0.0020083928260822143,
    0.0009945751278180853,
    0.0004941886041194645,
    0.0002460865533080483,
    0.00012271334757848915,
    6.124813505870483e-05,
    3.058823630702049e-05,
    1.528225940865187e-05,
    7.637197637899763e-06,
    3.81729326499984e-06,
    1.908212716553939e-06,
    9.539620338727962e-07,
    4.769329867878064e-07,
    2.38450502727733e-07,
    1.1921992596531106e-07,
    5.960818905125948e-08,
    2.980350351465228e-08,
    1.4901554828365043e-08,
    7.45071178983543e-09,
    3.725334024788457e-09,
    1.862659723513049e-09,
    9.313274324196682e-10,
    4.656629065033784e-10,
    2.3283118336765053e-10,
    1.164155017270052e-10,
    5.820772087902701e-11,
    2.9103850444971e-11,
    1.4551921891041985e-11,
    7.275959835057482e-12,
    3.637979547378651e-12,
    1.818989650307066e-12,
)


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    converged: bool
    truncation_estimate: float

    def __float__(self):
        return float(self.value)


def _is_nonpositive_integer(x):
    return x <= 0 and float(x).is_integer()


def _lanczos_ln_gamma(x):
    # valid for x >= 0.5
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (x + 0.5) * math.log(t) - t + math.log(acc)


def _ln_gamma_near_one(eps):
    # log Gamma(1 + eps), |eps| <= 0.3, without the cancellation Lanczos suffers near the root
    acc = 0.0
    power = -eps
    for k, zm1 in enumerate(_ZETA_MINUS_ONE, start=2):
        power *= -eps
        acc += zm1 * power / k
    return -math.log1p(eps) + eps * (1.0 - _EULER_GAMMA) + acc


def ln_gamma_sign(x):
    """Return ``(log|Gamma(x)|, sign(Gamma(x)))``."""
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(x)
    if abs(x - 1.0) <= 0.3:
        return _ln_gamma_near_one(x - 1.0), 1.0
    if abs(x - 2.0) <= 0.3:
        return math.log1p(x - 2.0) + _ln_gamma_near_one(x - 2.0), 1.0
    if x >= 0.5:
        return _lanczos_ln_gamma(x), 1.0
    # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    s = math.sin(math.pi * x)
    value = math.log(math.pi / abs(s)) - _lanczos_ln_gamma(1.0 - x)
    return value, math.copysign(1.0, s)


def ln_gamma(x):
    """Natural log of ``|Gamma(x)|``."""
    return ln_gamma_sign(x)[0]


def ln_beta(a, b):
    return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)


def pochhammer(m, n):
    """Rising factorial ``m (m+1) ... (m+n-1)``, with ``(m)_0 = 1``."""
    if n < 0 or int(n) != n:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    out = 1.0
    for k in range(int(n)):
        out *= m + k
    return out


def _exact(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("hypergeometric parameters must be finite")
    return Fraction(x)


def _terminating_length(params):
    """Number of nonzero terms when some numerator parameter is -N, else None."""
    lengths = [int(-a) + 1 for a in params if _is_nonpositive_integer(a)]
    return min(lengths) if lengths else None


def _exact_sum(numer, denom, z, n_terms):
    numer = [_exact(a) for a in numer]
    denom = [_exact(b) for b in denom]
    z = _exact(z)
    term = Fraction(1)
    total = Fraction(1)
    for p in range(n_terms - 1):
        num = Fraction(1)
        for a in numer:
            num *= a + p
        den = Fraction(p + 1)
        for b in denom:
            den *= b + p
        if den == 0:
            raise PoleError(float(p))
        term = term * num * z / den
        total += term
    return total


def _float_series(numer, denom, z, tol, max_terms):
    term = 1.0
    total = 1.0
    log_scale = 0.0
    small_run = 0
    p = 0
    while p < max_terms:
        num = z
        for a in numer:
            num *= a + p
        den = p + 1.0
        for b in denom:
            den *= b + p
        if den == 0:
            raise PoleError(float(p))
        term *= num / den
        total += term
        p += 1
        if abs(term) > 1e280 or abs(total) > 1e280:
            term *= 1e-280
            total *= 1e-280
            log_scale += 280.0 * math.log(10.0)
        if abs(term) < tol * abs(total):
            small_run += 1
            if small_run == 3:
                break
        else:
            small_run = 0
    converged = small_run == 3
    estimate = abs(term) / abs(total) if total else abs(term)
    value = total * math.exp(log_scale) if log_scale else total
    return SeriesResult(value, p + 1, converged, estimate)


def gauss_2f1(a, b, c, z, tol=SERIES_TOL, max_terms=SERIES_MAX_TERMS):
    """Gauss hypergeometric series ``2F1(a, b; c; z)``.

    Summed exactly when ``a`` or ``b`` is a non-positive integer.  Otherwise
    the power series is used for ``|z| < 1``; convergence is declared after
    three consecutive terms below ``tol`` relative to the partial sum.
    """
    n_terms = _terminating_length((a, b))
    if n_terms is not None:
        value = float(_exact_sum((a, b), (c,), z, n_terms))
        return SeriesResult(value, n_terms, True, 0.0)
    if _is_nonpositive_integer(c):
        raise PoleError(c)
    if abs(z) >= 1.0:
        raise DomainError("non-terminating 2F1 requires |z| < 1")
    return _float_series((a, b), (c,), z, tol, max_terms)


def hyper_3f2_unit(a1, a2, a3, b1, b2):
    """Terminating ``3F2(a1, a2, a3; b1, b2; 1)`` summed exactly."""
    n_terms = _terminating_length((a1, a2, a3))
    if n_terms is None:
        raise DomainError("3F2 at unit argument is only evaluated for terminating parameter sets")
    value = float(_exact_sum((a1, a2, a3), (b1, b2), 1, n_terms))
    return SeriesResult(value, n_terms, True, 0.0)


def jacobi_poly(n, mu, nu, x):
    """Jacobi polynomial ``P_n^(mu, nu)(x)`` by the three-term recurrence.

    ``x`` may be a scalar or a numpy array.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    ab = mu + nu
    p = (mu + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0
    for k in range(2, n + 1):
        s = 2.0 * k + ab
        a_k = 2.0 * k * (k + ab) * (s - 2.0)
        b_k = (s - 1.0) * (s * (s - 2.0) * x + mu * mu - nu * nu)
        c_k = 2.0 * (k + mu - 1.0) * (k + nu - 1.0) * s
        p_prev, p = p, (b_k * p - c_k * p_prev) / a_k
    return p if p.ndim else float(p)


def jacobi_hypergeometric(n, mu, nu, x):
    """Jacobi polynomial from its terminating 2F1 representation.

    ``P_n^(mu,nu)(1-2s) = (mu+1)_n / n! * 2F1(-n, n+mu+nu+1; mu+1; s)``.
    Exact-sum counterpart of :func:`jacobi_poly`, scalar ``x`` only.
    """
    s = (_exact(1) - _exact(x)) / 2
    prefactor = _exact(1)
    for k in range(n):
        prefactor = prefactor * (_exact(mu) + 1 + k) / (k + 1)
    series = _exact_sum((-n, _exact(n) + _exact(mu) + _exact(nu) + 1), (_exact(mu) + 1,), s, n + 1)
    return float(prefactor * series)

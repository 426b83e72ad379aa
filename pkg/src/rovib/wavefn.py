"""Radial wave functions and their normalization.

With ``t = exp(-2 alpha r)`` and ``z = ±t`` the reduced radial function is

    g(r) = N z^K (1 - q z)^(S/q + 1/2) P_n^(2K, 2S/q)(1 - 2 q z),

and ``R(r) = g(r) / r``.  Since ``dr = -dt / (2 alpha t)`` the condition
``∫ R^2 r^2 dr = 1`` becomes

    N^2 / (2 alpha) ∫ t^(2K-1) (1 - q z)^(2S/q + 1) P_n(1 - 2 q z)^2 dt = 1.

Everything is evaluated in log space: for H2 the constant N is ~1e50.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import integrate

from .constants import Branch, PotentialParams
from .errors import DomainError, InvalidStateError, NoBoundStateError
from .potential import centrifugal_coeffs
from .spectrum import EnergyLevel, assemble
from .specfun import SeriesResult, hyper_3f2_unit, jacobi_poly, ln_beta, ln_gamma

__all__ = [
    "RadialState",
    "beta_norm",
    "count_nodes",
    "norm_quadrature",
    "norm_series",
    "norm_series_swave",
    "overlap",
    "r_space_norm",
    "radial_state",
    "radial_value",
    "reduced_value",
]

QUAD_LIMIT = 200


@dataclass(frozen=True)
class RadialState:
    """Exponents and normalization of one bound state.

    ``k_exp`` is the power of z, ``s_exp`` is S/q; the Jacobi orders are
    ``(2 k_exp, 2 s_exp)``.  ``log_norm`` is ``ln N`` from quadrature;
    ``norm_series`` is the diagnostic series constant (q = 1 only).
    """

    level: EnergyLevel = field(repr=False)
    k_exp: float
    s_exp: float
    n: int
    branch: Branch
    log_norm: float = float("nan")
    norm_series: float | None = None

    @property
    def params(self) -> PotentialParams:
        return self.level.params

    @property
    def norm_quadrature(self):
        return math.exp(self.log_norm)

    @property
    def jacobi_orders(self):
        return 2.0 * self.k_exp, 2.0 * self.s_exp


def _t_max(params):
    """Upper end of t = exp(-2 alpha r): r = 0, or the pole of the deformed coth."""
    if params.branch is Branch.PLUS and params.q > 1.0:
        return 1.0 / params.q
    return 1.0


def radial_state(level: EnergyLevel, coeffs=None, normalize=True) -> RadialState:
    """Build the wave-function description of a solved level."""
    params = level.params
    if params.q <= 0:
        raise DomainError("wave functions are implemented for q > 0")
    if not level.bound:
        # the closed form squares K, so an unbound level would come back with the wrong sign
        raise InvalidStateError(f"n = {level.n} is not a bound level")
    if coeffs is None:
        source = level.coeff_provenance or "matched"
        coeffs = centrifugal_coeffs(params, source)
    try:
        ap = assemble(params, level.l, coeffs, level.value, level.regime)
    except NoBoundStateError as exc:
        raise InvalidStateError(str(exc)) from None
    k_exp = ap.k_tilde
    s_exp = ap.s_tilde / params.q
    if not k_exp > 0.0 or not s_exp + 0.5 > 0.0:
        raise InvalidStateError(f"no decaying solution: K = {k_exp!r}, S/q = {s_exp!r}")
    if not (2.0 * k_exp > -1.0 and 2.0 * s_exp > -1.0):
        raise InvalidStateError("Jacobi orders must exceed -1")
    state = RadialState(level=level, k_exp=k_exp, s_exp=s_exp, n=level.n, branch=params.branch)
    if normalize:
        state = replace(state, log_norm=-0.5 * _log_integral(state) + 0.5 * math.log(2.0 * params.alpha))
        if params.q == 1.0:
            state = replace(state, norm_series=norm_series(state).value)
    return state


def _pieces(state, t):
    """(log of the envelope squared over t, jacobi argument) at t = exp(-2 alpha r)."""
    params = state.params
    sign = state.branch.sign
    qz = params.q * sign * t
    b = 2.0 * state.s_exp + 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        log_w = (2.0 * state.k_exp - 1.0) * np.log(t) + b * np.log1p(-qz)
    return log_w, 1.0 - 2.0 * qz


def _log_integral(state, limit=QUAD_LIMIT):
    """ln of ∫ t^(2K-1) (1-qz)^(2S/q+1) P_n^2 dt over the allowed t range."""
    t_max = _t_max(state.params)
    mu, nu = state.jacobi_orders
    n = state.n
    two_k = 2.0 * state.k_exp

    grid = np.linspace(0.0, t_max, 4001)[1:-1]
    b = 2.0 * state.s_exp + 1.0
    candidates = list(grid)
    if two_k > 1.0 and state.branch is Branch.PLUS:
        peak = (two_k - 1.0) / (state.params.q * (two_k - 1.0 + b))
        if 0.0 < peak < t_max:
            candidates.append(peak)
    candidates = np.array(candidates)
    log_w, _ = _pieces(state, candidates)
    log_w = np.where(np.isfinite(log_w), log_w, -np.inf)
    i_peak = int(np.argmax(log_w))
    log_peak = float(log_w[i_peak])
    t_peak = float(candidates[i_peak])

    if two_k >= 1.0:

        def f(t):
            lw, x = _pieces(state, t)
            return math.exp(lw - log_peak) * jacobi_poly(n, mu, nu, x) ** 2

        points = [t_peak] if 0.0 < t_peak < t_max else None
        val, _ = integrate.quad(f, 0.0, t_max, points=points, limit=limit, epsabs=0.0, epsrel=1e-13)
        return log_peak + math.log(val)

    # t^(2K-1) is singular at 0: substitute t = u^(1/2K), which absorbs it exactly
    inv = 1.0 / two_k
    log_rest_peak = log_peak - (two_k - 1.0) * math.log(t_peak)

    def g(u):
        t = u**inv
        lw, x = _pieces(state, t)
        rest = lw - (two_k - 1.0) * math.log(t)
        return math.exp(rest - log_rest_peak) * jacobi_poly(n, mu, nu, x) ** 2

    u_max = t_max**two_k
    val, _ = integrate.quad(g, 0.0, u_max, limit=limit, epsabs=0.0, epsrel=1e-13)
    return log_rest_peak + math.log(val * inv)


def norm_quadrature(state: RadialState, limit=QUAD_LIMIT):
    """Normalization constant N from adaptive quadrature of the t-integral."""
    return math.exp(0.5 * (math.log(2.0 * state.params.alpha) - _log_integral(state, limit)))


def beta_norm(state: RadialState):
    """Closed form of N for n = 0, q = 1 (plus branch): a Beta integral."""
    if state.n != 0 or state.params.q != 1.0 or state.branch is not Branch.PLUS:
        raise ValueError("the Beta closed form needs n = 0, q = 1 and the plus branch")
    log_int = ln_beta(2.0 * state.k_exp, 2.0 * state.s_exp + 2.0)
    return math.exp(0.5 * (math.log(2.0 * state.params.alpha) - log_int))


def reduced_value(state: RadialState, r):
    """g(r) = r R(r); zero inside the pole of the deformed potential."""
    params = state.params
    r = np.asarray(r, dtype=float)
    t = np.exp(-2.0 * params.alpha * r)
    sign = state.branch.sign
    qz = params.q * sign * t
    mu, nu = state.jacobi_orders
    inside = 1.0 - qz > 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        log_env = state.log_norm - 2.0 * params.alpha * state.k_exp * r + (state.s_exp + 0.5) * np.log1p(-qz)
        out = np.where(inside, np.exp(log_env) * jacobi_poly(state.n, mu, nu, 1.0 - 2.0 * qz), 0.0)
    return float(out) if out.ndim == 0 else out


def radial_value(state: RadialState, r):
    """R(r) = g(r)/r for r > 0."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise ValueError("r must be positive")
    out = reduced_value(state, r) / r
    return float(out) if np.ndim(out) == 0 else out


def _support(state, factor=80.0):
    """An r interval holding all of g^2 above exp(-factor) of its peak."""
    params = state.params
    t_max = _t_max(params)
    r_lo = -math.log(t_max) / (2.0 * params.alpha)
    span = max(params.molecule.equilibrium_radius, 1.0 / params.alpha)
    r = np.linspace(r_lo, r_lo + 60.0 * span, 60001)[1:]
    with np.errstate(divide="ignore"):
        lg = np.log(np.abs(reduced_value(state, r)) + 1e-320)
    # envelope only: the polynomial nodes would otherwise punch holes in the mask
    t = np.exp(-2.0 * params.alpha * r)
    log_env, _ = _pieces(state, t)
    keep = np.nonzero(log_env >= np.max(log_env) - factor)[0]
    lo = r[max(keep[0] - 1, 0)]
    hi = r[min(keep[-1] + 1, len(r) - 1)]
    peak = r[int(np.argmax(lg))]
    return max(lo, r_lo), hi, peak


def r_space_norm(state: RadialState):
    """∫ R(r)^2 r^2 dr evaluated directly on the r axis."""
    lo, hi, peak = _support(state)
    val, _ = integrate.quad(lambda r: reduced_value(state, r) ** 2, lo, hi, points=[peak], limit=400, epsabs=0.0, epsrel=1e-12)
    return val


def overlap(a: RadialState, b: RadialState):
    """∫ R_a R_b r^2 dr (diagnostic; exponents differ between states)."""
    lo_a, hi_a, pa = _support(a)
    lo_b, hi_b, pb = _support(b)
    lo, hi = min(lo_a, lo_b), max(hi_a, hi_b)
    val, _ = integrate.quad(
        lambda r: reduced_value(a, r) * reduced_value(b, r),
        lo,
        hi,
        points=sorted({pa, pb}),
        limit=400,
        epsabs=1e-14,
        epsrel=1e-10,
    )
    return val


def count_nodes(state: RadialState, r=None):
    """Sign changes of g(r) on a dense grid over its support."""
    if r is None:
        lo, hi, _ = _support(state, factor=40.0)
        r = np.linspace(lo, hi, 20001)[1:]
    g = reduced_value(state, r)
    g = g[g != 0.0]
    return int(np.count_nonzero(np.signbit(g[1:]) != np.signbit(g[:-1])))


def norm_series(state: RadialState, tol=1e-14, max_terms=100_000):
    """Normalization constant from the published hypergeometric m-series.

    The ratio Gamma(n+m)/Gamma(n) is read as the rising factorial (n)_m, the
    only reading that stays finite at n = 0; only q = 1 is covered.  The
    returned ``value`` is N (NaN when the bracketed sum is not positive).
    This is a diagnostic: it does not agree with the quadrature constant.
    """
    params = state.params
    if params.q != 1.0:
        raise DomainError("the series form is derived for q = 1 only")
    k = state.k_exp
    s = state.s_exp
    n = state.n
    a = 1.0 + n + 2.0 * (k + s)
    b = 2.0 * (k + s + 1.0)
    log_pref = ln_gamma(2.0 * k + 1.0) + ln_gamma(2.0 * s + 2.0) - math.log(2.0 * params.alpha)
    log_c0 = -ln_gamma(2.0 * k + 1.0) - ln_gamma(b)

    total = 0.0
    ratio = 1.0  # c_m / c_0
    small_run = 0
    m = 0
    term = 0.0
    while m < max_terms:
        f = hyper_3f2_unit(2.0 * k + m, -n, n + 1.0 + 2.0 * (k + s), m + b, 1.0 + 2.0 * k).value
        term = ratio * f
        total += term
        if ratio == 0.0 or abs(term) < tol * abs(total):
            small_run += 1
            if small_run == 3:
                break
        else:
            small_run = 0
        ratio *= -(a + m) * (n + m) / ((m + 1.0) * (m + 2.0 * k + 1.0) * (m + b))
        m += 1
    converged = small_run == 3
    estimate = abs(term) / abs(total) if total else abs(term)
    if total <= 0.0:
        return SeriesResult(float("nan"), m + 1, converged, estimate)
    log_bracket = log_pref + log_c0 + math.log(total)
    return SeriesResult(math.exp(-0.5 * log_bracket), m + 1, converged, estimate)


def norm_series_swave(params: PotentialParams, level: EnergyLevel, tol=1e-14):
    """s-wave form of :func:`norm_series`, exponents taken from an l = 0 level."""
    if level.l != 0:
        raise ValueError("s-wave normalization needs an l = 0 level")
    return norm_series(radial_state(level), tol)

"""Bound-state energies of the q-deformed hyperbolic potential.

Two regimes share one set of formulas:

* non-relativistic (Schrodinger): closed-form levels;
* Klein-Gordon with equal scalar and vector potentials: a transcendental
  equation solved by scanning and bisection.

Relativistic energies are handled as the offset ``E_R - mu c^2`` so that
binding energies of a fraction of an eV are not lost against a rest energy
of ~1e9 eV.  All energies are in eV unless a name says ``_cm``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .constants import CONSTANTS, PotentialParams
from .errors import DomainError, NoBoundStateError
from .nu import NUInput, derive_constants, energy_relation_residual
from .potential import CentrifugalCoeffs, Provenance, centrifugal_coeffs

__all__ = [
    "AssembledParams",
    "EnergyLevel",
    "Regime",
    "assemble",
    "kg_n_max",
    "level_count",
    "n_max_for_depth",
    "nr_energy",
    "nr_energy_nu",
    "nr_energy_swave",
    "nr_level_count",
    "nr_n_max",
    "nr_spectrum",
    "physical_level",
    "relativistic_residual",
    "scan_de",
    "scan_n",
    "solve_relativistic",
    "swave_residual",
    "transition",
]

HBAR_C = CONSTANTS.hbar_c
DEFAULT_SCAN_STEPS = 4000


class Regime(str, enum.Enum):
    RELATIVISTIC = "relativistic"
    NONRELATIVISTIC = "nonrelativistic"

    @property
    def short(self):
        return "kg" if self is Regime.RELATIVISTIC else "nr"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        if text in ("kg", "rel", "relativistic"):
            return cls.RELATIVISTIC
        if text in ("nr", "nonrel", "nonrelativistic", "non-relativistic"):
            return cls.NONRELATIVISTIC
        raise ValueError(f"unknown regime {value!r}")


@dataclass(frozen=True)
class AssembledParams:
    """Dimensionless K, Q, S of the hypergeometric form (tilded in the KG case)."""

    k_tilde: float
    q_tilde: float
    s_tilde: float
    regime: Regime
    q: float = 1.0

    def nu_input(self):
        q = self.q
        k2 = self.k_tilde**2
        b1 = q * q * k2 + self.s_tilde**2 - q * self.q_tilde - q * q / 4.0
        b2 = 2.0 * q * k2 - self.q_tilde
        return NUInput(c1=1.0, c2=q, c3=q, b1=b1, b2=b2, b3=k2)


@dataclass(frozen=True)
class EnergyLevel:
    """A solved level.

    ``value`` is E_NR for the non-relativistic regime and ``E_R - mu c^2``
    for the relativistic one, in eV.  ``residual`` is the normalized
    residual of the equation that produced the level; ``nu_residual`` the
    normalized NU quantization residual at that energy.
    """

    n: int
    l: int
    value: float
    regime: Regime
    residual: float
    params: PotentialParams = field(repr=False)
    coeff_provenance: Provenance | None = None
    nu_residual: float = float("nan")
    spurious: bool = False
    bound: bool = True

    @property
    def value_cm(self):
        return self.value / CONSTANTS.invcm_to_ev

    @property
    def total_energy(self):
        """E_R itself (eV) for relativistic levels."""
        if self.regime is Regime.RELATIVISTIC:
            return self.params.molecule.rest_energy + self.value
        return self.value


def _check_l(params, l):
    if l < 0 or int(l) != l:
        raise ValueError(f"l must be a non-negative integer, got {l!r}")
    if l != 0 and params.q != 1.0:
        raise DomainError("the centrifugal approximation is only valid for q = 1 when l != 0")


def _coeffs_for(params, l, coeffs):
    if coeffs is None:
        coeffs = centrifugal_coeffs(params, "matched")
    elif isinstance(coeffs, str):
        coeffs = centrifugal_coeffs(params, coeffs)
    return coeffs


def _two_m(params, regime, energy):
    """alpha_2^2: 2 mu c^2 (NR) or mu c^2 + E_R = 2 mu c^2 + offset (KG)."""
    rest = params.molecule.rest_energy
    if regime is Regime.NONRELATIVISTIC:
        return 2.0 * rest
    return 2.0 * rest + energy


def assemble(params: PotentialParams, l, coeffs: CentrifugalCoeffs | None, energy, regime=Regime.NONRELATIVISTIC):
    """Dimensionless K, Q, S at a trial energy.

    ``energy`` is E_NR in the non-relativistic regime and ``E_R - mu c^2``
    in the relativistic one.  Raises :class:`NoBoundStateError` when K^2 or
    S^2 is negative.
    """
    regime = Regime.parse(regime)
    _check_l(params, l)
    coeffs = _coeffs_for(params, l, coeffs)
    q = params.q
    a = params.alpha
    s = params.sigma_eff
    d = params.depth
    de = params.molecule.de_ev
    m2 = _two_m(params, regime, energy)
    scale = 4.0 * a * a * HBAR_C * HBAR_C
    cent = l * (l + 1) / (4.0 * a * a * coeffs.r_e**2)

    k2 = m2 * (de - energy) / scale + cent * coeffs.a0
    q_t = -q * m2 * d * s * (1.0 - s) / (a * a * HBAR_C * HBAR_C) + cent * coeffs.a1
    s2 = q * q * m2 * d * s * s / (a * a * HBAR_C * HBAR_C) + cent * coeffs.a2 + q * q / 4.0
    if k2 < 0.0 or s2 < 0.0:
        raise NoBoundStateError(f"negative square-root argument (K^2 = {k2!r}, S^2 = {s2!r})")
    return AssembledParams(math.sqrt(k2), q_t, math.sqrt(s2), regime, q)


def _nu_check(assembled, n):
    try:
        inp = assembled.nu_input()
        return energy_relation_residual(derive_constants(inp), inp, n, normalized=True)
    except (ValueError, ArithmeticError):
        return float("nan")


def _nr_bracket(params, n, l, coeffs):
    """Returns (2K, T) of the closed-form energy equation."""
    q = params.q
    a = params.alpha
    s = params.sigma_eff
    mu2 = 2.0 * params.molecule.rest_energy
    strength = mu2 * params.depth / (HBAR_C**2 * a * a)  # 2 mu D / (hbar alpha)^2
    cent = l * (l + 1) / (4.0 * a * a * coeffs.r_e**2)
    radicand = strength * s * s + cent * coeffs.a2 / (q * q) + 0.25
    if radicand < 0.0:
        raise NoBoundStateError("negative radicand in the energy equation")
    t = n + 0.5 + math.sqrt(radicand)
    numer = strength * s + cent * (coeffs.a2 / (q * q) - coeffs.a1 / q) - t * t
    return numer / t, t


def nr_energy(params: PotentialParams, n, l=0, coeffs=None, strict=True) -> EnergyLevel:
    """Closed-form non-relativistic level E_{n,l}.

    ``strict`` rejects states past the top of the well, where the formula
    still returns a number but the wave function no longer decays (K <= 0).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    _check_l(params, l)
    coeffs = _coeffs_for(params, l, coeffs)
    mu2 = 2.0 * params.molecule.rest_energy
    a = params.alpha
    bracket, _ = _nr_bracket(params, n, l, coeffs)
    bound = bracket > 0.0
    if strict and not bound:
        raise NoBoundStateError(f"n = {n} lies beyond the last bound level")
    rot = l * (l + 1) * HBAR_C**2 * coeffs.a0 / (mu2 * coeffs.r_e**2)
    energy = params.molecule.de_ev + rot - (a * a * HBAR_C**2 / mu2) * bracket**2
    nu_res = float("nan")
    if bound:
        try:
            nu_res = _nu_check(assemble(params, l, coeffs, energy, Regime.NONRELATIVISTIC), n)
        except NoBoundStateError:
            pass
    return EnergyLevel(
        n=n,
        l=l,
        value=energy,
        regime=Regime.NONRELATIVISTIC,
        residual=0.0,
        params=params,
        coeff_provenance=coeffs.provenance,
        nu_residual=nu_res,
        bound=bound,
    )


def nr_energy_swave(params: PotentialParams, n):
    """Vibrational (l = 0) level in eV, written out without centrifugal terms."""
    if n < 0:
        raise ValueError("n must be non-negative")
    mu2 = 2.0 * params.molecule.rest_energy
    a = params.alpha
    s = params.sigma_eff
    x = mu2 * params.depth / (HBAR_C**2 * a * a)
    t = n + 0.5 + math.sqrt(x * s * s + 0.25)
    return params.molecule.de_ev - (a * a * HBAR_C**2 / mu2) * ((x * s - t * t) / t) ** 2


def nr_energy_nu(params: PotentialParams, n, l=0, coeffs=None):
    """E_NR obtained through the assembled K, Q, S and the NU energy relation.

    An independent route to :func:`nr_energy`: Q and S do not depend on the
    energy, the relation fixes K, and K^2 is inverted for E.
    """
    _check_l(params, l)
    coeffs = _coeffs_for(params, l, coeffs)
    q = params.q
    ap = assemble(params, l, coeffs, 0.0, Regime.NONRELATIVISTIC)
    so = ap.s_tilde / q
    t = so + n + 0.5
    two_k = (so * so - ap.q_tilde / q - 0.25 - t * t) / t
    k2 = 0.25 * two_k * two_k
    cent = l * (l + 1) / (4.0 * params.alpha**2 * coeffs.r_e**2)
    scale = 4.0 * params.alpha**2 * HBAR_C**2
    return params.molecule.de_ev + scale * (cent * coeffs.a0 - k2) / (2.0 * params.molecule.rest_energy)


def n_max_for_depth(depth, sigma_eff, alpha, rest_energy):
    """Top of the s-wave ladder for an explicit well depth D (eV).

    Unlike :func:`nr_n_max` this stays defined at ``sigma_eff = 1``, where
    it lies in (-1, -1/2): no level survives the flooring.
    """
    if sigma_eff <= 0 or depth <= 0:
        raise DomainError("sigma/delta and D must be positive")
    x = 8.0 * rest_energy * depth / (HBAR_C**2 * alpha**2)
    return 0.5 * (-1.0 - math.sqrt(x * sigma_eff**2 + 1.0) + math.sqrt(x * sigma_eff))


def nr_n_max(params: PotentialParams):
    """Real-valued top of the vibrational ladder for l = 0; floor it for the last level."""
    return n_max_for_depth(params.depth, params.sigma_eff, params.alpha, params.molecule.rest_energy)


def level_count(n_max):
    """Number of levels n = 0..floor(n_max), never negative."""
    return max(0, math.floor(n_max) + 1)


def nr_level_count(params: PotentialParams):
    """Number of s-wave bound levels, ``floor(n_max) + 1`` (never negative)."""
    return level_count(nr_n_max(params))


def kg_n_max(params: PotentialParams, offset):
    """Relativistic analogue of :func:`nr_n_max` at ``E_R = mu c^2 + offset``."""
    s = params.sigma_eff
    m2 = _two_m(params, Regime.RELATIVISTIC, offset)
    x = 4.0 * params.depth * m2 / (params.alpha**2 * HBAR_C**2)
    if x * s * s + 1.0 < 0.0 or x * s < 0.0:
        raise NoBoundStateError("no bound spectrum")
    return 0.5 * (-1.0 - math.sqrt(x * s * s + 1.0) + math.sqrt(x * s))


def nr_spectrum(params: PotentialParams, l=0, coeffs=None, n_values=None):
    """Levels n = 0..floor(n_max) (or ``n_values``), skipping unbound ones."""
    if n_values is None:
        n_values = range(nr_level_count(params))
    levels = []
    for n in n_values:
        try:
            levels.append(nr_energy(params, n, l, coeffs))
        except NoBoundStateError:
            continue
    return levels


def transition(params: PotentialParams, n, strict=True):
    """s-wave transition energy E(n) - E(0), non-relativistic."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 0.0
    if strict and n > nr_n_max(params):
        raise NoBoundStateError(f"n = {n} exceeds n_max = {nr_n_max(params):.4f}")
    upper = nr_energy(params, n, 0, strict=False)
    ground = nr_energy(params, 0, 0)
    return upper.value - ground.value


# relativistic branch


def _kg_sides(params, n, l, coeffs, offset):
    q = params.q
    a = params.alpha
    s = params.sigma_eff
    d = params.depth
    m2 = _two_m(params, Regime.RELATIVISTIC, offset)
    ahc = a * HBAR_C
    cent = l * (l + 1) * HBAR_C**2 / coeffs.r_e**2
    lhs_arg = m2 * (params.molecule.de_ev - offset) + cent * coeffs.a0
    e_arg = 4.0 * m2 * d * s * s + cent * coeffs.a2 / (q * q) + ahc * ahc
    if lhs_arg < 0.0 or e_arg < 0.0:
        raise NoBoundStateError("energy outside the domain of the relativistic equation")
    e_tilde = math.sqrt(e_arg)
    t = e_tilde + ahc * (2 * n + 1)
    lhs = 2.0 * math.sqrt(lhs_arg)
    rhs = (4.0 * m2 * d * s + cent * (coeffs.a2 / (q * q) - coeffs.a1 / q) - t * t) / t
    return lhs, rhs


def relativistic_residual(params: PotentialParams, n, l, coeffs, offset, normalized=False):
    """LHS - RHS of the relativistic energy equation at ``E_R = mu c^2 + offset``.

    In eV; ``normalized`` divides by the larger of the two sides.
    """
    _check_l(params, l)
    coeffs = _coeffs_for(params, l, coeffs)
    lhs, rhs = _kg_sides(params, n, l, coeffs, offset)
    res = lhs - rhs
    if normalized:
        scale = max(abs(lhs), abs(rhs), params.alpha * HBAR_C)
        return res / scale
    return res


def swave_residual(params: PotentialParams, n, offset):
    """The l = 0 relativistic equation written out in its own form."""
    mc2 = params.molecule.rest_energy
    s = params.sigma_eff
    d = params.depth
    ahc = params.alpha * HBAR_C
    plus = 2.0 * mc2 + offset  # mc^2 + E_R
    # (mc^2)^2 - E_R^2 = -(offset)(2 mc^2 + offset)
    lhs = 2.0 * math.sqrt(plus * d * (1.0 - s) ** 2 - offset * plus)
    root = math.sqrt(4.0 * plus * d * s * s + ahc * ahc)
    t = root + ahc * (2 * n + 1)
    rhs = (4.0 * plus * d * s - t * t) / t
    return lhs - rhs


def _bisect(f, lo, hi, f_lo, rel_tol=1e-12, max_iter=400):
    floor = 1e-300
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rel_tol * max(abs(mid), floor) or mid in (lo, hi):
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _scan_roots(f, grid, rel_tol):
    values = []
    for x in grid:
        try:
            values.append(f(x))
        except NoBoundStateError:
            values.append(float("nan"))
    roots = []
    for i in range(len(grid) - 1):
        f0, f1 = values[i], values[i + 1]
        if not (math.isfinite(f0) and math.isfinite(f1)):
            continue
        if f0 == 0.0:
            roots.append(grid[i])
        elif (f0 < 0.0) != (f1 < 0.0) and f1 != 0.0:
            roots.append(_bisect(f, grid[i], grid[i + 1], f0, rel_tol))
    if values and values[-1] == 0.0:
        roots.append(grid[-1])
    return sorted(set(roots))


def solve_relativistic(params: PotentialParams, n, l=0, coeffs=None, scan=None, steps=DEFAULT_SCAN_STEPS, rel_tol=1e-12):
    """All roots of the relativistic equation in the scan window, ascending.

    ``scan`` is ``(E_min, E_max)`` as offsets ``E_R - mu c^2`` in eV; the
    default spans ``E_R`` in ``(-0.999 mu c^2, mu c^2 + D_e)``.  The window is
    cut into ``steps`` uniform cells plus a fine patch around the
    non-relativistic level.  Every sign change is refined by bisection.
    The root nearest the non-relativistic level is reported as physical;
    the rest are flagged ``spurious``.
    """
    _check_l(params, l)
    coeffs = _coeffs_for(params, l, coeffs)
    rest = params.molecule.rest_energy
    de = params.molecule.de_ev
    if scan is None:
        scan = (-1.999 * rest, de)
    lo, hi = scan
    if not lo < hi:
        raise ValueError("empty scan window")
    grid = set(np.linspace(lo, hi, steps + 1).tolist())

    anchor = None
    try:
        anchor = nr_energy(params, n, l, coeffs, strict=False).value
    except NoBoundStateError:
        pass
    if anchor is not None:
        half = 10.0 * max(de, abs(anchor))
        patch = np.linspace(max(lo, anchor - half), min(hi, anchor + half), 401)
        grid.update(patch.tolist())
    grid = sorted(grid)

    def f(x):
        return relativistic_residual(params, n, l, coeffs, x)

    roots = _scan_roots(f, grid, rel_tol)
    if not roots:
        return []
    chosen = min(roots, key=lambda x: abs(x - anchor)) if anchor is not None else None
    levels = []
    for root in roots:
        res = relativistic_residual(params, n, l, coeffs, root, normalized=True)
        try:
            nu_res = _nu_check(assemble(params, l, coeffs, root, Regime.RELATIVISTIC), n)
        except NoBoundStateError:
            nu_res = float("nan")
        levels.append(
            EnergyLevel(
                n=n,
                l=l,
                value=root,
                regime=Regime.RELATIVISTIC,
                residual=res,
                params=params,
                coeff_provenance=coeffs.provenance,
                nu_residual=nu_res,
                spurious=root != chosen,
            )
        )
    return levels


def physical_level(levels):
    """The non-spurious level from :func:`solve_relativistic`, or None."""
    for level in levels:
        if not level.spurious:
            return level
    return None


def scan_n(params: PotentialParams, n_values=None):
    """s-wave NR levels against n; stops at the last bound level.

    Returns ``(levels, dropped)`` where ``dropped`` lists requested n beyond it.
    """
    top = nr_level_count(params)
    if n_values is None:
        n_values = range(top)
    levels, dropped = [], []
    for n in n_values:
        if n < top:
            levels.append(nr_energy(params, n, 0))
        else:
            dropped.append(n)
    return levels, dropped


def scan_de(params: PotentialParams, de_values_cm, n=0):
    """NR level n (s-wave) as D_e varies, every other parameter held fixed."""
    return [nr_energy(params.with_dissociation_energy(de), n, 0) for de in de_values_cm]

"""Finite-difference eigenvalue oracle for the radial Schrodinger equation.

The operator ``-(hbar^2/2mu) d^2/dr^2 + V(r) + l(l+1) hbar^2/(2 mu r^2)`` is
discretized with the three-point Laplacian on a uniform grid with Dirichlet
ends.  Eigenvalues of the symmetric tridiagonal matrix come from LAPACK's
Sturm-sequence bisection (``scipy.linalg.eigh_tridiagonal``).  Results are
Richardson-extrapolated over N, 2N and 4N interior points and accepted only
when the two extrapolants agree within the refinement gate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .constants import CONSTANTS, PotentialParams
from .errors import AlignmentError, ResolutionError
from .potential import approx_centrifugal, centrifugal_coeffs

__all__ = [
    "ComparisonReport",
    "ComparisonRow",
    "GridSpec",
    "compare_report",
    "default_grid",
    "fd_eigenvalues",
    "fd_spectrum",
    "model_potential",
]

REFINEMENT_GATE_CM = 1e-3
POTENTIAL_CAP_FACTOR = 1e4  # walls above this many D_e only add stiffness


@dataclass(frozen=True)
class GridSpec:
    r_min: float
    r_max: float
    points: int = 20_000

    def __post_init__(self):
        if not self.r_min > 0.0:
            raise ValueError("r_min must be positive")
        if not self.r_max > self.r_min:
            raise ValueError("r_max must exceed r_min")
        if self.points < 1000:
            raise ValueError("at least 1000 grid points are required")

    def nodes(self, points=None):
        """Interior nodes (the Dirichlet end points are excluded)."""
        m = self.points if points is None else points
        r = np.linspace(self.r_min, self.r_max, m + 2)
        return r[1:-1], r[1] - r[0]

    def refined(self, factor=2):
        return GridSpec(self.r_min, self.r_max, self.points * factor)


def default_grid(params: PotentialParams, points=20_000):
    """``[1e-3 r_e, 12 r_e]``, widened if the potential minimum lies outside it."""
    r_e = params.molecule.equilibrium_radius
    return GridSpec(1e-3 * r_e, 12.0 * r_e, points)


def model_potential(params: PotentialParams, r, cap=None):
    """Potential in eV on a grid, capped; the region inside a pole is set to the cap."""
    r = np.asarray(r, dtype=float)
    if cap is None:
        cap = POTENTIAL_CAP_FACTOR * max(params.molecule.de_ev, params.depth)
    den = 1.0 - params.branch.sign * params.q * np.exp(-2.0 * params.alpha * r)
    ok = den > 1e-300
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        coth = np.where(ok, (2.0 - den) / np.where(ok, den, 1.0), np.inf)
        v = params.depth * (1.0 - params.sigma_eff * coth) ** 2
    return np.minimum(np.where(ok, v, cap), cap)


def fd_spectrum(potential, reduced_mass_ev, grid: GridSpec, count, points=None):
    """Lowest ``count`` eigenvalues (eV) for a potential callable ``V(r) -> eV``.

    ``reduced_mass_ev`` is mu c^2 in eV; lengths are in angstrom.
    """
    if count < 1:
        raise ValueError("count must be positive")
    r, h = grid.nodes(points)
    kin = CONSTANTS.hbar_c**2 / (2.0 * reduced_mass_ev * h * h)
    diag = 2.0 * kin + np.asarray(potential(r), dtype=float)
    off = np.full(r.size - 1, -kin)
    return eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, count - 1))


def _refined_spectrum(potential, reduced_mass_ev, grid, count, gate_ev):
    base = grid.points
    e1, e2, e4 = (fd_spectrum(potential, reduced_mass_ev, grid, count, base * f) for f in (1, 2, 4))
    # second-order scheme: error ~ h^2, h halves with each doubling
    rich_a = (4.0 * e2 - e1) / 3.0
    rich_b = (4.0 * e4 - e2) / 3.0
    shift = np.max(np.abs(rich_b - rich_a))
    if not shift < gate_ev:
        raise ResolutionError(
            f"eigenvalues moved by {shift / CONSTANTS.invcm_to_ev:.3g} cm^-1 between refinements",
            suggested_points=base * 4,
        )
    return rich_b


def fd_eigenvalues(
    params: PotentialParams,
    l=0,
    grid: GridSpec | None = None,
    count=1,
    exact_centrifugal=True,
    coeffs=None,
    gate_cm=REFINEMENT_GATE_CM,
):
    """Lowest ``count`` radial eigenvalues in eV, grid-converged.

    With ``exact_centrifugal=False`` the three-term expansion replaces
    ``l(l+1)/r^2`` (matched coefficients unless ``coeffs`` is given).
    Raises :class:`ResolutionError` if the Richardson estimates from
    (N, 2N) and (2N, 4N) differ by more than ``gate_cm``.
    """
    if l < 0:
        raise ValueError("l must be non-negative")
    grid = grid or default_grid(params)
    mu = params.molecule.rest_energy
    rot = CONSTANTS.hbar_c**2 / (2.0 * mu)
    if not exact_centrifugal and l:
        coeffs = coeffs or centrifugal_coeffs(params, "matched")

    def potential(r):
        v = model_potential(params, r)
        if l == 0:
            return v
        if exact_centrifugal:
            return v + rot * l * (l + 1) / (r * r)
        return v + rot * approx_centrifugal(coeffs, l, params, r)

    return _refined_spectrum(potential, mu, grid, count, gate_cm * CONSTANTS.invcm_to_ev)


@dataclass(frozen=True)
class ComparisonRow:
    n: int
    analytic: float
    numeric: float
    abs_dev: float
    rel_dev: float


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple
    max_abs: float
    max_rel: float
    tolerance: float
    relative: bool
    passed: bool


def compare_report(analytic, numeric, tolerance, relative=False):
    """Per-level deviations between analytic levels and oracle values.

    ``analytic`` may hold :class:`EnergyLevel` objects or plain numbers;
    both sides must use the same unit.  ``tolerance`` is absolute unless
    ``relative`` is set.
    """
    analytic = list(analytic)
    numeric = list(numeric)
    if len(analytic) != len(numeric):
        raise AlignmentError(f"{len(analytic)} analytic levels vs {len(numeric)} numeric values")
    rows = []
    for i, (a, b) in enumerate(zip(analytic, numeric)):
        n = getattr(a, "n", i)
        val = float(getattr(a, "value", a))
        dev = abs(val - float(b))
        rel = dev / abs(val) if val else (0.0 if dev == 0.0 else math.inf)
        rows.append(ComparisonRow(n, val, float(b), dev, rel))
    max_abs = max((r.abs_dev for r in rows), default=0.0)
    max_rel = max((r.rel_dev for r in rows), default=0.0)
    worst = max_rel if relative else max_abs
    return ComparisonReport(tuple(rows), max_abs, max_rel, tolerance, relative, worst <= tolerance)

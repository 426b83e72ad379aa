"""Morse and q-deformed hyperbolic potentials, plus the centrifugal expansion.

Energies are in eV, lengths in angstrom.  ``z = ±exp(-2 alpha r)`` is the
natural variable of the hyperbolic potential; the centrifugal term is
expanded in ``y = z / (1 - q z)`` about the molecule's equilibrium radius.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .constants import Branch, PotentialParams
from .errors import DegenerateGeometryError, DomainError, PoleError

__all__ = [
    "CentrifugalCoeffs",
    "Provenance",
    "approx_centrifugal",
    "centrifugal_coeffs",
    "deformed_coth",
    "equilibrium_radius",
    "matched_coefficients",
    "morse_value",
    "pekeris_coefficients",
    "potential_value",
    "z_variable",
]

POLE_GUARD = 1e-30


class Provenance(str, enum.Enum):
    PAPER_FORMULA = "paper_formula"
    DERIVATIVE_MATCHED = "derivative_matched"

    @property
    def short(self):
        return "paper" if self is Provenance.PAPER_FORMULA else "matched"


@dataclass(frozen=True)
class CentrifugalCoeffs:
    """Coefficients of ``1/r^2 ≈ (A0 + A1 y + A2 y^2) / r_e^2``."""

    a0: float
    a1: float
    a2: float
    provenance: Provenance
    r_e: float


def z_variable(r, alpha, branch=Branch.PLUS):
    return Branch.parse(branch).sign * np.exp(-2.0 * alpha * np.asarray(r, dtype=float))


def _one_minus_qz(r, alpha, q, sign):
    """``1 - sign*q*exp(-2 alpha r)``, accurate when it is close to zero."""
    sq = sign * q
    r = np.asarray(r, dtype=float)
    if sq > 0:
        return -np.expm1(math.log(sq) - 2.0 * alpha * r)
    return 1.0 - sq * np.exp(-2.0 * alpha * r)


def deformed_coth(r, alpha, q, branch=Branch.PLUS):
    """``(1 ± q e^{-2αr}) / (1 ∓ q e^{-2αr})``; plus is coth-like, minus tanh-like.

    Raises :class:`PoleError` when the denominator drops below ``1e-30`` in
    magnitude.
    """
    sign = Branch.parse(branch).sign
    r_arr = np.asarray(r, dtype=float)
    den = _one_minus_qz(r_arr, alpha, q, sign)
    num = 2.0 - den
    bad = np.abs(den) < POLE_GUARD
    if np.any(bad):
        raise PoleError(float(np.atleast_1d(r_arr)[np.atleast_1d(bad)][0]))
    out = num / den
    return float(out) if out.ndim == 0 else out


def potential_value(params: PotentialParams, r):
    """``D (1 - sigma_eff coth_q)^2`` in eV, with ``D = D_e / (1 - sigma_eff)^2``."""
    c = deformed_coth(r, params.alpha, params.q, params.branch)
    return params.depth * (1.0 - params.sigma_eff * c) ** 2


def equilibrium_radius(params: PotentialParams):
    """Position of the potential minimum.

    ``atanh(sigma_eff)/alpha`` on the plus branch and ``atanh(1/sigma_eff)/alpha``
    on the minus branch, shifted outward by ``ln(q)/(2 alpha)`` for q != 1.
    """
    s = params.sigma_eff
    arg = s if params.branch is Branch.PLUS else 1.0 / s
    if not 0.0 < arg < 1.0:
        raise DomainError(f"sigma/delta = {s!r} has no minimum on the {params.branch.value} branch")
    if params.q <= 0:
        raise DomainError("the minimum is only defined here for q > 0")
    return (math.atanh(arg) + 0.5 * math.log(params.q)) / params.alpha


def morse_value(D, alpha, r_e, r):
    return D * (-np.expm1(-alpha * (np.asarray(r, dtype=float) - r_e))) ** 2


def pekeris_coefficients(alpha, r_e, branch=Branch.PLUS):
    """Expansion coefficients transcribed from the published closed forms.

    The printed A1 is known not to reproduce the published rotational
    levels; use :func:`matched_coefficients` for energies.
    """
    if alpha * r_e <= 0:
        raise DomainError("alpha * r_e must be positive")
    s = Branch.parse(branch).sign
    x = alpha * r_e
    em = math.exp(-2.0 * x)
    ep = math.exp(2.0 * x)
    f = (1.0 - s * em) / (2.0 * x)
    a0 = 1.0 - f**2 * (8.0 * x / (1.0 - s * em) - 3.0 - 2.0 * x)
    a1 = s * 2.0 * (ep - s) * (3.0 * f - (3.0 + 2.0 * x) * f)
    a2 = (ep - s) ** 2 * f**2 * (3.0 + 2.0 * x - 4.0 * x / (1.0 - s * em))
    return CentrifugalCoeffs(a0, a1, a2, Provenance.PAPER_FORMULA, r_e)


def _y_and_derivatives(r, alpha, q, sign):
    """``y = z/(1-qz)`` and its first two r-derivatives."""
    z = sign * math.exp(-2.0 * alpha * r)
    w = 1.0 - q * z
    dz = -2.0 * alpha * z
    d2z = 4.0 * alpha**2 * z
    y = z / w
    dy_dz = 1.0 / w**2
    d2y_dz2 = 2.0 * q / w**3
    y1 = dy_dz * dz
    y2 = d2y_dz2 * dz**2 + dy_dz * d2z
    return y, y1, y2


def matched_coefficients(alpha, r_e, q=1.0, branch=Branch.PLUS):
    """Coefficients matching ``1/r^2`` and its first two derivatives at ``r_e``."""
    if alpha * r_e <= 0:
        raise DomainError("alpha * r_e must be positive")
    if q == 0:
        raise DomainError("q must be nonzero")
    sign = Branch.parse(branch).sign
    y, y1, y2 = _y_and_derivatives(r_e, alpha, q, sign)
    # rows: value, first and second derivative of A0 + A1 y + A2 y^2, times 1/r_e^2
    m = np.array(
        [
            [1.0, y, y * y],
            [0.0, y1, 2.0 * y * y1],
            [0.0, y2, 2.0 * y1 * y1 + 2.0 * y * y2],
        ]
    )
    rhs = np.array([1.0, -2.0 / r_e, 6.0 / r_e**2])
    if not np.isfinite(m).all() or np.linalg.cond(m) > 1e14:
        raise DegenerateGeometryError(f"cannot match the centrifugal term at r_e = {r_e!r}")
    a0, a1, a2 = np.linalg.solve(m, rhs)
    return CentrifugalCoeffs(float(a0), float(a1), float(a2), Provenance.DERIVATIVE_MATCHED, r_e)


def centrifugal_coeffs(params: PotentialParams, source="matched"):
    """Coefficients for ``params`` expanded about the molecule's tabulated r_e."""
    r_e = params.molecule.equilibrium_radius
    key = source.short if isinstance(source, Provenance) else source
    if key == "matched":
        return matched_coefficients(params.alpha, r_e, params.q, params.branch)
    if key == "paper":
        return pekeris_coefficients(params.alpha, r_e, params.branch)
    raise ValueError(f"unknown coefficient source {source!r}")


def approx_centrifugal(coeffs: CentrifugalCoeffs, l, params: PotentialParams, r):
    """Approximate ``l(l+1)/r^2`` (in 1/angstrom^2) from the three-term expansion."""
    if l < 0:
        raise ValueError("l must be non-negative")
    r = np.asarray(r, dtype=float)
    if l == 0:
        out = np.zeros_like(r)
        return float(out) if out.ndim == 0 else out
    sign = params.branch.sign
    den = _one_minus_qz(r, params.alpha, params.q, sign)
    if np.any(np.abs(den) < POLE_GUARD):
        raise PoleError(float(np.atleast_1d(r)[np.atleast_1d(np.abs(den) < POLE_GUARD)][0]))
    y = sign * np.exp(-2.0 * params.alpha * r) / den
    out = l * (l + 1) / coeffs.r_e**2 * (coeffs.a0 + coeffs.a1 * y + coeffs.a2 * y * y)
    return float(out) if out.ndim == 0 else out

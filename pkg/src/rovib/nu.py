"""Parametric Nikiforov-Uvarov machinery.

Solves equations of the form

    [z(1 - c3 z)]^2 g'' + z(1 - c3 z)(c1 - c2 z) g' + (-B1 z^2 + B2 z - B3) g = 0

by mapping the six input constants onto the derived constants c4..c13, the
polynomials pi(z), tau(z), the separation constant k, and the quantization
condition that fixes the eigenvalue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InadmissibleError, InvalidStateError

__all__ = [
    "KeyPolynomials",
    "NUConstants",
    "NUInput",
    "WaveExponents",
    "candidate_polynomials",
    "derive_constants",
    "energy_relation_residual",
    "energy_relation_terms",
    "key_polynomials",
    "wave_exponents",
]


@dataclass(frozen=True)
class NUInput:
    c1: float
    c2: float
    c3: float
    b1: float
    b2: float
    b3: float

    def __post_init__(self):
        if self.c3 == 0:
            raise ValueError("c3 = 0 (linear sigma) is not supported")


@dataclass(frozen=True)
class NUConstants:
    c4: float
    c5: float
    c6: float
    c7: float
    c8: float
    c9: float
    c10: float
    c11: float
    c12: float
    c13: float

    @property
    def weights_ok(self):
        """Jacobi orders above -1."""
        return self.c10 > -1.0 and self.c11 > -1.0

    @property
    def envelope_ok(self):
        """Positive exponents of phi(z), i.e. decaying boundary behaviour."""
        return self.c12 > 0.0 and self.c13 > 0.0

    @property
    def admissible(self):
        return self.weights_ok and self.envelope_ok


@dataclass(frozen=True)
class KeyPolynomials:
    pi_const: float
    pi_slope: float
    k: float
    tau_const: float
    tau_slope: float
    selected: bool = True

    @property
    def physical(self):
        return self.tau_slope < 0.0

    def pi(self, z):
        return self.pi_const + self.pi_slope * z

    def tau(self, z):
        return self.tau_const + self.tau_slope * z


@dataclass(frozen=True)
class WaveExponents:
    """``rho = z^a (1-c3 z)^b``, ``phi = z^c (1-c3 z)^d``, ``P_n^(a,b)(1 - 2 c3 z)``."""

    rho: tuple
    phi: tuple
    jacobi: tuple
    c3: float


def derive_constants(inp: NUInput) -> NUConstants:
    c1, c2, c3 = inp.c1, inp.c2, inp.c3
    c4 = 0.5 * (1.0 - c1)
    c5 = 0.5 * (c2 - 2.0 * c3)
    c6 = c5 * c5 + inp.b1
    c7 = 2.0 * c4 * c5 - inp.b2
    c8 = c4 * c4 + inp.b3
    c9 = c3 * (c7 + c3 * c8) + c6
    if c8 < 0.0 or c9 < 0.0:
        raise InadmissibleError(f"no real bound state: c8 = {c8!r}, c9 = {c9!r}")
    r8 = math.sqrt(c8)
    r9 = math.sqrt(c9)
    c10 = c1 + 2.0 * c4 + 2.0 * r8 - 1.0
    c11 = 1.0 - c1 - 2.0 * c4 + 2.0 * r9 / c3
    c12 = c4 + r8
    c13 = -c4 + (r9 - c5) / c3
    return NUConstants(c4, c5, c6, c7, c8, c9, c10, c11, c12, c13)


def _polynomials(consts, inp, k_sign, pi_sign, selected):
    c = consts
    r8 = math.sqrt(c.c8)
    r9 = math.sqrt(c.c9)
    k = -(c.c7 + 2.0 * inp.c3 * c.c8) + k_sign * 2.0 * math.sqrt(c.c8 * c.c9)
    # square root of the (perfect-square) discriminant, as  slope*z + const
    if k_sign < 0:
        root_slope, root_const = r9 + inp.c3 * r8, -r8
    else:
        root_slope, root_const = r9 - inp.c3 * r8, r8
    pi_const = c.c4 + pi_sign * root_const
    pi_slope = c.c5 + pi_sign * root_slope
    return KeyPolynomials(
        pi_const=pi_const,
        pi_slope=pi_slope,
        k=k,
        tau_const=inp.c1 + 2.0 * pi_const,
        tau_slope=-inp.c2 + 2.0 * pi_slope,
        selected=selected,
    )


def key_polynomials(consts: NUConstants, inp: NUInput) -> KeyPolynomials:
    """The branch with ``pi = c4 + c5 z - [(sqrt(c9) + c3 sqrt(c8)) z - sqrt(c8)]``."""
    return _polynomials(consts, inp, k_sign=-1.0, pi_sign=-1.0, selected=True)


def candidate_polynomials(consts: NUConstants, inp: NUInput):
    """All four sign choices for (k, pi); only one is marked ``selected``."""
    return [
        _polynomials(consts, inp, k_sign, pi_sign, selected=(k_sign < 0 and pi_sign < 0))
        for k_sign in (-1.0, 1.0)
        for pi_sign in (-1.0, 1.0)
    ]


def energy_relation_terms(consts: NUConstants, inp: NUInput, n):
    c = consts
    c3 = inp.c3
    root = math.sqrt(c.c9) + c3 * math.sqrt(c.c8)
    return (
        (inp.c2 - c3) * n,
        c3 * n * n,
        -(2 * n + 1) * c.c5,
        (2 * n + 1) * root,
        c.c7,
        2.0 * c3 * c.c8,
        2.0 * math.sqrt(c.c8 * c.c9),
    )


def energy_relation_residual(consts: NUConstants, inp: NUInput, n, normalized=False):
    """Left side of the NU quantization condition; zero at an eigenvalue.

    With ``normalized=True`` the residual is divided by the largest term.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    terms = energy_relation_terms(consts, inp, n)
    total = math.fsum(terms)
    if normalized:
        scale = max(abs(t) for t in terms)
        return total / scale if scale else total
    return total


def wave_exponents(consts: NUConstants, c3=None) -> WaveExponents:
    if consts.c10 <= -1.0 or consts.c11 <= -1.0:
        raise InvalidStateError(f"Jacobi orders ({consts.c10!r}, {consts.c11!r}) must exceed -1")
    return WaveExponents(
        rho=(consts.c10, consts.c11),
        phi=(consts.c12, consts.c13),
        jacobi=(consts.c10, consts.c11),
        c3=c3,
    )

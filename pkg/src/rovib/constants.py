"""Physical constants, energy units and the molecule registry.

Working units inside the package are eV for energies and angstrom for
lengths.  Wavenumbers (cm^-1) only appear at the input/output boundary.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .errors import RegistryError, UnknownMoleculeError

__all__ = [
    "CONSTANTS",
    "Branch",
    "Molecule",
    "PhysicalConstants",
    "PotentialParams",
    "convert_energy",
    "default_registry",
    "load_registry",
    "lookup",
    "reduced_mass",
]


@dataclass(frozen=True)
class PhysicalConstants:
    hbar_c: float = 1973.29  # eV * angstrom
    amu_to_ev: float = 931.502e6  # eV / c^2 per amu
    invcm_to_ev: float = 1.23985e-4  # eV per cm^-1


CONSTANTS = PhysicalConstants()

# eV per unit
_ENERGY_UNITS = {
    "ev": 1.0,
    "mev": 1.0e6,
    "cm-1": CONSTANTS.invcm_to_ev,
}
_UNIT_ALIASES = {
    "cm^-1": "cm-1",
    "cm⁻¹": "cm-1",
    "1/cm": "cm-1",
    "invcm": "cm-1",
    "wavenumber": "cm-1",
}


def _unit_factor(unit):
    key = str(unit).strip().lower()
    key = _UNIT_ALIASES.get(key, key)
    try:
        return _ENERGY_UNITS[key]
    except KeyError:
        raise ValueError(f"unknown energy unit {unit!r}; expected one of cm-1, eV, MeV") from None


def convert_energy(value, from_unit, to_unit):
    """Convert an energy between cm^-1, eV and MeV."""
    src = _unit_factor(from_unit)
    dst = _unit_factor(to_unit)
    if src == dst:
        return value
    return value * src / dst


def reduced_mass(m1, m2):
    if m1 <= 0 or m2 <= 0:
        raise ValueError(f"masses must be positive, got {m1!r} and {m2!r}")
    return m1 * m2 / (m1 + m2)


class Branch(str, enum.Enum):
    """Sign choice of the hyperbolic potential: coth (plus) or tanh (minus)."""

    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self):
        return 1.0 if self is Branch.PLUS else -1.0

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        if text in ("+", "plus", "+1"):
            return cls.PLUS
        if text in ("-", "minus", "-1"):
            return cls.MINUS
        raise ValueError(f"unknown branch {value!r}")


@dataclass(frozen=True)
class Molecule:
    """Spectroscopic constants of a diatomic molecule.

    ``dissociation_energy`` is in cm^-1, ``equilibrium_radius`` in angstrom
    and ``reduced_mass`` in atomic mass units.
    """

    name: str
    dissociation_energy: float
    equilibrium_radius: float
    reduced_mass: float

    def __post_init__(self):
        for field in ("dissociation_energy", "equilibrium_radius", "reduced_mass"):
            value = getattr(self, field)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{self.name}: {field} must be positive, got {value!r}")

    @property
    def de_ev(self):
        return self.dissociation_energy * CONSTANTS.invcm_to_ev

    @property
    def rest_energy(self):
        """mu c^2 in eV."""
        return self.reduced_mass * CONSTANTS.amu_to_ev


@dataclass(frozen=True)
class PotentialParams:
    """Parameters of the q-deformed hyperbolic potential for one molecule.

    ``sigma`` and ``delta`` only ever enter through ``sigma_eff = sigma/delta``.
    The well depth ``D`` is fixed by the dissociation energy,
    ``D = D_e / (1 - sigma_eff)**2``.
    """

    molecule: Molecule
    sigma: float
    delta: float
    alpha: float
    q: float = 1.0
    branch: Branch = Branch.PLUS

    def __post_init__(self):
        object.__setattr__(self, "branch", Branch.parse(self.branch))
        if self.delta == 0 or not math.isfinite(self.delta):
            raise ValueError("delta must be finite and nonzero")
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError(f"alpha must be positive, got {self.alpha!r}")
        if self.q == 0 or not math.isfinite(self.q):
            raise ValueError("q must be real, finite and nonzero")
        if not math.isfinite(self.sigma):
            raise ValueError("sigma must be finite")
        if self.sigma_eff == 1.0:
            raise ValueError("sigma/delta == 1 makes the well depth diverge")

    @property
    def name(self):
        return self.molecule.name

    @property
    def sigma_eff(self):
        return self.sigma / self.delta

    @property
    def depth(self):
        """Well depth D in eV."""
        return self.molecule.de_ev / (1.0 - self.sigma_eff) ** 2

    def with_dissociation_energy(self, de_cm):
        """Copy with a different D_e (cm^-1), all other parameters fixed."""
        return replace(self, molecule=replace(self.molecule, dissociation_energy=de_cm))


_MANDATORY = ("de_cm", "re_angstrom", "mu_amu", "sigma", "delta", "alpha_inv_angstrom")
_OPTIONAL = {"q": "1", "branch": "plus"}


def _parse_sections(text):
    sections = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]") or len(line) < 3:
                raise RegistryError("malformed section header", line=lineno)
            name = line[1:-1].strip()
            if name in sections:
                raise RegistryError(f"duplicate section {name!r}", line=lineno)
            current = sections[name] = {"__line__": lineno}
            continue
        if "=" not in line:
            raise RegistryError("expected 'key = value'", line=lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if current is None:
            raise RegistryError("key outside of any section", line=lineno, field=key)
        if key not in _MANDATORY and key not in _OPTIONAL:
            raise RegistryError("unknown key", line=lineno, field=key)
        current[key] = (value, lineno)
    return sections


def _build_entry(name, fields):
    header = fields.pop("__line__")
    for key in _MANDATORY:
        if key not in fields:
            raise RegistryError(f"section {name!r} is missing a mandatory field", line=header, field=key)
    for key, default in _OPTIONAL.items():
        fields.setdefault(key, (default, header))

    values = {}
    for key, (text, lineno) in fields.items():
        if key == "branch":
            try:
                values[key] = Branch.parse(text)
            except ValueError as exc:
                raise RegistryError(str(exc), line=lineno, field=key) from None
            continue
        try:
            values[key] = float(text)
        except ValueError:
            raise RegistryError(f"cannot parse {text!r} as a number", line=lineno, field=key) from None

    try:
        molecule = Molecule(
            name=name,
            dissociation_energy=values["de_cm"],
            equilibrium_radius=values["re_angstrom"],
            reduced_mass=values["mu_amu"],
        )
        return PotentialParams(
            molecule=molecule,
            sigma=values["sigma"],
            delta=values["delta"],
            alpha=values["alpha_inv_angstrom"],
            q=values["q"],
            branch=values["branch"],
        )
    except ValueError as exc:
        raise RegistryError(f"invalid parameters for {name!r}: {exc}", line=header) from None


def parse_registry(text):
    """Parse registry text into an ordered ``{name: PotentialParams}`` dict."""
    return {name: _build_entry(name, fields) for name, fields in _parse_sections(text).items()}


def load_registry(path=None):
    """Load a registry file.

    With no path, ``$ROVIB_REGISTRY`` is used when set, otherwise the
    built-in registry holding H2 and Ar2.
    """
    if path is None:
        path = os.environ.get("ROVIB_REGISTRY")
    if path is None:
        text = resources.files("rovib").joinpath("data/registry.ini").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return parse_registry(text)


def default_registry():
    return load_registry()


def lookup(name, registry=None):
    if registry is None:
        registry = load_registry()
    try:
        return registry[name]
    except KeyError:
        raise UnknownMoleculeError(name) from None

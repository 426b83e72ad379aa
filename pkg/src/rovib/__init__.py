"""Bound-state ro-vibrational levels and wave functions of diatomic molecules
in the q-deformed hyperbolic (empirical) potential."""

from .constants import CONSTANTS, Branch, Molecule, PotentialParams, convert_energy, load_registry, lookup
from .errors import (
    AlignmentError,
    DegenerateGeometryError,
    DomainError,
    InadmissibleError,
    InvalidStateError,
    NoBoundStateError,
    PoleError,
    RegistryError,
    ResolutionError,
    RovibError,
    UnknownMoleculeError,
)
from .oracle import GridSpec, compare_report, fd_eigenvalues
from .potential import centrifugal_coeffs, equilibrium_radius, potential_value
from .spectrum import (
    EnergyLevel,
    Regime,
    nr_energy,
    nr_n_max,
    nr_spectrum,
    physical_level,
    solve_relativistic,
    transition,
)
from .wavefn import RadialState, radial_state, radial_value

__version__ = "0.1.0"

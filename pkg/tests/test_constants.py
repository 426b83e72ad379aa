import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rovib.constants import (
    CONSTANTS,
    Branch,
    Molecule,
    PotentialParams,
    convert_energy,
    load_registry,
    lookup,
    parse_registry,
    reduced_mass,
)
from rovib.errors import RegistryError, UnknownMoleculeError

ENTRY = """
[X]
de_cm = 100
re_angstrom = 1.0
mu_amu = 2.0
sigma = 1.0
delta = 4.0
alpha_inv_angstrom = 0.5
"""


def test_stored_constants():
    assert CONSTANTS.hbar_c == 1973.29
    assert CONSTANTS.amu_to_ev == 931.502e6
    assert CONSTANTS.invcm_to_ev == 1.23985e-4


def test_convert_energy_examples():
    assert convert_energy(1.0, "cm-1", "eV") == pytest.approx(1.23985e-4, rel=1e-15)
    assert convert_energy(0.0, "eV", "cm-1") == 0.0
    assert convert_energy(1.0, "MeV", "eV") == 1e6
    assert convert_energy(2.0, "cm^-1", "1/cm") == 2.0


def test_convert_energy_rejects_unknown_unit():
    with pytest.raises(ValueError):
        convert_energy(1.0, "hartree", "eV")


@given(st.floats(min_value=-1e12, max_value=1e12, allow_nan=False), st.sampled_from(["cm-1", "eV", "MeV"]), st.sampled_from(["cm-1", "eV", "MeV"]))
def test_convert_energy_round_trip(x, a, b):
    back = convert_energy(convert_energy(x, a, b), b, a)
    assert back == pytest.approx(x, rel=1e-15, abs=1e-300)


def test_reduced_mass():
    assert reduced_mass(1.00794, 1.00794) == pytest.approx(0.50397, abs=1e-12)
    assert reduced_mass(3.0, 5.0) == reduced_mass(5.0, 3.0)
    with pytest.raises(ValueError):
        reduced_mass(0.0, 1.0)


@given(st.floats(min_value=1e-3, max_value=1e3))
def test_reduced_mass_equal_masses(m):
    assert reduced_mass(m, m) == pytest.approx(m / 2, rel=1e-15)


def test_builtin_entries():
    h2 = lookup("H2").molecule
    assert (h2.dissociation_energy, h2.equilibrium_radius, h2.reduced_mass) == (38281, 0.7414, 0.50407)
    ar = lookup("Ar2").molecule
    assert (ar.dissociation_energy, ar.equilibrium_radius, ar.reduced_mass) == (99.55, 3.759, 19.9812)
    assert set(load_registry()) >= {"H2", "H2-2", "H2-3", "H2-4", "Ar2"}


def test_unknown_molecule():
    with pytest.raises(UnknownMoleculeError):
        lookup("Xe2")


def test_registry_defaults_and_sigma_eff():
    p = parse_registry(ENTRY)["X"]
    assert p.q == 1.0 and p.branch is Branch.PLUS
    assert p.sigma_eff == 0.25
    assert p.depth == pytest.approx(100 * CONSTANTS.invcm_to_ev / 0.75**2)


def test_registry_missing_field_names_it():
    text = ENTRY.replace("mu_amu = 2.0\n", "")
    with pytest.raises(RegistryError) as err:
        parse_registry(text)
    assert err.value.field == "mu_amu"


def test_registry_parse_error_names_line_and_field():
    text = ENTRY.replace("sigma = 1.0", "sigma = one")
    with pytest.raises(RegistryError) as err:
        parse_registry(text)
    assert err.value.field == "sigma"
    assert err.value.line == 6
    assert "line 6" in str(err.value)


@pytest.mark.parametrize("bad", ["[X\n", "de_cm = 3\n[X]\n", "[X]\nfoo = 1\n", "[X]\nnot a pair\n"])
def test_registry_malformed(bad):
    with pytest.raises(RegistryError):
        parse_registry(bad)


def test_registry_validates_eagerly():
    with pytest.raises(RegistryError):
        parse_registry(ENTRY.replace("delta = 4.0", "delta = 1.0"))  # sigma_eff = 1
    with pytest.raises(RegistryError):
        parse_registry(ENTRY.replace("de_cm = 100", "de_cm = -5"))


def test_registry_environment_override(tmp_path, monkeypatch):
    path = tmp_path / "reg.ini"
    path.write_text(ENTRY)
    monkeypatch.setenv("ROVIB_REGISTRY", str(path))
    assert list(load_registry()) == ["X"]


def test_params_invariants():
    mol = Molecule("m", 1.0, 1.0, 1.0)
    for kwargs in ({"delta": 0.0}, {"alpha": -1.0}, {"q": 0.0}, {"sigma": 2.0, "delta": 2.0}):
        args = {"sigma": 0.5, "delta": 1.0, "alpha": 1.0} | kwargs
        with pytest.raises(ValueError):
            PotentialParams(mol, **args)
    with pytest.raises(ValueError):
        Molecule("m", 0.0, 1.0, 1.0)


def test_branch_parse():
    assert Branch.parse("+") is Branch.PLUS
    assert Branch.parse("minus").sign == -1.0
    with pytest.raises(ValueError):
        Branch.parse("sideways")


def test_with_dissociation_energy(ar2):
    p = ar2.with_dissociation_energy(50.0)
    assert p.molecule.dissociation_energy == 50.0
    assert p.sigma == ar2.sigma and ar2.molecule.dissociation_energy == 99.55
    assert math.isclose(p.depth / ar2.depth, 50.0 / 99.55)

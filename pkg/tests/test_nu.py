import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from rovib.errors import InadmissibleError, InvalidStateError
from rovib.nu import (
    NUInput,
    candidate_polynomials,
    derive_constants,
    energy_relation_residual,
    key_polynomials,
    wave_exponents,
)
from rovib.spectrum import AssembledParams, Regime, assemble, nr_energy

finite = st.floats(-50.0, 50.0, allow_nan=False)


def specialization(k, q_t, s, q=1.0):
    ap = AssembledParams(k, q_t, s, Regime.NONRELATIVISTIC, q)
    inp = ap.nu_input()
    return inp, derive_constants(inp)


@pytest.mark.parametrize("q", [1.0, 0.5, 2.0])
def test_paper_specialization_constants(q):
    k, q_t, s = 3.2, -40.0, 11.5
    inp, c = specialization(k, q_t, s, q)
    assert c.c4 == 0.0
    assert c.c5 == pytest.approx(-q / 2)
    assert c.c10 == pytest.approx(2 * k, rel=1e-13)
    assert c.c11 == pytest.approx(2 * s / q, rel=1e-13)
    assert c.c12 == pytest.approx(k, rel=1e-13)
    assert c.c13 == pytest.approx((s + q / 2) / q, rel=1e-13)
    assert c.admissible


def test_zero_source_term_is_inadmissible():
    c = derive_constants(NUInput(1.0, 1.0, 1.0, 0.0, 0.0, 0.0))
    assert (c.c4, c.c5, c.c8, c.c12) == (0.0, -0.5, 0.0, 0.0)
    assert not c.admissible


def test_negative_radicand_raises():
    with pytest.raises(InadmissibleError):
        derive_constants(NUInput(1.0, 1.0, 1.0, 0.0, 0.0, -5.0))


def test_linear_sigma_rejected():
    with pytest.raises(ValueError):
        NUInput(1.0, 1.0, 0.0, 1.0, 1.0, 1.0)


@given(finite, finite, st.floats(0.1, 5.0), st.floats(0.0, 50.0), finite, st.floats(0.0, 50.0))
def test_c9_reevaluation(c1, c2, c3, b1, b2, b3):
    inp = NUInput(c1, c2, c3, b1, b2, b3)
    c4 = (1 - c1) / 2
    c5 = (c2 - 2 * c3) / 2
    c6 = c5**2 + b1
    c7 = 2 * c4 * c5 - b2
    c8 = c4**2 + b3
    c9 = c3 * (c7 + c3 * c8) + c6
    assume(c9 >= 0)
    got = derive_constants(inp)
    assert got.c9 == pytest.approx(c9, rel=1e-13, abs=1e-13 * (abs(c6) + abs(c3 * c7) + abs(c3 * c3 * c8)))


def test_key_polynomials_specialization():
    k, q_t, s, q = 2.5, -30.0, 9.0, 1.0
    inp, c = specialization(k, q_t, s, q)
    kp = key_polynomials(c, inp)
    assert kp.pi_const == pytest.approx(k, rel=1e-13)
    assert kp.pi_slope == pytest.approx(-(q / 2 + q * k + s), rel=1e-13)
    assert kp.k == pytest.approx(-q_t - 2 * k * s, rel=1e-12)
    assert kp.tau_slope == pytest.approx(-2 * (q + q * k + s), rel=1e-13)
    assert kp.physical and kp.selected


@given(st.floats(0.1, 20.0), st.floats(-100.0, 100.0), st.floats(0.1, 50.0), st.floats(0.2, 3.0))
def test_discriminant_is_perfect_square(k, q_t, s, q):
    inp, c = specialization(k, q_t, s, q)
    z = np.linspace(-0.5, 0.9, 15)
    base = c.c4 + c.c5 * z
    for kp in candidate_polynomials(c, inp):
        radicand = base**2 + inp.b1 * z**2 - inp.b2 * z + inp.b3 + kp.k * z * (1 - inp.c3 * z)
        square = (kp.pi(z) - base) ** 2
        scale = np.abs(base**2) + abs(inp.b1) + abs(inp.b2) + abs(inp.b3) + abs(kp.k)
        assert np.all(np.abs(radicand - square) <= 1e-10 * scale)
    assert sum(kp.selected for kp in candidate_polynomials(c, inp)) == 1


@given(st.floats(0.1, 20.0), st.floats(-100.0, 100.0), st.floats(0.1, 50.0), st.floats(0.2, 3.0))
def test_phi_log_derivative_is_pi_over_sigma(k, q_t, s, q):
    inp, c = specialization(k, q_t, s, q)
    kp = key_polynomials(c, inp)
    z = np.linspace(0.01, 0.95 / q, 50)
    log_deriv = c.c12 / z - q * c.c13 / (1 - q * z)
    ratio = kp.pi(z) / (z * (1 - q * z))
    assert np.allclose(log_deriv, ratio, rtol=1e-9, atol=0)


def test_residual_matches_rearranged_energy_relation():
    s, q_t, q, n = 7.3, -25.0, 1.0, 0
    t = s / q + n + 0.5
    two_k = ((s / q) ** 2 - q_t / q - 0.25 - t * t) / t
    inp, c = specialization(two_k / 2, q_t, s, q)
    assert abs(energy_relation_residual(c, inp, n)) < 1e-12 * abs(c.c7)


def test_residual_second_difference():
    inp, c = specialization(2.0, -20.0, 6.0, 1.3)
    r = [energy_relation_residual(c, inp, n) for n in range(6)]
    for n in range(1, 5):
        assert r[n + 1] - 2 * r[n] + r[n - 1] == pytest.approx(2 * inp.c3, rel=1e-9)
    with pytest.raises(ValueError):
        energy_relation_residual(c, inp, -1)


@pytest.mark.parametrize("name", ["H2", "Ar2"])
def test_residual_vanishes_at_solved_levels(name):
    from rovib.constants import lookup

    p = lookup(name)
    for n in range(4):
        for l in range(2):
            lv = nr_energy(p, n, l)
            inp = assemble(p, l, None, lv.value).nu_input()
            assert abs(energy_relation_residual(derive_constants(inp), inp, n, normalized=True)) < 1e-9


def test_wave_exponents():
    k, s, q = 2.5, 9.0, 1.0
    inp, c = specialization(k, -30.0, s, q)
    w = wave_exponents(c, q)
    assert w.rho == pytest.approx((2 * k, 2 * s / q))
    assert w.phi == pytest.approx((k, s / q + 0.5))
    assert w.jacobi == w.rho
    flat = derive_constants(NUInput(1.0, 2.0, 1.0, 0.0, 0.0, 0.0))
    assert (flat.c10, flat.c11) == (0.0, 0.0)


def test_wave_exponents_invalid_weight():
    # c11 = 2 sqrt(c9) / c3 turns negative for c3 < 0
    c = derive_constants(NUInput(1.0, 1.0, -1.0, 1.0, 0.0, 0.0))
    assert c.c11 <= -1 and not c.weights_ok
    with pytest.raises(InvalidStateError):
        wave_exponents(c)

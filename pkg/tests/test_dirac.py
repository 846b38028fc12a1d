import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qq.angular import wigner_d
from qq.dirac import (
    DiracChain,
    alphas,
    bloch_hamiltonian,
    boosted_spinor,
    chiral_check,
    clifford_verify,
    closed_form_spectrum,
    dirac_residual,
    dirac_spectrum,
    dispersion,
    eigenspinor,
    eigenspinor_residual,
    gamma5,
    gamma_set,
    pairing_error,
    spin_conservation_check,
    spinor_rotation,
    zero_modes,
)
from qq.linalg import SX, anticommutator, is_hermitian

ks = st.floats(-math.pi, math.pi)
masses = st.floats(0.01, 5)


def block_oracle(n, m):
    """Eigenvalues from Fourier blocks H(k) assembled one momentum at a time."""
    out = []
    for alpha in range(n):
        out.extend(np.linalg.eigvalsh(bloch_hamiltonian(2 * np.pi * alpha / n, m)))
    return np.sort(out)


def test_periodic_spectrum():
    chain = DiracChain(8, 0.5)
    expected = np.sort(np.concatenate([s * np.sqrt(np.sin(2 * np.pi * np.arange(8) / 8) ** 2 + 0.25) for s in (1, -1)]))
    np.testing.assert_allclose(dirac_spectrum(chain), expected, atol=1e-10)
    np.testing.assert_allclose(closed_form_spectrum(8, 0.5), expected, atol=1e-15)
    np.testing.assert_allclose(block_oracle(8, 0.5), expected, atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 5, 12])
@pytest.mark.parametrize("m", [0.0, 0.3, 1.7])
def test_spectrum_matches_blocks(n, m):
    chain = DiracChain(n, m)
    assert is_hermitian(chain.hamiltonian)
    np.testing.assert_allclose(dirac_spectrum(chain), block_oracle(n, m), atol=1e-10)


def test_massless_unit_energy():
    assert dispersion(math.pi / 2, 0.0) == pytest.approx(1)


@given(ks, masses, st.sampled_from([1, -1]))
def test_eigenspinor(k, m, band):
    e, u = eigenspinor(k, m, band)
    assert abs(e) == pytest.approx(math.sqrt(math.sin(k) ** 2 + m * m))
    assert np.linalg.norm(u) == pytest.approx(1, abs=1e-12)
    assert eigenspinor_residual(k, m, band) < 1e-12


def test_eigenspinor_printed_form():
    k, m = 0.7, 0.4
    e = math.sqrt(math.sin(k) ** 2 + m * m)
    _, u = eigenspinor(k, m, 1)
    np.testing.assert_allclose(u, np.array([e + m, math.sin(k)]) / math.sqrt(2 * e * (e + m)), atol=1e-15)


def test_nonrelativistic_limit():
    k, m = 0.05, 10.0
    _, u = eigenspinor(k, m, 1)
    ratio = abs(u[1] / u[0])
    assert ratio == pytest.approx(k / (2 * m), rel=0.01)


@given(ks)
def test_massless_states_are_sigma_x_eigenstates(k):
    if abs(math.sin(k)) < 1e-6:
        return
    w, v = np.linalg.eigh(bloch_hamiltonian(k, 0.0))
    for col in v.T:
        sx = np.vdot(col, SX @ col).real
        assert abs(abs(sx) - 1) < 1e-12


@given(ks, st.floats(-3, 3))
def test_square_is_scalar(k, m):
    h = bloch_hamiltonian(k, m)
    np.testing.assert_allclose(h @ h, (math.sin(k) ** 2 + m * m) * np.eye(2), atol=1e-12)


def test_chiral():
    assert chiral_check(0.0) <= 1e-14
    anti = anticommutator(bloch_hamiltonian(0.9, 0.3), np.diag([1, -1]))
    np.testing.assert_allclose(anti, 0.6 * np.eye(2), atol=1e-15)
    assert chiral_check(0.3) <= 1e-14


@pytest.mark.parametrize("boundary", ["periodic", "open"])
@pytest.mark.parametrize("n", [6, 7, 10])
def test_massless_pairing(boundary, n):
    assert pairing_error(dirac_spectrum(DiracChain(n, 0.0, boundary))) < 1e-10


@pytest.mark.parametrize("n", [9, 21, 41])
def test_open_zero_modes_odd_chain(n):
    modes = zero_modes(DiracChain(n, 0.0, "open"), tol=1e-8, edge=2)
    assert len(modes.energies) == 2
    assert np.all(np.abs(modes.energies) < 1e-12)
    # a mass breaks chiral symmetry and lifts them
    assert len(zero_modes(DiracChain(n, 0.2, "open")).energies) == 0


@pytest.mark.parametrize("n", [8, 20, 40])
def test_open_even_chain_has_no_zero_modes(n):
    assert len(zero_modes(DiracChain(n, 0.0, "open")).energies) == 0


def test_zero_modes_sit_on_alternate_sites():
    modes = zero_modes(DiracChain(21, 0.0, "open"), edge=1)
    # each end site carries 1/11 of the weight: the mode lives on the 11 odd sites
    np.testing.assert_allclose(modes.edge_weight, 2 / 11, atol=1e-10)


def test_chain_validation():
    with pytest.raises(ValueError):
        DiracChain(1)
    with pytest.raises(ValueError):
        DiracChain(4, boundary="twisted")


def test_gamma_1p1():
    g0, g1 = gamma_set("1+1").gammas
    np.testing.assert_array_equal(g0 @ g0, np.eye(2))
    np.testing.assert_array_equal(g1 @ g1, -np.eye(2))
    np.testing.assert_array_equal(anticommutator(g0, g1), 0)
    assert clifford_verify(gamma_set("1+1")) == 0


def test_gamma_3p1():
    gs = gamma_set("3+1")
    assert clifford_verify(gs) == 0
    g = gs.gammas
    np.testing.assert_array_equal(anticommutator(g[1], g[2]), 0)
    np.testing.assert_array_equal(gs.metric, np.diag([1, -1, -1, -1]))
    with pytest.raises(ValueError):
        gamma_set("2+1")


def test_gamma5():
    g5 = gamma5()
    np.testing.assert_allclose(g5 @ g5, np.eye(4), atol=0)
    for g in gamma_set("3+1").gammas:
        np.testing.assert_allclose(anticommutator(g5, g), 0, atol=0)


def test_boosted_spinor():
    m = 1.3
    np.testing.assert_allclose(boosted_spinor(0.0, m), math.sqrt(2 * m) * np.array([1, 0, 0, 0]), atol=1e-15)
    u = boosted_spinor(m, m)
    assert math.sqrt(m * m + m * m) == pytest.approx(math.sqrt(2) * m)
    assert dirac_residual(u, m, m) <= 1e-12


@given(st.floats(-20, 20), st.floats(0.1, 5))
def test_boosted_spinor_properties(p, m):
    u = boosted_spinor(p, m)
    e = math.sqrt(p * p + m * m)
    assert np.vdot(u, u).real == pytest.approx(2 * e, rel=1e-12)
    assert dirac_residual(u, p, m) <= 1e-10 * max(1, e)


def test_spin_conservation():
    for px, py in ((1.0, 0.0), (0.3, -2.0), (0.0, 0.0)):
        res = spin_conservation_check(px, py)
        assert res.alpha_x_commutator <= 1e-14
        assert res.alpha_y_commutator <= 1e-14
        assert res.h_sz <= 1e-14
        assert res.total <= 1e-14
    ax, ay, az, beta = alphas()
    for a in (ax, ay, az, beta):
        np.testing.assert_array_equal(a @ a, np.eye(4))


def test_spinor_two_pi_flip():
    np.testing.assert_allclose(spinor_rotation(2 * math.pi), -np.eye(4), atol=1e-14)
    np.testing.assert_allclose(wigner_d(Fraction(1, 2), 2 * math.pi), -np.eye(2), atol=1e-14)

import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qq.linalg import commutator, dagger
from qq.oscillator import (
    FockSpace,
    bch_factorized_displacement,
    classical_x,
    coherent,
    coherent_energy,
    coherent_evolve,
    displacement,
    evolve_fock,
    expect,
    ladder_ops,
    overlap2,
    overlap2_numeric,
    photon_distribution,
    quadrature_variances,
    squeeze,
    squeezed_vacuum,
    squeezed_variances,
)

SPACE = FockSpace(64, omega=1.3, mass=0.7)
small_alpha = st.builds(
    lambda r, phi: r * np.exp(1j * phi), st.floats(0, 2), st.floats(0, 2 * math.pi)
)


def test_space_validation():
    with pytest.raises(ValueError):
        FockSpace(3)
    with pytest.raises(ValueError):
        FockSpace(8, omega=0)


def test_ladder_commutator_interior():
    a, ad, n, x, p = ladder_ops(SPACE)
    c = commutator(a, ad)
    k = SPACE.n_max - 1
    np.testing.assert_allclose(c[:k, :k], np.eye(k), atol=1e-12)
    np.testing.assert_allclose(ad @ a, n, atol=1e-12)
    xp = commutator(x, p)
    np.testing.assert_allclose(xp[:k, :k], 1j * np.eye(k), atol=1e-12)


def test_x_squared_diagonal():
    _, _, _, x, _ = ladder_ops(SPACE)
    x2 = np.diag(x @ x).real
    ns = np.arange(SPACE.n_max - 1)
    expected = (2 * ns + 1) / (2 * SPACE.mass * SPACE.omega)
    np.testing.assert_allclose(x2[:-1], expected, rtol=1e-12)


def test_coherent_vacuum():
    np.testing.assert_array_equal(coherent(SPACE, 0).amplitudes, SPACE.vacuum())


@pytest.mark.parametrize("alpha", [0.5, 1.5 + 0.5j, -2j])
def test_coherent_poisson(alpha):
    st_ = coherent(SPACE, alpha)
    p = np.abs(st_.amplitudes) ** 2
    nbar = abs(alpha) ** 2
    ns = np.arange(SPACE.n_max)
    poisson = np.exp(-nbar) * nbar**ns / np.array([math.factorial(int(k)) for k in ns], dtype=float)
    np.testing.assert_allclose(p, poisson, atol=1e-14)
    np.testing.assert_allclose(photon_distribution(alpha, SPACE.n_max), poisson, atol=1e-14)
    mean = (ns * p).sum()
    assert mean == pytest.approx(nbar, abs=1e-10)
    assert (ns**2 * p).sum() - mean**2 == pytest.approx(nbar, abs=1e-9)
    assert st_.leakage <= 1e-10


@given(small_alpha)
def test_coherent_quadratures(alpha):
    psi = coherent(SPACE, alpha).amplitudes
    assert expect(psi, SPACE.x).real == pytest.approx(SPACE.x0 * math.sqrt(2) * alpha.real, abs=1e-9)
    assert expect(psi, SPACE.p).real == pytest.approx(SPACE.p0 * math.sqrt(2) * alpha.imag, abs=1e-9)


def test_overlap_examples():
    assert overlap2(0.3 + 1j, 0.3 + 1j) == 1
    assert overlap2(0, 1) == pytest.approx(math.exp(-1))
    assert overlap2(0, 1) == pytest.approx(0.3679, abs=1e-4)


@given(small_alpha, small_alpha)
def test_overlap_numeric_matches(alpha, beta):
    assert overlap2_numeric(FockSpace(64), alpha, beta) == pytest.approx(overlap2(alpha, beta), abs=1e-8)


@pytest.mark.parametrize("alpha", [0.7, 1 - 1j, 2j])
def test_displacement_makes_coherent(alpha):
    d = displacement(SPACE, alpha)
    np.testing.assert_allclose(d @ SPACE.vacuum(), coherent(SPACE, alpha).amplitudes, atol=1e-8)


@pytest.mark.parametrize("r", [0.1, 0.4, 0.8])
def test_squeezed_variances(r):
    psi = squeezed_vacuum(SPACE, r)
    vx, vp = quadrature_variances(SPACE, psi)
    ex, ep = squeezed_variances(SPACE, r)
    assert vx == pytest.approx(ex, rel=1e-8)
    assert vp == pytest.approx(ep, rel=1e-8)
    assert ex == pytest.approx(SPACE.x0**2 / 2 * math.exp(-2 * r))
    assert vx * vp == pytest.approx(0.25, rel=1e-8)
    assert np.max(np.abs(psi[1::2])) <= 1e-12


def test_squeeze_unitary_interior():
    s = squeeze(FockSpace(40), 0.3)
    k = 20
    np.testing.assert_allclose((dagger(s) @ s)[:k, :k], np.eye(k), atol=1e-10)


@given(small_alpha)
def test_bch_factorization(alpha):
    space = FockSpace(64)
    lhs = displacement(space, alpha)
    rhs = bch_factorized_displacement(space, alpha)
    k = 32
    assert np.max(np.abs(lhs[:k, :k] - rhs[:k, :k])) < 1e-8


@pytest.mark.parametrize("r", [0.2, 0.5])
def test_squeeze_conjugation(r):
    space = FockSpace(120)
    s = squeeze(space, r)
    lhs = dagger(s) @ space.a @ s
    rhs = space.a * math.cosh(r) - space.adag * math.sinh(r)
    k = 30
    assert np.max(np.abs(lhs[:k, :k] - rhs[:k, :k])) < 1e-6


def test_coherent_evolve_period():
    alpha0 = 1.2 * np.exp(0.4j)
    st_, phase = coherent_evolve(SPACE, alpha0, 2 * math.pi / SPACE.omega)
    assert st_.alpha == pytest.approx(alpha0, abs=1e-12)
    assert phase == pytest.approx(-1, abs=1e-12)


def test_coherent_evolve_matches_numeric():
    alpha0 = 1.1 - 0.6j
    psi0 = coherent(SPACE, alpha0).amplitudes
    for t in (0.3, 1.7, 4.0):
        st_, phase = coherent_evolve(SPACE, alpha0, t)
        np.testing.assert_allclose(evolve_fock(SPACE, psi0, t), phase * st_.amplitudes, atol=1e-12)


def test_mean_position_and_energy():
    alpha0 = 1.5 * np.exp(0.9j)
    psi0 = coherent(SPACE, alpha0).amplitudes
    ts = np.linspace(0, 10, 31)
    states = evolve_fock(SPACE, psi0, ts)
    xs = np.array([expect(s, SPACE.x).real for s in states])
    np.testing.assert_allclose(xs, classical_x(SPACE, alpha0, ts), atol=1e-9)
    es = np.array([expect(s, SPACE.hamiltonian).real for s in states])
    np.testing.assert_allclose(es, coherent_energy(SPACE, alpha0), atol=1e-9)
    assert coherent_energy(SPACE, alpha0) == pytest.approx(SPACE.omega * (abs(alpha0) ** 2 + 0.5))


def test_ehrenfest():
    alpha0 = 0.8 + 0.9j
    psi0 = coherent(SPACE, alpha0).amplitudes
    h = 1e-4
    for t in (0.5, 2.0, 3.3):
        plus, minus, mid = evolve_fock(SPACE, psi0, np.array([t + h, t - h, t]))
        dx = (expect(plus, SPACE.x).real - expect(minus, SPACE.x).real) / (2 * h)
        assert dx == pytest.approx(expect(mid, SPACE.p).real / SPACE.mass, abs=1e-5)


def test_leak_warning():
    with pytest.warns(RuntimeWarning):
        coherent(FockSpace(8), 3.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        coherent(FockSpace(64), 2.0)


def test_displacement_unitary_interior():
    d = displacement(FockSpace(60), 1.0 + 0.5j)
    np.testing.assert_allclose((dagger(d) @ d)[:20, :20], np.eye(20), atol=1e-8)

import math
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qq.composite import ket
from qq.linalg import anticommutator, commutator, dagger, is_unitary
from qq.lattice import (
    OccupationBasis,
    annihilation,
    create,
    creation,
    hopping_hamiltonian,
    momentum_state,
    number_op,
    ring_energies,
    sector_dimensions,
    single_particle_hamiltonian,
    total_number,
    translation_op,
)

KINDS = ["boson", "fermion"]


def test_ladder_examples():
    np.testing.assert_array_equal(create("boson", 2, "100"), ket("110"))
    np.testing.assert_array_equal(create("boson", 1, "100"), np.zeros(8))
    state = "000"
    psi = create("boson", 1, state)
    psi = create("boson", 2, psi)
    psi = create("boson", 3, psi)
    np.testing.assert_array_equal(psi, ket("111"))


def test_fermion_order_sign():
    c1, c2 = creation("fermion", 1, 2), creation("fermion", 2, 2)
    vac = ket("00")
    np.testing.assert_allclose(c1 @ c2 @ vac, -(c2 @ c1 @ vac))
    assert np.linalg.norm(c1 @ c2 @ vac) == pytest.approx(1)


def test_fermion_string_sign():
    # one occupied site to the left flips the sign
    np.testing.assert_array_equal(create("fermion", 3, "100"), -ket("101"))
    np.testing.assert_array_equal(create("fermion", 3, "110"), ket("111"))


def test_number_operators():
    psi = ket("110")
    np.testing.assert_array_equal(number_op(2, 3) @ psi, psi)
    vac = ket("0000")
    single = sum(creation("boson", j, 4) @ vac for j in range(1, 5)) / 2
    np.testing.assert_allclose(total_number(4) @ single, single, atol=1e-15)


@pytest.mark.parametrize("kind", KINDS)
def test_number_raises_by_creation(kind):
    n = total_number(3)
    for i in (1, 2, 3):
        ad = creation(kind, i, 3)
        np.testing.assert_allclose(commutator(n, ad), ad, atol=1e-15)


def test_hopping_example():
    delta = 0.8
    h = hopping_hamiltonian(3, delta, "open")
    np.testing.assert_allclose(h @ ket("110"), -delta * ket("101"), atol=1e-15)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_ring_single_particle_spectrum(n):
    delta = 1.3
    h = hopping_hamiltonian(n, delta, "periodic", n_particles=1)
    expected = np.sort(-2 * delta * np.cos(2 * np.pi * np.arange(n) / n))
    np.testing.assert_allclose(np.linalg.eigvalsh(h), expected, atol=1e-12)
    np.testing.assert_allclose(np.sort(ring_energies(n, delta)), expected, atol=1e-12)


def test_sector_dimensions():
    assert sector_dimensions(4) == [1, 4, 6, 4, 1]
    for n in range(1, 10):
        dims = sector_dimensions(n)
        assert dims == [comb(n, m) for m in range(n + 1)]
        assert sum(dims) == 2**n


def test_hopping_needs_two_sites():
    with pytest.raises(ValueError):
        hopping_hamiltonian(1, 1.0)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("boundary", ["open", "periodic"])
def test_hopping_hermitian_and_number_conserving(kind, boundary):
    h = hopping_hamiltonian(5, 0.7, boundary, kind)
    np.testing.assert_allclose(h, dagger(h), atol=0)
    assert np.max(np.abs(commutator(h, total_number(5)))) < 1e-12


def test_momentum_states():
    k0 = momentum_state(3, 0)
    np.testing.assert_allclose(k0, (ket("100") + ket("010") + ket("001")) / math.sqrt(3), atol=1e-15)
    t = translation_op(3)
    np.testing.assert_allclose(t @ k0, k0, atol=1e-15)
    delta = 0.6
    k1 = momentum_state(3, 1)
    h = hopping_hamiltonian(3, delta, "periodic")
    np.testing.assert_allclose(h @ k1, delta * k1, atol=1e-14)


def test_momentum_orthonormal():
    n = 5
    gram = np.array([[np.vdot(momentum_state(n, a), momentum_state(n, b)) for b in range(n)] for a in range(n)])
    np.testing.assert_allclose(gram, np.eye(n), atol=1e-14)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_translation_eigenvalues(n):
    t = translation_op(n)
    assert is_unitary(t)
    for a in range(n):
        k = momentum_state(n, a)
        np.testing.assert_allclose(t @ k, np.exp(2j * np.pi * a / n) * k, atol=1e-14)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_hopping_commutes_with_translation(n):
    t = translation_op(n)
    h = hopping_hamiltonian(n, 1.0, "periodic", "boson")
    assert np.max(np.abs(commutator(h, t))) < 1e-12
    # the fermion boundary bond carries a string, so compare in the one-particle sector
    sector = OccupationBasis(n, 1)
    hf = sector.restrict(hopping_hamiltonian(n, 1.0, "periodic", "fermion"))
    assert np.max(np.abs(commutator(hf, sector.restrict(t)))) < 1e-12


@pytest.mark.parametrize("n", range(1, 7))
def test_fermion_anticommutators(n):
    eye = np.eye(2**n)
    for i in range(1, n + 1):
        ci = annihilation("fermion", i, n)
        for j in range(1, n + 1):
            cj = annihilation("fermion", j, n)
            np.testing.assert_allclose(anticommutator(ci, dagger(cj)), eye * (i == j), atol=1e-14)
            np.testing.assert_allclose(anticommutator(ci, cj), 0, atol=1e-14)


@pytest.mark.parametrize("n", range(2, 6))
def test_hardcore_boson_algebra(n):
    eye = np.eye(2**n)
    for i in range(1, n + 1):
        bi = annihilation("boson", i, n)
        np.testing.assert_allclose(anticommutator(bi, dagger(bi)), eye, atol=1e-14)
        np.testing.assert_allclose(dagger(bi) @ dagger(bi), 0, atol=0)
        for j in range(i + 1, n + 1):
            bj = annihilation("boson", j, n)
            np.testing.assert_allclose(commutator(bi, dagger(bj)), 0, atol=1e-14)
            np.testing.assert_allclose(commutator(bi, bj), 0, atol=1e-14)


@given(st.integers(2, 8), st.sampled_from(["open", "periodic"]), st.floats(-3, 3))
def test_single_particle_sector_identical(n, boundary, delta):
    sector = OccupationBasis(n, 1)
    hb = sector.restrict(hopping_hamiltonian(n, delta, boundary, "boson"))
    hf = sector.restrict(hopping_hamiltonian(n, delta, boundary, "fermion"))
    np.testing.assert_allclose(hb, hf, atol=1e-15)
    # sector basis lists site 1 first only after reversal: compare spectra
    np.testing.assert_allclose(
        np.linalg.eigvalsh(hb), np.linalg.eigvalsh(single_particle_hamiltonian(n, delta, boundary)), atol=1e-12
    )


def test_sector_validation():
    with pytest.raises(ValueError):
        OccupationBasis(3, 4)
    basis = OccupationBasis(4, 2)
    assert basis.dim == 6
    assert list(basis.states) == sorted(basis.states)

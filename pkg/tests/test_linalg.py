import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qq import constants
from qq.linalg import (
    I2,
    SX,
    SY,
    SZ,
    NotHermitianError,
    commutator,
    eigh,
    embed,
    expm,
    expm_i,
    is_unitary,
    kron,
    random_hermitian,
    random_state,
)

seeds = st.integers(0, 2**32 - 1)


def test_eigh_sigma_z():
    es = eigh(SZ)
    np.testing.assert_allclose(es.eigenvalues, [-1, 1])
    # columns are |-z>, |+z> up to phase
    assert abs(abs(es.eigenvectors[1, 0]) - 1) < 1e-14
    assert abs(abs(es.eigenvectors[0, 1]) - 1) < 1e-14


def test_eigh_identity_degenerate():
    es = eigh(I2)
    np.testing.assert_allclose(es.eigenvalues, [1, 1])
    assert is_unitary(es.eigenvectors)


def test_eigh_sigma_x_scaled():
    omega = 2.7
    es = eigh(omega / 2 * SX)
    np.testing.assert_allclose(es.eigenvalues, [-omega / 2, omega / 2])
    minus_x = np.array([1, -1]) / np.sqrt(2)
    plus_x = np.array([1, 1]) / np.sqrt(2)
    assert abs(abs(np.vdot(minus_x, es.eigenvectors[:, 0])) - 1) < 1e-12
    assert abs(abs(np.vdot(plus_x, es.eigenvectors[:, 1])) - 1) < 1e-12


def test_eigh_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        eigh(np.array([[0, 1], [0, 0]], dtype=complex))


def test_tolerance_constants():
    assert constants.HERM_TOL == 1e-12
    assert constants.RECON_TOL == 1e-10


def test_expm_i_zero_is_identity():
    np.testing.assert_allclose(expm_i(np.zeros((3, 3)), 1.3), np.eye(3), atol=1e-15)


def test_expm_i_precession_half_period():
    omega = 1.7
    u = expm_i(omega * SZ / 2, np.pi / omega)
    np.testing.assert_allclose(u, np.diag([np.exp(-1j * np.pi / 2), np.exp(1j * np.pi / 2)]), atol=1e-14)


@pytest.mark.parametrize("t", [0.0, 0.3, 1.0, 4.2])
def test_expm_i_sigma_x_euler(t):
    omega = 0.9
    expected = np.cos(omega * t / 2) * I2 - 1j * np.sin(omega * t / 2) * SX
    np.testing.assert_allclose(expm_i(omega * SX / 2, t), expected, atol=1e-14)


def test_kron_examples():
    np.testing.assert_array_equal(kron(I2, I2), np.eye(4))
    sx_i = kron(SX, I2)
    assert sx_i[0, 2] == 1 and sx_i[1, 3] == 1 and sx_i[0, 1] == 0
    i_sy = kron(I2, SY)
    np.testing.assert_array_equal(i_sy[:2, :2], SY)
    np.testing.assert_array_equal(i_sy[2:, 2:], SY)
    np.testing.assert_array_equal(i_sy[:2, 2:], 0)


def test_kron_requires_operand():
    with pytest.raises(ValueError):
        kron()


def test_embed_matches_kron():
    np.testing.assert_array_equal(embed(SZ, 1, 3), kron(I2, SZ, I2))
    with pytest.raises(IndexError):
        embed(SZ, 3, 3)


def test_expm_general_matches_hermitian_path(rng):
    h = random_hermitian(6, rng)
    np.testing.assert_allclose(expm(-1j * h * 0.7), expm_i(h, 0.7), atol=1e-12)


@given(seeds, st.integers(1, 64), st.floats(-3, 3), st.floats(-3, 3))
def test_group_property(seed, dim, t1, t2):
    h = random_hermitian(dim, np.random.default_rng(seed))
    lhs = expm_i(h, t1) @ expm_i(h, t2)
    assert np.max(np.abs(lhs - expm_i(h, t1 + t2))) < 1e-9


@given(seeds, st.integers(1, 32))
def test_eigh_reconstructs(seed, dim):
    h = random_hermitian(dim, np.random.default_rng(seed))
    es = eigh(h)
    assert np.all(np.diff(es.eigenvalues) >= 0)
    assert is_unitary(es.eigenvectors)
    assert np.max(np.abs(es.reconstruct() - h)) < constants.RECON_TOL * max(1, np.max(np.abs(h)))


@given(seeds, st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_kron_associative(seed, a, b, c):
    rng = np.random.default_rng(seed)
    x, y, z = (random_hermitian(d, rng) for d in (a, b, c))
    assert np.max(np.abs(kron(kron(x, y), z) - kron(x, kron(y, z)))) < 1e-12


@given(seeds, st.floats(-5, 5), st.floats(-5, 5))
def test_kron_bilinear(seed, s, t):
    rng = np.random.default_rng(seed)
    a1, a2, b = (random_hermitian(3, rng) for _ in range(3))
    lhs = kron(s * a1 + t * a2, b)
    rhs = s * kron(a1, b) + t * kron(a2, b)
    assert np.max(np.abs(lhs - rhs)) < 1e-12 * max(1, np.max(np.abs(lhs)))


@given(seeds, st.integers(1, 5), st.integers(1, 5))
def test_kron_trace(seed, a, b):
    rng = np.random.default_rng(seed)
    x, y = random_hermitian(a, rng), random_hermitian(b, rng)
    assert np.trace(kron(x, y)) == pytest.approx(np.trace(x) * np.trace(y), abs=1e-11)


@given(seeds, st.integers(2, 16), st.floats(-10, 10))
def test_evolution_preserves_norm(seed, dim, t):
    rng = np.random.default_rng(seed)
    psi = random_state(dim, rng)
    u = expm_i(random_hermitian(dim, rng), t)
    assert np.linalg.norm(u @ psi) == pytest.approx(1, abs=1e-12)


def test_commutator_sign():
    np.testing.assert_allclose(commutator(SX, SY), 2j * SZ)

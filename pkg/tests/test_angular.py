import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qq.angular import (
    allowed_j,
    cg,
    clebsch_gordan,
    half,
    j_rep,
    m_values,
    rotate_l1_coeffs,
    sph_harm,
    sphere_integral,
    threej,
    total_operators,
    wigner_d,
)
from qq.linalg import SX, SY, SZ, commutator

H = Fraction(1, 2)
R2 = math.sqrt(2)
SPINS = [Fraction(k, 2) for k in range(0, 6)]


def racah_cg(j1, m1, j2, m2, j, m):
    """Closed-form Clebsch-Gordan coefficient (Racah's sum)."""
    if m1 + m2 != m or not abs(j1 - j2) <= j <= j1 + j2:
        return 0.0
    if abs(m1) > j1 or abs(m2) > j2 or abs(m) > j:
        return 0.0
    f = lambda x: math.factorial(int(x))  # noqa: E731
    pre = math.sqrt(
        (2 * j + 1) * f(j + j1 - j2) * f(j - j1 + j2) * f(j1 + j2 - j) / f(j1 + j2 + j + 1)
    ) * math.sqrt(f(j + m) * f(j - m) * f(j1 - m1) * f(j1 + m1) * f(j2 - m2) * f(j2 + m2))
    total = 0.0
    for k in range(0, int(j1 + j2 + j) + 2):
        dens = [k, j1 + j2 - j - k, j1 - m1 - k, j2 + m2 - k, j - j2 + m1 + k, j - j1 - m2 + k]
        if any(d < 0 for d in dens):
            continue
        total += (-1) ** k / math.prod(f(d) for d in dens)
    return pre * total


def test_half():
    assert half(0.5) == H
    assert half(2) == 2
    with pytest.raises(ValueError):
        half(0.3)
    with pytest.raises(ValueError):
        m_values(-1)


def test_j1_matrices():
    rep = j_rep(1)
    lx = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]]) / R2
    ly = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]]) / R2
    np.testing.assert_allclose(rep.jx, lx, atol=1e-15)
    np.testing.assert_allclose(rep.jy, ly, atol=1e-15)
    np.testing.assert_allclose(rep.jz, np.diag([1, 0, -1]), atol=0)


def test_half_spin_is_pauli():
    rep = j_rep(H)
    for got, s in ((rep.jx, SX), (rep.jy, SY), (rep.jz, SZ)):
        np.testing.assert_allclose(got, s / 2, atol=1e-15)


def test_j2_eigenvalues():
    np.testing.assert_allclose(np.diag(j_rep(2).jz).real, [2, 1, 0, -1, -2])


@pytest.mark.parametrize("j", SPINS + [Fraction(7, 2), 4])
def test_rep_algebra(j):
    rep = j_rep(j)
    assert rep.dim == int(2 * j) + 1
    np.testing.assert_allclose(commutator(rep.jx, rep.jy), 1j * rep.jz, atol=1e-12)
    np.testing.assert_allclose(rep.j2, float(j * (j + 1)) * np.eye(rep.dim), atol=1e-12)


def test_cg_two_halves():
    t = clebsch_gordan(H, H)
    np.testing.assert_allclose(t.state(1, 0), [0, 1 / R2, 1 / R2, 0], atol=1e-15)
    np.testing.assert_allclose(t.state(0, 0), [0, 1 / R2, -1 / R2, 0], atol=1e-15)


def test_cg_one_half():
    t = clebsch_gordan(1, H)
    assert t.coeff(3 * H, H, 0, H) == pytest.approx(math.sqrt(2 / 3), abs=1e-14)
    # Condon-Shortley: the m1 = 1 component of |1/2, 1/2> is positive
    assert t.coeff(H, H, 1, -H) == pytest.approx(math.sqrt(2 / 3), abs=1e-14)
    assert t.coeff(H, H, 0, H) == pytest.approx(-math.sqrt(1 / 3), abs=1e-14)


def test_cg_one_one_singlet():
    t = clebsch_gordan(1, 1)
    s = t.state(0, 0)
    expected = np.zeros(9)
    expected[[2, 4, 6]] = np.array([1, -1, 1]) / math.sqrt(3)
    np.testing.assert_allclose(s, expected, atol=1e-14)


@pytest.mark.parametrize("j1", SPINS)
@pytest.mark.parametrize("j2", SPINS)
def test_cg_matches_racah(j1, j2):
    t = clebsch_gordan(j1, j2)
    for j in allowed_j(j1, j2):
        for m in m_values(j):
            for m1 in m_values(j1):
                for m2 in m_values(j2):
                    assert t.coeff(j, m, m1, m2) == pytest.approx(racah_cg(j1, m1, j2, m2, j, m), abs=1e-12)


@pytest.mark.parametrize("j1", SPINS)
@pytest.mark.parametrize("j2", SPINS)
def test_cg_orthonormal_and_diagonalizes(j1, j2):
    t = clebsch_gordan(j1, j2)
    u = t.matrix
    d = u.shape[0]
    assert d == sum(int(2 * j + 1) for j in allowed_j(j1, j2))
    np.testing.assert_allclose(u.T @ u, np.eye(d), atol=1e-12)
    np.testing.assert_allclose(u @ u.T, np.eye(d), atol=1e-12)
    jz, _, j2op = total_operators(j1, j2)
    jz_c = u.T @ jz @ u
    j2_c = u.T @ j2op @ u
    np.testing.assert_allclose(jz_c, np.diag(np.diag(jz_c)), atol=1e-10)
    np.testing.assert_allclose(j2_c, np.diag([float(j * (j + 1)) for j, _ in t.coupled]), atol=1e-10)


@pytest.mark.parametrize("j1", SPINS)
@pytest.mark.parametrize("j2", SPINS)
def test_cg_exchange_symmetry(j1, j2):
    a, b = clebsch_gordan(j1, j2), clebsch_gordan(j2, j1)
    for j in allowed_j(j1, j2):
        sign = (-1) ** int(j1 + j2 - j)
        for m1 in m_values(j1):
            for m2 in m_values(j2):
                assert a.coeff(j, m1 + m2, m1, m2) == pytest.approx(sign * b.coeff(j, m1 + m2, m2, m1), abs=1e-12)


def test_cg_selection_rules():
    assert cg(1, 1, 1, 0, 2, 0) == 0.0
    assert cg(1, 1, 1, 0, 3, 1) == 0.0
    assert cg(H, H, H, -H, 1, 0) == pytest.approx(1 / R2)


def test_threej_symmetric_value():
    # (1 1 0; 0 0 0) = -1/sqrt(3)
    assert threej(1, 1, 0, 0, 0, 0) == pytest.approx(-1 / math.sqrt(3), abs=1e-14)


def test_projector_ranks():
    t = clebsch_gordan(1, 1)
    projs = [t.projector(j) for j in (0, 1, 2)]
    assert [round(np.trace(p)) for p in projs] == [1, 3, 5]
    assert [np.linalg.matrix_rank(p) for p in projs] == [1, 3, 5]
    np.testing.assert_allclose(sum(projs), np.eye(9), atol=1e-12)


def test_wigner_d_examples():
    expected = np.array([[0.5, -1 / R2, 0.5], [1 / R2, 0, -1 / R2], [0.5, 1 / R2, 0.5]])
    np.testing.assert_allclose(wigner_d(1, math.pi / 2), expected, atol=1e-14)
    for j in SPINS:
        np.testing.assert_allclose(wigner_d(j, 0.0), np.eye(int(2 * j) + 1), atol=1e-15)
    np.testing.assert_allclose(wigner_d(H, 2 * math.pi), -np.eye(2), atol=1e-14)
    b = 0.7
    np.testing.assert_allclose(
        wigner_d(H, b), [[math.cos(b / 2), -math.sin(b / 2)], [math.sin(b / 2), math.cos(b / 2)]], atol=1e-15
    )


@given(st.sampled_from(SPINS), st.floats(-4, 4), st.floats(-4, 4))
def test_wigner_d_composition(j, b1, b2):
    np.testing.assert_allclose(wigner_d(j, b1) @ wigner_d(j, b2), wigner_d(j, b1 + b2), atol=1e-10)


@pytest.mark.parametrize("j", SPINS)
def test_wigner_d_at_pi(j):
    # the sign follows the row index m'; for integer j this equals (-1)^(j+m)
    d = wigner_d(j, math.pi)
    ms = m_values(j)
    expected = np.array([[(-1) ** int(j + mp) * (mp == -m) for m in ms] for mp in ms], dtype=float)
    np.testing.assert_allclose(d, expected, atol=1e-12)
    if j.denominator == 1:
        col_sign = np.array([[(-1) ** int(j + m) * (mp == -m) for m in ms] for mp in ms], dtype=float)
        np.testing.assert_allclose(d, col_sign, atol=1e-12)


def test_rotate_l1_examples():
    b = math.pi / 4
    np.testing.assert_allclose(rotate_l1_coeffs([0, 1, 0], 0, b, 0), [-0.5, 1 / R2, 0.5], atol=1e-12)
    px = [-1 / R2, 0, 1 / R2]
    np.testing.assert_allclose(rotate_l1_coeffs(px, 0, b, 0), [-0.5, -1 / R2, 0.5], atol=1e-12)
    c = np.array([0.3, -0.2j, 0.5])
    np.testing.assert_allclose(rotate_l1_coeffs(c, 0, 0, 0), c, atol=1e-15)


def test_sph_harm_examples():
    th, ph = np.array([0.3, 1.2, 2.9]), np.array([0.1, 2.0, 5.0])
    np.testing.assert_allclose(sph_harm(0, 0, th, ph), 1 / math.sqrt(4 * math.pi))
    for s in (1, -1):
        expected = -s * math.sqrt(3 / (8 * math.pi)) * np.sin(th) * np.exp(s * 1j * ph)
        np.testing.assert_allclose(sph_harm(1, s, th, ph), expected, atol=1e-15)
    np.testing.assert_allclose(sph_harm(1, 0, th, ph), math.sqrt(3 / (4 * math.pi)) * np.cos(th), atol=1e-15)
    with pytest.raises(ValueError):
        sph_harm(4, 0, 0.1, 0.1)


def test_sph_harm_orthonormal():
    lms = [(l, m) for l in range(4) for m in range(-l, l + 1)]
    gram = np.array(
        [
            [sphere_integral(lambda t, p: np.conj(sph_harm(l1, m1, t, p)) * sph_harm(l2, m2, t, p)) for l2, m2 in lms]
            for l1, m1 in lms
        ]
    )
    np.testing.assert_allclose(gram, np.eye(len(lms)), atol=1e-8)

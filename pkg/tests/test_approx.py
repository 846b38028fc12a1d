import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qq import constants
from qq.approx import (
    NoMinimumError,
    NonConfiningError,
    fd_levels,
    gaussian_trial_energy,
    gaussian_trial_grad,
    helium_energy,
    helium_variational,
    ho_ground_overlap2,
    ho_ground_overlap2_numeric,
    sudden_overlap,
    variational_minimize,
    wkb_levels,
    wkb_linear_abs_levels,
)


def test_helium():
    res, ev = helium_variational()
    assert res.x == pytest.approx(27 / 16, abs=1e-10)
    assert res.energy == pytest.approx(-((27 / 16) ** 2), abs=1e-12)
    assert res.energy == pytest.approx(-2.848, abs=1e-3)
    assert ev == pytest.approx(-77.5, abs=0.05)
    for z in (1.0, 1.5, 2.0):
        assert helium_energy(z) == pytest.approx(z * z - 27 / 8 * z, abs=1e-15)


@pytest.mark.parametrize("mass, omega", [(1.0, 1.0), (2.0, 0.5), (0.3, 4.0)])
def test_gaussian_trial(mass, omega):
    res = variational_minimize(
        lambda a: gaussian_trial_energy(a, mass, omega),
        (1e-3, 50.0),
        grad=lambda a: gaussian_trial_grad(a, mass, omega),
    )
    assert res.x == pytest.approx(mass * omega / 2, rel=1e-10)
    assert res.energy == pytest.approx(omega / 2, rel=1e-12)


def test_quadratic():
    res = variational_minimize(lambda x: (x - 2) ** 2 + 1, (0, 5))
    assert res.x == pytest.approx(2, abs=1e-6)
    assert res.energy == pytest.approx(1, abs=1e-12)


def test_no_minimum_in_bracket():
    with pytest.raises(NoMinimumError):
        variational_minimize(lambda x: x, (0, 1))
    with pytest.raises(ValueError):
        variational_minimize(lambda x: x * x, (1, 0))


def test_sudden_ho():
    assert sudden_overlap("ho_freq_change", 1.0, 1.0) == 1
    # one dimension: 2 sqrt2 / 3; two dimensions square it to 8/9
    assert sudden_overlap("ho_freq_change", 1.0, 2.0) == pytest.approx(2 * math.sqrt(2) / 3, abs=1e-15)
    assert sudden_overlap("ho_freq_change", 1.0, 2.0, dim=2) == pytest.approx(8 / 9, abs=1e-15)
    assert ho_ground_overlap2_numeric(1.0, 2.0) == pytest.approx(2 * math.sqrt(2) / 3, abs=1e-12)


@given(st.floats(0.1, 10), st.floats(0.1, 10))
def test_sudden_ho_quadrature_oracle(w1, w2):
    assert ho_ground_overlap2_numeric(w1, w2) == pytest.approx(ho_ground_overlap2(w1, w2), abs=1e-10)


def test_sudden_tritium():
    p = sudden_overlap("hydrogenic_Z_change", 1, 2)
    assert p == pytest.approx((16 * math.sqrt(2) / 27) ** 2, abs=1e-14)
    assert p == pytest.approx(0.70, abs=0.005)
    with pytest.raises(ValueError):
        sudden_overlap("nope", 1, 2)


def test_wkb_harmonic_exact():
    omega = 1.7
    levels = wkb_levels(lambda x: 0.5 * omega**2 * x * x, 1.0, 6)
    np.testing.assert_allclose(levels, omega * (np.arange(6) + 0.5), atol=1e-6)
    doubled = wkb_levels(lambda x: 0.5 * (2 * omega) ** 2 * x * x, 1.0, 6)
    np.testing.assert_allclose(doubled, 2 * levels, rtol=1e-9)


def test_wkb_linear_abs():
    levels = wkb_levels(abs, 1.0, 8)
    np.testing.assert_allclose(levels, wkb_linear_abs_levels(8), rtol=1e-9)
    reference = fd_levels(abs, 1.0, 8, half_width=20.0, n_grid=6000)
    rel = np.abs(levels - reference) / reference
    assert np.all(rel[2:] < 0.03)


def test_fd_oracle_harmonic():
    np.testing.assert_allclose(fd_levels(lambda x: 0.5 * x * x, count=4), [0.5, 1.5, 2.5, 3.5], atol=1e-4)


def test_wkb_non_confining():
    with pytest.raises(NonConfiningError):
        wkb_levels(lambda x: -x * x, 1.0, 1)


def test_energy_constants():
    assert constants.HARTREE_EV == 27.211386
    assert constants.ATOMIC_TIME_S == 2.4188843e-17
    assert constants.FINE_STRUCTURE == 1 / 137.035999

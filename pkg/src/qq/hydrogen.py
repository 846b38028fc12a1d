"""Hydrogen-like atoms in atomic units: levels, radial functions, dipole elements.

Radial integrals use Gauss-Laguerre quadrature. Every R_nl is a polynomial
times exp(-Z r / n), so after rescaling r = x / s the exponential weight is
matched exactly and the rule is exact for the remaining polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from numpy.polynomial import Polynomial
from scipy.optimize import brentq, minimize_scalar
from scipy.special import genlaguerre, roots_laguerre

from . import constants
from .angular import sph_harm, sphere_integral

N_QUAD = 200


@lru_cache(maxsize=None)
def _gauss_laguerre(n: int = N_QUAD):
    x, w = roots_laguerre(n)
    return x, w


def laplace_integral(g, s: float, n: int = N_QUAD) -> float:
    """Integral over (0, inf) of g(r) exp(-s r), exact for polynomial g of degree < 2n."""
    x, w = _gauss_laguerre(n)
    return float(np.sum(w * g(x / s)) / s)


@dataclass(frozen=True)
class HydrogenLevel:
    n: int
    l: int = 0
    Z: int = 1

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.l < self.n or self.Z < 1:
            raise ValueError(f"invalid level n={self.n}, l={self.l}, Z={self.Z}")

    @property
    def energy(self) -> float:
        return energy(self.n, self.Z)

    @property
    def degeneracy(self) -> int:
        """l-summed degeneracy n^2 (spin excluded)."""
        return self.n**2


def energy(n: int, Z: float = 1) -> float:
    """-Z^2 / (2 n^2) Hartree."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return -(Z**2) / (2 * n**2)


def energy_ev(n: int, Z: float = 1) -> float:
    return energy(n, Z) * constants.HARTREE_EV


@dataclass(frozen=True)
class RadialFunction:
    """R_nl(r) = P(r) exp(-Z r / n) with P a polynomial, normalized so that
    the integral of R^2 r^2 is one."""

    n: int
    l: int
    Z: float = 1.0

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.l < self.n or self.Z <= 0:
            raise ValueError(f"invalid radial function n={self.n}, l={self.l}, Z={self.Z}")

    @property
    def decay(self) -> float:
        return self.Z / self.n

    @cached_property
    def poly(self) -> Polynomial:
        n, l, Z = self.n, self.l, self.Z
        c = 2 * Z / n
        norm = math.sqrt(c**3 * math.factorial(n - l - 1) / (2 * n * math.factorial(n + l)))
        lag = genlaguerre(n - l - 1, 2 * l + 1)  # poly1d in x, highest power first
        lag_r = Polynomial(lag.coeffs[::-1])(Polynomial([0, c]))
        return norm * c**l * Polynomial([0] * l + [1]) * lag_r

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return self.poly(r) * np.exp(-self.decay * r)

    def derivative(self, r):
        r = np.asarray(r, dtype=float)
        return (self.poly.deriv()(r) - self.decay * self.poly(r)) * np.exp(-self.decay * r)


def radial(n: int, l: int, Z: float = 1.0) -> RadialFunction:
    return RadialFunction(n, l, Z)


def radial_matrix_element(a: RadialFunction, b: RadialFunction, k: int) -> float:
    """Integral of R_a R_b r^(2+k) dr by Gauss-Laguerre quadrature."""
    if 2 + k + a.l + b.l < 0:
        raise ValueError("integral diverges at the origin")
    p = a.poly * b.poly
    s = a.decay + b.decay
    # fold r^(2+k) into the polynomial; a.l + b.l >= -2 - k guarantees a polynomial
    if k >= -2:
        g = p * Polynomial([0] * (2 + k) + [1])
    else:
        shift = -(2 + k)
        g = Polynomial(p.coef[shift:])
    return laplace_integral(g, s)


def hydrogen_expectation(n: int, l: int, Z: float = 1.0, k: int = 1) -> float:
    """<r^k> for k in {-2, -1, 1, 2} (any integer with a convergent integral works)."""
    R = radial(n, l, Z)
    return radial_matrix_element(R, R, k)


def expectation_closed_form(n: int, l: int, Z: float, k: int) -> float:
    """Textbook <r^k> formulas used as an independent check."""
    if k == 1:
        return (3 * n**2 - l * (l + 1)) / (2 * Z)
    if k == 2:
        return n**2 * (5 * n**2 + 1 - 3 * l * (l + 1)) / (2 * Z**2)
    if k == -1:
        return Z / n**2
    if k == -2:
        return Z**2 / (n**3 * (l + 0.5))
    raise ValueError("closed forms only for k in {-2, -1, 1, 2}")


def norm_check(n: int, l: int, Z: float = 1.0) -> float:
    return hydrogen_expectation(n, l, Z, 0)


def most_probable_radius(n: int, l: int, Z: float = 1.0) -> float:
    """Global argmax of r^2 R^2, refined as a root of (r R)' = R + r R'."""
    R = radial(n, l, Z)
    grid = np.linspace(1e-6, 6 * n**2 / Z, 20_000)
    k = int(np.argmax((grid * R(grid)) ** 2))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    return float(brentq(lambda r: R(r) + r * R.derivative(r), lo, hi, xtol=1e-14))


def kinetic_expectation(n: int, l: int, Z: float = 1.0) -> float:
    """<T> = integral of [R'^2 / 2 + l(l+1) R^2 / (2 r^2)] r^2 dr."""
    R = radial(n, l, Z)
    s = 2 * R.decay
    dpoly = R.poly.deriv() - R.decay * R.poly
    r2 = Polynomial([0, 0, 1])
    g = 0.5 * dpoly * dpoly * r2
    centrifugal = 0.5 * l * (l + 1) * laplace_integral(R.poly * R.poly, s)
    return laplace_integral(g, s) + centrifugal


def potential_expectation(n: int, l: int, Z: float = 1.0) -> float:
    return -Z * hydrogen_expectation(n, l, Z, -1)


def effective_potential(r, l: int, Z: float = 1.0):
    r = np.asarray(r, dtype=float)
    return -Z / r + l * (l + 1) / (2 * r**2)


def effective_potential_minimum(l: int, Z: float = 1.0) -> tuple[float, float]:
    """Numerical minimum (r_min, V_min) of the effective radial potential, l >= 1."""
    if l < 1:
        raise ValueError("no minimum for l = 0")
    guess = l * (l + 1) / Z
    res = minimize_scalar(
        lambda r: effective_potential(r, l, Z), bounds=(guess / 10, guess * 10), method="bounded",
        options={"xatol": 1e-12},
    )
    return float(res.x), float(res.fun)


# ---------------------------------------------------------------- dipole elements


def angular_cos_element(l1: int, m1: int, l2: int, m2: int) -> float:
    """<l1 m1| cos(theta) |l2 m2> by quadrature on the sphere."""
    val = sphere_integral(lambda t, p: np.conj(sph_harm(l1, m1, t, p)) * np.cos(t) * sph_harm(l2, m2, t, p))
    return float(val.real)


def dipole_z(n1: int, l1: int, m1: int, n2: int, l2: int, m2: int, Z: float = 1.0) -> float:
    """<n1 l1 m1| z |n2 l2 m2> = radial r-integral times the angular cos(theta) element."""
    ang = angular_cos_element(l1, m1, l2, m2)
    if abs(ang) < 1e-14:
        return 0.0
    return radial_matrix_element(radial(n1, l1, Z), radial(n2, l2, Z), 1) * ang


def stark_matrix_element() -> float:
    """<2s| z |2p_z> for hydrogen (exact value -3)."""
    return dipole_z(2, 0, 0, 2, 1, 0)


N2_LABELS = ("2s", "2p0", "2p+1", "2p-1")
_N2_QN = ((0, 0), (1, 0), (1, 1), (1, -1))


def n2_dipole_matrix() -> np.ndarray:
    """Matrix of z in the basis (2s, 2p0, 2p+1, 2p-1)."""
    z = np.zeros((4, 4))
    for i, (la, ma) in enumerate(_N2_QN):
        for j, (lb, mb) in enumerate(_N2_QN):
            z[i, j] = dipole_z(2, la, ma, 2, lb, mb)
    return z


def lyman_alpha_dipole() -> float:
    """|<1s| r |2p>| for the m = 0 component (the x, y parts vanish)."""
    return abs(dipole_z(1, 0, 0, 2, 1, 0))


def lyman_alpha_energy() -> float:
    return energy(2) - energy(1)


@dataclass(frozen=True)
class DecayRate:
    rate_au: float
    rate_per_s: float
    lifetime_s: float


def spontaneous_rate(omega: float, dipole: float) -> float:
    """Einstein A in atomic units: 4 omega^3 |d|^2 / (3 c^3)."""
    return 4 * omega**3 * dipole**2 / (3 * constants.SPEED_OF_LIGHT_AU**3)


def lyman_alpha_rate() -> DecayRate:
    a_au = spontaneous_rate(lyman_alpha_energy(), lyman_alpha_dipole())
    a_si = a_au / constants.ATOMIC_TIME_S
    return DecayRate(a_au, a_si, 1 / a_si)


def wavelength_nm(delta_e_hartree: float) -> float:
    """Photon wavelength for a transition energy given in Hartree."""
    hc_ev_nm = 1239.84198
    return hc_ev_nm / (delta_e_hartree * constants.HARTREE_EV)


def fine_structure(n: int, j: float) -> float:
    """Sommerfeld shift -(alpha^2 Ry / n^3)(1/(j+1/2) - 3/(4n)) in Hartree."""
    if n < 1 or j < 0.5 or j > n - 0.5:
        raise ValueError("need n >= 1 and 1/2 <= j <= n - 1/2")
    ry = 0.5
    return -(constants.FINE_STRUCTURE**2 * ry / n**3) * (1 / (j + 0.5) - 3 / (4 * n))


def hydrogenic_ground_overlap(z1: float, z2: float) -> float:
    """<1s; Z1 | 1s; Z2> = 8 (Z1 Z2)^{3/2} / (Z1 + Z2)^3."""
    return 8 * (z1 * z2) ** 1.5 / (z1 + z2) ** 3


def hydrogenic_ground_overlap_numeric(z1: float, z2: float) -> float:
    return radial_matrix_element(radial(1, 0, z1), radial(1, 0, z2), 0)

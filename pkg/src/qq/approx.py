"""Variational, sudden and WKB approximations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq, minimize_scalar

from . import constants
from .hydrogen import hydrogenic_ground_overlap


class NoMinimumError(ValueError):
    pass


class NonConfiningError(ValueError):
    pass


# ---------------------------------------------------------------- variational


@dataclass(frozen=True)
class VariationalResult:
    x: float
    energy: float


def variational_minimize(
    energy_fn: Callable[[float], float],
    bracket: tuple[float, float],
    xtol: float = 1e-12,
    grad: Callable[[float], float] | None = None,
) -> VariationalResult:
    """Bounded Brent minimization; the minimum must lie strictly inside ``bracket``.

    Function values only pin the minimizer to about sqrt(machine eps); pass
    ``grad`` to polish it as a root of the derivative.
    """
    lo, hi = bracket
    if not lo < hi:
        raise ValueError("bracket must satisfy lo < hi")
    res = minimize_scalar(energy_fn, bounds=(lo, hi), method="bounded", options={"xatol": xtol})
    x = float(res.x)
    edge = 1e3 * xtol + 1e-9 * (hi - lo)
    if x - lo < edge or hi - x < edge or not res.success:
        raise NoMinimumError(f"no interior minimum in [{lo}, {hi}] (landed at {x})")
    if grad is not None:
        a, b = max(lo, x - 1e-4 * (hi - lo)), min(hi, x + 1e-4 * (hi - lo))
        if grad(a) * grad(b) < 0:
            x = brentq(grad, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return VariationalResult(x, float(energy_fn(x)))


def helium_energy(z_eff: float, z_nuc: float = 2.0) -> float:
    """Hartree energy of the product 1s^2 trial state with screening charge z_eff:
    z^2 - 2 Z z + (5/8) z."""
    return z_eff**2 - 2 * z_nuc * z_eff + 0.625 * z_eff


def helium_variational() -> tuple[VariationalResult, float]:
    """Optimal screening charge and energy (Hartree), plus the energy in eV."""
    r = variational_minimize(helium_energy, (0.5, 3.0))
    return r, r.energy * constants.HARTREE_EV


def gaussian_trial_energy(alpha: float, mass: float = 1.0, omega: float = 1.0) -> float:
    """<H> for psi ~ exp(-alpha x^2) in the oscillator: alpha/(2m) + m omega^2 / (8 alpha)."""
    return alpha / (2 * mass) + mass * omega**2 / (8 * alpha)


def gaussian_trial_grad(alpha: float, mass: float = 1.0, omega: float = 1.0) -> float:
    return 1 / (2 * mass) - mass * omega**2 / (8 * alpha**2)


# ---------------------------------------------------------------- sudden approximation


def ho_ground_overlap2(omega1: float, omega2: float, dim: int = 1) -> float:
    """|<0; omega1 | 0; omega2>|^2 in ``dim`` dimensions: (2 sqrt(w1 w2)/(w1 + w2))^dim."""
    if omega1 <= 0 or omega2 <= 0:
        raise ValueError("frequencies must be positive")
    return (2 * math.sqrt(omega1 * omega2) / (omega1 + omega2)) ** dim


def ho_ground_overlap2_numeric(omega1: float, omega2: float, mass: float = 1.0) -> float:
    """One-dimensional overlap by quadrature of the two Gaussians."""

    def psi(x, w):
        return (mass * w / math.pi) ** 0.25 * np.exp(-mass * w * x * x / 2)

    val, _ = quad(lambda x: psi(x, omega1) * psi(x, omega2), -np.inf, np.inf, epsabs=1e-14, epsrel=1e-13)
    return val**2


def sudden_overlap(kind: str, a: float, b: float, dim: int = 1) -> float:
    """Probability of staying in the ground state after a sudden change.

    ``kind`` is ``"ho_freq_change"`` (a, b = old and new frequency, in ``dim``
    dimensions) or ``"hydrogenic_Z_change"`` (a, b = old and new nuclear charge).
    """
    if kind == "ho_freq_change":
        return ho_ground_overlap2(a, b, dim)
    if kind == "hydrogenic_Z_change":
        return hydrogenic_ground_overlap(a, b) ** 2
    raise ValueError(f"unknown sudden-change kind {kind!r}")


# ---------------------------------------------------------------- WKB


def _turning_point(potential, energy: float, x0: float, direction: int, scale: float) -> float:
    step = scale
    x_in = x0
    for _ in range(200):
        x_out = x0 + direction * step
        if potential(x_out) > energy:
            return brentq(lambda x: potential(x) - energy, min(x_in, x_out), max(x_in, x_out), xtol=1e-14, rtol=1e-15)
        x_in = x_out
        step *= 2
        if step > 1e8:
            break
    raise NonConfiningError(f"no turning point found for E = {energy}")


def wkb_action(potential, energy: float, mass: float = 1.0, x0: float = 0.0, scale: float = 1.0) -> float:
    """Closed-orbit action 2 * integral of sqrt(2 m (E - V)) between turning points."""
    x1 = _turning_point(potential, energy, x0, -1, scale)
    x2 = _turning_point(potential, energy, x0, +1, scale)
    mid, halfw = (x1 + x2) / 2, (x2 - x1) / 2

    # x = mid + halfw sin(u) removes the square-root endpoint singularities
    def integrand(u):
        x = mid + halfw * math.sin(u)
        return math.sqrt(max(0.0, 2 * mass * (energy - potential(x)))) * halfw * math.cos(u)

    val, _ = quad(integrand, -math.pi / 2, math.pi / 2, epsabs=1e-13, epsrel=1e-13, limit=200)
    return 2 * val


def wkb_levels(potential: Callable[[float], float], mass: float = 1.0, count: int = 5, x0: float = 0.0, scale: float = 1.0) -> np.ndarray:
    """Energies solving the quantization condition action = 2 pi (n + 1/2), n = 0..count-1.

    ``x0`` must lie at (or near) the bottom of the well.
    """
    v0 = potential(x0)
    out = []
    lo = v0
    for n in range(count):
        target = 2 * math.pi * (n + 0.5)
        hi = max(lo, v0) + scale
        while wkb_action(potential, hi, mass, x0, scale) < target:
            hi = v0 + 2 * (hi - v0)
            if hi - v0 > 1e12:
                raise NonConfiningError("action does not reach the quantization target")
        e = brentq(lambda en: wkb_action(potential, en, mass, x0, scale) - target, lo, hi, xtol=1e-13, rtol=1e-14)
        out.append(e)
        lo = e
    return np.array(out)


def wkb_linear_abs_levels(count: int, mass: float = 1.0) -> np.ndarray:
    """Closed form for V = |x|: E_n = (3 pi (n + 1/2) / (4 sqrt(2 m)))^(2/3)."""
    n = np.arange(count)
    return (3 * np.pi * (n + 0.5) / (4 * math.sqrt(2 * mass))) ** (2 / 3)


def fd_levels(potential, mass: float = 1.0, count: int = 5, half_width: float = 12.0, n_grid: int = 4000) -> np.ndarray:
    """Lowest eigenvalues of -1/(2m) d^2/dx^2 + V on a uniform grid with hard walls."""
    x = np.linspace(-half_width, half_width, n_grid + 2)[1:-1]
    h = x[1] - x[0]
    diag = 1 / (mass * h * h) + np.vectorize(potential)(x)
    off = np.full(n_grid - 1, -1 / (2 * mass * h * h))
    return eigh_tridiagonal(diag, off, select="i", select_range=(0, count - 1), eigvals_only=True)

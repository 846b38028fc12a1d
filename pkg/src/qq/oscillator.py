"""Harmonic oscillator in a truncated Fock basis: ladder algebra, coherent and squeezed states."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.special import gammaln

from .linalg import dagger, expm

LEAK_WARN = 1e-8


@dataclass(frozen=True)
class FockSpace:
    """Levels ``|0>..|n_max-1>`` of an oscillator with frequency ``omega`` and ``mass``."""

    n_max: int
    omega: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        if self.n_max < 4:
            raise ValueError("n_max must be at least 4")
        if self.omega <= 0 or self.mass <= 0:
            raise ValueError("omega and mass must be positive")

    @property
    def x0(self) -> float:
        return math.sqrt(1 / (self.mass * self.omega))

    @property
    def p0(self) -> float:
        return math.sqrt(self.mass * self.omega)

    @cached_property
    def a(self) -> np.ndarray:
        return np.diag(np.sqrt(np.arange(1, self.n_max)), 1).astype(complex)

    @property
    def adag(self) -> np.ndarray:
        return dagger(self.a)

    @property
    def number(self) -> np.ndarray:
        return np.diag(np.arange(self.n_max)).astype(complex)

    @property
    def x(self) -> np.ndarray:
        return self.x0 * (self.a + self.adag) / math.sqrt(2)

    @property
    def p(self) -> np.ndarray:
        return 1j * self.p0 * (self.adag - self.a) / math.sqrt(2)

    @property
    def hamiltonian(self) -> np.ndarray:
        return self.omega * (self.number + 0.5 * np.eye(self.n_max))

    def vacuum(self) -> np.ndarray:
        v = np.zeros(self.n_max, dtype=complex)
        v[0] = 1
        return v

    def ladder_ops(self):
        """(a, a^dag, n, x, p)."""
        return self.a, self.adag, self.number, self.x, self.p


def ladder_ops(space: FockSpace):
    return space.ladder_ops()


def edge_weight(psi, space: FockSpace, width: int = 4) -> float:
    """Probability in the top ``width`` levels, a proxy for truncation error."""
    psi = np.asarray(psi)
    return float(np.sum(np.abs(psi[space.n_max - width :]) ** 2))


def _warn_leak(psi, space: FockSpace) -> None:
    w = edge_weight(psi, space)
    if w > LEAK_WARN:
        warnings.warn(f"state has weight {w:.2e} near the Fock cutoff n_max={space.n_max}", RuntimeWarning)


@dataclass(frozen=True)
class CoherentState:
    alpha: complex
    amplitudes: np.ndarray

    @property
    def leakage(self) -> float:
        return float(1 - np.sum(np.abs(self.amplitudes) ** 2))


def coherent_amplitudes(alpha: complex, n_max: int) -> np.ndarray:
    n = np.arange(n_max)
    r = abs(alpha)
    if r == 0:
        out = np.zeros(n_max, dtype=complex)
        out[0] = 1
        return out
    log_mag = -r * r / 2 + n * math.log(r) - 0.5 * gammaln(n + 1)
    return np.exp(log_mag) * np.exp(1j * n * np.angle(alpha))


def coherent(space: FockSpace, alpha: complex) -> CoherentState:
    """e^{-|alpha|^2/2} sum alpha^n / sqrt(n!) |n>, truncated to the space."""
    amps = coherent_amplitudes(alpha, space.n_max)
    _warn_leak(amps, space)
    return CoherentState(complex(alpha), amps)


def photon_distribution(alpha: complex, n_max: int) -> np.ndarray:
    return np.abs(coherent_amplitudes(alpha, n_max)) ** 2


def overlap2(alpha: complex, beta: complex) -> float:
    """|<alpha|beta>|^2 = exp(-|alpha - beta|^2)."""
    return math.exp(-abs(alpha - beta) ** 2)


def overlap2_numeric(space: FockSpace, alpha: complex, beta: complex) -> float:
    return float(abs(np.vdot(coherent_amplitudes(alpha, space.n_max), coherent_amplitudes(beta, space.n_max))) ** 2)


def displacement(space: FockSpace, alpha: complex) -> np.ndarray:
    """D(alpha) = exp(alpha a^dag - alpha* a) by Taylor scaling and squaring."""
    return expm(alpha * space.adag - np.conj(alpha) * space.a)


def squeeze(space: FockSpace, r: float) -> np.ndarray:
    """S(r) = exp[(r/2) a^2 - (r/2) (a^dag)^2] for real squeeze parameter r."""
    a2 = space.a @ space.a
    return expm(0.5 * r * a2 - 0.5 * r * dagger(a2))


def squeezed_vacuum(space: FockSpace, r: float) -> np.ndarray:
    psi = squeeze(space, r) @ space.vacuum()
    _warn_leak(psi, space)
    return psi


def expect(psi, op) -> complex:
    psi = np.asarray(psi)
    return complex(np.vdot(psi, op @ psi))


def variance(psi, op) -> float:
    m = expect(psi, op)
    return float((expect(psi, op @ op) - m * m).real)


def quadrature_variances(space: FockSpace, psi) -> tuple[float, float]:
    return variance(psi, space.x), variance(psi, space.p)


def squeezed_variances(space: FockSpace, r: float) -> tuple[float, float]:
    """Closed form (x0^2/2) e^{-2r} and (p0^2/2) e^{2r}."""
    return space.x0**2 / 2 * math.exp(-2 * r), space.p0**2 / 2 * math.exp(2 * r)


def bch_factorized_displacement(space: FockSpace, alpha: complex) -> np.ndarray:
    """e^{-|alpha|^2/2} e^{alpha a^dag} e^{-alpha* a}."""
    return math.exp(-abs(alpha) ** 2 / 2) * expm(alpha * space.adag) @ expm(-np.conj(alpha) * space.a)


def coherent_evolve(space: FockSpace, alpha0: complex, t: float) -> tuple[CoherentState, complex]:
    """Analytic evolution: alpha(t) = alpha0 e^{-i omega t} with global phase e^{-i omega t/2}."""
    alpha_t = alpha0 * np.exp(-1j * space.omega * t)
    return coherent(space, alpha_t), complex(np.exp(-0.5j * space.omega * t))


def evolve_fock(space: FockSpace, psi0, t) -> np.ndarray:
    """Numerical evolution under the (diagonal) oscillator Hamiltonian."""
    phases = np.exp(-1j * np.outer(np.atleast_1d(t), np.diag(space.hamiltonian).real))
    out = phases * np.asarray(psi0)
    return out[0] if np.ndim(t) == 0 else out


def classical_x(space: FockSpace, alpha0: complex, t) -> np.ndarray:
    """x0 sqrt(2) |alpha0| cos(omega t - phi0)."""
    return space.x0 * math.sqrt(2) * abs(alpha0) * np.cos(space.omega * np.asarray(t) - np.angle(alpha0))


def coherent_energy(space: FockSpace, alpha: complex) -> float:
    return space.omega * (abs(alpha) ** 2 + 0.5)

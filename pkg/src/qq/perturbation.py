"""Rayleigh-Schroedinger perturbation theory on dense matrices.

Levels are indexed in ascending order of the unperturbed energies. When H0 is
already diagonal its basis vectors are used as they are, so corrections come
out in the caller's basis without arbitrary eigenvector phases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import constants
from .linalg import SX, SZ, dagger, eigh, kron, require_hermitian
from .oscillator import FockSpace


class DegenerateLevelError(ValueError):
    """Raised when nondegenerate formulas are asked for a degenerate level."""


@dataclass(frozen=True)
class PerturbationProblem:
    """H = H0 + lam * V."""

    h0: np.ndarray
    v: np.ndarray
    lam: float = 1.0

    def __post_init__(self):
        h0 = require_hermitian(self.h0, "H0")
        v = require_hermitian(self.v, "V")
        if h0.shape != v.shape:
            raise ValueError(f"H0 {h0.shape} and V {v.shape} differ in shape")
        object.__setattr__(self, "h0", h0)
        object.__setattr__(self, "v", v)

    @cached_property
    def _unperturbed(self) -> tuple[np.ndarray, np.ndarray]:
        h0 = self.h0
        off = h0 - np.diag(np.diag(h0))
        if np.max(np.abs(off), initial=0.0) == 0.0:
            e = np.diag(h0).real
            order = np.argsort(e, kind="stable")
            return e[order], np.eye(len(e), dtype=complex)[:, order]
        es = eigh(h0)
        return es.eigenvalues, es.eigenvectors

    @property
    def energies(self) -> np.ndarray:
        return self._unperturbed[0]

    @property
    def states(self) -> np.ndarray:
        return self._unperturbed[1]

    @cached_property
    def v_eigenbasis(self) -> np.ndarray:
        u = self.states
        return dagger(u) @ self.v @ u

    def degenerate_partners(self, n: int, tol: float | None = None) -> list[int]:
        tol = constants.DEGENERACY_TOL if tol is None else tol
        e = self.energies
        scale = max(1.0, abs(e[n]))
        return [k for k in range(len(e)) if abs(e[k] - e[n]) <= tol * scale]

    def _require_nondegenerate(self, n: int) -> None:
        if len(self.degenerate_partners(n)) > 1:
            raise DegenerateLevelError(
                f"level {n} is degenerate with {self.degenerate_partners(n)}; use pt_degenerate"
            )

    def exact(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.h0 + self.lam * self.v)


def pt_first(problem: PerturbationProblem, n: int) -> float:
    """lam <n|V|n>."""
    problem._require_nondegenerate(n)
    return float(problem.lam * problem.v_eigenbasis[n, n].real)


def pt_state_first(problem: PerturbationProblem, n: int) -> np.ndarray:
    """lam sum_{m != n} <m|V|n> / (E_n - E_m) |m>, in the original basis."""
    problem._require_nondegenerate(n)
    e = problem.energies
    vmn = problem.v_eigenbasis[:, n]
    coef = np.zeros(len(e), dtype=complex)
    mask = np.arange(len(e)) != n
    coef[mask] = vmn[mask] / (e[n] - e[mask])
    return problem.lam * (problem.states @ coef)


def pt_second(problem: PerturbationProblem, n: int) -> float:
    """lam^2 sum_{m != n} |<m|V|n>|^2 / (E_n - E_m)."""
    problem._require_nondegenerate(n)
    e = problem.energies
    vmn = problem.v_eigenbasis[:, n]
    mask = np.arange(len(e)) != n
    return float(problem.lam**2 * np.sum(np.abs(vmn[mask]) ** 2 / (e[n] - e[mask])))


@dataclass(frozen=True)
class DegenerateResult:
    corrections: np.ndarray
    states: np.ndarray  # columns, in the original basis


def pt_degenerate(problem: PerturbationProblem, indices) -> DegenerateResult:
    """Diagonalize lam * V inside a degenerate block of H0.

    ``indices`` refer to ascending unperturbed levels. Corrections are ascending.
    """
    idx = list(indices)
    e = problem.energies[idx]
    if np.ptp(e) > constants.DEGENERACY_TOL * max(1.0, float(np.max(np.abs(e)))):
        raise ValueError("selected levels are not degenerate")
    w = problem.lam * problem.v_eigenbasis[np.ix_(idx, idx)]
    es = eigh(w)
    return DegenerateResult(es.eigenvalues, problem.states[:, idx] @ es.eigenvectors)


# ---------------------------------------------------------------- model problems


def tilted_spin(gamma: float, bz: float, bx: float) -> PerturbationProblem:
    """H0 = -gamma Bz Sz, V = -gamma Bx Sx with S = sigma/2; basis (up, down)."""
    return PerturbationProblem(-gamma * bz * SZ / 2, -gamma * bx * SX / 2)


def quartic_oscillator(omega: float, lam: float, n_max: int = 80) -> PerturbationProblem:
    """H0 = p^2/2 + omega^2 x^2 / 2 (unit mass) in a Fock basis, V = x^4."""
    space = FockSpace(n_max, omega)
    x = space.x
    return PerturbationProblem(space.hamiltonian, x @ x @ x @ x, lam)


def quartic_closed_form(omega: float, lam: float) -> tuple[float, float]:
    """(E0^(1), E0^(2)) = (3 lam / 4 omega^2, -21 lam^2 / 8 omega^5)."""
    return 3 * lam / (4 * omega**2), -21 * lam**2 / (8 * omega**5)


def stark_n2(field: float) -> PerturbationProblem:
    """Hydrogen n = 2 manifold (2s, 2p0, 2p+1, 2p-1) with V = field * z."""
    from .hydrogen import energy, n2_dipole_matrix

    return PerturbationProblem(energy(2) * np.eye(4), field * n2_dipole_matrix())


def two_spin_zeeman(omega0: float, eps: float) -> PerturbationProblem:
    """H0 = omega0 (S1z + S2z), V = eps (S1z - S2z); basis |uu>, |ud>, |du>, |dd>."""
    sz1 = kron(SZ / 2, np.eye(2))
    sz2 = kron(np.eye(2), SZ / 2)
    return PerturbationProblem(omega0 * (sz1 + sz2), eps * (sz1 - sz2))


def triplet_basis() -> np.ndarray:
    """Columns |1,1>, |1,0>, |1,-1> in the uncoupled two-spin basis."""
    r = 1 / math.sqrt(2)
    return np.array([[1, 0, 0], [0, r, 0], [0, r, 0], [0, 0, 1]], dtype=complex)


def project_block(v: np.ndarray, basis: np.ndarray) -> np.ndarray:
    return dagger(basis) @ v @ basis


def quadratic_stark(field: float, n_max: int = 12) -> float:
    """Second-order ground-state shift of hydrogen in a field, truncated to bound p states."""
    from .hydrogen import dipole_z, energy

    shift = 0.0
    for n in range(2, n_max + 1):
        d = dipole_z(1, 0, 0, n, 1, 0)
        shift += field**2 * d**2 / (energy(1) - energy(n))
    return shift

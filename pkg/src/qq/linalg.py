"""Dense complex linear algebra used by every other module.

Matrices are plain ``numpy`` arrays of dtype complex128. Hermitian and unitary
"tags" are checked on demand rather than carried around as wrapper types.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import constants

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SX, SY, SZ)


class NotHermitianError(ValueError):
    pass


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(m)).T


def hermiticity_error(m: np.ndarray) -> float:
    m = as_matrix(m)
    return float(np.max(np.abs(m - dagger(m)))) if m.size else 0.0


def is_hermitian(m, tol: float | None = None) -> bool:
    tol = constants.HERM_TOL if tol is None else tol
    m = as_matrix(m)
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    return hermiticity_error(m) <= tol * scale


def is_unitary(m, tol: float | None = None) -> bool:
    tol = constants.UNITARY_TOL if tol is None else tol
    m = as_matrix(m)
    return float(np.max(np.abs(dagger(m) @ m - np.eye(m.shape[0])))) <= tol


def require_hermitian(m, name: str = "matrix") -> np.ndarray:
    m = as_matrix(m)
    if not is_hermitian(m):
        raise NotHermitianError(
            f"{name} is not Hermitian (max |M - M^dag| = {hermiticity_error(m):.3e})"
        )
    return m


@dataclass(frozen=True)
class EigenSystem:
    """Ascending real eigenvalues and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ dagger(v)

    def function(self, f) -> np.ndarray:
        """Apply a scalar function spectrally: V f(Lambda) V^dag."""
        v = self.eigenvectors
        return (v * f(self.eigenvalues)) @ dagger(v)


def eigh(m) -> EigenSystem:
    """Hermitian eigendecomposition with ascending eigenvalues.

    Raises
    ------
    NotHermitianError
        If ``m`` deviates from its adjoint by more than ``HERM_TOL`` (relative).
    """
    m = require_hermitian(m)
    # symmetrize so LAPACK sees an exactly Hermitian input
    w, v = np.linalg.eigh(0.5 * (m + dagger(m)))
    return EigenSystem(w, v)


def expm_i(h, t: float = 1.0) -> np.ndarray:
    """Return exp(-i H t) for Hermitian H via its eigendecomposition."""
    es = eigh(h)
    return es.function(lambda lam: np.exp(-1j * lam * t))


def expm(a, tol: float = 1e-16, max_terms: int = 60) -> np.ndarray:
    """Matrix exponential of a general square matrix.

    Scaling and squaring around a Taylor series; the series is summed until a
    term drops below ``tol`` relative to the partial sum.
    """
    a = as_matrix(a)
    n = a.shape[0]
    norm = np.linalg.norm(a, 1)
    s = max(0, int(np.ceil(np.log2(norm))) + 1) if norm > 0.5 else 0
    b = a / (2**s)
    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, max_terms + 1):
        term = term @ b / k
        result = result + term
        if np.max(np.abs(term)) <= tol * max(1.0, np.max(np.abs(result))):
            break
    else:
        raise RuntimeError("Taylor series for expm did not converge")
    for _ in range(s):
        result = result @ result
    return result


def kron(*ops) -> np.ndarray:
    """Kronecker product of any number of matrices (or vectors), left to right."""
    if not ops:
        raise ValueError("kron needs at least one operand")
    return reduce(np.kron, [np.asarray(o, dtype=complex) for o in ops])


def commutator(a, b) -> np.ndarray:
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    return a @ b + b @ a


def opnorm(m) -> float:
    """Spectral norm."""
    m = np.asarray(m)
    return float(np.linalg.norm(m, 2)) if m.size else 0.0


def embed(op: np.ndarray, site: int, n_sites: int, dim: int = 2) -> np.ndarray:
    """Place a single-site operator at ``site`` (0-based) of an ``n_sites`` chain."""
    if not 0 <= site < n_sites:
        raise IndexError(f"site {site} out of range for {n_sites} sites")
    eye = np.eye(dim, dtype=complex)
    return kron(*[op if k == site else eye for k in range(n_sites)])


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (a + dagger(a))


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ dagger(g)
    return rho / np.trace(rho).real

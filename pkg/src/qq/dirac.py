"""Lattice Dirac fermions in 1+1D and gamma-matrix algebra in 1+1 and 3+1D.

Units hbar = c = a = 1; metric signature (+, -, ...).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .linalg import I2, SX, SY, SZ, anticommutator, commutator, expm_i

_Z2 = np.zeros((2, 2), dtype=complex)


@dataclass(frozen=True)
class DiracChain:
    """(H psi)_n = (1/2i) sigma_x (psi_{n+1} - psi_{n-1}) + m_n sigma_z psi_n.

    ``mass`` may be a scalar or one value per site. Components are ordered
    site-major: index 2 n + s with s = 0 (upper) or 1 (lower).
    """

    n_sites: int
    mass: float | np.ndarray = 0.0
    boundary: str = "periodic"

    def __post_init__(self):
        if self.n_sites < 2:
            raise ValueError("need at least two sites")
        if self.boundary not in ("open", "periodic"):
            raise ValueError(f"unknown boundary {self.boundary!r}")

    @cached_property
    def hamiltonian(self) -> np.ndarray:
        n = self.n_sites
        m = np.broadcast_to(np.asarray(self.mass, dtype=float), (n,))
        h = np.zeros((2 * n, 2 * n), dtype=complex)
        hop = SX / 2j
        for j in range(n):
            h[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = m[j] * SZ
            nxt = j + 1
            if nxt == n:
                if self.boundary == "open":
                    continue
                nxt = 0
            h[2 * j : 2 * j + 2, 2 * nxt : 2 * nxt + 2] += hop
            h[2 * nxt : 2 * nxt + 2, 2 * j : 2 * j + 2] -= hop
        return h

    @property
    def momenta(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n_sites) / self.n_sites


def bloch_hamiltonian(k: float, m: float) -> np.ndarray:
    """H(k) = sin(k) sigma_x + m sigma_z."""
    return math.sin(k) * SX + m * SZ


def dispersion(k, m: float) -> np.ndarray:
    """Positive branch sqrt(sin^2 k + m^2); the spectrum is +-this."""
    return np.sqrt(np.sin(k) ** 2 + m**2)


def dirac_spectrum(chain: DiracChain) -> np.ndarray:
    return np.linalg.eigvalsh(chain.hamiltonian)


def closed_form_spectrum(n_sites: int, m: float) -> np.ndarray:
    e = dispersion(2 * np.pi * np.arange(n_sites) / n_sites, m)
    return np.sort(np.concatenate([-e, e]))


def eigenspinor(k: float, m: float, band: int = +1) -> tuple[float, np.ndarray]:
    """(E, u) with u_+ = (E + m, sin k)/sqrt(2E(E + m)) and u_- orthogonal to it."""
    e = float(dispersion(k, m))
    if e == 0:
        raise ValueError("spinor undefined at E = 0")
    s = math.sin(k)
    norm = math.sqrt(2 * e * (e + m)) if e + m > 0 else None
    if norm is None:
        # m = -E: the upper formula degenerates; fall back to the lower-band form
        raise ValueError("formula singular for m = -E")
    if band == +1:
        return e, np.array([e + m, s], dtype=complex) / norm
    if band == -1:
        return -e, np.array([-s, e + m], dtype=complex) / norm
    raise ValueError("band must be +1 or -1")


def eigenspinor_residual(k: float, m: float, band: int = +1) -> float:
    e, u = eigenspinor(k, m, band)
    return float(np.linalg.norm(bloch_hamiltonian(k, m) @ u - e * u))


def chiral_check(m: float, ks=None) -> float:
    """max over k of ||{H(k), sigma_z} - 2 m I||."""
    ks = np.linspace(-np.pi, np.pi, 65) if ks is None else ks
    return max(float(np.max(np.abs(anticommutator(bloch_hamiltonian(k, m), SZ) - 2 * m * I2))) for k in ks)


def pairing_error(energies, tol: float = 1e-10) -> float:
    """Distance between a spectrum and its negative (as multisets)."""
    e = np.sort(np.asarray(energies))
    return float(np.max(np.abs(e + e[::-1])))


@dataclass(frozen=True)
class ZeroModes:
    energies: np.ndarray
    edge_weight: np.ndarray  # fraction of each mode's weight within ``edge`` sites of an end


def zero_modes(chain: DiracChain, tol: float = 1e-8, edge: int = 2) -> ZeroModes:
    w, v = np.linalg.eigh(chain.hamiltonian)
    sel = np.abs(w) < tol
    weights = []
    for col in v[:, sel].T:
        site_w = np.abs(col.reshape(-1, 2)) ** 2
        site_w = site_w.sum(axis=1)
        weights.append(site_w[:edge].sum() + site_w[-edge:].sum())
    return ZeroModes(w[sel], np.array(weights))


# ---------------------------------------------------------------- gamma matrices


@dataclass(frozen=True)
class GammaSet:
    dim: str
    gammas: tuple[np.ndarray, ...]

    @property
    def metric(self) -> np.ndarray:
        return np.diag([1.0] + [-1.0] * (len(self.gammas) - 1))


def gamma_set(dim: str = "3+1") -> GammaSet:
    if dim == "1+1":
        return GammaSet(dim, (SZ.copy(), 1j * SY))
    if dim == "3+1":
        g0 = np.block([[I2, _Z2], [_Z2, -I2]])
        gs = tuple(np.block([[_Z2, s], [-s, _Z2]]) for s in (SX, SY, SZ))
        return GammaSet(dim, (g0,) + gs)
    raise ValueError(f"dimension must be '1+1' or '3+1', not {dim!r}")


def clifford_verify(gset: GammaSet) -> float:
    """max |{g^mu, g^nu} - 2 g^{mu nu} I|."""
    g = gset.gammas
    eye = np.eye(g[0].shape[0])
    eta = gset.metric
    return max(
        float(np.max(np.abs(anticommutator(g[a], g[b]) - 2 * eta[a, b] * eye)))
        for a in range(len(g))
        for b in range(len(g))
    )


def gamma5() -> np.ndarray:
    g = gamma_set("3+1").gammas
    return 1j * g[0] @ g[1] @ g[2] @ g[3]


def alphas() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(alpha_x, alpha_y, alpha_z, beta) with alpha_i = gamma^0 gamma^i, beta = gamma^0."""
    g = gamma_set("3+1").gammas
    return g[0] @ g[1], g[0] @ g[2], g[0] @ g[3], g[0]


def sigma_z4() -> np.ndarray:
    return np.block([[SZ, _Z2], [_Z2, SZ]])


def dirac_hamiltonian(p, m: float) -> np.ndarray:
    ax, ay, az, beta = alphas()
    return p[0] * ax + p[1] * ay + p[2] * az + m * beta


# ---------------------------------------------------------------- plane waves


def boosted_spinor(p: float, m: float) -> np.ndarray:
    """Spin-up positive-energy spinor for momentum p along z: sqrt(E+m)(1, 0, p/(E+m), 0)."""
    e = math.sqrt(p * p + m * m)
    return math.sqrt(e + m) * np.array([1, 0, p / (e + m), 0], dtype=complex)


def dirac_residual(u, p: float, m: float) -> float:
    """||(gamma^mu p_mu - m) u|| with p^mu = (E, 0, 0, p)."""
    e = math.sqrt(p * p + m * m)
    g = gamma_set("3+1").gammas
    op = e * g[0] - p * g[3] - m * np.eye(4)
    return float(np.linalg.norm(op @ np.asarray(u)))


def spinor_rotation(angle: float) -> np.ndarray:
    """exp(-i angle Sigma_z / 2)."""
    return expm_i(sigma_z4() / 2, angle)


@dataclass(frozen=True)
class SpinConservation:
    alpha_x_commutator: float  # ||[alpha_x, Sigma_z] + 2i alpha_y||
    alpha_y_commutator: float  # ||[alpha_y, Sigma_z] - 2i alpha_x||
    h_sz: float  # ||[H, S_z] + i(alpha_y p_x - alpha_x p_y)||
    total: float  # ||[H, S_z] + [H, L_z]||


def spin_conservation_check(px: float, py: float, m: float = 1.0) -> SpinConservation:
    """Matrix identities behind conservation of J_z = L_z + S_z.

    [H, L_z] follows from [p_x, L_z] = -i p_y and [p_y, L_z] = i p_x.
    """
    ax, ay, _, _ = alphas()
    sz = sigma_z4()
    h = dirac_hamiltonian((px, py, 0.0), m)
    h_sz = commutator(h, sz / 2)
    h_lz = ax * (-1j * py) + ay * (1j * px)
    nrm = lambda a: float(np.max(np.abs(a)))  # noqa: E731
    return SpinConservation(
        nrm(commutator(ax, sz) + 2j * ay),
        nrm(commutator(ay, sz) - 2j * ax),
        nrm(h_sz + 1j * (ay * px - ax * py)),
        nrm(h_sz + h_lz),
    )

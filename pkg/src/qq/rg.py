"""Renormalization-group toy computations.

1D Ising decimation with partition-function checks, Kramers-Wannier duality,
scaling relations, the transverse-field Ising gap, the imaginary-time map of
a single qubit onto a classical chain, and one-loop Wilson-Fisher flows.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq
from scipy.sparse import csr_matrix, identity, kron as skron
from scipy.sparse.linalg import eigsh

from .linalg import SX, SZ

EXHAUSTIVE_MAX = 24


# ---------------------------------------------------------------- 1D Ising decimation


def decimate(K: float) -> float:
    """K' = (1/2) ln cosh(2K)."""
    if K < 0:
        raise ValueError("K must be >= 0")
    # log(cosh x) = x + log1p(exp(-2x)) - log 2 avoids overflow at large K
    x = 2 * K
    return 0.5 * (x + math.log1p(math.exp(-2 * x)) - math.log(2))


def decimation_prefactor(K: float) -> float:
    """A = 2 sqrt(cosh 2K), the spin-independent factor per decimated spin."""
    return 2 * math.sqrt(math.cosh(2 * K))


@dataclass(frozen=True)
class FlowTrajectory:
    steps: np.ndarray
    values: np.ndarray


def decimation_flow(K0: float, steps: int) -> FlowTrajectory:
    ks = [float(K0)]
    for _ in range(steps):
        ks.append(decimate(ks[-1]))
    return FlowTrajectory(np.arange(steps + 1), np.array(ks))


def _bond_pairs(n_sites: int, boundary: str) -> list[tuple[int, int]]:
    pairs = [(i, i + 1) for i in range(n_sites - 1)]
    if boundary == "periodic":
        pairs.append((n_sites - 1, 0))
    elif boundary != "open":
        raise ValueError(f"unknown boundary {boundary!r}")
    return pairs


def ising1d_partition(n_sites: int, K: float, boundary: str = "open", method: str = "auto") -> float:
    """Z = sum over spins of exp(K sum_<ij> s_i s_j) for a chain of ``n_sites`` spins.

    ``method`` is ``"exhaustive"`` (n_sites <= 24), ``"transfer"`` or ``"auto"``.
    """
    if n_sites < 1:
        raise ValueError("need at least one spin")
    if method == "auto":
        method = "exhaustive" if n_sites <= 12 else "transfer"
    if method == "exhaustive":
        if n_sites > EXHAUSTIVE_MAX:
            raise ValueError(f"exhaustive sum limited to {EXHAUSTIVE_MAX} spins")
        pairs = _bond_pairs(n_sites, boundary) if n_sites > 1 else []
        spins = 1 - 2 * ((np.arange(2**n_sites)[:, None] >> np.arange(n_sites)) & 1)
        energy = np.zeros(2**n_sites)
        for i, j in pairs:
            energy += spins[:, i] * spins[:, j]
        return float(np.exp(K * energy).sum())
    if method == "transfer":
        t = np.array([[math.exp(K), math.exp(-K)], [math.exp(-K), math.exp(K)]])
        if boundary == "periodic":
            return float(np.trace(np.linalg.matrix_power(t, n_sites)))
        if boundary == "open":
            one = np.ones(2)
            return float(one @ np.linalg.matrix_power(t, n_sites - 1) @ one)
        raise ValueError(f"unknown boundary {boundary!r}")
    raise ValueError(f"unknown method {method!r}")


def periodic_partition_closed_form(n_sites: int, K: float) -> float:
    """lambda_+^N + lambda_-^N with lambda_pm = e^K pm e^-K."""
    return (2 * math.cosh(K)) ** n_sites + (2 * math.sinh(K)) ** n_sites


def decimation_consistency(n_bonds: int, K: float, boundary: str = "open") -> float:
    """Relative error of Z(K) = A^{N/2} Z'(K') for a chain with ``n_bonds`` = N bonds.

    Open chains have N + 1 spins and periodic rings N spins. Summing out every
    other spin leaves N/2 bonds with coupling K'.
    """
    if n_bonds < 2 or n_bonds % 2:
        raise ValueError("decimation needs an even number of bonds >= 2")
    extra = 1 if boundary == "open" else 0
    z = ising1d_partition(n_bonds + extra, K, boundary, method="transfer")
    z_coarse = ising1d_partition(n_bonds // 2 + extra, decimate(K), boundary, method="transfer")
    rhs = decimation_prefactor(K) ** (n_bonds // 2) * z_coarse
    return abs(z - rhs) / abs(z)


# ---------------------------------------------------------------- Kramers-Wannier


def dual_coupling(K: float) -> float:
    """K* with tanh K* = exp(-2K)."""
    if K <= 0:
        raise ValueError("duality map defined for K > 0")
    return math.atanh(math.exp(-2 * K))


def kramers_wannier_tc() -> tuple[float, float]:
    """Self-dual point from tanh K = exp(-2K); returns (K_c, k_B T_c / J)."""
    kc = brentq(lambda k: math.tanh(k) - math.exp(-2 * k), 0.1, 2.0, xtol=1e-15, rtol=1e-15)
    return kc, 1 / kc


# ---------------------------------------------------------------- scaling relations


@dataclass(frozen=True)
class ScalingExponents:
    d: Fraction
    y_t: Fraction
    y_h: Fraction

    def __post_init__(self):
        for name in ("d", "y_t", "y_h"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.y_t <= 0 or self.y_h <= 0:
            raise ValueError("y_t and y_h must be positive (relevant)")

    @property
    def nu(self) -> Fraction:
        return 1 / self.y_t

    @property
    def beta(self) -> Fraction:
        return (self.d - self.y_h) / self.y_t

    @property
    def gamma(self) -> Fraction:
        return self.nu * (2 * self.y_h - self.d)

    @property
    def delta(self) -> Fraction:
        return self.y_h / (self.d - self.y_h)

    @property
    def alpha(self) -> Fraction:
        return 2 - self.d * self.nu

    def as_dict(self) -> dict[str, Fraction]:
        return {k: getattr(self, k) for k in ("nu", "beta", "gamma", "delta", "alpha")}


def scaling_exponents(d, y_t, y_h) -> ScalingExponents:
    return ScalingExponents(Fraction(d), Fraction(y_t), Fraction(y_h))


# ---------------------------------------------------------------- transverse-field Ising


def tfim_gap(J: float, h: float) -> float:
    """Thermodynamic-limit gap 2|J - h|."""
    return 2 * abs(J - h)


def tfim_hamiltonian(n_sites: int, J: float, h: float, boundary: str = "periodic") -> csr_matrix:
    """H = -J sum sz_i sz_{i+1} - h sum sx_i (sparse, qubit 1 leftmost)."""
    sz, sx = csr_matrix(SZ.real), csr_matrix(SX.real)

    def site(op, i):
        return skron(skron(identity(2**i), op), identity(2 ** (n_sites - i - 1)), format="csr")

    dim = 2**n_sites
    h_mat = csr_matrix((dim, dim))
    for i, j in _bond_pairs(n_sites, boundary):
        h_mat = h_mat - J * (site(sz, i) @ site(sz, j))
    for i in range(n_sites):
        h_mat = h_mat - h * site(sx, i)
    return h_mat.tocsr()


def tfim_numeric_gap(n_sites: int, J: float, h: float, boundary: str = "open") -> float:
    """Gap above the ground manifold by exact diagonalization.

    For |h| < |J| a finite chain has two lowest levels (one per parity sector)
    split by an amount exponentially small in N; they form the ground
    manifold and the gap is measured to the third level. Otherwise the gap
    is E_1 - E_0. On a ring the lowest excitation in the ordered phase is a
    pair of domain walls, so the open chain is the default.
    """
    if n_sites < 2 or n_sites > 14:
        raise ValueError("numeric gap supports 2 <= n_sites <= 14")
    ham = tfim_hamiltonian(n_sites, J, h, boundary)
    if n_sites <= 10:
        w = np.linalg.eigvalsh(ham.toarray())
    else:
        w = np.sort(eigsh(ham, k=4, which="SA", return_eigenvectors=False))
    manifold = 2 if abs(h) < abs(J) else 1
    return float(w[manifold] - w[0])


# ---------------------------------------------------------------- single qubit in imaginary time


@dataclass(frozen=True)
class ImaginaryTimeResult:
    z_chain: float
    z_exact: float
    rel_error: float
    K: float
    A: float


def qubit_imaginary_time(beta: float, h: float, n_slices: int, slicing: str = "linear") -> ImaginaryTimeResult:
    """Partition function of H = -h sigma_x as a periodic classical Ising chain.

    Each slice contributes <s|M|s'> = A exp(K s s'). With ``slicing="exact"``,
    M = exp(dtau h sigma_x), giving exp(2K) = coth(dtau h) and no
    discretization error. With ``"linear"``, M = 1 + dtau h sigma_x, giving
    exp(2K) = 1/(dtau h) and an error vanishing as 1/N.
    """
    if n_slices < 1:
        raise ValueError("n_slices must be >= 1")
    z_exact = 2 * math.cosh(beta * h)
    dtau = beta / n_slices
    x = abs(dtau * h)  # Z is even in h
    if slicing == "exact":
        diag, off = math.cosh(x), math.sinh(x)
    elif slicing == "linear":
        diag, off = 1.0, x
    else:
        raise ValueError(f"unknown slicing {slicing!r}")
    if off == 0:
        K, A = math.inf, diag
        z_chain = 2 * diag**n_slices
    else:
        K = 0.5 * math.log(diag / off)
        A = math.sqrt(diag * off)
        t = A * np.array([[math.exp(K), math.exp(-K)], [math.exp(-K), math.exp(K)]])
        z_chain = float(np.trace(np.linalg.matrix_power(t, n_slices)))
    return ImaginaryTimeResult(z_chain, z_exact, abs(z_chain - z_exact) / z_exact, K, A)


def qubit_trace_check(beta: float, h: float) -> float:
    """N = 1 identity in the sigma_z basis: sum_s <s|exp(beta h sigma_x)|s> = 2 cosh(beta h)."""
    m = np.array([[math.cosh(beta * h), math.sinh(beta * h)], [math.sinh(beta * h), math.cosh(beta * h)]])
    return float(m[0, 0] + m[1, 1])


# ---------------------------------------------------------------- Wilson-Fisher


def beta_function(g: float, eps: float, n_components: int = 1) -> float:
    """dg/dl = eps g - (N + 8)/3 g^2."""
    return eps * g - (n_components + 8) / 3 * g * g


def wf_fixed_point(eps: float, n_components: int = 1) -> float:
    return 3 * eps / (n_components + 8)


def _rk4(f, g0: float, dl: float, n: int) -> np.ndarray:
    out = np.empty(n + 1)
    out[0] = g = g0
    for i in range(n):
        k1 = f(g)
        k2 = f(g + dl / 2 * k1)
        k3 = f(g + dl / 2 * k2)
        k4 = f(g + dl * k3)
        g = g + dl / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out[i + 1] = g
    return out


@dataclass(frozen=True)
class WFFlow:
    ell: np.ndarray
    g: np.ndarray
    richardson_error: float  # max |g(dl) - g(dl/2)| on the shared grid


def wf_flow(g0: float, eps: float, ell_max: float, n_components: int = 1, dl: float = 1e-3) -> WFFlow:
    """Integrate the one-loop flow by classical RK4 with a half-step Richardson check."""
    if g0 < 0:
        raise ValueError("g0 must be >= 0")
    n = int(round(ell_max / dl))
    f = lambda g: beta_function(g, eps, n_components)  # noqa: E731
    coarse = _rk4(f, g0, dl, n)
    fine = _rk4(f, g0, dl / 2, 2 * n)[::2]
    return WFFlow(np.arange(n + 1) * dl, coarse, float(np.max(np.abs(coarse - fine))))


@dataclass(frozen=True)
class WFExponents:
    g_star: float
    nu: float
    y_t: float
    y_g: float
    residual: float


def wf_exponents(eps: float, n_components: int = 1) -> WFExponents:
    """Fixed point and one-loop exponents; nu = 1/2 + (N+2) eps / (4 (N+8))."""
    g = wf_fixed_point(eps, n_components)
    nu = 0.5 + (n_components + 2) * eps / (4 * (n_components + 8))
    # slope of beta at g*: eps - 2 (N+8)/3 g* = -eps
    y_g = eps - 2 * (n_components + 8) / 3 * g
    return WFExponents(g, nu, 1 / nu, y_g, abs(beta_function(g, eps, n_components)))


def enumerate_small_chain(n_sites: int, K: float, boundary: str = "open") -> float:
    """Plain-Python enumeration used as an oracle for tiny chains."""
    pairs = _bond_pairs(n_sites, boundary) if n_sites > 1 else []
    total = 0.0
    for s in itertools.product((1, -1), repeat=n_sites):
        total += math.exp(K * sum(s[i] * s[j] for i, j in pairs))
    return total

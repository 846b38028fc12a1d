"""Time evolution, Trotter splitting, conservation laws, Rabi flopping and Berry phases."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .linalg import SX, SY, SZ, commutator, dagger, eigh, expm_i, opnorm, require_hermitian
from .qubit import rotation_matrix


def propagator(h, t: float) -> np.ndarray:
    """U(t) = exp(-i H t)."""
    return expm_i(h, t)


def evolve(h, psi0, t) -> np.ndarray:
    """State at time ``t``; for an array of times returns one row per time."""
    psi0 = np.asarray(psi0, dtype=complex)
    es = eigh(h)
    c = dagger(es.eigenvectors) @ psi0
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    out = (np.exp(-1j * np.outer(ts, es.eigenvalues)) * c) @ es.eigenvectors.T
    return out[0] if np.ndim(t) == 0 else out


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    observables: Mapping[str, np.ndarray]
    states: np.ndarray | None = None

    def __post_init__(self):
        if np.any(np.diff(self.times) < 0):
            raise ValueError("trajectory times must be nondecreasing")


def trajectory(h, psi0, times, observables: Mapping[str, np.ndarray], keep_states: bool = False) -> Trajectory:
    times = np.asarray(times, dtype=float)
    states = evolve(h, psi0, times)
    obs = {}
    for name, op in observables.items():
        op = require_hermitian(op, name)
        obs[name] = np.einsum("ti,ij,tj->t", states.conj(), op, states).real
    return Trajectory(times, obs, states if keep_states else None)


def larmor(omega: float, times) -> Trajectory:
    """H = omega sigma_z / 2 starting from |+x>."""
    psi0 = np.array([1, 1], dtype=complex) / math.sqrt(2)
    return trajectory(omega * SZ / 2, psi0, times, {"sx": SX, "sy": SY, "sz": SZ})


# ---------------------------------------------------------------- Trotter


def trotter_step(terms: Sequence[np.ndarray], dt: float) -> np.ndarray:
    u = np.eye(np.asarray(terms[0]).shape[0], dtype=complex)
    for h in terms:
        u = expm_i(h, dt) @ u
    return u


def trotter_evolve(terms: Sequence[np.ndarray], psi0, t: float, n_steps: int) -> tuple[np.ndarray, float]:
    """First-order product formula; returns the state and its distance to exact evolution."""
    if not terms:
        raise ValueError("need at least one Hamiltonian term")
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    psi0 = np.asarray(psi0, dtype=complex)
    step = trotter_step(terms, t / n_steps)
    psi = psi0
    for _ in range(n_steps):
        psi = step @ psi
    exact = evolve(sum(terms), psi0, t)
    return psi, float(np.linalg.norm(psi - exact))


def trotter_error_ratios(terms, psi0, t: float, steps: Sequence[int]) -> np.ndarray:
    """error(2n)/error(n) for each n in ``steps``."""
    return np.array(
        [trotter_evolve(terms, psi0, t, 2 * n)[1] / trotter_evolve(terms, psi0, t, n)[1] for n in steps]
    )


# ---------------------------------------------------------------- time-ordered evolution


def time_ordered_evolve(
    h_of_t: Callable[[float], np.ndarray],
    psi0,
    t: float,
    n_steps: int = 1000,
    tol: float | None = None,
    max_doublings: int = 8,
) -> np.ndarray:
    """Piecewise-constant midpoint product of exp(-i H(t_k) dt).

    With ``tol`` set, the step count is doubled until two successive results
    agree to ``tol``.
    """
    psi0 = np.asarray(psi0, dtype=complex)

    def run(n):
        dt = t / n
        psi = psi0
        for k in range(n):
            psi = expm_i(h_of_t((k + 0.5) * dt), dt) @ psi
        return psi

    psi = run(n_steps)
    if tol is None:
        return psi
    for _ in range(max_doublings):
        n_steps *= 2
        finer = run(n_steps)
        if np.linalg.norm(finer - psi) <= tol:
            return finer
        psi = finer
    raise RuntimeError("time-ordered evolution did not converge")


# ---------------------------------------------------------------- conservation


@dataclass(frozen=True)
class Conservation:
    conserved: bool
    commutator_norm: float


def conserved(h, a, tol: float = 1e-12) -> Conservation:
    h = require_hermitian(h, "Hamiltonian")
    a = require_hermitian(a, "observable")
    c = opnorm(commutator(h, a))
    return Conservation(c <= tol * max(1.0, opnorm(h) * opnorm(a)), c)


# ---------------------------------------------------------------- Rabi


def rabi_hamiltonian(omega_rabi: float, detuning: float) -> np.ndarray:
    """Rotating-frame Hamiltonian (detuning/2) sigma_z + (Omega/2) sigma_x."""
    return 0.5 * detuning * SZ + 0.5 * omega_rabi * SX


def rabi_excited_prob(omega_rabi: float, detuning, t) -> np.ndarray | float:
    """(Omega/Omega_eff)^2 sin^2(Omega_eff t / 2), starting from |+z>."""
    om_eff = np.hypot(omega_rabi, detuning)
    if np.all(om_eff == 0):
        return np.zeros_like(np.asarray(t, dtype=float)) + 0.0
    amp = np.divide(omega_rabi**2, om_eff**2, out=np.zeros_like(np.asarray(om_eff, dtype=float)), where=om_eff > 0)
    return amp * np.sin(om_eff * np.asarray(t) / 2) ** 2


def rabi_perturbative_prob(omega_rabi: float, detuning: float, t) -> np.ndarray:
    """First-order result Omega^2/detuning^2 sin^2(detuning t / 2), for |Omega| << |detuning|."""
    return (omega_rabi / detuning) ** 2 * np.sin(detuning * np.asarray(t) / 2) ** 2


def rabi_evolve_prob(omega_rabi: float, detuning: float, times) -> np.ndarray:
    """|<-z|psi(t)>|^2 from exact evolution under the rotating-frame Hamiltonian."""
    psi = evolve(rabi_hamiltonian(omega_rabi, detuning), np.array([1, 0], dtype=complex), np.atleast_1d(times))
    return np.abs(psi[:, 1]) ** 2


# ---------------------------------------------------------------- Berry phase


@dataclass(frozen=True)
class ParameterPath:
    """Closed polyline of unit vectors on the sphere (first point equals last)."""

    points: np.ndarray
    max_step: float = field(default=0.5)

    def __post_init__(self):
        p = np.asarray(self.points, dtype=float)
        if p.ndim != 2 or p.shape[1] != 3 or len(p) < 3:
            raise ValueError("path needs at least three 3-vectors")
        if np.max(np.abs(np.linalg.norm(p, axis=1) - 1)) > 1e-9:
            raise ValueError("path points must be unit vectors")
        if np.linalg.norm(p[0] - p[-1]) > 1e-9:
            raise ValueError("path must be closed")
        steps = np.arccos(np.clip(np.sum(p[1:] * p[:-1], axis=1), -1, 1))
        if np.max(steps) > self.max_step:
            raise ValueError(f"angular step {np.max(steps):.3g} exceeds max_step")
        object.__setattr__(self, "points", p)

    def reversed(self) -> "ParameterPath":
        return ParameterPath(self.points[::-1].copy(), self.max_step)

    def __len__(self):
        return len(self.points)


def latitude_loop(alpha: float, n_points: int = 10_000) -> ParameterPath:
    """Circle at polar angle ``alpha`` traversed once counterclockwise about +z."""
    phi = np.linspace(0, 2 * np.pi, n_points)
    pts = np.stack([np.sin(alpha) * np.cos(phi), np.sin(alpha) * np.sin(phi), np.full_like(phi, np.cos(alpha))], 1)
    pts[-1] = pts[0]
    return ParameterPath(pts)


def great_circle_path(vertices, n_points: int = 10_000) -> ParameterPath:
    """Closed geodesic polygon through ``vertices`` with about ``n_points`` samples."""
    v = [np.asarray(x, dtype=float) / np.linalg.norm(x) for x in vertices]
    v.append(v[0])
    per_edge = max(2, n_points // (len(v) - 1))
    pts = []
    for a, b in zip(v[:-1], v[1:]):
        ang = math.acos(float(np.clip(a @ b, -1, 1)))
        if ang < 1e-15:
            continue
        s = np.linspace(0, 1, per_edge, endpoint=False)[:, None]
        pts.append((np.sin((1 - s) * ang) * a + np.sin(s * ang) * b) / math.sin(ang))
    pts.append(v[0][None, :])
    return ParameterPath(np.concatenate(pts))


def cube_triangle(n_points: int = 10_000) -> ParameterPath:
    """+z -> +x -> +y -> +z along great circles."""
    return great_circle_path([(0, 0, 1), (1, 0, 0), (0, 1, 0)], n_points)


def aligned_state(n, band: str = "ground") -> np.ndarray:
    """Eigenvector of n.sigma with eigenvalue +1 (``ground``) or -1 (``excited``).

    ``ground`` is the lower level of H = -n.sigma/2, i.e. the spin along n.
    """
    x, y, z = n
    theta = math.acos(max(-1.0, min(1.0, z)))
    phi = math.atan2(y, x)
    if band == "ground":
        return np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])
    if band == "excited":
        return np.array([-np.exp(-1j * phi) * math.sin(theta / 2), math.cos(theta / 2)])
    raise ValueError(f"band must be 'ground' or 'excited', not {band!r}")


def pancharatnam_phase(states: Sequence[np.ndarray]) -> float:
    """-arg prod_k <s_k|s_{k+1}> over a closed list of states (last links to first)."""
    prod = 1.0 + 0j
    n = len(states)
    for k in range(n):
        ov = np.vdot(states[k], states[(k + 1) % n])
        if abs(ov) < 1e-12:
            raise ValueError("orthogonal neighbouring states; refine the path")
        prod *= ov / abs(ov)
    return float(-np.angle(prod))


def berry_phase(path: ParameterPath, band: str = "ground") -> float:
    """Discrete geometric phase in (-pi, pi] for the spin-1/2 state tied to the path.

    The ground band converges to -Omega/2 for a loop enclosing solid angle
    Omega counterclockwise (seen from outside the sphere).
    """
    pts = path.points[:-1]
    states = [aligned_state(n, band) for n in pts]
    return pancharatnam_phase(states)


def solid_angle(path: ParameterPath) -> float:
    """Signed solid angle from a sum of triangles fanned from the first vertex."""
    p = path.points
    a = p[0]
    total = 0.0
    for b, c in zip(p[1:-1], p[2:]):
        num = a @ np.cross(b, c)
        den = 1 + a @ b + b @ c + c @ a
        total += 2 * math.atan2(num, den)
    return total


def wrap_phase(phi: float) -> float:
    """Map to (-pi, pi]."""
    w = math.remainder(phi, 2 * math.pi)
    return math.pi if w == -math.pi else w


def phase_distance(a: float, b: float) -> float:
    return abs(wrap_phase(a - b))


def rotation_propagator(axis, angle: float) -> np.ndarray:
    return rotation_matrix(axis, angle)

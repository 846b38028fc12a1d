"""Bell correlations, CHSH, GHZ parities, Mermin sums, teleportation and
local-hidden-variable models."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .composite import apply_local, bell_state, density, ghz, normalize
from .linalg import I2, SX, SY, SZ, kron, require_hermitian
from .qubit import cube

CHUNK = 1 << 16


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("axis must be nonzero")
    return v / n


@dataclass(frozen=True)
class MeasurementAxis:
    direction: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        if d.shape != (3,) or abs(np.linalg.norm(d) - 1) > 1e-12:
            raise ValueError("measurement axis must be a unit 3-vector")
        object.__setattr__(self, "direction", d)

    @property
    def observable(self) -> np.ndarray:
        return spin(self.direction)


def spin(n) -> np.ndarray:
    """n . sigma."""
    n = np.asarray(n, dtype=float)
    return n[0] * SX + n[1] * SY + n[2] * SZ


def axis_in_xz(theta: float) -> np.ndarray:
    """Unit vector at angle ``theta`` from +z toward +x."""
    return np.array([math.sin(theta), 0.0, math.cos(theta)])


# the face/edge geometry of the standard CHSH test
Z_HAT = np.array([0.0, 0.0, 1.0])
X_HAT = np.array([1.0, 0.0, 0.0])
E_PLUS = (Z_HAT + X_HAT) / math.sqrt(2)
E_MINUS = (X_HAT - Z_HAT) / math.sqrt(2)
CHSH_AXES = (Z_HAT, X_HAT, E_PLUS, E_MINUS)


def _rho(state) -> np.ndarray:
    a = np.asarray(state, dtype=complex)
    return density(a) if a.ndim == 1 else a


def quantum_correlation(state, a, b) -> float:
    """<(a.sigma) (x) (b.sigma)> for a two-qubit state vector or density matrix."""
    op = np.kron(spin(a), spin(b))
    return float(np.trace(_rho(state) @ op).real)


def singlet_correlation(theta) -> np.ndarray:
    return -np.cos(theta)


def lhv_line(theta) -> np.ndarray:
    """Sign-model correlation -1 + 2 theta / pi for 0 <= theta <= pi."""
    return -1 + 2 * np.asarray(theta) / np.pi


def chsh(state, a, a2, b, b2) -> float:
    """S = E(a,b) - E(a,b') + E(a',b) + E(a',b')."""
    e = lambda x, y: quantum_correlation(state, x, y)  # noqa: E731
    return e(a, b) - e(a, b2) + e(a2, b) + e(a2, b2)


def chsh_standard(state) -> float:
    return chsh(state, *CHSH_AXES)


def chsh_deterministic_table() -> list[tuple[int, int, int, int, int]]:
    """(A, A', B, B', S) for all 16 deterministic local assignments."""
    rows = []
    for A, A2, B, B2 in itertools.product((1, -1), repeat=4):
        rows.append((A, A2, B, B2, A * B - A * B2 + A2 * B + A2 * B2))
    return rows


# ---------------------------------------------------------------- GHZ and Mermin

_PAULI = {"X": SX, "Y": SY, "Z": SZ, "I": I2}


def pauli_string(word: str) -> np.ndarray:
    return kron(*[_PAULI[c] for c in word.upper()])


def ghz_parity(which: str, sign: int = -1) -> int:
    """Eigenvalue of a three-qubit Pauli string on (|000> + sign |111>)/sqrt 2.

    Raises if the state is not an eigenvector to 1e-12.
    """
    psi = ghz(3, sign)
    out = pauli_string(which) @ psi
    lam = np.vdot(psi, out)
    if np.linalg.norm(out - lam * psi) > 1e-12 or abs(abs(lam) - 1) > 1e-12:
        raise ValueError(f"GHZ state is not an eigenvector of {which}")
    return int(round(lam.real))


def mermin(state, settings: dict[str, str]) -> float:
    """M = <A1 B1 C1> + <A1 B2 C2> + <A2 B1 C2> - <A2 B2 C1>.

    ``settings`` maps each of A1, A2, B1, B2, C1, C2 to a Pauli letter,
    optionally prefixed by '-'.
    """

    def op(key):
        s = settings[key]
        return -_PAULI[s[1:]] if s.startswith("-") else _PAULI[s]

    rho = _rho(state)
    terms = [("A1", "B1", "C1", 1), ("A1", "B2", "C2", 1), ("A2", "B1", "C2", 1), ("A2", "B2", "C1", -1)]
    return float(sum(s * np.trace(rho @ kron(op(a), op(b), op(c))).real for a, b, c, s in terms))


def mermin_lhv_max() -> int:
    """Largest |M| over all deterministic local assignments."""
    best = 0
    for a1, a2, b1, b2, c1, c2 in itertools.product((1, -1), repeat=6):
        best = max(best, abs(a1 * b1 * c1 + a1 * b2 * c2 + a2 * b1 * c2 - a2 * b2 * c1))
    return best


MERMIN_ZX = {"A1": "Z", "A2": "X", "B1": "Z", "B2": "X", "C1": "Z", "C2": "X"}
MERMIN_XY = {"A1": "X", "A2": "Y", "B1": "X", "B2": "Y", "C1": "X", "C2": "-Y"}


# ---------------------------------------------------------------- Werner

def werner_chsh(p: float) -> float:
    """|S| = 2 sqrt(2) p for the Werner state at optimal axes."""
    return 2 * math.sqrt(2) * p


# ---------------------------------------------------------------- teleportation

_CORRECTIONS = {"phi+": I2, "phi-": SZ, "psi+": SX, "psi-": SZ @ SX}


def teleport_correction(outcome: str) -> np.ndarray:
    """Unitary Bob applies after Alice reports a Bell outcome on her two qubits."""
    key = outcome.lower()
    if key not in _CORRECTIONS:
        raise ValueError(f"unknown Bell outcome {outcome!r}")
    return _CORRECTIONS[key]


def teleport(psi, outcome: str) -> tuple[np.ndarray, float]:
    """Simulate the three-qubit protocol for one Bell outcome.

    Returns Bob's corrected state and the outcome probability.
    """
    psi = normalize(psi)
    full = kron(psi, bell_state("phi+"))
    bra = bell_state(outcome).conj()
    bob = np.tensordot(bra, full.reshape(4, 2), axes=(0, 0))
    prob = float(np.vdot(bob, bob).real)
    bob = teleport_correction(outcome) @ (bob / math.sqrt(prob))
    return bob, prob


def fidelity(a, b) -> float:
    return float(abs(np.vdot(a, b)) ** 2)


def superdense_states() -> list[np.ndarray]:
    """I, X, Z, ZX applied to qubit 1 of Phi+."""
    phi = bell_state("phi+")
    return [apply_local(u, phi, (1,)) for u in (I2, SX, SZ, SZ @ SX)]


# ---------------------------------------------------------------- hidden-variable models


def _sign(x: np.ndarray, tie_break: str, rng: np.random.Generator | None) -> np.ndarray:
    s = np.sign(x)
    zero = s == 0
    if np.any(zero):
        if tie_break == "plus":
            s[zero] = 1
        elif tie_break == "minus":
            s[zero] = -1
        elif tie_break == "coin":
            if rng is None:
                raise ValueError("coin tie-break needs a generator")
            s[zero] = rng.choice((-1.0, 1.0), size=int(zero.sum()))
        else:
            raise ValueError(f"unknown tie-break {tie_break!r}")
    return s


@dataclass(frozen=True)
class LHVModel:
    """``sphere_sign``: hidden unit vector uniform on the sphere, outcome sign(n . lam).
    ``face_cube``: hidden triple of face values, with the prepared face fixed."""

    kind: str = "sphere_sign"
    tie_break: str = "coin"
    seed: int = 20250101

    def __post_init__(self):
        if self.kind not in ("sphere_sign", "face_cube"):
            raise ValueError(f"unknown LHV model {self.kind!r}")
        if self.tie_break not in ("plus", "minus", "coin"):
            raise ValueError(f"unknown tie-break {self.tie_break!r}")


def stream(seed: int, worker_id: int) -> np.random.Generator:
    """Counter-based generator for one independent stream."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, worker_id))))


def sample_sphere(rng: np.random.Generator, n: int) -> np.ndarray:
    g = rng.standard_normal((n, 3))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def _chunk_products(model: LHVModel, a, b, chunk_id: int, size: int) -> tuple[float, float]:
    rng = stream(model.seed, chunk_id)
    lam = sample_sphere(rng, size)
    A = _sign(lam @ a, model.tie_break, rng)
    B = -_sign(lam @ b, model.tie_break, rng)
    prod = A * B
    return float(prod.sum()), float((prod * prod).sum())


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    stderr: float
    n_samples: int


def lhv_correlation(model: LHVModel, a, b, n_samples: int, workers: int = 1) -> MCEstimate:
    """Monte Carlo E(a, b) for the anti-correlated pair rule A = sign(a.lam), B = -sign(b.lam).

    Samples are drawn in fixed chunks with one stream per chunk, so the
    estimate does not depend on ``workers``.
    """
    if model.kind != "sphere_sign":
        raise ValueError("pair correlations are defined for the sphere_sign model")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    a, b = unit(a), unit(b)
    sizes = [CHUNK] * (n_samples // CHUNK)
    if n_samples % CHUNK:
        sizes.append(n_samples % CHUNK)
    jobs = list(enumerate(sizes))
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(lambda j: _chunk_products(model, a, b, *j), jobs))
    else:
        parts = [_chunk_products(model, a, b, *j) for j in jobs]
    s1 = np.array([p[0] for p in parts]).sum()
    s2 = np.array([p[1] for p in parts]).sum()
    mean = s1 / n_samples
    var = max(0.0, s2 / n_samples - mean * mean) * n_samples / max(1, n_samples - 1)
    return MCEstimate(float(mean), float(math.sqrt(var / n_samples)), n_samples)


def face_model_prob(prepared: str, axis, tie_break: str = "coin") -> float:
    """Exact P(+1) along ``axis`` in the face model for a prepared cube state.

    The prepared face value is fixed and the two other face values are
    uniform over +-1. Outcome is sign(axis . (eps_x, eps_y, eps_z)); a zero
    dot product is resolved by ``tie_break``.
    """
    v = cube(prepared)  # validates the label
    del v
    axis = unit(axis)
    k = "xyz".index(prepared[1])
    fixed = 1 if prepared[0] == "+" else -1
    total = 0.0
    others = [i for i in range(3) if i != k]
    for e1, e2 in itertools.product((1, -1), repeat=2):
        lam = np.zeros(3)
        lam[k] = fixed
        lam[others[0]], lam[others[1]] = e1, e2
        d = float(axis @ lam)
        if abs(d) < 1e-12:
            p_plus = {"plus": 1.0, "minus": 0.0, "coin": 0.5}[tie_break]
        else:
            p_plus = 1.0 if d > 0 else 0.0
        total += 0.25 * p_plus
    return total


def quantum_prob_plus(prepared: str, axis) -> float:
    """cos^2(theta/2) with theta the angle between the prepared Bloch vector and axis."""
    v = cube(prepared).vector
    op = spin(unit(axis))
    return float((1 + np.vdot(v, op @ v).real) / 2)


def observable(n) -> np.ndarray:
    return require_hermitian(spin(unit(n)))

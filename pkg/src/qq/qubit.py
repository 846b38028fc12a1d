"""Single qubits: Bloch-cube states, rotations, the Born rule and density matrices.

Amplitudes are stored in the z basis, ``|+z> = (1, 0)`` and ``|-z> = (0, 1)``.
A :class:`QubitState` keeps whatever global phase the caller produced; use
:meth:`QubitState.canonical` to split it off explicitly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .linalg import I2, PAULI, SX, SY, SZ, dagger, require_hermitian

_NORM_TOL = 1e-12
_R2 = 1 / math.sqrt(2)


@dataclass(frozen=True)
class QubitState:
    alpha: complex
    beta: complex

    def __post_init__(self):
        n = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(n - 1) > 1e-9:
            raise ValueError(f"qubit state not normalized (norm^2 = {n})")

    @classmethod
    def from_vector(cls, v) -> "QubitState":
        v = np.asarray(v, dtype=complex).ravel()
        if v.shape != (2,):
            raise ValueError("qubit state needs exactly two amplitudes")
        return cls(complex(v[0]), complex(v[1]))

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "QubitState":
        """cos(theta/2)|+z> + e^{i phi} sin(theta/2)|-z>."""
        return cls(complex(math.cos(theta / 2)), cmath.exp(1j * phi) * math.sin(theta / 2))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)

    def canonical(self) -> tuple["QubitState", complex]:
        """Return ``(state, phase)`` with ``self == phase * state`` and the first
        nonzero amplitude of ``state`` real and positive."""
        v = self.vector
        k = 0 if abs(v[0]) > _NORM_TOL else 1
        phase = v[k] / abs(v[k])
        w = v / phase
        w[k] = abs(v[k])  # exactly real, no rounding residue
        return QubitState.from_vector(w), complex(phase)

    def same_ray(self, other: "QubitState", tol: float = 1e-12) -> bool:
        return abs(abs(inner(self, other)) - 1) <= tol

    def isclose(self, other: "QubitState", tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.vector - other.vector)) <= tol)

    def __mul__(self, c):
        return QubitState.from_vector(c * self.vector)

    __rmul__ = __mul__


@dataclass(frozen=True)
class CubeState:
    axis: str  # "x", "y" or "z"
    sign: int  # +1 or -1

    def __post_init__(self):
        if self.axis not in ("x", "y", "z") or self.sign not in (1, -1):
            raise ValueError(f"bad cube state ({self.axis!r}, {self.sign!r})")

    @property
    def label(self) -> str:
        return ("+" if self.sign > 0 else "-") + self.axis

    @property
    def state(self) -> QubitState:
        s = self.sign
        if self.axis == "z":
            return QubitState(1, 0) if s > 0 else QubitState(0, 1)
        if self.axis == "x":
            return QubitState(_R2, s * _R2)
        return QubitState(_R2, s * 1j * _R2)

    @property
    def bloch(self) -> np.ndarray:
        v = np.zeros(3)
        v["xyz".index(self.axis)] = self.sign
        return v


CUBE_LABELS = ("+x", "-x", "+y", "-y", "+z", "-z")


def cube(label: str) -> QubitState:
    """State for a Bloch-cube label such as ``"+x"`` or ``"-z"``."""
    if label not in CUBE_LABELS:
        raise ValueError(f"unknown cube label {label!r}")
    return CubeState(label[1], 1 if label[0] == "+" else -1).state


def identify_cube(state: QubitState, tol: float = 1e-10) -> str | None:
    for lab in CUBE_LABELS:
        if state.same_ray(cube(lab), tol):
            return lab
    return None


def inner(a: QubitState, b: QubitState) -> complex:
    """<a|b>."""
    return complex(np.vdot(a.vector, b.vector))


def born(state: QubitState, outcome: QubitState) -> float:
    """Probability |<outcome|state>|^2."""
    return abs(inner(outcome, state)) ** 2


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """cos(angle/2) I - i sin(angle/2) (n . sigma)."""
    n = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(n)
    if norm == 0:
        raise ValueError("rotation axis must be nonzero")
    if abs(norm - 1) > 1e-9:
        raise ValueError(f"rotation axis must be a unit vector (|n| = {norm})")
    ns = n[0] * SX + n[1] * SY + n[2] * SZ
    return math.cos(angle / 2) * I2 - 1j * math.sin(angle / 2) * ns


def rotate(state: QubitState, axis, angle: float) -> QubitState:
    return QubitState.from_vector(rotation_matrix(axis, angle) @ state.vector)


def cube_operator(which: str) -> np.ndarray:
    """90-degree cube rotation ``|+n><+n| + i|-n><-n|`` for n in x, y, z."""
    which = which.lower()
    if which not in ("x", "y", "z"):
        raise ValueError(f"cube operator must be X, Y or Z, not {which!r}")
    plus = cube("+" + which).vector
    minus = cube("-" + which).vector
    return np.outer(plus, plus.conj()) + 1j * np.outer(minus, minus.conj())


def cube_op(which: str, state: QubitState) -> tuple[QubitState, complex]:
    """Apply a cube rotation and return (canonical state, stripped global phase)."""
    raw = QubitState.from_vector(cube_operator(which) @ state.vector)
    return raw.canonical()


# basis changes: U_ab maps |+-b> to |+-a>, written in the b basis
_BASIS_KEYS = {"xz": "xz", "z->x": "xz", "yz": "yz", "z->y": "yz", "yx": "yx", "x->y": "yx"}


def basis_change(which: str) -> np.ndarray:
    key = _BASIS_KEYS.get(which.replace("→", "->"))
    if key is None:
        raise ValueError(f"unknown basis change {which!r}")
    a, b = key
    return np.array(
        [[inner(cube(sb + b), cube(sa + a)) for sa in "+-"] for sb in "+-"], dtype=complex
    )


@dataclass(frozen=True)
class QubitDensity:
    matrix: np.ndarray

    def __post_init__(self):
        m = require_hermitian(self.matrix, "density matrix")
        if m.shape != (2, 2):
            raise ValueError("qubit density must be 2x2")
        if abs(np.trace(m).real - 1) > 1e-12:
            raise ValueError("density matrix must have unit trace")
        if np.linalg.eigvalsh(m)[0] < -1e-12:
            raise ValueError("density matrix must be positive semidefinite")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def pure(cls, state: QubitState) -> "QubitDensity":
        v = state.vector
        return cls(np.outer(v, v.conj()))

    @classmethod
    def mixture(cls, weights, states) -> "QubitDensity":
        weights = np.asarray(weights, dtype=float)
        if np.any(weights < 0) or abs(weights.sum() - 1) > 1e-12:
            raise ValueError("mixture weights must be a probability vector")
        m = sum(w * cls.pure(s).matrix for w, s in zip(weights, states))
        return cls(m)

    @classmethod
    def from_bloch(cls, r) -> "QubitDensity":
        r = np.asarray(r, dtype=float)
        if np.linalg.norm(r) > 1 + 1e-10:
            raise ValueError("Bloch vector longer than 1")
        return cls(0.5 * (I2 + sum(ri * s for ri, s in zip(r, PAULI))))

    @property
    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def is_pure(self, tol: float = 1e-9) -> bool:
        return abs(np.linalg.norm(bloch_vector(self)) - 1) <= tol


def expectation(rho: QubitDensity, op) -> float:
    op = require_hermitian(op, "observable")
    return float(np.trace(rho.matrix @ op).real)


def bloch_vector(rho: QubitDensity) -> np.ndarray:
    return np.array([np.trace(rho.matrix @ s).real for s in PAULI])


def state_bloch(state: QubitState) -> np.ndarray:
    return bloch_vector(QubitDensity.pure(state))


def spin_observable(n) -> np.ndarray:
    """n . sigma for a unit 3-vector n."""
    n = np.asarray(n, dtype=float)
    return n[0] * SX + n[1] * SY + n[2] * SZ


def measurement_basis(axis: str) -> tuple[QubitState, QubitState]:
    return cube("+" + axis), cube("-" + axis)


def sequential_measure(state: QubitState, axes: str) -> dict[tuple[str, ...], float]:
    """Joint outcome distribution of projective measurements along ``axes`` in order."""
    dist: dict[tuple[str, ...], float] = {(): 1.0}
    current = {(): state}
    for ax in axes:
        nxt = {}
        new_dist = {}
        for hist, st in current.items():
            for sgn in "+-":
                out = cube(sgn + ax)
                p = born(st, out)
                if p > 0:
                    key = hist + (sgn + ax,)
                    new_dist[key] = dist[hist] * p
                    nxt[key] = out
        current, dist = nxt, new_dist
    return dist


def density_of(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


__all__ = [
    "QubitState",
    "CubeState",
    "QubitDensity",
    "CUBE_LABELS",
    "cube",
    "identify_cube",
    "inner",
    "born",
    "rotation_matrix",
    "rotate",
    "cube_operator",
    "cube_op",
    "basis_change",
    "expectation",
    "bloch_vector",
    "state_bloch",
    "spin_observable",
    "sequential_measure",
    "dagger",
]

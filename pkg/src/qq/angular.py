"""Angular momentum: spin matrices, Clebsch-Gordan tables, Wigner rotation matrices
and low-order spherical harmonics.

States ``|j, m>`` are ordered with m descending from +j. Half-integers may be
passed as floats (0.5), ``Fraction`` or ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import lpmv

from .linalg import dagger, expm_i, kron


def half(x) -> Fraction:
    """Exact half-integer from a float, int or Fraction."""
    two = 2 * Fraction(x).limit_denominator(4)
    if two.denominator != 1 or abs(float(two) - 2 * float(x)) > 1e-9:
        raise ValueError(f"{x!r} is not a half-integer")
    return Fraction(int(two), 2)


def m_values(j) -> list[Fraction]:
    j = half(j)
    if j < 0:
        raise ValueError("j must be nonnegative")
    return [j - k for k in range(int(2 * j) + 1)]


@dataclass(frozen=True)
class JRep:
    """Spin-j matrices (hbar = 1) in the descending-m basis."""

    j: Fraction
    jz: np.ndarray = field(repr=False)
    jp: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return int(2 * self.j) + 1

    @property
    def jm(self) -> np.ndarray:
        return dagger(self.jp)

    @property
    def jx(self) -> np.ndarray:
        return (self.jp + self.jm) / 2

    @property
    def jy(self) -> np.ndarray:
        return (self.jp - self.jm) / 2j

    @property
    def j2(self) -> np.ndarray:
        return self.jx @ self.jx + self.jy @ self.jy + self.jz @ self.jz

    @property
    def m(self) -> list[Fraction]:
        return m_values(self.j)


@lru_cache(maxsize=None)
def j_rep(j) -> JRep:
    j = half(j)
    ms = m_values(j)
    jz = np.diag([float(m) for m in ms]).astype(complex)
    d = len(ms)
    jp = np.zeros((d, d), dtype=complex)
    for i in range(1, d):
        m = ms[i]
        jp[i - 1, i] = math.sqrt(float((j - m) * (j + m + 1)))
    for a in (jz, jp):
        a.setflags(write=False)
    return JRep(j, jz, jp)


def ladder_action(j, m, raising: bool = True) -> float:
    """Coefficient sqrt((j -+ m)(j +- m + 1)) of J_+- |j, m>."""
    j, m = half(j), half(m)
    val = (j - m) * (j + m + 1) if raising else (j + m) * (j - m + 1)
    return math.sqrt(float(val))


# ---------------------------------------------------------------- Clebsch-Gordan


@dataclass(frozen=True)
class CGTable:
    """Coupling of ``j1 (x) j2``.

    ``matrix`` has the uncoupled basis ``|m1> (x) |m2>`` (m1 slow, both
    descending) as rows and the coupled states as columns, ordered by j
    descending and then m descending.
    """

    j1: Fraction
    j2: Fraction
    matrix: np.ndarray = field(repr=False)
    coupled: tuple[tuple[Fraction, Fraction], ...]
    uncoupled: tuple[tuple[Fraction, Fraction], ...]

    def coeff(self, j, m, m1, m2) -> float:
        """<j1 m1; j2 m2 | j m>, zero for any forbidden combination."""
        key_c = (half(j), half(m))
        key_u = (half(m1), half(m2))
        try:
            col = self.coupled.index(key_c)
            row = self.uncoupled.index(key_u)
        except ValueError:
            return 0.0
        return float(self.matrix[row, col])

    def state(self, j, m) -> np.ndarray:
        """Coupled state |j m> as a vector in the uncoupled basis."""
        return self.matrix[:, self.coupled.index((half(j), half(m)))]

    def projector(self, j) -> np.ndarray:
        j = half(j)
        cols = [k for k, (jj, _) in enumerate(self.coupled) if jj == j]
        v = self.matrix[:, cols]
        return v @ v.T

    def entries(self):
        """Yield nonzero (j, m, m1, m2, value)."""
        for c, (j, m) in enumerate(self.coupled):
            for r, (m1, m2) in enumerate(self.uncoupled):
                val = self.matrix[r, c]
                if abs(val) > 1e-14:
                    yield j, m, m1, m2, float(val)


def allowed_j(j1, j2) -> list[Fraction]:
    j1, j2 = half(j1), half(j2)
    lo, hi = abs(j1 - j2), j1 + j2
    return [hi - k for k in range(int(hi - lo) + 1)]


def total_operators(j1, j2) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(J_z, J_-, J^2) of the sum on the uncoupled product space."""
    r1, r2 = j_rep(j1), j_rep(j2)
    e1, e2 = np.eye(r1.dim), np.eye(r2.dim)
    jz = kron(r1.jz, e2) + kron(e1, r2.jz)
    jx = kron(r1.jx, e2) + kron(e1, r2.jx)
    jy = kron(r1.jy, e2) + kron(e1, r2.jy)
    jm = kron(r1.jm, e2) + kron(e1, r2.jm)
    return jz, jm, jx @ jx + jy @ jy + jz @ jz


@lru_cache(maxsize=None)
def clebsch_gordan(j1, j2) -> CGTable:
    """Build the table from highest weights, lowering and Gram-Schmidt.

    For each j the top state |j, j> is the unit vector in the m = j subspace
    orthogonal to all states of larger j; its sign makes the coefficient with
    the largest m1 positive (Condon-Shortley).
    """
    j1, j2 = half(j1), half(j2)
    uncoupled = tuple((m1, m2) for m1 in m_values(j1) for m2 in m_values(j2))
    m_tot = np.array([float(m1 + m2) for m1, m2 in uncoupled])
    _, jm, _ = total_operators(j1, j2)
    jm = jm.real
    cols: list[np.ndarray] = []
    labels: list[tuple[Fraction, Fraction]] = []
    for j in allowed_j(j1, j2):
        sub = np.flatnonzero(np.isclose(m_tot, float(j)))
        found = [c[sub] for c, (_, m) in zip(cols, labels) if m == j]
        if found:
            f = np.array(found)
            _, _, vh = np.linalg.svd(f)
            top_sub = vh[-1]
        else:
            top_sub = np.ones(1) if len(sub) == 1 else None
            if top_sub is None:
                raise RuntimeError("highest-weight subspace should be one-dimensional")
        top = np.zeros(len(uncoupled))
        top[sub] = top_sub
        lead = top[sub[np.argmax(np.abs(top[sub]) > 1e-12)]]
        top *= np.sign(lead) / np.linalg.norm(top)
        v = top
        for m in m_values(j):
            cols.append(v)
            labels.append((j, m))
            if m > -j:
                v = jm @ v
                v = v / np.linalg.norm(v)
    mat = np.array(cols).T
    mat[np.abs(mat) < 1e-15] = 0.0
    mat.setflags(write=False)
    return CGTable(j1, j2, mat, tuple(labels), uncoupled)


def cg(j1, m1, j2, m2, j, m) -> float:
    """<j1 m1; j2 m2 | j m>."""
    if half(m1) + half(m2) != half(m) or half(j) not in allowed_j(j1, j2):
        return 0.0
    return clebsch_gordan(j1, j2).coeff(j, m, m1, m2)


def threej(j1, j2, j3, m1, m2, m3) -> float:
    """Wigner 3j symbol from the matching Clebsch-Gordan coefficient."""
    j1, j2, j3, m3 = half(j1), half(j2), half(j3), half(m3)
    phase = (-1) ** int(j1 - j2 - m3)
    return phase / math.sqrt(float(2 * j3 + 1)) * cg(j1, m1, j2, m2, j3, -m3)


# ---------------------------------------------------------------- rotations


def wigner_d(j, beta: float) -> np.ndarray:
    """Real matrix d^j(beta) = exp(-i beta J_y), rows m', columns m (descending)."""
    d = expm_i(j_rep(j).jy, beta)
    return d.real.copy()


def wigner_D(j, alpha: float, beta: float, gamma: float) -> np.ndarray:
    """D^j = exp(-i alpha J_z) exp(-i beta J_y) exp(-i gamma J_z)."""
    m = np.array([float(x) for x in m_values(j)])
    return np.exp(-1j * alpha * m)[:, None] * wigner_d(j, beta) * np.exp(-1j * gamma * m)[None, :]


def rotate_l1_coeffs(c, alpha: float, beta: float, gamma: float) -> np.ndarray:
    """c' = D^1(alpha, beta, gamma) c for coefficients on (Y_1^1, Y_1^0, Y_1^-1)."""
    c = np.asarray(c, dtype=complex)
    if c.shape != (3,):
        raise ValueError("need three l = 1 coefficients")
    return wigner_D(1, alpha, beta, gamma) @ c


def sph_harm(l: int, m: int, theta, phi):
    """Y_l^m(theta, phi) with the Condon-Shortley phase, l <= 3."""
    if not 0 <= l <= 3 or abs(m) > l:
        raise ValueError(f"need 0 <= l <= 3 and |m| <= l, got l={l}, m={m}")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    am = abs(m)
    norm = math.sqrt((2 * l + 1) / (4 * math.pi) * math.factorial(l - am) / math.factorial(l + am))
    y = norm * lpmv(am, l, np.cos(theta)) * np.exp(1j * am * phi)
    if m < 0:
        y = (-1) ** am * np.conj(y)
    return y


def sphere_integral(f, n_theta: int = 48, n_phi: int = 96) -> complex:
    """Integrate f(theta, phi) over the unit sphere (Gauss-Legendre in cos theta, trapezoid in phi)."""
    x, w = np.polynomial.legendre.leggauss(n_theta)
    theta = np.arccos(x)
    phi = np.linspace(0, 2 * np.pi, n_phi, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    vals = f(tt, pp)
    return complex(np.sum(w[:, None] * vals) * (2 * np.pi / n_phi))

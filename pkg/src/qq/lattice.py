"""Second-quantized lattice particles: hardcore bosons and Jordan-Wigner fermions.

Sites are numbered 1..N and site 1 is the leftmost bit of a ket, so ``|110>``
has sites 1 and 2 occupied. Occupied is the qubit state ``|1>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations

import numpy as np

from .composite import ket
from .linalg import dagger, kron

_LOWER = np.array([[0, 1], [0, 0]], dtype=complex)  # |1> -> |0>
_PARITY = np.diag([1, -1]).astype(complex)  # (-1)^n on one site
_EYE = np.eye(2, dtype=complex)


class Statistics(str, Enum):
    BOSON = "hardcore_boson"
    FERMION = "fermion"


def _kind(kind) -> Statistics:
    if isinstance(kind, Statistics):
        return kind
    k = str(kind).lower()
    if k in ("boson", "hardcore_boson", "b"):
        return Statistics.BOSON
    if k in ("fermion", "f", "c"):
        return Statistics.FERMION
    raise ValueError(f"unknown particle statistics {kind!r}")


@dataclass(frozen=True)
class OccupationBasis:
    """Bit strings of an ``n_sites`` lattice, optionally fixed particle number.

    Sector states are listed in lexicographic order of their bit strings, which
    is also ascending order of their full-space index.
    """

    n_sites: int
    n_particles: int | None = None
    states: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError("need at least one site")
        m = self.n_particles
        if m is not None and not 0 <= m <= self.n_sites:
            raise ValueError(f"particle number {m} impossible on {self.n_sites} sites")
        object.__setattr__(self, "states", _enumerate(self.n_sites, m))

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def indices(self) -> np.ndarray:
        """Full-space indices of the basis states."""
        return np.array([int(s, 2) for s in self.states], dtype=int)

    def index(self, bits: str) -> int:
        return self.states.index(bits)

    def restrict(self, op: np.ndarray) -> np.ndarray:
        idx = self.indices
        return np.asarray(op)[np.ix_(idx, idx)]

    def project(self, psi: np.ndarray) -> np.ndarray:
        return np.asarray(psi)[self.indices]

    def lift(self, v: np.ndarray) -> np.ndarray:
        out = np.zeros(2**self.n_sites, dtype=complex)
        out[self.indices] = v
        return out


@lru_cache(maxsize=None)
def _enumerate(n: int, m: int | None) -> tuple[str, ...]:
    if m is None:
        return tuple(format(i, f"0{n}b") for i in range(2**n))
    out = []
    for occ in combinations(range(n), m):
        b = ["0"] * n
        for s in occ:
            b[s] = "1"
        out.append("".join(b))
    return tuple(sorted(out))


def sector_dimensions(n_sites: int) -> list[int]:
    return [OccupationBasis(n_sites, m).dim for m in range(n_sites + 1)]


def _check_site(site: int, n_sites: int) -> None:
    if not 1 <= site <= n_sites:
        raise IndexError(f"site {site} out of range 1..{n_sites}")


@lru_cache(maxsize=256)
def _annihilation(kind: Statistics, site: int, n_sites: int) -> np.ndarray:
    factors = []
    for k in range(1, n_sites + 1):
        if k == site:
            factors.append(_LOWER)
        elif k < site and kind is Statistics.FERMION:
            factors.append(_PARITY)
        else:
            factors.append(_EYE)
    m = kron(*factors)
    m.setflags(write=False)
    return m


def annihilation(kind, site: int, n_sites: int) -> np.ndarray:
    """Annihilation operator on the full ``2^N`` space.

    Fermions carry the string ``prod_{k<site} (-1)^{n_k}``.
    """
    _check_site(site, n_sites)
    return _annihilation(_kind(kind), site, n_sites)


def creation(kind, site: int, n_sites: int) -> np.ndarray:
    return dagger(annihilation(kind, site, n_sites))


def _n_of(psi) -> int:
    n = int(round(math.log2(len(psi))))
    if 2**n != len(psi):
        raise ValueError("state length must be a power of two")
    return n


def create(kind, site: int, state) -> np.ndarray:
    """Apply a creation operator to a ket label like ``"100"`` or a state vector.

    Returns the zero vector when the site is already occupied.
    """
    psi = ket(state) if isinstance(state, str) else np.asarray(state, dtype=complex)
    return creation(kind, site, _n_of(psi)) @ psi


def annihilate(kind, site: int, state) -> np.ndarray:
    psi = ket(state) if isinstance(state, str) else np.asarray(state, dtype=complex)
    return annihilation(kind, site, _n_of(psi)) @ psi


def number_op(site: int, n_sites: int) -> np.ndarray:
    a = annihilation(Statistics.BOSON, site, n_sites)
    return dagger(a) @ a


def total_number(n_sites: int) -> np.ndarray:
    counts = [s.count("1") for s in _enumerate(n_sites, None)]
    return np.diag(np.array(counts, dtype=complex))


def bonds(n_sites: int, boundary: str = "open") -> list[tuple[int, int]]:
    if boundary not in ("open", "periodic"):
        raise ValueError(f"unknown boundary {boundary!r}")
    out = [(j, j + 1) for j in range(1, n_sites)]
    if boundary == "periodic" and n_sites > 2:
        out.append((n_sites, 1))
    return out


def hopping_hamiltonian(
    n_sites: int,
    delta: float,
    boundary: str = "open",
    kind="boson",
    n_particles: int | None = None,
) -> np.ndarray:
    """-delta * sum over bonds of (a_i^dag a_j + a_j^dag a_i).

    With ``n_particles`` set the matrix is restricted to that sector.
    """
    if n_sites < 2:
        raise ValueError("hopping needs at least two sites")
    kind = _kind(kind)
    dim = 2**n_sites
    h = np.zeros((dim, dim), dtype=complex)
    for i, j in bonds(n_sites, boundary):
        hop = creation(kind, i, n_sites) @ annihilation(kind, j, n_sites)
        h -= delta * (hop + dagger(hop))
    if n_particles is not None:
        h = OccupationBasis(n_sites, n_particles).restrict(h)
    return h


def single_particle_hamiltonian(n_sites: int, delta: float, boundary: str = "open") -> np.ndarray:
    """Hopping matrix in the one-particle basis ``a_j^dag|vac>``, j = 1..N."""
    h = np.zeros((n_sites, n_sites), dtype=complex)
    for i, j in bonds(n_sites, boundary):
        h[i - 1, j - 1] -= delta
        h[j - 1, i - 1] -= delta
    return h


def ring_energies(n_sites: int, delta: float) -> np.ndarray:
    """-2 delta cos(2 pi alpha / N) for alpha = 0..N-1, sorted."""
    alpha = np.arange(n_sites)
    return np.sort(-2 * delta * np.cos(2 * np.pi * alpha / n_sites))


def momentum(n_sites: int, alpha: int) -> float:
    return 2 * np.pi * alpha / n_sites


def momentum_state(n_sites: int, alpha: int, full_space: bool = True) -> np.ndarray:
    """(1/sqrt N) sum_j e^{i k j} a_j^dag |vac>, k = 2 pi alpha / N."""
    k = momentum(n_sites, alpha)
    amps = np.exp(1j * k * np.arange(1, n_sites + 1)) / math.sqrt(n_sites)
    if not full_space:
        return amps
    # a_j^dag|vac> has only bit j set; bit j is weight 2^(N-j)
    psi = np.zeros(2**n_sites, dtype=complex)
    for j in range(1, n_sites + 1):
        psi[1 << (n_sites - j)] = amps[j - 1]
    return psi


def translation_op(n_sites: int) -> np.ndarray:
    """Cyclic shift moving the particle on site j+1 to site j.

    ``T|k> = e^{ik}|k>`` for single-particle momentum states.
    """
    dim = 2**n_sites
    t = np.zeros((dim, dim), dtype=complex)
    for idx, b in enumerate(_enumerate(n_sites, None)):
        shifted = b[1:] + b[0]
        t[int(shifted, 2), idx] = 1
    return t


def dispersion_1d(k, delta: float) -> np.ndarray:
    return -2 * delta * np.cos(k)


def dispersion_2d(kx, ky, delta: float) -> np.ndarray:
    return -2 * delta * (np.cos(kx) + np.cos(ky))


def effective_mass(delta: float, spacing: float = 1.0) -> float:
    """Mass matching the band bottom to a free particle, from delta = 1/(2 m a^2)."""
    return 1 / (2 * delta * spacing**2)

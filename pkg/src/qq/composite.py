"""Multi-qubit states, gates, measurement, partial trace and entanglement measures.

Qubits are numbered from 1 and qubit 1 is the slow (leftmost) tensor index, so
the basis ket ``|b1 b2 ... bn>`` sits at index ``int("b1b2...bn", 2)``.
States and densities are plain complex ndarrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import constants
from .linalg import I2, SX, SY, SZ, dagger, kron, require_hermitian
from .qubit import cube

_R2 = 1 / math.sqrt(2)


def n_qubits_of(dim: int) -> int:
    n = int(round(math.log2(dim))) if dim > 0 else -1
    if n < 1 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def ket(bits: str) -> np.ndarray:
    """Computational basis state for a bit string such as ``"101"``."""
    if not bits or any(b not in "01" for b in bits):
        raise ValueError(f"bad bit string {bits!r}")
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1
    return v


def bits_of(index: int, n: int) -> str:
    return format(index, f"0{n}b")


def product_state(*states) -> np.ndarray:
    """Tensor product of single-qubit states (labels like ``"+x"`` or 2-vectors)."""
    vecs = [cube(s).vector if isinstance(s, str) else np.asarray(s, dtype=complex) for s in states]
    return kron(*vecs)


def normalize(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    nrm = np.linalg.norm(psi)
    if nrm == 0:
        raise ValueError("cannot normalize the zero vector")
    return psi / nrm


def density(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def validate_density(rho, tol: float = constants.PSD_TOL) -> np.ndarray:
    rho = require_hermitian(rho, "density matrix")
    if abs(np.trace(rho).real - 1) > 1e-10:
        raise ValueError("density matrix must have unit trace")
    if np.linalg.eigvalsh(rho)[0] < -tol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


# ---------------------------------------------------------------- gates

H = np.array([[1, 1], [1, -1]], dtype=complex) * _R2
T = np.diag([1, np.exp(1j * np.pi / 4)]).astype(complex)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
CZ = np.diag([1, 1, 1, -1]).astype(complex)
SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
SQRT_SWAP = np.array(
    [
        [1, 0, 0, 0],
        [0, (1 + 1j) / 2, (1 - 1j) / 2, 0],
        [0, (1 - 1j) / 2, (1 + 1j) / 2, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)


def cphase(phi: float) -> np.ndarray:
    return np.diag([1, 1, 1, np.exp(1j * phi)]).astype(complex)


_GATES = {
    "H": H,
    "X": SX,
    "Y": SY,
    "Z": SZ,
    "I": I2,
    "T": T,
    "CNOT": CNOT,
    "CZ": CZ,
    "SWAP": SWAP,
    "SQRT_SWAP": SQRT_SWAP,
}


def gate_matrix(name: str, phi: float | None = None) -> np.ndarray:
    key = name.upper()
    if key == "CPHASE":
        if phi is None:
            raise ValueError("CPHASE needs an angle")
        return cphase(phi)
    if key not in _GATES:
        raise ValueError(f"unknown gate {name!r}")
    return _GATES[key]


def _check_targets(targets, n: int) -> tuple[int, ...]:
    targets = tuple(int(t) for t in targets)
    if len(set(targets)) != len(targets):
        raise ValueError(f"gate targets must be distinct, got {targets}")
    for t in targets:
        if not 1 <= t <= n:
            raise IndexError(f"qubit {t} out of range 1..{n}")
    return targets


def apply_local(op, psi, targets, n: int | None = None) -> np.ndarray:
    """Apply a k-qubit operator to ``targets`` (1-based, in the operator's order).

    ``psi`` may be a state vector or a matrix whose columns are states.
    """
    psi = np.asarray(psi, dtype=complex)
    n = n_qubits_of(psi.shape[0]) if n is None else n
    targets = _check_targets(targets, n)
    k = len(targets)
    op = np.asarray(op, dtype=complex)
    if op.shape != (2**k, 2**k):
        raise ValueError(f"operator shape {op.shape} does not match {k} targets")
    batch = psi.shape[1:]
    t = psi.reshape((2,) * n + batch)
    axes = [q - 1 for q in targets]
    g = op.reshape((2,) * (2 * k))
    out = np.tensordot(g, t, axes=(list(range(k, 2 * k)), axes))
    out = np.moveaxis(out, list(range(k)), axes)
    return out.reshape(psi.shape)


def gate(name: str, targets, n_qubits: int, phi: float | None = None) -> np.ndarray:
    """Full ``2^n x 2^n`` unitary for a named gate on the given 1-based targets.

    For controlled gates the first target is the control.
    """
    g = gate_matrix(name, phi)
    k = n_qubits_of(g.shape[0])
    targets = tuple(targets) if np.ndim(targets) else (targets,)
    if len(targets) != k:
        raise ValueError(f"{name} acts on {k} qubit(s), got targets {targets}")
    return apply_local(g, np.eye(2**n_qubits, dtype=complex), targets, n_qubits)


def local_operator(ops: dict[int, np.ndarray], n_qubits: int) -> np.ndarray:
    """Tensor product with ``ops[q]`` on qubit q and identity elsewhere."""
    _check_targets(ops.keys(), n_qubits)
    return kron(*[ops.get(q, I2) for q in range(1, n_qubits + 1)])


# ---------------------------------------------------------------- measurement


@dataclass(frozen=True)
class Outcome:
    label: str
    probability: float
    state: np.ndarray | None


def _basis_pair(basis: str) -> list[tuple[str, np.ndarray]]:
    basis = basis.lower()
    if basis == "z":
        return [("0", cube("+z").vector), ("1", cube("-z").vector)]
    if basis in ("x", "y"):
        return [(s + basis, cube(s + basis).vector) for s in "+-"]
    raise ValueError(f"unknown measurement basis {basis!r}")


def measure_subsystem(psi, qubit: int, basis: str = "z") -> list[Outcome]:
    """Projective measurement of one qubit; returns every outcome with its
    probability and normalized post-measurement state (``None`` if impossible)."""
    psi = np.asarray(psi, dtype=complex)
    n = n_qubits_of(psi.shape[0])
    out = []
    for label, v in _basis_pair(basis):
        proj = apply_local(np.outer(v, v.conj()), psi, (qubit,), n)
        p = float(np.vdot(proj, proj).real)
        post = proj / math.sqrt(p) if p > 1e-15 else None
        out.append(Outcome(label, p, post))
    return out


def joint_probability(psi, outcomes) -> float:
    """Probability that each qubit is found in the matching single-qubit state."""
    psi = np.asarray(psi, dtype=complex)
    n = n_qubits_of(psi.shape[0])
    if len(outcomes) != n:
        raise ValueError(f"need {n} outcome states, got {len(outcomes)}")
    amp = np.vdot(product_state(*outcomes), psi)
    return float(abs(amp) ** 2)


def expectation(psi_or_rho, op) -> float:
    op = require_hermitian(op, "observable")
    a = np.asarray(psi_or_rho, dtype=complex)
    if a.ndim == 1:
        return float(np.vdot(a, op @ a).real)
    return float(np.trace(a @ op).real)


# ---------------------------------------------------------------- partial trace


def _keep_tuple(keep, n: int) -> tuple[int, ...]:
    keep = (keep,) if isinstance(keep, (int, np.integer)) else tuple(keep)
    if not keep:
        raise ValueError("must keep at least one qubit")
    return tuple(sorted(_check_targets(keep, n)))


def partial_trace(rho, keep, method: str = "index") -> np.ndarray:
    """Reduced density matrix on the qubits in ``keep`` (1-based).

    ``method`` selects one of three equivalent constructions: ``"index"``
    (tensor contraction), ``"projection"`` (sum of sandwiches by basis bras of
    the traced qubits) or ``"block"`` (sum of diagonal blocks or block traces;
    only for keeping a leading or trailing contiguous group).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim == 1:
        rho = density(rho)
    n = n_qubits_of(rho.shape[0])
    keep = _keep_tuple(keep, n)
    if method == "index":
        return _ptrace_index(rho, keep, n)
    if method == "projection":
        return _ptrace_projection(rho, keep, n)
    if method == "block":
        return _ptrace_block(rho, keep, n)
    raise ValueError(f"unknown partial-trace method {method!r}")


def _ptrace_index(rho, keep, n):
    traced = [q for q in range(1, n + 1) if q not in keep]
    t = rho.reshape((2,) * (2 * n))
    # contract row and column index of each traced qubit, highest first
    for q in sorted(traced, reverse=True):
        m = t.ndim // 2
        t = np.trace(t, axis1=q - 1, axis2=m + q - 1)
    d = 2 ** len(keep)
    return t.reshape(d, d)


def _ptrace_projection(rho, keep, n):
    traced = [q for q in range(1, n + 1) if q not in keep]
    d = 2 ** len(keep)
    out = np.zeros((d, d), dtype=complex)
    for idx in range(2 ** len(traced)):
        bits = bits_of(idx, len(traced)) if traced else ""
        factors = []
        for q in range(1, n + 1):
            if q in keep:
                factors.append(I2)
            else:
                b = bits[traced.index(q)]
                factors.append(ket(b)[:, None])
        p = kron(*factors)
        out += dagger(p) @ rho @ p
    return out


def _ptrace_block(rho, keep, n):
    k = len(keep)
    if keep == tuple(range(1, k + 1)):
        # keep A (slow index): (rho_A)_{ij} = trace of block (i, j)
        da, db = 2**k, 2 ** (n - k)
        blocks = rho.reshape(da, db, da, db)
        return np.array(
            [[np.trace(blocks[i, :, j, :]) for j in range(da)] for i in range(da)], dtype=complex
        )
    if keep == tuple(range(n - k + 1, n + 1)):
        # keep B (fast index): sum of the diagonal blocks
        da, db = 2 ** (n - k), 2**k
        return sum(rho[i * db : (i + 1) * db, i * db : (i + 1) * db] for i in range(da))
    raise ValueError("block method needs a leading or trailing contiguous qubit group")


def partial_transpose(rho, qubits, n: int | None = None) -> np.ndarray:
    """Transpose the indices of the given (1-based) qubits."""
    rho = np.asarray(rho, dtype=complex)
    n = n_qubits_of(rho.shape[0]) if n is None else n
    qubits = _keep_tuple(qubits, n)
    t = rho.reshape((2,) * (2 * n))
    perm = list(range(2 * n))
    for q in qubits:
        perm[q - 1], perm[n + q - 1] = perm[n + q - 1], perm[q - 1]
    return t.transpose(perm).reshape(rho.shape)


def ppt_min_eigenvalue(rho, qubits=(2,)) -> float:
    """Smallest eigenvalue of the partial transpose; negative certifies entanglement."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim == 1:
        rho = density(rho)
    return float(np.linalg.eigvalsh(partial_transpose(rho, qubits))[0])


def purity(rho) -> float:
    rho = np.asarray(rho, dtype=complex)
    return float(np.trace(rho @ rho).real)


# ---------------------------------------------------------------- entanglement


@dataclass(frozen=True)
class SchmidtDecomposition:
    """``psi = sum_i sqrt(lambdas[i]) |left_i> (x) |right_i>``."""

    lambdas: np.ndarray
    left: np.ndarray  # columns
    right: np.ndarray  # columns

    @property
    def schmidt_number(self) -> int:
        return int(np.sum(self.lambdas > 1e-10))

    def reconstruct(self) -> np.ndarray:
        s = np.sqrt(self.lambdas)
        return sum(s[i] * np.kron(self.left[:, i], self.right[:, i]) for i in range(len(s)))


def schmidt(psi, cut: int = 1) -> SchmidtDecomposition:
    """Schmidt decomposition across the cut after the first ``cut`` qubits."""
    psi = np.asarray(psi, dtype=complex)
    n = n_qubits_of(psi.shape[0])
    if not 1 <= cut < n:
        raise ValueError(f"cut must lie in 1..{n - 1}")
    m = psi.reshape(2**cut, 2 ** (n - cut))
    u, s, vh = np.linalg.svd(m)
    r = len(s)
    return SchmidtDecomposition(s**2, u[:, :r], vh[:r, :].T)


def von_neumann_entropy(rho, base: float = 2.0) -> float:
    w = np.linalg.eigvalsh(np.asarray(rho, dtype=complex))
    w = w[w > 1e-15]
    return float(-np.sum(w * np.log(w)) / math.log(base))


def entanglement_entropy(psi, cut: int = 1) -> float:
    """Entropy in bits of the reduced state of the first ``cut`` qubits."""
    lam = schmidt(psi, cut).lambdas
    lam = lam[lam > 1e-15]
    return float(-np.sum(lam * np.log2(lam)))


_SYSY = np.kron(SY, SY)


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit state (vector or density)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim == 1:
        rho = density(rho)
    if rho.shape != (4, 4):
        raise ValueError("concurrence is defined here for two qubits only")
    rho_tilde = _SYSY @ rho.conj() @ _SYSY
    ev = np.linalg.eigvals(rho @ rho_tilde)
    lam = np.sort(np.sqrt(np.clip(ev.real, 0, None)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def pure_concurrence(psi) -> float:
    """2|a d - b c| for psi = a|00> + b|01> + c|10> + d|11>."""
    a, b, c, d = np.asarray(psi, dtype=complex)
    return float(2 * abs(a * d - b * c))


# ---------------------------------------------------------------- named states


def bell_state(name: str) -> np.ndarray:
    table = {
        "phi+": (1, 0, 0, 1),
        "phi-": (1, 0, 0, -1),
        "psi+": (0, 1, 1, 0),
        "psi-": (0, 1, -1, 0),
    }
    key = name.lower()
    for a, b in (("⁺", "+"), ("⁻", "-"), ("φ", "phi"), ("ψ", "psi"), ("_", "")):
        key = key.replace(a, b)
    if key not in table:
        raise ValueError(f"unknown Bell state {name!r}")
    return np.array(table[key], dtype=complex) * _R2


BELL_NAMES = ("phi+", "phi-", "psi+", "psi-")


def ghz(n: int = 3, sign: int = +1) -> np.ndarray:
    """(|0...0> + sign |1...1>)/sqrt(2)."""
    if n < 2 or sign not in (1, -1):
        raise ValueError("GHZ needs n >= 2 and sign +-1")
    v = np.zeros(2**n, dtype=complex)
    v[0], v[-1] = _R2, sign * _R2
    return v


def w_state(n: int = 3) -> np.ndarray:
    v = np.zeros(2**n, dtype=complex)
    for q in range(n):
        v[1 << q] = 1
    return v / math.sqrt(n)


def named_state(name: str, n: int = 3, ghz_sign: int = +1) -> np.ndarray:
    low = name.lower()
    if low == "ghz":
        return ghz(n, ghz_sign)
    if low == "w":
        return w_state(n)
    return bell_state(name)


def werner(p: float) -> np.ndarray:
    """p |Psi-><Psi-| + (1-p) I/4."""
    if not 0 <= p <= 1:
        raise ValueError("Werner weight must lie in [0, 1]")
    return p * density(bell_state("psi-")) + (1 - p) * np.eye(4) / 4


@lru_cache(maxsize=None)
def _bit_table(n: int) -> tuple[str, ...]:
    return tuple(bits_of(i, n) for i in range(2**n))


def describe(psi, tol: float = 1e-12) -> str:
    """Human-readable ket expansion, e.g. ``0.7071|00> + 0.7071|11>``."""
    psi = np.asarray(psi, dtype=complex)
    n = n_qubits_of(psi.shape[0])
    terms = []
    for b, a in zip(_bit_table(n), psi):
        if abs(a) > tol:
            z = f"{a.real:.4g}" if abs(a.imag) <= tol else f"({a.real:.4g}{a.imag:+.4g}j)"
            terms.append(f"{z}|{b}>")
    return " + ".join(terms) if terms else "0"

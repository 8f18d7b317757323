"""Local noise channels on multi-qubit density matrices.

Two independent routes implement the product depolarizing channel:
:func:`depolarize` mixes each target qubit towards ``1/2`` via a partial
trace, and :func:`pauli_weight_scale` scales every Pauli-string coefficient
by ``s**weight``. Tests pin them against each other.
"""
from dataclasses import dataclass

import numpy as np

from .errors import BadProbability, BadSubset, OutOfRange
from .states import DensityMatrix, QubitSubset

I2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = {"I": I2, "X": SIGMA_X, "Y": SIGMA_Y, "Z": SIGMA_Z}
_PAULI_STACK = np.stack([I2, SIGMA_X, SIGMA_Y, SIGMA_Z])

# row a maps a qubit's (i, j) block to tr(X P_a) / 2; the inverse rebuilds it
_TO_PAULI = np.stack([p.T.reshape(4) for p in _PAULI_STACK]) / 2
_FROM_PAULI = _PAULI_STACK.reshape(4, 4).T.copy()


@dataclass(frozen=True)
class DepolarizationLevel:
    """Depolarization probability ``d``; ``s = 1 - d`` is the scaling factor."""

    d: float

    def __post_init__(self):
        if not 0.0 <= self.d <= 1.0:
            raise OutOfRange(f"depolarization {self.d} outside [0, 1]")

    @classmethod
    def from_scaling(cls, s):
        if not 0.0 <= s <= 1.0:
            raise OutOfRange(f"scaling factor {s} outside [0, 1]")
        return cls(1.0 - s)

    @property
    def s(self):
        return 1.0 - self.d


@dataclass(frozen=True)
class PauliString:
    letters: str

    def __post_init__(self):
        if not self.letters or set(self.letters) - set("IXYZ"):
            raise ValueError(f"bad Pauli string {self.letters!r}")

    @property
    def n_qubits(self):
        return len(self.letters)

    @property
    def weight(self):
        return sum(ch != "I" for ch in self.letters)

    def matrix(self):
        out = np.ones((1, 1), dtype=np.complex128)
        for ch in self.letters:
            out = np.kron(out, PAULIS[ch])
        return out


def _level(level):
    return level if isinstance(level, DepolarizationLevel) else DepolarizationLevel(float(level))


def _targets(n, targets):
    if targets is None:
        return QubitSubset.all(n)
    if isinstance(targets, (int, np.integer)):
        targets = (int(targets),)
    return QubitSubset.of(n, targets)


def _tensor(rho):
    n = rho.n_qubits
    return np.asarray(rho.matrix).reshape((2,) * (2 * n)), n


def _to_density(t, n):
    dim = 2**n
    mat = t.reshape(dim, dim)
    return DensityMatrix(n, (mat + mat.conj().T) / 2)


def _apply_local(t, n, q, left, right):
    """``left . X . right`` acting on qubit ``q`` of the row/column tensor ``t``."""
    t = np.moveaxis(np.tensordot(left, t, axes=([1], [q])), 0, q)
    return np.moveaxis(np.tensordot(t, right, axes=([n + q], [0])), -1, n + q)


def depolarize(rho, targets, level):
    """Partially depolarize the ``targets`` qubits of ``rho``.

    Each target ``q`` maps ``rho -> (1-d) rho + d (1/2)_q (x) Tr_q rho``.
    ``targets`` may be a :class:`QubitSubset`, an iterable of indices, a
    single index, or None for every qubit.
    """
    level = _level(level)
    t, n = _tensor(rho)
    targets = _targets(n, targets)
    d = level.d
    if d == 0.0:
        return rho
    for q in targets:
        reduced = np.trace(t, axis1=q, axis2=n + q)
        mixed = np.multiply.outer(reduced, I2 / 2)
        mixed = np.moveaxis(mixed, (2 * n - 2, 2 * n - 1), (q, n + q))
        t = (1.0 - d) * t + d * mixed
    return _to_density(t, n)


def pauli_decompose(rho):
    """Coefficients ``c_P = tr(rho P) / 2**n`` as an ``(4,)*n`` array over I, X, Y, Z."""
    mat = np.asarray(getattr(rho, "matrix", rho), dtype=np.complex128)
    n = mat.shape[0].bit_length() - 1
    t = mat.reshape((2,) * (2 * n))
    order = [ax for q in range(n) for ax in (q, n + q)]
    t = t.transpose(order).reshape((4,) * n)
    for q in range(n):
        t = np.moveaxis(np.tensordot(_TO_PAULI, t, axes=([1], [q])), 0, q)
    return t


def pauli_compose(coeffs):
    """Inverse of :func:`pauli_decompose`: ``sum_P c_P P`` as a dense matrix."""
    t = np.asarray(coeffs, dtype=np.complex128)
    n = t.ndim
    for q in range(n):
        t = np.moveaxis(np.tensordot(_FROM_PAULI, t, axes=([1], [q])), 0, q)
    t = t.reshape((2, 2) * n)
    order = [2 * q for q in range(n)] + [2 * q + 1 for q in range(n)]
    return t.transpose(order).reshape(2**n, 2**n)


def pauli_weight_scale(rho, s):
    """Multiply every Pauli-string component of weight ``w`` by ``s**w``."""
    if not 0.0 <= s <= 1.0:
        raise OutOfRange(f"scaling factor {s} outside [0, 1]")
    n = rho.n_qubits
    coeffs = pauli_decompose(rho)
    scale = np.ones(())
    for _ in range(n):
        scale = np.multiply.outer(scale, np.array([1.0, s, s, s]))
    return _to_density(pauli_compose(coeffs * scale), n)


def sample_sphere(n_samples, rng):
    """Uniform unit vectors: ``z ~ U[-1, 1]``, azimuth ``~ U[0, 2 pi)``."""
    z = rng.uniform(-1.0, 1.0, n_samples)
    phi = rng.uniform(0.0, 2 * np.pi, n_samples)
    r = np.sqrt(1.0 - z * z)
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def random_measurement_average(rho, target, n_samples, seed=0, directions=None):
    """Average effect of projective spin measurements along random axes.

    For each axis ``n`` the qubit undergoes ``P+ rho P+ + P- rho P-`` with
    ``P+- = (1 +- n.sigma)/2``. That map equals ``(rho + (n.sigma) rho
    (n.sigma)) / 2``, so the sample average only needs the mean of ``n n^T``.
    ``directions`` overrides the seeded draw with explicit unit vectors.
    """
    t, n = _tensor(rho)
    if not isinstance(target, (int, np.integer)) or not 0 <= target < n:
        raise BadSubset(f"target qubit {target!r} outside [0, {n})")
    if directions is None:
        if n_samples < 1:
            raise OutOfRange("n_samples must be at least 1")
        directions = sample_sphere(n_samples, np.random.default_rng(seed))
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    second = directions.T @ directions / len(directions)
    sig = _PAULI_STACK[1:]
    acc = t.copy()
    for a in range(3):
        for b in range(3):
            if second[a, b] != 0.0:
                acc = acc + second[a, b] * _apply_local(t, n, target, sig[a], sig[b])
    return _to_density(acc / 2, n)


def _hamming_matrix(n):
    idx = np.arange(2**n)
    x = idx[:, None] ^ idx[None, :]
    dist = np.zeros_like(x)
    for b in range(n):
        dist += (x >> b) & 1
    return dist


def probabilistic_measure(rho, p):
    """Measure every qubit in the computational basis with probability ``p``.

    Per qubit ``rho -> (1-p) rho + p sum_b P_b rho P_b``, which damps each
    entry by ``(1-p)**k`` where ``k`` counts the qubits on which its row and
    column bits differ.
    """
    if not 0.0 <= p <= 1.0:
        raise BadProbability(f"measurement probability {p} outside [0, 1]")
    n = rho.n_qubits
    damp = (1.0 - p) ** _hamming_matrix(n)
    return DensityMatrix(n, np.asarray(rho.matrix) * damp)


def measured_ghz(n, p):
    """Closed form ``(1-(1-p)^n)/2 (P0^n + P1^n) + (1-p)^n |G_n><G_n|``."""
    if not 0.0 <= p <= 1.0:
        raise BadProbability(f"measurement probability {p} outside [0, 1]")
    dim = 2**n
    keep = (1.0 - p) ** n
    mat = np.zeros((dim, dim), dtype=np.complex128)
    mat[0, 0] = mat[-1, -1] = (1 - keep) / 2 + keep / 2
    mat[0, -1] = mat[-1, 0] = keep / 2
    return DensityMatrix(n, mat)

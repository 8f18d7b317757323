"""Qubit registers, density matrices and the named multi-qubit states.

Basis convention: index ``i = sum_q b_q 2**(n-1-q)``, so qubit 0 is the most
significant bit of the basis index.
"""
from dataclasses import dataclass
from itertools import combinations
from math import comb, sqrt

import numpy as np

from .errors import BadSubset, NotNormalized, SizeOutOfRange, UnknownName
from .linalg import HERMITIAN_TOL, eigvalsh, hermitian_defect

MAX_QUBITS = 12
NORM_TOL = 1e-10


def _frozen(arr):
    arr = np.array(arr, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


def _n_from_dim(dim):
    n = dim.bit_length() - 1
    if n < 1 or 2**n != dim:
        raise SizeOutOfRange(f"dimension {dim} is not a power of two >= 2")
    return n


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized amplitude vector over ``n_qubits`` qubits."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen(self.amplitudes).reshape(-1)
        if amps.size != 2**self.n_qubits:
            raise SizeOutOfRange(f"{amps.size} amplitudes for {self.n_qubits} qubits")
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > NORM_TOL:
            raise NotNormalized(f"state norm is {norm:.12g}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amps, normalize=False):
        amps = np.asarray(amps, dtype=np.complex128).reshape(-1)
        if normalize:
            amps = amps / np.linalg.norm(amps)
        return cls(_n_from_dim(amps.size), amps)

    @property
    def dim(self):
        return 2**self.n_qubits

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian unit-trace matrix of dimension ``2**n_qubits``.

    Construction checks Hermiticity and trace; positivity needs an
    eigensolve and is checked by :meth:`validate`.
    """

    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = _frozen(self.matrix)
        if mat.shape != (2**self.n_qubits,) * 2:
            raise SizeOutOfRange(f"shape {mat.shape} for {self.n_qubits} qubits")
        if hermitian_defect(mat) > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(mat)
        if abs(tr - 1) > NORM_TOL:
            raise NotNormalized(f"density matrix trace is {tr:.12g}")
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_matrix(cls, mat):
        mat = np.asarray(mat, dtype=np.complex128)
        return cls(_n_from_dim(mat.shape[0]), mat)

    @property
    def dim(self):
        return 2**self.n_qubits

    def min_eigenvalue(self):
        return float(eigvalsh(self.matrix)[0])

    def validate(self, psd_tol=1e-9):
        """Raise ValueError unless the matrix is positive semidefinite."""
        lo = self.min_eigenvalue()
        if lo < -psd_tol:
            raise ValueError(f"density matrix has eigenvalue {lo:.3g}")
        return self

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


@dataclass(frozen=True)
class QubitSubset:
    """Sorted set of distinct qubit indices in ``[0, n_qubits)``."""

    n_qubits: int
    members: tuple

    def __post_init__(self):
        members = tuple(sorted(set(int(q) for q in self.members)))
        if len(members) != len(tuple(self.members)):
            raise BadSubset(f"repeated qubit indices in {self.members}")
        if any(q < 0 or q >= self.n_qubits for q in members):
            raise BadSubset(f"indices {members} outside [0, {self.n_qubits})")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, n_qubits, members):
        if isinstance(members, QubitSubset):
            if members.n_qubits != n_qubits:
                raise BadSubset(f"subset is over {members.n_qubits} qubits, expected {n_qubits}")
            return members
        return cls(n_qubits, tuple(members))

    @classmethod
    def all(cls, n_qubits):
        return cls(n_qubits, tuple(range(n_qubits)))

    def complement(self):
        return QubitSubset(self.n_qubits, tuple(q for q in range(self.n_qubits) if q not in self.members))

    def is_proper_cut(self):
        return 0 < len(self.members) < self.n_qubits

    def require_cut(self):
        if not self.is_proper_cut():
            raise BadSubset(f"{self.members} is not a proper bipartite cut of {self.n_qubits} qubits")
        return self

    def label(self):
        """Cut type such as ``"1-3"`` (smaller side first)."""
        k = len(self.members)
        a, b = sorted((k, self.n_qubits - k))
        return f"{a}-{b}"

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __str__(self):
        return "{" + ",".join(map(str, self.members)) + "}"


def _check_size(n, lo=1):
    if not lo <= n <= MAX_QUBITS:
        raise SizeOutOfRange(f"qubit count {n} outside [{lo}, {MAX_QUBITS}]")


def basis_index(bits):
    """Basis index of a bit string such as ``"0110"``."""
    return int(bits, 2)


def basis_state(bits):
    amps = np.zeros(2 ** len(bits), dtype=np.complex128)
    amps[basis_index(bits)] = 1.0
    return StateVector(len(bits), amps)


def ghz(n):
    _check_size(n, lo=2)
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = amps[-1] = 1 / sqrt(2)
    return StateVector(n, amps)


def dicke(n, k):
    """Equal superposition of all ``n``-qubit basis states with ``k`` ones."""
    _check_size(n)
    if not 0 <= k <= n:
        raise SizeOutOfRange(f"excitation number {k} outside [0, {n}]")
    amps = np.zeros(2**n, dtype=np.complex128)
    for ones in combinations(range(n), k):
        amps[sum(1 << (n - 1 - q) for q in ones)] = 1.0
    amps /= sqrt(comb(n, k))
    return StateVector(n, amps)


def w_state(n):
    return dicke(n, 1)


def _from_terms(terms):
    n = len(next(iter(terms)))
    amps = np.zeros(2**n, dtype=np.complex128)
    for bits, amp in terms.items():
        amps[basis_index(bits)] = amp
    return StateVector(n, amps)


def _named():
    return {
        "G3": lambda: ghz(3),
        "G4": lambda: ghz(4),
        "W3": lambda: dicke(3, 1),
        "W4": lambda: dicke(4, 1),
        "X4": lambda: dicke(4, 2),
        "B4": lambda: _from_terms({"0000": 0.5, "0011": 0.5, "1100": 0.5, "1111": -0.5}),
        # two Bell pairs on qubits (0,2) and (1,3): |ab>|ab> summed over a, b
        "S4": lambda: _from_terms({"0000": 0.5, "0101": 0.5, "1010": 0.5, "1111": 0.5}),
        "SINGLET": lambda: _from_terms({"01": 1 / sqrt(2), "10": -1 / sqrt(2)}),
    }


NAMED_STATES = tuple(_named())


def named_state(name):
    """One of G3, G4, W3, W4, X4, B4, S4, SINGLET (case-insensitive)."""
    try:
        return _named()[name.upper()]()
    except KeyError:
        raise UnknownName(f"unknown state {name!r}; known: {', '.join(NAMED_STATES)}") from None


def density_of(psi):
    """Projector ``|psi><psi|``."""
    amps = psi.amplitudes
    norm = np.linalg.norm(amps)
    if abs(norm - 1) > NORM_TOL:
        raise NotNormalized(f"state norm is {norm:.12g}")
    return DensityMatrix(psi.n_qubits, np.outer(amps, amps.conj()))


def maximally_mixed(n):
    return DensityMatrix(n, np.eye(2**n, dtype=np.complex128) / 2**n)


def product_state(*qubits):
    """Tensor product of single-qubit amplitude pairs, normalized."""
    amps = np.ones(1, dtype=np.complex128)
    for q in qubits:
        q = np.asarray(q, dtype=np.complex128)
        amps = np.kron(amps, q / np.linalg.norm(q))
    return StateVector(len(qubits), amps)


def random_state(n, rng):
    """Haar-random pure state drawn from a numpy Generator."""
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return StateVector.from_amplitudes(amps, normalize=True)


def random_density(n, rng, rank=None):
    """Random mixed state ``G G^H / tr`` with a Ginibre factor of given rank."""
    dim = 2**n
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(n, rho / np.trace(rho).real)

"""Partial transposition, PPT tests over bipartite cuts, and entanglement diagnostics."""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import BadSubset, SizeOutOfRange
from .linalg import eigvalsh
from .states import MAX_QUBITS, DensityMatrix, QubitSubset, density_of

PPT_TOL = 1e-9
ENTROPY_CLAMP = 1e-10


@dataclass(frozen=True)
class CutReport:
    cut: QubitSubset
    min_pt_eigenvalue: float
    is_ppt: bool
    tolerance: float


def _as_density(rho):
    if isinstance(rho, DensityMatrix):
        return rho
    if hasattr(rho, "amplitudes"):
        return density_of(rho)
    return DensityMatrix.from_matrix(rho)


def partial_transpose(rho, cut):
    """Transpose the qubits in ``cut``: their row and column bits are exchanged."""
    rho = _as_density(rho)
    n = rho.n_qubits
    cut = QubitSubset.of(n, cut).require_cut()
    axes = list(range(2 * n))
    for q in cut:
        axes[q], axes[n + q] = axes[n + q], axes[q]
    t = np.asarray(rho.matrix).reshape((2,) * (2 * n)).transpose(axes)
    return t.reshape(rho.dim, rho.dim).copy()


def min_pt_eigenvalue(rho, cut, **kw):
    return float(eigvalsh(partial_transpose(rho, cut), **kw)[0])


def enumerate_cuts(n):
    """Each bipartition once, as the side not containing qubit 0.

    Ordered by size, then lexicographically; there are ``2**(n-1) - 1``.
    """
    if not 2 <= n <= MAX_QUBITS:
        raise SizeOutOfRange(f"qubit count {n} outside [2, {MAX_QUBITS}]")
    return [QubitSubset(n, c) for k in range(1, n) for c in combinations(range(1, n), k)]


def balanced_cut(n):
    """The cut ``{0, ..., n//2 - 1}``."""
    return QubitSubset(n, tuple(range(n // 2)))


def cut_report(rho, cut, tol=PPT_TOL):
    lam = min_pt_eigenvalue(rho, cut)
    return CutReport(QubitSubset.of(rho.n_qubits, cut), lam, lam >= -tol, tol)


def is_entangled_npt(rho, tol=PPT_TOL, workers=None):
    """PPT test over every bipartite cut.

    Returns ``(reports, entangled)`` where ``entangled`` is True iff some
    cut has a partial-transpose eigenvalue below ``-tol``. With ``workers``
    the cuts are evaluated on a thread pool (the compiled eigensolver
    releases the GIL); reports are always in :func:`enumerate_cuts` order.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    rho = _as_density(rho)
    cuts = enumerate_cuts(rho.n_qubits)
    if workers:
        with ThreadPoolExecutor(workers) as pool:
            reports = list(pool.map(lambda c: cut_report(rho, c, tol), cuts))
    else:
        reports = [cut_report(rho, c, tol) for c in cuts]
    return reports, any(not r.is_ppt for r in reports)


def partial_trace(rho, keep):
    """Reduced state on the qubits in ``keep`` (kept in ascending order)."""
    rho = _as_density(rho)
    n = rho.n_qubits
    keep = QubitSubset.of(n, keep)
    if not len(keep):
        raise BadSubset("partial trace needs at least one kept qubit")
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    rows = list(letters[:n])
    cols = [letters[n + q] if q in keep.members else rows[q] for q in range(n)]
    out = [rows[q] for q in keep] + [cols[q] for q in keep]
    spec = "".join(rows) + "".join(cols) + "->" + "".join(out)
    t = np.einsum(spec, np.asarray(rho.matrix).reshape((2,) * (2 * n)))
    k = len(keep)
    return DensityMatrix(k, t.reshape(2**k, 2**k))


def von_neumann_entropy(rho):
    """Entropy in bits, ``-sum l log2 l``; eigenvalues in [-1e-10, 0) count as 0."""
    lam = eigvalsh(np.asarray(getattr(rho, "matrix", rho)))
    if lam[0] < -ENTROPY_CLAMP:
        raise ValueError(f"matrix has eigenvalue {lam[0]:.3g}; not a density matrix")
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log2(lam)))


def entanglement_entropy(psi, cut):
    return von_neumann_entropy(partial_trace(density_of(psi), cut))


def schmidt_rank(psi, cut, tol=1e-9):
    """Number of reduced-state eigenvalues on ``cut`` exceeding ``tol``."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    cut = QubitSubset.of(psi.n_qubits, cut).require_cut()
    lam = eigvalsh(partial_trace(density_of(psi), cut).matrix)
    return int(np.sum(lam > tol))

"""Dense complex linear algebra: Kronecker products and a Jacobi eigensolver.

The eigensolver kernel is compiled from ``_jacobi.pyx`` when available; the
vectorized pure-Python kernel is used otherwise, or when the environment
variable ``ENTROBUST_PURE_PYTHON`` is set to a non-empty value.
"""
import os
from dataclasses import dataclass
from functools import reduce
from typing import Optional

import numpy as np

from . import _jacobi_py
from .errors import NoConvergence, NotHermitian

if os.environ.get("ENTROBUST_PURE_PYTHON"):
    _native = None
else:
    try:
        from . import _jacobi as _native
    except ImportError:
        _native = None

BACKEND = "cython" if _native is not None else "python"

MAX_SWEEPS = 100
OFF_DIAGONAL_RTOL = 1e-12
HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in ascending order with optional column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = None


def as_matrix(a):
    """Return ``a`` as a square complex128 array, checking finiteness."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def kron(a, b):
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(*factors):
    return reduce(kron, factors)


def hermitian_defect(a):
    """Largest entrywise deviation ``max |a - a^H|``."""
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def _check_hermitian(a):
    a = as_matrix(a)
    defect = hermitian_defect(a)
    if defect > HERMITIAN_TOL:
        raise NotHermitian(f"matrix deviates from Hermitian by {defect:.3g}")
    return a


def _kernel(backend):
    if backend is None:
        backend = BACKEND
    if backend == "cython":
        if _native is None:
            raise RuntimeError("compiled Jacobi kernel is not built")
        return _native.jacobi
    if backend == "python":
        return _jacobi_py.jacobi
    raise ValueError(f"unknown backend {backend!r}")


def hermitian_eigen(a, want_vectors=False, *, backend=None, max_sweeps=MAX_SWEEPS):
    """Full spectrum of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    a : array_like
        Hermitian matrix (tolerance 1e-10 entrywise).
    want_vectors : bool
        Also accumulate the eigenvectors as columns.
    backend : {"cython", "python"}, optional
        Force a kernel; defaults to the one selected at import.

    Returns
    -------
    Spectrum
        Ascending eigenvalues; ties keep their diagonal order.
    """
    a = _check_hermitian(a)
    m = a.shape[0]
    work = np.ascontiguousarray((a + a.conj().T) / 2)
    vecs = np.eye(m, dtype=np.complex128) if want_vectors else None
    tol = OFF_DIAGONAL_RTOL * np.linalg.norm(work)
    if m > 1 and tol > 0:
        sweeps = _kernel(backend)(work, vecs, max_sweeps, tol)
        if sweeps < 0:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps (dim {m})")
    values = work.diagonal().real.copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    if vecs is not None:
        vecs = vecs[:, order]
    return Spectrum(values, vecs)


def eigvalsh(a, **kw):
    return hermitian_eigen(a, False, **kw).eigenvalues


def hermitian_evolution(h, theta):
    """Unitary ``exp(-i theta h)`` built as ``sum_k exp(-i theta l_k) |v_k><v_k|``."""
    spec = hermitian_eigen(h, True)
    v = spec.eigenvectors
    return (v * np.exp(-1j * theta * spec.eigenvalues)) @ v.conj().T

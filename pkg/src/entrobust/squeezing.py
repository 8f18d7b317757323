"""Spin squeezing of qubit ensembles and its decay under local depolarization."""
from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from .channels import I2, SIGMA_X, SIGMA_Y, SIGMA_Z
from .errors import BadAxis, MeanSpinVanishes, OutOfRange, SizeOutOfRange
from .linalg import hermitian_eigen
from .states import DensityMatrix, StateVector

MAX_SPIN_QUBITS = 10
MEAN_SPIN_MIN = 1e-6


@dataclass(frozen=True, eq=False)
class CollectiveOperators:
    n: int
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray

    def __iter__(self):
        return iter((self.jx, self.jy, self.jz))

    def along(self, axis):
        ax, ay, az = axis
        return ax * self.jx + ay * self.jy + az * self.jz


@dataclass(frozen=True, eq=False)
class SqueezingReport:
    """Squeezing parameter in the optimal frame.

    ``frame`` rows are the unit vectors x, y, z with z along the mean spin
    and x the transverse direction of least variance.
    """

    xi_squared: float
    zeta: float
    frame: np.ndarray
    mean_spin: np.ndarray


def _check_n(n):
    if not 1 <= n <= MAX_SPIN_QUBITS:
        raise SizeOutOfRange(f"qubit count {n} outside [1, {MAX_SPIN_QUBITS}]")


def collective_operator(n, axis):
    """``(1/2) sum_q axis . sigma^(q)`` as a dense ``2**n`` matrix."""
    _check_n(n)
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (3,) or abs(np.linalg.norm(axis) - 1) > 1e-9:
        raise BadAxis(f"axis {axis} is not a unit 3-vector")
    single = (axis[0] * SIGMA_X + axis[1] * SIGMA_Y + axis[2] * SIGMA_Z) / 2
    out = np.zeros((2**n, 2**n), dtype=np.complex128)
    for q in range(n):
        out += np.kron(np.kron(np.eye(2**q), single), np.eye(2 ** (n - q - 1)))
    return out


@lru_cache(maxsize=16)
def collective_operators(n):
    ops = [collective_operator(n, e) for e in np.eye(3)]
    for op in ops:
        op.setflags(write=False)
    return CollectiveOperators(n, *ops)


def _moments(state):
    """Mean spin vector and symmetrized second-moment matrix."""
    if isinstance(state, StateVector):
        n = state.n_qubits
        psi = state.amplitudes
        applied = [j @ psi for j in collective_operators(n)]
        mean = np.array([np.vdot(psi, v).real for v in applied])
        second = np.array([[np.vdot(u, v).real for v in applied] for u in applied])
        return n, mean, second
    rho = state if isinstance(state, DensityMatrix) else DensityMatrix.from_matrix(state)
    n = rho.n_qubits
    ops = list(collective_operators(n))
    mat = np.asarray(rho.matrix)
    mean = np.array([np.trace(mat @ j).real for j in ops])
    prods = [[j @ k for k in ops] for j in ops]
    second = np.array([[np.trace(mat @ (prods[a][b] + prods[b][a])).real / 2 for b in range(3)] for a in range(3)])
    return n, mean, second


def _transverse_basis(z):
    ref = np.array([1.0, 0.0, 0.0]) if abs(z[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(z, ref)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(z, e1)


def xi_squared(state):
    """Squeezing parameter ``n <J_x^2> / (<J_y>^2 + <J_z>^2)`` in the optimal frame.

    z points along the mean spin; x is the eigenvector of the smaller
    eigenvalue of the 2x2 transverse covariance, and ``y = z cross x``.
    Accepts a :class:`StateVector` or :class:`DensityMatrix`.
    """
    n, mean, second = _moments(state)
    length = np.linalg.norm(mean)
    if length <= MEAN_SPIN_MIN:
        raise MeanSpinVanishes(f"mean spin length {length:.3g}")
    z = mean / length
    e1, e2 = _transverse_basis(z)
    basis = np.array([e1, e2])
    cov = basis @ second @ basis.T
    spec = hermitian_eigen(cov, True)
    u = spec.eigenvectors[:, 0].real
    x = u[0] * e1 + u[1] * e2
    x /= np.linalg.norm(x)
    frame = np.array([x, np.cross(z, x), z])
    xi2 = n * spec.eigenvalues[0] / length**2
    return SqueezingReport(float(xi2), float(2 * length / n), frame, mean)


def xi_squared_in_frame(state, frame):
    """Squeezing parameter for a fixed frame (rows x, y, z), no optimization."""
    n, mean, second = _moments(state)
    x, y, z = np.asarray(frame, dtype=float)
    denom = (y @ mean) ** 2 + (z @ mean) ** 2
    if denom <= MEAN_SPIN_MIN**2:
        raise MeanSpinVanishes(f"mean spin length {math.sqrt(denom):.3g} in frame")
    return float(n * (x @ second @ x) / denom)


def spin_moments(state, axis):
    """``(<J_a>, <J_a^2>)`` along a unit axis."""
    _, mean, second = _moments(state)
    axis = np.asarray(axis, dtype=float)
    return float(axis @ mean), float(axis @ second @ axis)


def depolarized_moments(n, mean, second, s):
    """Image of ``(<J_a>, <J_a^2>)`` under local depolarization with scaling ``s``."""
    return s * mean, (1 - s * s) * n / 4 + s * s * second


def _walsh_hadamard(vec, n):
    t = vec.reshape((2,) * n)
    h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    for q in range(n):
        t = np.moveaxis(np.tensordot(h, t, axes=([1], [q])), 0, q)
    return t.reshape(-1)


def one_axis_twist(n, mu):
    """``exp(-i mu J_x^2) |0...0>``.

    Uses ``H^n J_x H^n = J_z`` so the generator is diagonal: the coherent
    state is rotated to the x basis, phased by ``exp(-i mu m^2)`` with
    ``m = n/2 - popcount``, and rotated back.
    """
    _check_n(n)
    idx = np.arange(2**n)
    ones = np.zeros_like(idx)
    for b in range(n):
        ones += (idx >> b) & 1
    m = n / 2 - ones
    psi = np.full(2**n, 2 ** (-n / 2), dtype=np.complex128)
    psi = _walsh_hadamard(psi * np.exp(-1j * mu * m * m), n)
    return StateVector(n, psi / np.linalg.norm(psi))


def twist_scan(n, n_points=200):
    """Reports over ``n_points`` interior points of ``mu`` in (0, pi/2).

    Returns ``[(mu, report or None)]``; None marks a vanishing mean spin.
    """
    out = []
    for mu in np.linspace(0.0, np.pi / 2, n_points + 2)[1:-1]:
        try:
            out.append((float(mu), xi_squared(one_axis_twist(n, mu))))
        except MeanSpinVanishes:
            out.append((float(mu), None))
    return out


def best_twist(n, n_points=200):
    scan = [(mu, r) for mu, r in twist_scan(n, n_points) if r is not None]
    return min(scan, key=lambda item: item[1].xi_squared)


def xi_after_depolarization(xi0_sq, zeta, s):
    """``(1 - s^2) / (zeta^2 s^2) + xi0^2``."""
    if not 0.0 < s <= 1.0:
        raise OutOfRange(f"scaling factor {s} outside (0, 1]")
    if not 0.0 < zeta <= 1.0 + 1e-9:
        raise OutOfRange(f"polarization {zeta} outside (0, 1]")
    if xi0_sq < 0:
        raise OutOfRange("squeezing parameter must be non-negative")
    return (1 - s * s) / (zeta * zeta * s * s) + xi0_sq


def scrit_squeezed(zeta, xi0_sq):
    """Smallest scaling factor keeping ``xi^2 < 1``: ``1/sqrt(1 + zeta^2 (1 - xi0^2))``."""
    if not 0.0 <= zeta <= 1.0 + 1e-9:
        raise OutOfRange(f"polarization {zeta} outside [0, 1]")
    if not 0.0 <= xi0_sq <= 1.0:
        raise OutOfRange(f"squeezing parameter {xi0_sq} outside [0, 1]")
    return 1.0 / math.sqrt(1 + zeta * zeta * (1 - xi0_sq))

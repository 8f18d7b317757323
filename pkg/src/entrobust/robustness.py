"""Critical depolarization: closed forms for GHZ states and numeric bisection."""
import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channels import depolarize
from .errors import NonMonotonic, NotEntangledAtZero, OutOfRange
from .separability import PPT_TOL, balanced_cut, enumerate_cuts, min_pt_eigenvalue
from .states import QubitSubset, density_of, ghz, named_state

DEFAULT_TOL = 5e-4
MAX_BISECTIONS = 40
SCRIT_TOL = 1e-9


class Criterion(str, enum.Enum):
    # PPT boundary is the separability boundary (GHZ-diagonal states)
    NPT_EXACT_GHZ = "NPT_EXACT_GHZ"
    # PPT boundary only ends the sufficient NPT certificate
    NPT_SUFFICIENT = "NPT_SUFFICIENT"


@dataclass(frozen=True)
class GhzCoefficients:
    n: int
    k: int
    s: float
    lambda_k: float
    offdiag: float

    @property
    def entangled(self):
        return self.offdiag > self.lambda_k


@dataclass(frozen=True)
class RobustnessReport:
    label: str
    per_cut: tuple
    overall: float
    tolerance: float
    criterion: Criterion

    def d_crit(self, cut):
        for c, d in self.per_cut:
            if c.members == tuple(sorted(cut)):
                return d
        raise KeyError(cut)


def _check_s(s):
    if not 0.0 <= s <= 1.0:
        raise OutOfRange(f"scaling factor {s} outside [0, 1]")


def ghz_lambda(n, k, s):
    """Weight of each diagonal term with ``k`` zeros in the depolarized GHZ state."""
    if not 0 <= k <= n:
        raise OutOfRange(f"k={k} outside [0, {n}]")
    _check_s(s)
    a, b = (1 + s) / 2, (1 - s) / 2
    return 0.5 * (a**k * b ** (n - k) + a ** (n - k) * b**k)


def ghz_coefficients(n, s):
    k = n // 2
    return GhzCoefficients(n, k, s, ghz_lambda(n, k, s), s**n / 2)


def ghz_is_entangled(n, s):
    """NPT (hence entangled) iff ``s**n / 2`` exceeds the smallest ``lambda_k``."""
    if n < 2:
        raise OutOfRange("need at least two qubits")
    return ghz_coefficients(n, s).entangled


def _log_gap(n, k, s):
    # log(s^n/2) - log(lambda_k), finite for 0 < s < 1 at any n
    la, lb = math.log((1 + s) / 2), math.log((1 - s) / 2)
    log_lam = math.log(0.5) + np.logaddexp(k * la + (n - k) * lb, (n - k) * la + k * lb)
    return n * math.log(s) - math.log(2) - log_lam


def ghz_scrit(n):
    """Critical scaling factor below which depolarized GHZ_n is separable.

    Even ``n`` uses ``1/sqrt(2**(2 - 2/n) + 1)``; odd ``n`` bisects the
    same criterion at ``k = (n-1)/2`` to width 1e-9.
    """
    if n < 2:
        raise OutOfRange("need at least two qubits")
    if n % 2 == 0:
        return 1.0 / math.sqrt(2 ** (2 - 2 / n) + 1)
    k = (n - 1) // 2
    lo, hi = 0.0, 1.0
    while hi - lo > SCRIT_TOL:
        mid = (lo + hi) / 2
        if _log_gap(n, k, mid) > 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def ghz_scrit_limit():
    return 1.0 / math.sqrt(5.0)


def _pt_curve(rho, cut):
    full = QubitSubset.all(rho.n_qubits)
    return lambda d: min_pt_eigenvalue(depolarize(rho, full, d), cut)


def dcrit_cut(psi, cut, tol=DEFAULT_TOL, ppt_tol=PPT_TOL):
    """Depolarization at which ``psi`` turns PPT across ``cut``.

    Bisects ``d`` in [0, 1] on the sign of the smallest partial-transpose
    eigenvalue until the bracket is narrower than ``tol`` (at most 40
    halvings) and returns its midpoint. A three-point sweep at
    ``d +- 10 tol`` then checks for a single crossing.
    """
    if tol <= 0:
        raise OutOfRange("tolerance must be positive")
    rho = density_of(psi)
    cut = QubitSubset.of(psi.n_qubits, cut).require_cut()
    f = _pt_curve(rho, cut)
    f0 = f(0.0)
    if f0 >= -ppt_tol:
        raise NotEntangledAtZero(f"state is PPT across {cut} without noise (min eigenvalue {f0:.3g})")
    lo, hi = 0.0, 1.0
    if f(hi) < -ppt_tol:
        raise NonMonotonic(f"still NPT across {cut} at d=1")
    for _ in range(MAX_BISECTIONS):
        if hi - lo <= tol:
            break
        mid = (lo + hi) / 2
        if f(mid) < -ppt_tol:
            lo = mid
        else:
            hi = mid
    d = (lo + hi) / 2
    left, right = max(0.0, d - 10 * tol), min(1.0, d + 10 * tol)
    fl, fd, fr = f(left), f(d), f(right)
    if fr < -ppt_tol or fl > fd + ppt_tol or fd > fr + ppt_tol:
        raise NonMonotonic(
            f"PT eigenvalue around d={d:.4f} across {cut}: {fl:.3g}, {fd:.3g}, {fr:.3g}"
        )
    return d


def _is_ghz(psi):
    return abs(np.vdot(ghz(psi.n_qubits).amplitudes, psi.amplitudes)) > 1 - 1e-12


def dcrit_state(psi, tol=DEFAULT_TOL, label="state", workers=None):
    """Run :func:`dcrit_cut` over every bipartite cut.

    Cuts that are already PPT without noise are recorded with ``d_crit = 0``;
    the overall value is the maximum over cuts.
    """
    cuts = enumerate_cuts(psi.n_qubits)

    def one(cut):
        try:
            return dcrit_cut(psi, cut, tol)
        except NotEntangledAtZero:
            return None

    if workers:
        with ThreadPoolExecutor(workers) as pool:
            values = list(pool.map(one, cuts))
    else:
        values = [one(c) for c in cuts]
    if all(v is None for v in values):
        raise NotEntangledAtZero(f"{label} is PPT across every cut")
    per_cut = tuple((c, 0.0 if v is None else v) for c, v in zip(cuts, values))
    criterion = Criterion.NPT_EXACT_GHZ if _is_ghz(psi) else Criterion.NPT_SUFFICIENT
    return RobustnessReport(label, per_cut, max(d for _, d in per_cut), tol, criterion)


@dataclass(frozen=True)
class TableEntry:
    state: str
    cut_type: str
    cut: tuple
    reference: float


# reference critical depolarizations, with the representative cut used here
TABLE1 = (
    TableEntry("G3", "1-2", (0,), 0.443),
    TableEntry("W3", "1-2", (0,), 0.425),
    TableEntry("G4", "1-3", (0,), 0.423),
    TableEntry("G4", "2-2", (0, 1), 0.489),
    TableEntry("W4", "1-3", (0,), 0.423),
    TableEntry("W4", "2-2", (0, 1), 0.423),
    TableEntry("X4", "1-3", (0,), 0.416),
    TableEntry("X4", "2-2", (0, 1), 0.453),
    TableEntry("B4", "1-3", (0,), 0.468),
    TableEntry("B4", "2-2", (0, 1), 0.450),
)
TABLE1_TOL = 1e-3


def table1(tol=DEFAULT_TOL):
    """``(entry, d_crit)`` for every cell of the reference table."""
    return [(e, dcrit_cut(named_state(e.state), e.cut, tol)) for e in TABLE1]

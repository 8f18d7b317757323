"""Vectorized Jacobi eigensolver used when the compiled kernel is unavailable.

Rotations are grouped with a round-robin tournament ordering so that every
group acts on disjoint index pairs and can be applied in one numpy step.
"""
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=32)
def _rounds(m):
    players = list(range(m + (m % 2)))
    half = len(players) // 2
    out = []
    for _ in range(len(players) - 1):
        pairs = [(players[i], players[-1 - i]) for i in range(half)]
        pairs = [(min(a, b), max(a, b)) for a, b in pairs if a < m and b < m]
        if pairs:
            p, q = zip(*pairs)
            out.append((np.array(p), np.array(q)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(out)


def jacobi(a, v, max_sweeps, tol):
    """Diagonalize the Hermitian array ``a`` in place.

    ``v`` (or None) accumulates the rotations. Returns the number of sweeps
    used, or -1 when the off-diagonal norm is still above ``tol`` after
    ``max_sweeps``.
    """
    m = a.shape[0]
    skip = tol / m
    for sweep in range(max_sweeps + 1):
        off = np.linalg.norm(a[~np.eye(m, dtype=bool)])
        if off <= tol:
            return sweep
        if sweep == max_sweeps:
            break
        for p, q in _rounds(m):
            apq = a[p, q]
            r = np.abs(apq)
            live = r > skip
            if not live.any():
                continue
            p, q, apq, r = p[live], q[live], apq[live], r[live]
            e = apq / r
            tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            ce = c * e
            se = s * e
            cp = a[:, p].copy()
            cq = a[:, q]
            a[:, p] = cp * c - cq * se.conj()
            a[:, q] = cp * s + cq * ce.conj()
            rp = a[p, :].copy()
            rq = a[q, :]
            a[p, :] = c[:, None] * rp - se[:, None] * rq
            a[q, :] = s[:, None] * rp + ce[:, None] * rq
            a[p, q] = 0.0
            a[q, p] = 0.0
            if v is not None:
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = vp * c - vq * se.conj()
                v[:, q] = vp * s + vq * ce.conj()
    return -1

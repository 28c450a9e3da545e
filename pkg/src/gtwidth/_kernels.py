"""Floating-point inner loops of the sampling oracles.

Each kernel has a pure-numpy version and a numba ``@njit`` version with the
same signature.  The numba versions are used when numba imports and the
environment variable ``GTWIDTH_DISABLE_NUMBA`` is unset or ``0``.

``min_slack`` is the exception: one BLAS matmul beats the compiled loop (see
``benchmarks/bench_kernels.py``), so the dispatcher always takes the numpy path
and the compiled loop is kept only as a cross-check.
"""

from __future__ import annotations

import os

import numpy as np


def min_slack_numpy(A, b, X):
    """``min_{s,i} (b_i - A_i . X_s)`` over samples ``X`` (rows)."""
    if X.shape[0] == 0 or A.shape[0] == 0:
        return np.inf
    return float(np.min(b[None, :] - X @ A.T))


def _psi(z, out):
    N = z.shape[0] // 2
    for j in range(N):
        x = z[2 * j]
        r = np.sqrt(z[2 * j + 1])
        out[2 * j] = r * np.cos(2.0 * x)
        out[2 * j + 1] = -r * np.sin(2.0 * x)


def psi_deviation_numpy(points, h):
    """Max over points of ``||J^T Omega J - Omega||_inf`` with central differences."""
    P, D = points.shape
    N = D // 2
    omega = np.zeros((D, D))
    for j in range(N):
        omega[2 * j, 2 * j + 1] = 1.0
        omega[2 * j + 1, 2 * j] = -1.0
    eye = np.eye(D) * h
    # (P, D, D): column c of J is (psi(z + h e_c) - psi(z - h e_c)) / 2h
    plus = points[:, None, :] + eye[None, :, :]
    minus = points[:, None, :] - eye[None, :, :]

    def psi_batch(z):
        x = z[..., 0::2]
        r = np.sqrt(z[..., 1::2])
        out = np.empty_like(z)
        out[..., 0::2] = r * np.cos(2.0 * x)
        out[..., 1::2] = -r * np.sin(2.0 * x)
        return out

    J = np.swapaxes((psi_batch(plus) - psi_batch(minus)) / (2.0 * h), 1, 2)
    M = np.swapaxes(J, 1, 2) @ omega @ J - omega
    return float(np.max(np.sum(np.abs(M), axis=2))) if P else 0.0


def _min_slack_loop(A, b, X):
    best = np.inf
    m, n = A.shape
    for s in range(X.shape[0]):
        for i in range(m):
            acc = b[i]
            for j in range(n):
                acc -= A[i, j] * X[s, j]
            if acc < best:
                best = acc
    return best


def _psi_deviation_loop(points, h):
    P, D = points.shape
    N = D // 2
    J = np.empty((D, D))
    zp = np.empty(D)
    zm = np.empty(D)
    fp = np.empty(D)
    fm = np.empty(D)
    worst = 0.0
    for p in range(P):
        for c in range(D):
            for i in range(D):
                zp[i] = points[p, i]
                zm[i] = points[p, i]
            zp[c] += h
            zm[c] -= h
            _psi_nb(zp, fp)
            _psi_nb(zm, fm)
            for i in range(D):
                J[i, c] = (fp[i] - fm[i]) / (2.0 * h)
        # (J^T Omega J)_{ab} = sum_j J[2j,a] J[2j+1,b] - J[2j+1,a] J[2j,b]
        for a in range(D):
            row = 0.0
            for bcol in range(D):
                acc = 0.0
                for j in range(N):
                    acc += J[2 * j, a] * J[2 * j + 1, bcol] - J[2 * j + 1, a] * J[2 * j, bcol]
                if a % 2 == 0 and bcol == a + 1:
                    acc -= 1.0
                elif a % 2 == 1 and bcol == a - 1:
                    acc += 1.0
                row += abs(acc)
            if row > worst:
                worst = row
    return worst


def _disabled() -> bool:
    return os.environ.get("GTWIDTH_DISABLE_NUMBA", "0") not in ("", "0")


try:
    if _disabled():
        raise ImportError("disabled by GTWIDTH_DISABLE_NUMBA")
    from numba import njit

    _psi_nb = njit(cache=True)(_psi)
    min_slack_numba = njit(cache=True)(_min_slack_loop)
    psi_deviation_numba = njit(cache=True)(_psi_deviation_loop)
    BACKEND = "numba"
except ImportError:
    _psi_nb = _psi
    min_slack_numba = None
    psi_deviation_numba = None
    BACKEND = "numpy"


def min_slack(A, b, X) -> float:
    A = np.ascontiguousarray(A, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    X = np.ascontiguousarray(X, dtype=np.float64)
    return min_slack_numpy(A, b, X)


def psi_deviation(points, h) -> float:
    points = np.ascontiguousarray(points, dtype=np.float64)
    if BACKEND == "numba":
        return float(psi_deviation_numba(points, float(h)))
    return psi_deviation_numpy(points, h)

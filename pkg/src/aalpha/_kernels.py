"""Hot numeric loops: shifted power iteration and batched Pruefer decoding.

Each kernel exists twice.  The loop version is written in the numba-compatible
subset and compiled with ``@njit`` when numba imports; the fallback is plain
vectorised numpy.  Setting ``AALPHA_DISABLE_NUMBA=1`` forces the numpy path.
Both variants stay importable so tests and the benchmark can compare them.
"""

import math
import os

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    njit = None

NUMBA_AVAILABLE = njit is not None
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("AALPHA_DISABLE_NUMBA", "") not in ("1", "true", "yes")


def _power_iteration_loops(m, tol, max_iter):
    n = m.shape[0]
    x = np.empty(n)
    y = np.empty(n)
    inv = 1.0 / math.sqrt(n)
    for i in range(n):
        x[i] = inv
    lam = 0.0
    residual = np.inf
    it = 0
    while it < max_iter:
        it += 1
        for i in range(n):
            s = 0.0
            for j in range(n):
                s += m[i, j] * x[j]
            y[i] = s
        lam = 0.0
        for i in range(n):
            lam += x[i] * y[i]
        residual = 0.0
        for i in range(n):
            r = abs(y[i] - lam * x[i])
            if r > residual:
                residual = r
        if residual <= tol:
            return lam, x, it, residual, True
        norm = 0.0
        for i in range(n):
            norm += y[i] * y[i]
        norm = math.sqrt(norm)
        for i in range(n):
            x[i] = y[i] / norm
    return lam, x, it, residual, False


def _power_iteration_numpy(m, tol, max_iter):
    n = m.shape[0]
    x = np.full(n, 1.0 / math.sqrt(n))
    lam, residual = 0.0, np.inf
    for it in range(1, max_iter + 1):
        y = m @ x
        lam = float(x @ y)
        residual = float(np.max(np.abs(y - lam * x)))
        if residual <= tol:
            return lam, x, it, residual, True
        x = y / np.linalg.norm(y)
    return lam, x, max_iter, residual, False


def _prufer_decode_loops(seqs, n):
    k = seqs.shape[0]
    out = np.empty((k, n - 1, 2), dtype=np.int64)
    degree = np.empty(n, dtype=np.int64)
    for row in range(k):
        for v in range(n):
            degree[v] = 1
        for i in range(n - 2):
            degree[seqs[row, i]] += 1
        for i in range(n - 2):
            a = seqs[row, i]
            leaf = 0
            while degree[leaf] != 1:
                leaf += 1
            out[row, i, 0] = leaf
            out[row, i, 1] = a
            degree[leaf] -= 1
            degree[a] -= 1
        u = -1
        for v in range(n):
            if degree[v] == 1:
                if u < 0:
                    u = v
                else:
                    out[row, n - 2, 0] = u
                    out[row, n - 2, 1] = v
    return out


def _prufer_decode_numpy(seqs, n):
    k = seqs.shape[0]
    out = np.empty((k, n - 1, 2), dtype=np.int64)
    base = np.ones((k, n), dtype=np.int64)
    for i in range(n - 2):
        np.add.at(base, (np.arange(k), seqs[:, i]), 1)
    degree = base
    rows = np.arange(k)
    for i in range(n - 2):
        a = seqs[:, i]
        leaf = np.argmax(degree == 1, axis=1)
        out[:, i, 0] = leaf
        out[:, i, 1] = a
        degree[rows, leaf] -= 1
        degree[rows, a] -= 1
    last = np.argsort(degree != 1, axis=1, kind="stable")[:, :2]
    out[:, n - 2, :] = last
    return out


if NUMBA_AVAILABLE:
    power_iteration_numba = njit(cache=True, nogil=True)(_power_iteration_loops)
    prufer_decode_numba = njit(cache=True, nogil=True)(_prufer_decode_loops)
else:  # pragma: no cover
    power_iteration_numba = None
    prufer_decode_numba = None

if USE_NUMBA:
    power_iteration = power_iteration_numba
    _prufer_impl = prufer_decode_numba
else:
    power_iteration = _power_iteration_numpy
    _prufer_impl = _prufer_decode_numpy


def prufer_decode(seqs, n):
    """Decode a (k, n-2) array of Pruefer rows into a (k, n-1, 2) edge array."""
    seqs = np.ascontiguousarray(seqs, dtype=np.int64)
    if n < 2 or seqs.ndim != 2 or seqs.shape[1] != n - 2:
        raise ValueError(f"expected rows of length n - 2 = {n - 2}, got shape {seqs.shape}")
    if seqs.size and (seqs.min() < 0 or seqs.max() >= n):
        raise ValueError(f"Pruefer entries must lie in [0, {n})")
    return _prufer_impl(seqs, n)

BACKEND = "numba" if USE_NUMBA else "numpy"

"""Float kernels for the pairwise determinant scan.

Two interchangeable backends compute the same certified bounds:

* ``numba``: ``@njit(nogil=True)`` loops, run from a thread pool;
* ``numpy``: blocked broadcasting over row slabs.

The backend is picked at import time: numba when importable, unless the
environment sets ``DECAYLAB_NO_NUMBA=1``.  Every function also takes an
explicit ``backend=`` so both paths can be exercised side by side.

For a user-1 row (x1, sigma(x1)) and a user-2 column (sigma(x2), gamma*x2)
the determinant is ``x1*sigma(x2) - sigma(x1)*(gamma*x2)``.  Each complex
input carries a weight ``w >= |a| + |b| + tau*(|c| + |d|)`` of its integer
coordinates; the rounding error of the float determinant is at most
``ERR_FACTOR * (w_x1*w_s2 + w_s1*w_g2)``.
"""
from __future__ import annotations

import math
import os

import numpy as np

__all__ = [
    "BACKEND",
    "HAVE_NUMBA",
    "ERR_FACTOR",
    "available_backends",
    "resolve_backend",
    "row_bounds",
    "row_candidates",
]

# 2**-53 unit roundoff times a generous constant; the per-term analysis
# gives roughly 13u, doubled twice for the modulus and the squaring.
ERR_FACTOR = 64.0 * 2.0**-53

_BLOCK_ELEMS = 1 << 21

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def _env_disabled() -> bool:
    return os.environ.get("DECAYLAB_NO_NUMBA", "").strip().lower() in ("1", "true", "yes")


BACKEND = "numba" if HAVE_NUMBA and not _env_disabled() else "numpy"


def available_backends() -> list[str]:
    return ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]


def resolve_backend(backend: str | None) -> str:
    if backend is None:
        return BACKEND
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return backend


# -- numpy path --------------------------------------------------------------


def _row_bounds_numpy(x1, s1, w1, w1s, s2, g2, w2s, w2g, lo_out, hi_out):
    n2 = s2.shape[0]
    step = max(1, _BLOCK_ELEMS // max(n2, 1))
    for start in range(0, x1.shape[0], step):
        sl = slice(start, start + step)
        det = x1[sl, None] * s2[None, :] - s1[sl, None] * g2[None, :]
        mag = np.abs(det)
        err = ERR_FACTOR * (w1[sl, None] * w2s[None, :] + w1s[sl, None] * w2g[None, :])
        lo = np.maximum(mag - err, 0.0)
        lo *= lo
        hi = mag + err
        hi *= hi
        lo_out[sl] = lo.min(axis=1)
        hi_out[sl] = hi.min(axis=1)


def _row_candidates_numpy(x1, s1, w1, w1s, s2, g2, w2s, w2g, threshold):
    det = x1[:, None] * s2[None, :] - s1[:, None] * g2[None, :]
    err = ERR_FACTOR * (w1[:, None] * w2s[None, :] + w1s[:, None] * w2g[None, :])
    lo = np.maximum(np.abs(det) - err, 0.0)
    return lo * lo <= threshold


# -- numba path --------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _row_bounds_nb(x1, s1, w1, w1s, s2, g2, w2s, w2g, lo_out, hi_out):
        n1 = x1.shape[0]
        n2 = s2.shape[0]
        for i in range(n1):
            xr = x1[i].real
            xi = x1[i].imag
            sr = s1[i].real
            si = s1[i].imag
            wa = w1[i]
            wb = w1s[i]
            best_lo = np.inf
            best_hi = np.inf
            for j in range(n2):
                pr = s2[j].real
                pi = s2[j].imag
                qr = g2[j].real
                qi = g2[j].imag
                dr = (xr * pr - xi * pi) - (sr * qr - si * qi)
                di = (xr * pi + xi * pr) - (sr * qi + si * qr)
                mag = math.sqrt(dr * dr + di * di)
                err = ERR_FACTOR * (wa * w2s[j] + wb * w2g[j])
                lo = mag - err
                if lo < 0.0:
                    lo = 0.0
                lo = lo * lo
                hi = (mag + err) * (mag + err)
                if lo < best_lo:
                    best_lo = lo
                if hi < best_hi:
                    best_hi = hi
            lo_out[i] = best_lo
            hi_out[i] = best_hi

    @njit(cache=True, nogil=True)
    def _row_candidates_nb(x1, s1, w1, w1s, s2, g2, w2s, w2g, threshold):
        n1 = x1.shape[0]
        n2 = s2.shape[0]
        out = np.zeros((n1, n2), dtype=np.bool_)
        for i in range(n1):
            for j in range(n2):
                d = x1[i] * s2[j] - s1[i] * g2[j]
                mag = math.sqrt(d.real * d.real + d.imag * d.imag)
                err = ERR_FACTOR * (w1[i] * w2s[j] + w1s[i] * w2g[j])
                lo = mag - err
                if lo < 0.0:
                    lo = 0.0
                out[i, j] = lo * lo <= threshold
        return out


def row_bounds(rows, cols, backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Per-row minima of certified lower and upper bounds on |det|^2.

    ``rows`` is ``(x1, s1, w1, w1s)`` and ``cols`` is ``(s2, g2, w2s, w2g)``,
    all 1-D arrays (complex128 values, float64 weights).
    """
    backend = resolve_backend(backend)
    n1 = rows[0].shape[0]
    lo = np.empty(n1, dtype=np.float64)
    hi = np.empty(n1, dtype=np.float64)
    if n1 == 0:
        return lo, hi
    if backend == "numba":
        _row_bounds_nb(*rows, *cols, lo, hi)
    else:
        _row_bounds_numpy(*rows, *cols, lo, hi)
    return lo, hi


def row_candidates(rows, cols, threshold: float, backend: str | None = None) -> np.ndarray:
    """Boolean (len(rows), len(cols)) mask of pairs whose lower bound is <= threshold."""
    backend = resolve_backend(backend)
    if backend == "numba":
        return _row_candidates_nb(*rows, *cols, float(threshold))
    return _row_candidates_numpy(*rows, *cols, float(threshold))


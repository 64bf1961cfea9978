"""Exhaustive minimum-determinant search over the two users' boxes.

The decay function D(N1, N2) is the smallest |det X| over nonzero pairs
with every coordinate in [-N1, N1] (user 1) and [-N2, N2] (user 2).  We
track |det|^2, which lives in Z[tau] and compares exactly.

Search outline:

1. Reduce each user's box by the unit group {1, i, -1, -i}: multiplying
   either user by a unit multiplies det by a unit, so one lexicographic
   representative per orbit suffices (16x fewer pairs).
2. Scan all representative pairs in float with a certified rounding margin
   (see :mod:`decaylab.kernels`).  Work is split into contiguous chunks of
   user-1 representatives; each chunk keeps its own best.
3. Pairs whose certified lower bound does not exceed the chunk's best
   certified upper bound (times ``1 + REL_MARGIN``) are re-evaluated
   exactly and compared with :func:`~decaylab.exact_ring.cmp_quad`.
4. Chunk bests are merged exactly; ties go to the lexicographically
   smallest ``(witness1, witness2)``.
"""
from __future__ import annotations

import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Literal

import numpy as np

from . import kernels
from .codes import DEFAULT_CONFIG, CodeConfig, UserCoords, det_abs_squared, user_element
from .exact_ring import TAU, QuadInt, cmp_quad

__all__ = [
    "DEFAULT_BUDGET",
    "REL_MARGIN",
    "BudgetExceeded",
    "SearchBox",
    "DecayRecord",
    "enumerate_orbit_reps",
    "orbit_rep_array",
    "reduced_pair_count",
    "decay",
    "decay_series",
]

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**10
REL_MARGIN = 1e-9


class BudgetExceeded(RuntimeError):
    """Raised when a search would visit more reduced pairs than allowed."""


@dataclass(frozen=True)
class SearchBox:
    N1: int
    N2: int

    def __post_init__(self):
        for name in ("N1", "N2"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")


@dataclass(frozen=True)
class DecayRecord:
    n1: int
    n2: int
    min_detsq: QuadInt
    min_detsq_float: float
    witness1: UserCoords
    witness2: UserCoords
    orbit_reduced_count: int
    visited_pairs: int
    wall_time: float
    confirmed_pairs: int = field(default=0, compare=False)

    @property
    def decay_value(self) -> float:
        """D(N1, N2) = sqrt(min |det|^2)."""
        return math.sqrt(self.min_detsq_float)

    def reevaluate(self, cfg: CodeConfig = DEFAULT_CONFIG) -> QuadInt:
        return det_abs_squared(user_element(self.witness1), user_element(self.witness2), cfg)

    def same_result(self, other: DecayRecord) -> bool:
        """Equality ignoring timing and traversal counters."""
        return (
            self.n1 == other.n1
            and self.n2 == other.n2
            and self.min_detsq == other.min_detsq
            and self.witness1 == other.witness1
            and self.witness2 == other.witness2
        )


def _lex_keys(pts: np.ndarray, N: int) -> np.ndarray:
    base = 2 * N + 1
    shifted = pts + N
    return ((shifted[:, 0] * base + shifted[:, 1]) * base + shifted[:, 2]) * base + shifted[:, 3]


def orbit_rep_array(N: int) -> np.ndarray:
    """(((2N+1)^4 - 1)/4, 4) int64 array of orbit representatives in lexicographic order."""
    if not isinstance(N, (int, np.integer)) or isinstance(N, bool) or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    rng = np.arange(-N, N + 1, dtype=np.int64)
    pts = np.stack(np.meshgrid(rng, rng, rng, rng, indexing="ij"), axis=-1).reshape(-1, 4)
    pts = pts[np.any(pts != 0, axis=1)]
    a, b, c, d = pts.T
    key = _lex_keys(pts, N)
    keep = np.ones(len(pts), dtype=bool)
    # i*x, -x, -i*x
    for rot in ((-b, a, -d, c), (-a, -b, -c, -d), (b, -a, d, -c)):
        keep &= key < _lex_keys(np.stack(rot, axis=1), N)
    return pts[keep]


def enumerate_orbit_reps(N: int) -> list[UserCoords]:
    """One representative (the lexicographic minimum) per unit orbit of the nonzero box."""
    return [UserCoords(*map(int, row)) for row in orbit_rep_array(N)]


def reduced_pair_count(N1: int, N2: int) -> int:
    return (((2 * N1 + 1) ** 4 - 1) // 4) * (((2 * N2 + 1) ** 4 - 1) // 4)


def _ring_mul_arrays(x: np.ndarray, g: tuple[int, int, int, int]) -> np.ndarray:
    a, b, c, d = (x[:, k] for k in range(4))
    ga, gb, gc, gd = g
    ac_r, ac_i = a * ga - b * gb, a * gb + b * ga
    bd_r, bd_i = c * gc - d * gd, c * gd + d * gc
    ad_r, ad_i = a * gc - b * gd, a * gd + b * gc
    bc_r, bc_i = c * ga - d * gb, c * gb + d * ga
    return np.stack([ac_r + bd_r, ac_i + bd_i, ad_r + bc_r + bd_r, ad_i + bc_i + bd_i], axis=1)


def _sigma_arrays(x: np.ndarray) -> np.ndarray:
    a, b, c, d = (x[:, k] for k in range(4))
    return np.stack([a + c, b + d, -c, -d], axis=1)


def _values(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    xf = x.astype(np.float64)
    vals = (xf[:, 0] + xf[:, 2] * TAU) + 1j * (xf[:, 1] + xf[:, 3] * TAU)
    weight = np.abs(xf[:, 0]) + np.abs(xf[:, 1]) + TAU * (np.abs(xf[:, 2]) + np.abs(xf[:, 3]))
    return vals.astype(np.complex128), weight


def _row_arrays(reps: np.ndarray):
    x, wx = _values(reps)
    s, ws = _values(_sigma_arrays(reps))
    return x, s, wx, ws


def _col_arrays(reps: np.ndarray, cfg: CodeConfig):
    s, ws = _values(_sigma_arrays(reps))
    g, wg = _values(_ring_mul_arrays(reps, cfg.gamma.coords))
    return s, g, ws, wg


def _cmp_candidates(u, v) -> int:
    c = cmp_quad(u[0], v[0])
    if c:
        return c
    a, b = (u[1], u[2]), (v[1], v[2])
    return (a > b) - (a < b)


_CAND_KEY = cmp_to_key(_cmp_candidates)


@dataclass
class _ChunkResult:
    best: tuple[QuadInt, UserCoords, UserCoords] | None
    visited: int
    confirmed: int


def _scan_chunk(idx, reps1, reps2, rows, cols, cfg, backend) -> _ChunkResult:
    if len(idx) == 0:
        return _ChunkResult(None, 0, 0)
    n2 = len(reps2)
    rows_c = tuple(arr[idx] for arr in rows)
    lo, hi = kernels.row_bounds(rows_c, cols, backend)
    threshold = float(hi.min()) * (1.0 + REL_MARGIN)
    sel = np.nonzero(lo <= threshold)[0]
    visited = len(idx) * n2 + len(sel) * n2
    mask = kernels.row_candidates(tuple(arr[sel] for arr in rows_c), cols, threshold, backend)
    best = None
    confirmed = 0
    for r, j in zip(*np.nonzero(mask)):
        i = idx[sel[r]]
        w1 = UserCoords(*map(int, reps1[i]))
        w2 = UserCoords(*map(int, reps2[j]))
        val = det_abs_squared(user_element(w1), user_element(w2), cfg)
        confirmed += 1
        cand = (val, w1, w2)
        if best is None or _CAND_KEY(cand) < _CAND_KEY(best):
            best = cand
    return _ChunkResult(best, visited, confirmed)


def _resolve_budget(budget: int | None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get("DECAYLAB_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def decay(
    N1: int,
    N2: int,
    cfg: CodeConfig = DEFAULT_CONFIG,
    *,
    workers: int = 1,
    budget: int | None = None,
    allow_over_budget: bool = False,
    backend: str | None = None,
    shuffle_seed: int | None = None,
    chunks_per_worker: int = 4,
) -> DecayRecord:
    """Exact minimum of |det X|^2 over nonzero pairs in the (N1, N2) boxes.

    Parameters
    ----------
    N1, N2 : int
        Coordinate ranges of user 1 and user 2.
    workers : int
        Thread count for the chunked scan.  The result does not depend on it.
    budget : int, optional
        Maximum number of reduced pairs; defaults to ``$DECAYLAB_BUDGET`` or
        ``DEFAULT_BUDGET``.  Exceeding it raises :class:`BudgetExceeded`
        unless ``allow_over_budget`` is set.
    backend : {"numba", "numpy"}, optional
        Float kernel implementation; defaults to :data:`kernels.BACKEND`.
    shuffle_seed : int, optional
        Permute the user-1 traversal order (used to check order independence).
    """
    box = SearchBox(N1, N2)
    if workers < 1:
        raise ValueError("workers must be >= 1")
    limit = _resolve_budget(budget)
    reduced = reduced_pair_count(box.N1, box.N2)
    if reduced > limit and not allow_over_budget:
        raise BudgetExceeded(
            f"box ({box.N1}, {box.N2}) needs {reduced} reduced pairs, budget is {limit}"
        )

    t0 = time.perf_counter()
    reps1 = orbit_rep_array(box.N1)
    reps2 = reps1 if box.N2 == box.N1 else orbit_rep_array(box.N2)
    rows = _row_arrays(reps1)
    cols = _col_arrays(reps2, cfg)

    order = np.arange(len(reps1))
    if shuffle_seed is not None:
        order = np.random.default_rng(shuffle_seed).permutation(order)
    n_chunks = max(1, min(len(order), workers * chunks_per_worker))
    chunks = np.array_split(order, n_chunks)

    def run(idx):
        return _scan_chunk(idx, reps1, reps2, rows, cols, cfg, backend)

    if workers == 1:
        results = [run(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, chunks))

    bests = [r.best for r in results if r.best is not None]
    val, w1, w2 = min(bests, key=_CAND_KEY)
    elapsed = time.perf_counter() - t0
    log.info("decay(%d, %d): |det|^2 = %s in %.3fs", box.N1, box.N2, val, elapsed)
    return DecayRecord(
        n1=box.N1,
        n2=box.N2,
        min_detsq=val,
        min_detsq_float=float(val),
        witness1=w1,
        witness2=w2,
        orbit_reduced_count=reduced,
        visited_pairs=sum(r.visited for r in results),
        wall_time=elapsed,
        confirmed_pairs=sum(r.confirmed for r in results),
    )


def decay_series(
    Nmax: int,
    mode: Literal["equal", "fixed_second"] = "equal",
    cfg: CodeConfig = DEFAULT_CONFIG,
    **kwargs,
) -> list[DecayRecord]:
    """D(N, N) (``equal``) or D(N, 1) (``fixed_second``) for N = 1..Nmax."""
    if not isinstance(Nmax, int) or Nmax < 1:
        raise ValueError(f"Nmax must be a positive integer, got {Nmax!r}")
    if mode not in ("equal", "fixed_second"):
        raise ValueError(f"unknown mode {mode!r}")
    limit = _resolve_budget(kwargs.get("budget"))
    if not kwargs.get("allow_over_budget", False):
        for n in range(1, Nmax + 1):
            n2 = n if mode == "equal" else 1
            if reduced_pair_count(n, n2) > limit:
                raise BudgetExceeded(
                    f"box ({n}, {n2}) needs {reduced_pair_count(n, n2)} reduced pairs, "
                    f"budget is {limit}"
                )
    out = []
    for n in range(1, Nmax + 1):
        out.append(decay(n, n if mode == "equal" else 1, cfg, **kwargs))
    return out


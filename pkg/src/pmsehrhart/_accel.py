"""Hot numeric kernels with a numba path and a pure-numpy fallback.

Two loops dominate runtime: the subset-DP perfect matching table behind the
brute-force PMS oracle, and the lattice-point enumeration behind the Ehrhart
counts. Each has a ``@njit`` kernel and an independent numpy implementation.

Set ``PMSEHRHART_PURE_NUMPY=1`` before import to force the numpy path (also
used automatically when numba is missing). Both paths are exact.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_NUMPY = os.environ.get("PMSEHRHART_PURE_NUMPY", "").strip().lower() in {"1", "true", "yes"}

try:
    if _FORCE_NUMPY:
        raise ImportError("numba disabled by PMSEHRHART_PURE_NUMPY")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"

# int64 lattice counts stay exact below this
_COUNT_CEILING = 2**62


def _resolve(backend):
    backend = backend or BACKEND
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is unavailable")
    return backend


# ---------------------------------------------------------------------------
# perfect matching table

def _pm_table_numpy(n: int, nbr: np.ndarray) -> np.ndarray:
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    pc = np.zeros(size, dtype=np.int64)
    for j in range(n):
        pc += (masks >> j) & 1
    low = masks & -masks
    lowidx = np.zeros(size, dtype=np.int64)
    lowidx[1:] = np.log2(low[1:]).astype(np.int64)
    pm = np.zeros(size, dtype=np.uint8)
    pm[0] = 1
    for k in range(2, n + 1, 2):
        layer = masks[pc == k]
        rest = layer ^ low[layer]
        lown = nbr[lowidx[layer]]
        hit = np.zeros(layer.shape[0], dtype=bool)
        for j in range(n):
            bit = np.int64(1) << j
            ok = ((rest & bit) != 0) & ((lown & bit) != 0)
            if ok.any():
                hit[ok] |= pm[rest[ok] ^ bit].astype(bool)
        pm[layer] = hit
    return pm


if HAVE_NUMBA:

    @njit(cache=True)
    def _pm_table_jit(n, nbr):
        size = 1 << n
        pm = np.zeros(size, np.uint8)
        pm[0] = 1
        for mask in range(1, size):
            i = 0
            while not (mask >> i) & 1:
                i += 1
            rest = mask ^ (1 << i)
            cand = nbr[i] & rest
            while cand:
                b = cand & -cand
                if pm[rest ^ b]:
                    pm[mask] = 1
                    break
                cand ^= b
        return pm


def perfect_matching_table(n: int, neighbor_masks, backend: str | None = None) -> np.ndarray:
    """``table[mask] == 1`` iff the subgraph induced by ``mask`` has a perfect matching."""
    nbr = np.asarray(list(neighbor_masks), dtype=np.int64).reshape(n)
    if n == 0:
        return np.ones(1, dtype=np.uint8)
    if _resolve(backend) == "numba":
        return _pm_table_jit(n, nbr)
    return _pm_table_numpy(n, nbr)


def pms_counts_from_table(n: int, table: np.ndarray) -> list[int]:
    """Histogram of perfectly matchable sets by half-size."""
    masks = np.flatnonzero(table).astype(np.int64)
    pc = np.zeros(masks.shape[0], dtype=np.int64)
    for j in range(n):
        pc += (masks >> j) & 1
    counts = np.bincount(pc // 2, minlength=n // 2 + 1)
    return [int(c) for c in counts]


# ---------------------------------------------------------------------------
# lattice points of {x >= 0, x_i <= t, A x <= b t}

if HAVE_NUMBA:

    @njit(cache=True)
    def _count_jit(indptr, rows, vals, rhs, t, n):
        slack = rhs.copy()
        x = np.zeros(n, np.int64)
        ub = np.zeros(n, np.int64)
        total = 0
        k = 0
        # upper bound for coordinate 0
        b = t
        for p in range(indptr[0], indptr[1]):
            q = slack[rows[p]] // vals[p]
            if q < b:
                b = q
        ub[0] = b
        x[0] = 0
        while True:
            if k == n - 1:
                total += ub[k] + 1
                k -= 1
                descend = False
            else:
                k += 1
                b = t
                for p in range(indptr[k], indptr[k + 1]):
                    q = slack[rows[p]] // vals[p]
                    if q < b:
                        b = q
                ub[k] = b
                x[k] = 0
                descend = True
            if descend:
                continue
            # advance the deepest open coordinate
            while k >= 0:
                if x[k] < ub[k]:
                    x[k] += 1
                    for p in range(indptr[k], indptr[k + 1]):
                        slack[rows[p]] -= vals[p]
                    break
                for p in range(indptr[k], indptr[k + 1]):
                    slack[rows[p]] += vals[p] * x[k]
                x[k] = 0
                k -= 1
            if k < 0:
                break
        return total


def _columns(coef: np.ndarray):
    m, n = coef.shape
    indptr = [0]
    rows: list[int] = []
    vals: list[int] = []
    for k in range(n):
        for r in range(m):
            if coef[r, k]:
                rows.append(r)
                vals.append(int(coef[r, k]))
        indptr.append(len(rows))
    return (
        np.asarray(indptr, dtype=np.int64),
        np.asarray(rows, dtype=np.int64),
        np.asarray(vals, dtype=np.int64),
    )


def _count_numpy(coef: np.ndarray, rhs: np.ndarray, t: int) -> int:
    # transfer-matrix sweep: state = slack of rows that are open at this column
    m, n = coef.shape
    nz = coef != 0
    first = np.where(nz.any(axis=1), nz.argmax(axis=1), -1)
    last = np.where(nz.any(axis=1), n - 1 - nz[:, ::-1].argmax(axis=1), -1)
    active: list[int] = []
    states = np.zeros((1, 0), dtype=np.int64)
    weights = np.ones(1, dtype=np.int64)
    for i in range(n):
        opening = [r for r in range(m) if first[r] == i]
        if opening:
            fresh = np.broadcast_to(rhs[opening], (states.shape[0], len(opening)))
            states = np.hstack([states, fresh])
            active.extend(opening)
        col = coef[active, i].astype(np.int64)
        touched = col > 0
        parts, wparts = [], []
        for v in range(t + 1):
            need = v * col
            ok = np.all(states[:, touched] >= need[touched], axis=1)
            if not ok.any():
                break
            parts.append(states[ok] - need)
            wparts.append(weights[ok])
        states = np.vstack(parts)
        weights = np.concatenate(wparts)
        keep = [j for j, r in enumerate(active) if last[r] != i]
        active = [active[j] for j in keep]
        states = states[:, keep]
        if states.shape[1] == 0:
            weights = np.array([weights.sum()], dtype=np.int64)
            states = np.zeros((1, 0), dtype=np.int64)
        else:
            states, inv = np.unique(states, axis=0, return_inverse=True)
            merged = np.zeros(states.shape[0], dtype=np.int64)
            np.add.at(merged, inv.reshape(-1), weights)
            weights = merged
    return int(weights.sum())


def _column_blocks(coef: np.ndarray) -> list[list[int]]:
    # columns linked by a shared row; the system is a product over these blocks
    n = coef.shape[1]
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for row in coef:
        cols = np.flatnonzero(row)
        for c in cols[1:]:
            parent[find(int(c))] = find(int(cols[0]))
    blocks: dict[int, list[int]] = {}
    for c in range(n):
        blocks.setdefault(find(c), []).append(c)
    return list(blocks.values())


def count_lattice_points(coef, rhs, t: int, backend: str | None = None) -> int:
    """Count integer ``x`` with ``0 <= x_i <= t`` and ``coef @ x <= rhs * t``.

    ``coef`` must be nonnegative; rows are scaled by ``t`` here. Column blocks
    that share no row are counted separately and multiplied.
    """
    coef = np.asarray(coef, dtype=np.int64)
    rhs = np.asarray(rhs, dtype=np.int64)
    if coef.ndim != 2:
        raise ValueError("coef must be a 2-d array")
    if (coef < 0).any():
        raise ValueError("kernel requires nonnegative row coefficients")
    backend = _resolve(backend)
    m, n = coef.shape
    if t < 0:
        return 0
    scaled = rhs * t
    if (scaled < 0).any():
        return 0
    if n == 0:
        return 1
    total = 1
    for cols in _column_blocks(coef):
        rows = np.flatnonzero(coef[:, cols].any(axis=1))
        total *= _count_block(coef[np.ix_(rows, cols)], scaled[rows], t, backend)
    return total


def _count_block(coef: np.ndarray, scaled: np.ndarray, t: int, backend: str) -> int:
    n = coef.shape[1]
    if (t + 1) ** n >= _COUNT_CEILING:
        raise OverflowError(f"count bound ({t}+1)^{n} exceeds int64 kernel range")
    if backend == "numba":
        indptr, rows, vals = _columns(coef)
        return int(_count_jit(indptr, rows, vals, scaled, np.int64(t), n))
    return _count_numpy(coef, scaled, t)

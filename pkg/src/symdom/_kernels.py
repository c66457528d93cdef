"""Hot nearest-neighbor kernels: numba JIT with a pure-numpy fallback.

The grid is a sparse bucket structure over R^d (d = 2n): points are keyed
by their integer cell, sorted by key, and buckets are addressed through a
``searchsorted`` on the sorted unique keys.  Queries expand Chebyshev rings
of cells around the query cell and stop once the ring's distance lower
bound ``(r - 1) * cell`` exceeds the best squared distance found, which
makes the result exactly the nearest neighbor (ties included).

Set the environment variable ``SYMDOM_DISABLE_NUMBA=1`` before import to
select the pure-numpy path (same grid, queries grouped by cell and
processed with vectorized candidate scans).  ``benchmarks/bench_hausdorff.py``
compares the two paths.
"""

from __future__ import annotations

import os

import numpy as np

NUMBA_DISABLED = os.environ.get("SYMDOM_DISABLE_NUMBA", "").strip() not in ("", "0")

try:
    if NUMBA_DISABLED:
        raise ImportError("numba disabled by SYMDOM_DISABLE_NUMBA")
    from numba import njit, prange

    NUMBA_ENABLED = True
except ImportError:  # pragma: no cover - exercised via the env flag
    NUMBA_ENABLED = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if len(args) == 1 and callable(args[0]):
            return args[0]
        return wrap

    def prange(*args):
        return range(*args)


# Per-axis cell-count caps keep worst-case ring scans bounded.
_AXIS_CAPS = {2: 2048, 4: 64, 6: 24}


def build_grid(pts: np.ndarray, cell: float):
    """Bucket ``(P, d)`` float64 points into a sparse integer grid.

    Returns ``(pts_sorted, origin, cell, ncells, strides, ucells, starts)``
    with points reordered bucket-contiguously.
    """
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    P, d = pts.shape
    origin = pts.min(axis=0)
    extent = pts.max(axis=0) - origin
    cap = _AXIS_CAPS.get(d, 24)
    need = float(np.max(extent)) / cap if cap else 0.0
    cell = max(float(cell), need, 1e-12)
    coords = np.floor((pts - origin) / cell).astype(np.int64)
    ncells = coords.max(axis=0) + 1
    strides = np.ones(d, dtype=np.int64)
    for i in range(d - 2, -1, -1):
        strides[i] = strides[i + 1] * ncells[i + 1]
    keys = coords @ strides
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    ucells, first = np.unique(sorted_keys, return_index=True)
    starts = np.append(first, P).astype(np.int64)
    return (
        np.ascontiguousarray(pts[order]),
        origin,
        cell,
        ncells.astype(np.int64),
        strides,
        ucells.astype(np.int64),
        starts,
    )


@njit(cache=True)
def _nn_one(q, pts, origin, cell, ncells, strides, ucells, starts):
    d = q.shape[0]
    # seed the bound with an arbitrary data point so ring expansion is bounded
    best = 0.0
    for i in range(d):
        diff = q[i] - pts[0, i]
        best += diff * diff
    base = np.empty(d, dtype=np.int64)
    inpos = np.empty(d, dtype=np.float64)  # position of q inside its cell
    for i in range(d):
        base[i] = np.int64(np.floor((q[i] - origin[i]) / cell))
        inpos[i] = q[i] - (origin[i] + base[i] * cell)
    # distance from q to the walls of its own cell: any point in a cell of
    # Chebyshev ring >= r+1 is at least wall + r*cell away
    wall = cell
    for i in range(d):
        g = inpos[i] if inpos[i] < cell - inpos[i] else cell - inpos[i]
        if g < wall:
            wall = g
    if wall < 0.0:
        wall = 0.0
    max_ring = 1
    for i in range(d):
        lim = base[i] + 1
        if ncells[i] - base[i] > lim:
            lim = ncells[i] - base[i]
        if lim > max_ring:
            max_ring = lim
    offs = np.empty(d, dtype=np.int64)
    cc = np.empty(d, dtype=np.int64)
    for r in range(max_ring + 1):
        if r >= 1:
            lower = wall + (r - 1) * cell
            if lower * lower >= best:
                break
        for i in range(d):
            offs[i] = -r
        while True:
            mx = np.int64(0)
            for i in range(d):
                a = offs[i] if offs[i] >= 0 else -offs[i]
                if a > mx:
                    mx = a
            if mx == r:
                ok = True
                key = np.int64(0)
                lb = 0.0
                for i in range(d):
                    c = base[i] + offs[i]
                    if c < 0 or c >= ncells[i]:
                        ok = False
                        break
                    cc[i] = c
                    # per-axis gap between q and the candidate cell
                    if offs[i] > 0:
                        gap = (offs[i] - 1) * cell + (cell - inpos[i])
                    elif offs[i] < 0:
                        gap = (-offs[i] - 1) * cell + inpos[i]
                    else:
                        gap = 0.0
                    lb += gap * gap
                if ok and lb < best:
                    for i in range(d):
                        key += cc[i] * strides[i]
                    pos = np.searchsorted(ucells, key)
                    if pos < ucells.shape[0] and ucells[pos] == key:
                        for p in range(starts[pos], starts[pos + 1]):
                            d2 = 0.0
                            for i in range(d):
                                diff = q[i] - pts[p, i]
                                d2 += diff * diff
                            if d2 < best:
                                best = d2
            # odometer step over the cube [-r, r]^d
            i = d - 1
            while i >= 0:
                offs[i] += 1
                if offs[i] <= r:
                    break
                offs[i] = -r
                i -= 1
            if i < 0:
                break
    return best


@njit(cache=True)
def _nn_sqdist_serial(q, pts, origin, cell, ncells, strides, ucells, starts):
    M = q.shape[0]
    out = np.empty(M, dtype=np.float64)
    for m in range(M):
        out[m] = _nn_one(q[m], pts, origin, cell, ncells, strides, ucells, starts)
    return out


@njit(cache=True, parallel=True)
def _nn_sqdist_parallel(q, pts, origin, cell, ncells, strides, ucells, starts):
    M = q.shape[0]
    out = np.empty(M, dtype=np.float64)
    for m in prange(M):
        out[m] = _nn_one(q[m], pts, origin, cell, ncells, strides, ucells, starts)
    return out


_SHELL_CACHE: dict = {}


def _shell_offsets(r: int, d: int) -> np.ndarray:
    """All integer offsets in [-r, r]^d with Chebyshev norm exactly r."""
    key = (r, d)
    cached = _SHELL_CACHE.get(key)
    if cached is not None:
        return cached
    rng = np.arange(-r, r + 1)
    grids = np.meshgrid(*([rng] * d), indexing="ij")
    cube = np.stack([g.ravel() for g in grids], axis=-1)
    shell = cube[np.abs(cube).max(axis=1) == r]
    _SHELL_CACHE[key] = shell
    return shell


def _nn_sqdist_numpy(q, pts, origin, cell, ncells, strides, ucells, starts):
    M, d = q.shape
    out = np.sum((q - pts[0]) ** 2, axis=1)
    qc = np.floor((q - origin) / cell).astype(np.int64)
    ugroups, inverse = np.unique(qc, axis=0, return_inverse=True)
    order = np.argsort(inverse, kind="stable")
    bounds = np.searchsorted(inverse[order], np.arange(len(ugroups) + 1))
    for gi in range(len(ugroups)):
        idx = order[bounds[gi]:bounds[gi + 1]]
        qg = q[idx]
        best = out[idx]
        base = ugroups[gi]
        cell_lo = origin + base * cell
        wall = np.minimum((qg - cell_lo).min(axis=1), (cell_lo + cell - qg).min(axis=1))
        wall = np.maximum(wall, 0.0)
        max_ring = int(max(np.max(base + 1), np.max(ncells - base)))
        for r in range(max_ring + 1):
            if r >= 1 and np.all((wall + (r - 1) * cell) ** 2 >= best):
                break
            shell = _shell_offsets(r, d)
            # conservative per-cell lower bound (worst position in own cell)
            lb0 = np.sum((np.maximum(np.abs(shell) - 1, 0) * cell) ** 2, axis=1)
            shell = shell[lb0 < best.max()]
            if not len(shell):
                continue
            cells = shell + base
            valid = np.all((cells >= 0) & (cells < ncells), axis=1)
            cells = cells[valid]
            if not len(cells):
                continue
            keys = cells @ strides
            pos = np.searchsorted(ucells, keys)
            ok = pos < len(ucells)
            ok[ok] = ucells[pos[ok]] == keys[ok]
            if not np.any(ok):
                continue
            segs = [(starts[p], starts[p + 1]) for p in pos[ok]]
            cand = np.concatenate([pts[s:e] for s, e in segs], axis=0)
            for lo in range(0, len(qg), 1024):
                sl = slice(lo, lo + 1024)
                d2 = ((qg[sl, None, :] - cand[None, :, :]) ** 2).sum(axis=-1).min(axis=1)
                best[sl] = np.minimum(best[sl], d2)
        out[idx] = best
    return out


def nearest_sq_dists(queries, grid, parallel: bool = True) -> np.ndarray:
    """Squared distance from each query to its nearest grid point."""
    pts, origin, cell, ncells, strides, ucells, starts = grid
    q = np.ascontiguousarray(queries, dtype=np.float64)
    if not NUMBA_ENABLED:
        return _nn_sqdist_numpy(q, pts, origin, cell, ncells, strides, ucells, starts)
    fn = _nn_sqdist_parallel if parallel else _nn_sqdist_serial
    return fn(q, pts, origin, cell, ncells, strides, ucells, starts)


def warmup() -> None:
    """Trigger JIT compilation on a tiny problem (no-op on the numpy path)."""
    pts = np.array([[0.0, 0.0], [1.0, 1.0], [0.5, 0.25]])
    grid = build_grid(pts, 0.5)
    nearest_sq_dists(pts, grid, parallel=True)
    nearest_sq_dists(pts, grid, parallel=False)

"""Smallest ball enclosing a finite set of balls in R^d.

The optimum is determined by a support set of at most d + 1 balls that are
internally tangent to the enclosing sphere.  For each candidate support
set the center lies in the affine hull of the support centers, which
reduces the tangency system to one quadratic in the radius; at the desk
scales used here (a handful of balls, d <= 6) enumerating support subsets
and keeping the smallest feasible candidate is exact and robust.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import ConstructionError

_SLACK = 1e-9


def _candidate(centers: np.ndarray, radii: np.ndarray):
    """Smallest sphere internally tangent to every ball of the subset.

    Solves |x - c_i| = R - r_i for x in the affine hull of the c_i.
    Returns (center, R) or None when the subset admits no solution.
    """
    k, d = centers.shape
    if k == 1:
        return centers[0], float(radii[0])
    c0, r0 = centers[0], radii[0]
    U = centers[1:] - c0                      # (k-1, d) affine hull basis
    # Tangency differences are linear in (x, R):
    #   2 (c_i - c0) . x - 2 (r_i - r0) R = |c_i|^2 - |c0|^2 - r_i^2 + r0^2
    rhs = (np.sum(centers[1:] ** 2, axis=1) - np.sum(c0 ** 2)
           - radii[1:] ** 2 + r0 ** 2)
    dr = radii[1:] - r0
    # x = c0 + U^T s  with s in R^{k-1}
    G = 2.0 * U @ U.T                          # (k-1, k-1)
    b0 = rhs - 2.0 * U @ c0
    try:
        s_base = np.linalg.solve(G, b0)
        s_slope = np.linalg.solve(G, 2.0 * dr)
    except np.linalg.LinAlgError:
        return None
    # plug x(R) = c0 + U^T (s_base + R s_slope) into |x - c0|^2 = (R - r0)^2
    v0 = U.T @ s_base
    v1 = U.T @ s_slope
    a2 = float(v1 @ v1 - 1.0)
    a1 = float(2.0 * v0 @ v1 + 2.0 * r0)
    a0 = float(v0 @ v0 - r0 * r0)
    roots = []
    if abs(a2) < 1e-14:
        if abs(a1) > 1e-14:
            roots = [-a0 / a1]
    else:
        disc = a1 * a1 - 4.0 * a2 * a0
        if disc < 0:
            return None
        sq = np.sqrt(disc)
        roots = [(-a1 - sq) / (2 * a2), (-a1 + sq) / (2 * a2)]
    best = None
    for R in roots:
        if not np.isfinite(R) or R < np.max(radii) - _SLACK:
            continue
        x = c0 + U.T @ (s_base + R * s_slope)
        if np.max(np.abs(np.linalg.norm(centers - x, axis=1) + radii - R)) > 1e-7 * max(1.0, R):
            continue
        if best is None or R < best[1]:
            best = (x, float(R))
    return best


def smallest_enclosing_ball(centers, radii) -> tuple[np.ndarray, float]:
    """Center and radius of the smallest ball containing all input balls.

    ``centers`` is (N, d) real; ``radii`` is (N,).  Exact up to floating
    error for the desk scales here (N <= 12).
    """
    centers = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    radii = np.atleast_1d(np.asarray(radii, dtype=np.float64))
    n, d = centers.shape
    if n != len(radii):
        raise ValueError("centers and radii length mismatch")
    if n == 0:
        raise ValueError("no balls given")
    if n > 12:
        raise ConstructionError("smallest_enclosing_ball supports up to 12 balls")

    # drop balls contained in another ball (they never support the optimum)
    keep = np.ones(n, dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j and keep[j]:
                if np.linalg.norm(centers[i] - centers[j]) + radii[i] <= radii[j] + _SLACK:
                    if not (i < j and radii[i] == radii[j]
                            and np.allclose(centers[i], centers[j])):
                        keep[i] = False
                        break
    centers_k = centers[keep]
    radii_k = radii[keep]
    m = len(radii_k)

    best = None
    max_support = min(m, d + 1)
    for size in range(1, max_support + 1):
        for subset in combinations(range(m), size):
            cand = _candidate(centers_k[list(subset)], radii_k[list(subset)])
            if cand is None:
                continue
            x, R = cand
            if np.all(np.linalg.norm(centers - x, axis=1) + radii <= R + _SLACK * max(1.0, R)):
                if best is None or R < best[1] - 1e-15:
                    best = (x, R)
    if best is None:
        raise ConstructionError("smallest enclosing ball search failed")
    return best


def smallest_enclosing_ball_complex(centers, radii) -> tuple[np.ndarray, float]:
    """Complex-coordinate wrapper: (N, n) complex centers -> (n,) complex center."""
    c = np.atleast_2d(np.asarray(centers, dtype=np.complex128))
    n = c.shape[0]
    real = np.ascontiguousarray(c.view(np.float64).reshape(n, -1))
    x, r = smallest_enclosing_ball(real, radii)
    return x[0::2] + 1j * x[1::2], r

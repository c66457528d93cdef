"""Invariant hyperbolic distance on the unit disc and unit ball.

These closed forms are constant multiples of the Bergman distance on the
disc / ball, and every predicate that consumes them here is a comparison,
so the constant factor never matters.
"""

from __future__ import annotations

import numpy as np


def poincare_distance(z, w):
    """Hyperbolic distance on the unit disc: atanh |(z - w) / (1 - conj(z) w)|."""
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    num = np.abs(z - w)
    den = np.abs(1.0 - np.conj(z) * w)
    return np.arctanh(num / den)


def ball_distance(z, w):
    """Hyperbolic distance on the unit ball of C^n.

    atanh sqrt(1 - (1 - |z|^2)(1 - |w|^2) / |1 - <z, w>|^2), with the
    Hermitian pairing <z, w> = sum z_k conj(w_k).  Reduces to
    :func:`poincare_distance` for n = 1.
    """
    z = np.atleast_2d(np.asarray(z, dtype=np.complex128))
    w = np.atleast_2d(np.asarray(w, dtype=np.complex128))
    inner = np.sum(z * np.conj(w), axis=-1)
    nz = np.sum(np.abs(z) ** 2, axis=-1)
    nw = np.sum(np.abs(w) ** 2, axis=-1)
    ratio = (1.0 - nz) * (1.0 - nw) / np.abs(1.0 - inner) ** 2
    arg = np.sqrt(np.maximum(1.0 - ratio, 0.0))
    return np.arctanh(np.minimum(arg, 1.0 - 1e-16))


def hyperbolic_ball_radius_euclidean(center, rho: float) -> float:
    """Euclidean radius bound of the hyperbolic ball around a disc point.

    The hyperbolic ball of radius rho about c is a Euclidean disc; its
    Euclidean radius is at most tanh(rho) (1 - |c|^2) / (1 - |c|^2 t^2)
    with t = tanh(rho).
    """
    c = complex(center) if np.ndim(center) == 0 else complex(np.asarray(center).ravel()[0])
    t = np.tanh(rho)
    a = abs(c)
    return t * (1 - a * a) / (1 - (a * t) ** 2)

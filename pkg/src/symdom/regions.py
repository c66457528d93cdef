"""Membership-based representation of domains in C^n (n <= 3).

A :class:`Region` is a tree of geometric primitives (discs, balls,
half-planes), boolean combinations, images under catalog maps, punctures,
products, and fibered exclusions.  Every node carries an exact vectorized
membership oracle returning a tri-state code per point:

    ``+1`` interior, ``0`` within ``tol`` of the boundary, ``-1`` exterior.

With these codes, complement is negation, intersection is an elementwise
``min`` and union an elementwise ``max``, which realizes strict open-set
semantics: a point on a primitive boundary never classifies interior unless
some other branch strictly contains it.

Coordinates: a batch of N points of C^n is an ``(N, n)`` complex array.
Bounding boxes live in R^{2n} with the layout ``[re1, im1, re2, im2, ...]``
and may contain ``inf`` entries for unbounded trees (half-planes, strips);
sampling such trees requires an explicit window.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from . import maps as cmaps
from .errors import (
    DimensionMismatchError,
    UnboundedRegionError,
    UnsupportedSliceError,
)

DEFAULT_TOL = 1e-9

INTERIOR = np.int8(1)
BOUNDARY = np.int8(0)
EXTERIOR = np.int8(-1)


class Classification(IntEnum):
    INTERIOR = 1
    BOUNDARY = 0
    EXTERIOR = -1


def _tri(signed: np.ndarray, tol: float) -> np.ndarray:
    """Signed distance -> tri-state code (negative means inside)."""
    out = np.zeros(signed.shape, dtype=np.int8)
    out[signed < -tol] = INTERIOR
    out[signed > tol] = EXTERIOR
    return out


def _finite_complex(value) -> complex:
    c = complex(value)
    if not (np.isfinite(c.real) and np.isfinite(c.imag)):
        raise ValueError(f"non-finite complex value: {value}")
    return c


def box_of_point(p: np.ndarray) -> np.ndarray:
    """Flatten a complex point to the real box layout [re1, im1, ...]."""
    p = np.atleast_1d(np.asarray(p, dtype=np.complex128))
    out = np.empty(2 * p.size)
    out[0::2] = p.real
    out[1::2] = p.imag
    return out


def box_is_finite(lo: np.ndarray, hi: np.ndarray) -> bool:
    return bool(np.all(np.isfinite(lo)) and np.all(np.isfinite(hi)))


class Region:
    """Base class for all region tree nodes."""

    dim: int = 1

    def classify(self, pts: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
        """Tri-state membership codes for an ``(N, dim)`` complex array."""
        raise NotImplementedError

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        """(lo, hi) arrays in R^{2 dim}; entries may be infinite."""
        raise NotImplementedError

    # boolean sugar
    def __and__(self, other):
        return Intersection((self, other))

    def __or__(self, other):
        return Union((self, other))

    def __sub__(self, other):
        return Difference(self, other)

    def __invert__(self):
        return Complement(self)


@dataclass(frozen=True)
class EmptyRegion(Region):
    """The empty set; produced by degenerate slices."""

    dim: int = 1

    def classify(self, pts, tol=DEFAULT_TOL):
        cmaps._check_dim(pts, self.dim)
        return np.full(pts.shape[:-1], EXTERIOR, dtype=np.int8)

    def bounding_box(self):
        n = 2 * self.dim
        return np.full(n, np.inf), np.full(n, -np.inf)


@dataclass(frozen=True)
class Disc(Region):
    """Open disc B(center, radius) in C."""

    center: complex
    radius: float
    dim: int = field(default=1, init=False)

    def __post_init__(self):
        object.__setattr__(self, "center", _finite_complex(self.center))
        if not (self.radius > 0 and np.isfinite(self.radius)):
            raise ValueError("disc radius must be a positive real")

    def classify(self, pts, tol=DEFAULT_TOL):
        cmaps._check_dim(pts, 1)
        signed = np.abs(pts[..., 0] - self.center) - self.radius
        return _tri(signed, tol)

    def bounding_box(self):
        c, r = self.center, self.radius
        return np.array([c.real - r, c.imag - r]), np.array([c.real + r, c.imag + r])


@dataclass(frozen=True)
class Ball(Region):
    """Open Euclidean ball in C^n."""

    center: tuple
    radius: float

    def __post_init__(self):
        c = tuple(_finite_complex(v) for v in np.atleast_1d(self.center))
        if not (1 <= len(c) <= 3):
            raise DimensionMismatchError("balls supported for n in {1,2,3}")
        object.__setattr__(self, "center", c)
        if not (self.radius > 0 and np.isfinite(self.radius)):
            raise ValueError("ball radius must be a positive real")

    @property
    def dim(self):
        return len(self.center)

    def classify(self, pts, tol=DEFAULT_TOL):
        cmaps._check_dim(pts, self.dim)
        diff = pts - np.asarray(self.center, dtype=np.complex128)
        signed = np.sqrt(np.sum(np.abs(diff) ** 2, axis=-1)) - self.radius
        return _tri(signed, tol)

    def bounding_box(self):
        c = box_of_point(np.asarray(self.center))
        r = self.radius
        return c - r, c + r


@dataclass(frozen=True)
class HalfPlane(Region):
    """Open half-plane {z : Re(z conj(n)) > offset} with |n| = 1."""

    unit_normal: complex
    offset: float
    dim: int = field(default=1, init=False)

    def __post_init__(self):
        n = _finite_complex(self.unit_normal)
        if abs(n) == 0:
            raise ValueError("half-plane normal must be nonzero")
        object.__setattr__(self, "unit_normal", n / abs(n))
        if not np.isfinite(self.offset):
            raise ValueError("half-plane offset must be finite")

    def classify(self, pts, tol=DEFAULT_TOL):
        cmaps._check_dim(pts, 1)
        signed = self.offset - (pts[..., 0] * np.conj(self.unit_normal)).real
        return _tri(signed, tol)

    def bounding_box(self):
        lo = np.array([-np.inf, -np.inf])
        hi = np.array([np.inf, np.inf])
        n, off = self.unit_normal, self.offset
        # Tighten only axis-aligned normals; oblique half-planes stay infinite.
        if abs(n - 1) < 1e-12:
            lo[0] = off
        elif abs(n + 1) < 1e-12:
            hi[0] = -off
        elif abs(n - 1j) < 1e-12:
            lo[1] = off
        elif abs(n + 1j) < 1e-12:
            hi[1] = -off
        return lo, hi


@dataclass(frozen=True)
class Complement(Region):
    region: Region

    @property
    def dim(self):
        return self.region.dim

    def classify(self, pts, tol=DEFAULT_TOL):
        return -self.region.classify(pts, tol)

    def bounding_box(self):
        n = 2 * self.dim
        return np.full(n, -np.inf), np.full(n, np.inf)


def _same_dim(regions) -> int:
    dims = {r.dim for r in regions}
    if len(dims) != 1:
        raise DimensionMismatchError(f"mixed dimensions in boolean node: {dims}")
    return dims.pop()


@dataclass(frozen=True)
class Union(Region):
    regions: tuple

    def __post_init__(self):
        rs = tuple(self.regions)
        if not rs:
            raise ValueError("empty union")
        _same_dim(rs)
        object.__setattr__(self, "regions", rs)

    @property
    def dim(self):
        return self.regions[0].dim

    def classify(self, pts, tol=DEFAULT_TOL):
        out = self.regions[0].classify(pts, tol)
        for r in self.regions[1:]:
            np.maximum(out, r.classify(pts, tol), out=out)
        return out

    def bounding_box(self):
        boxes = [r.bounding_box() for r in self.regions]
        lo = np.min([b[0] for b in boxes], axis=0)
        hi = np.max([b[1] for b in boxes], axis=0)
        return lo, hi


@dataclass(frozen=True)
class Intersection(Region):
    regions: tuple

    def __post_init__(self):
        rs = tuple(self.regions)
        if not rs:
            raise ValueError("empty intersection")
        _same_dim(rs)
        object.__setattr__(self, "regions", rs)

    @property
    def dim(self):
        return self.regions[0].dim

    def classify(self, pts, tol=DEFAULT_TOL):
        out = self.regions[0].classify(pts, tol)
        for r in self.regions[1:]:
            np.minimum(out, r.classify(pts, tol), out=out)
        return out

    def bounding_box(self):
        boxes = [r.bounding_box() for r in self.regions]
        lo = np.max([b[0] for b in boxes], axis=0)
        hi = np.min([b[1] for b in boxes], axis=0)
        return lo, hi


@dataclass(frozen=True)
class Difference(Region):
    left: Region
    right: Region

    def __post_init__(self):
        _same_dim((self.left, self.right))

    @property
    def dim(self):
        return self.left.dim

    def classify(self, pts, tol=DEFAULT_TOL):
        return np.minimum(self.left.classify(pts, tol),
                          -self.right.classify(pts, tol))

    def bounding_box(self):
        return self.left.bounding_box()


@dataclass(frozen=True)
class Mapped(Region):
    """Image f(R); membership is evaluated through the exact inverse."""

    map: cmaps.ConformalMap
    region: Region

    def __post_init__(self):
        if self.map.dim != self.region.dim:
            raise DimensionMismatchError("map and region dimensions differ")
        object.__setattr__(self, "_inv", self.map.inverse())

    @property
    def dim(self):
        return self.region.dim

    def classify(self, pts, tol=DEFAULT_TOL):
        return self.region.classify(self._inv.apply(pts), tol)

    def bounding_box(self):
        lo, hi = self.region.bounding_box()
        return _map_box(self.map, lo, hi)


@dataclass(frozen=True)
class Punctured(Region):
    """Region minus a finite list of points; punctures classify Boundary."""

    region: Region
    punctures: tuple

    def __post_init__(self):
        raw = np.asarray(self.punctures, dtype=np.complex128)
        if raw.size == 0:
            object.__setattr__(self, "punctures", ())
            return
        pts = np.atleast_2d(raw)
        if pts.shape[1] != self.region.dim:
            raise DimensionMismatchError("puncture dimension mismatch")
        object.__setattr__(self, "punctures", tuple(map(tuple, pts.tolist())))

    @property
    def dim(self):
        return self.region.dim

    def puncture_array(self) -> np.ndarray:
        return np.asarray(self.punctures, dtype=np.complex128).reshape(-1, self.dim)

    def classify(self, pts, tol=DEFAULT_TOL):
        out = self.region.classify(pts, tol)
        punct = self.puncture_array()
        if punct.size:
            diff = pts[..., None, :] - punct[None, :, :]
            dist = np.sqrt(np.sum(np.abs(diff) ** 2, axis=-1)).min(axis=-1)
            out[dist <= tol] = BOUNDARY
        return out

    def bounding_box(self):
        lo, hi = self.region.bounding_box()
        punct = self.puncture_array()
        if punct.size:
            flat = np.stack([box_of_point(p) for p in punct])
            lo = np.minimum(lo, flat.min(axis=0))
            hi = np.maximum(hi, flat.max(axis=0))
        return lo, hi


@dataclass(frozen=True)
class Product(Region):
    """Cartesian product of planar factors."""

    factors: tuple

    def __post_init__(self):
        fs = tuple(self.factors)
        if not fs:
            raise ValueError("empty product")
        for f in fs:
            if f.dim != 1:
                raise DimensionMismatchError("product factors must be planar")
        if len(fs) > 3:
            raise DimensionMismatchError("products supported up to C^3")
        object.__setattr__(self, "factors", fs)

    @property
    def dim(self):
        return len(self.factors)

    def classify(self, pts, tol=DEFAULT_TOL):
        cmaps._check_dim(pts, self.dim)
        out = self.factors[0].classify(pts[..., 0:1], tol)
        for k, f in enumerate(self.factors[1:], start=1):
            np.minimum(out, f.classify(pts[..., k:k + 1], tol), out=out)
        return out

    def bounding_box(self):
        boxes = [f.bounding_box() for f in self.factors]
        lo = np.concatenate([b[0] for b in boxes])
        hi = np.concatenate([b[1] for b in boxes])
        return lo, hi


# ---------------------------------------------------------------------------
# Markers for fibered exclusions
# ---------------------------------------------------------------------------

class Marker:
    """Base-point-dependent excluded fiber value."""

    def eval(self, base_pts: np.ndarray) -> np.ndarray:
        """(N, k) complex base points -> (N,) excluded fiber values."""
        raise NotImplementedError


@dataclass(frozen=True)
class DiagonalMarker(Marker):
    """Excludes the base coordinate itself (w != z on the diagonal)."""

    base_coord: int = 0

    def eval(self, base_pts):
        return np.array(base_pts[..., self.base_coord])


@dataclass(frozen=True)
class ConstMarker(Marker):
    """Excludes a fixed fiber value, independent of the base point."""

    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", _finite_complex(self.value))

    def eval(self, base_pts):
        return np.full(base_pts.shape[:-1], self.value, dtype=np.complex128)


@dataclass(frozen=True)
class PjMarker(Marker):
    """The moving marker p_j(z1, z2) = (z1/(|z1| + 1/(j+1))) / (e^{i j z2}/|e^{i j z2}|).

    Dividing by the unimodular factor multiplies by its conjugate, so for
    z2 = x + i y the marker equals z1/(|z1| + 1/(j+1)) * e^{-i j x}.
    """

    j: int

    def __post_init__(self):
        if self.j < 1:
            raise ValueError("marker index must be a positive integer")

    def eval(self, base_pts):
        if base_pts.shape[-1] < 2:
            raise DimensionMismatchError("PjMarker needs a base in C^2")
        z1 = base_pts[..., 0]
        z2 = base_pts[..., 1]
        radial = z1 / (np.abs(z1) + 1.0 / (self.j + 1))
        u = np.exp(1j * self.j * z2)
        return radial / (u / np.abs(u))


@dataclass(frozen=True)
class Fibered(Region):
    """{(b, w) : b in base, w in fiber, w != marker_i(b) for all markers}.

    The excluded marker graph consists of boundary points of the open set,
    exactly like punctures do fiberwise.
    """

    base: Region
    fiber: Region
    markers: tuple

    def __post_init__(self):
        if self.fiber.dim != 1:
            raise DimensionMismatchError("fiber template must be planar")
        ms = tuple(self.markers)
        for m in ms:
            if not isinstance(m, Marker):
                raise TypeError(f"not a marker: {m!r}")
        object.__setattr__(self, "markers", ms)

    @property
    def dim(self):
        return self.base.dim + 1

    def classify(self, pts, tol=DEFAULT_TOL):
        cmaps._check_dim(pts, self.dim)
        k = self.base.dim
        base_pts = pts[..., :k]
        w = pts[..., k]
        out = np.minimum(self.base.classify(base_pts, tol),
                         self.fiber.classify(pts[..., k:k + 1], tol))
        for m in self.markers:
            mv = m.eval(base_pts)
            near = np.abs(w - mv) <= tol
            out[near & (out == INTERIOR)] = BOUNDARY
        return out

    def bounding_box(self):
        blo, bhi = self.base.bounding_box()
        flo, fhi = self.fiber.bounding_box()
        return np.concatenate([blo, flo]), np.concatenate([bhi, fhi])


# ---------------------------------------------------------------------------
# Bounding boxes through maps
# ---------------------------------------------------------------------------

def _box_corners(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    d = lo.size
    grids = np.meshgrid(*[(lo[i], hi[i]) for i in range(d)], indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)


def _rotate_plane_box(lo2, hi2, theta):
    corners = _box_corners(np.asarray(lo2), np.asarray(hi2))
    c, s = np.cos(theta), np.sin(theta)
    rot = corners @ np.array([[c, s], [-s, c]])
    return rot.min(axis=0), rot.max(axis=0)


def _inf_box(dim):
    n = 2 * dim
    return np.full(n, -np.inf), np.full(n, np.inf)


def _unit_box(dim):
    return np.full(2 * dim, -1.0), np.full(2 * dim, 1.0)


def _inside(lo, hi, bound, slack=1e-9):
    return box_is_finite(lo, hi) and np.all(lo >= -bound - slack) and np.all(hi <= bound + slack)


def _map_box(f: cmaps.ConformalMap, lo: np.ndarray, hi: np.ndarray):
    """Axis-aligned box containing f(box).  Exact for linear maps; for the
    nonlinear disc/ball automorphisms the reference target box is returned
    when the operand fits the reference domain, else the box degrades to
    infinite (still a valid cover)."""
    lo2, hi2 = _map_box_raw(f, lo, hi)
    if f.dim == 1 and f.maps_unit_disc() and _inside(lo, hi, 1.0):
        # disc automorphisms cannot leave the closed disc
        ulo, uhi = _unit_box(1)
        lo2, hi2 = np.maximum(lo2, ulo), np.minimum(hi2, uhi)
    return lo2, hi2


def _map_box_raw(f: cmaps.ConformalMap, lo: np.ndarray, hi: np.ndarray):
    dim = f.dim
    if isinstance(f, cmaps.Identity):
        return lo, hi
    if isinstance(f, cmaps.AffineMap):
        off = box_of_point(np.asarray(f.offset))
        return f.scale * lo + off, f.scale * hi + off
    if isinstance(f, cmaps.Rotation):
        lo2, hi2 = lo.copy(), hi.copy()
        k = f.coord
        sub = slice(2 * k, 2 * k + 2)
        if not box_is_finite(lo[sub], hi[sub]):
            return _inf_box(dim)
        lo2[sub], hi2[sub] = _rotate_plane_box(lo[sub], hi[sub], f.theta)
        return lo2, hi2
    if isinstance(f, cmaps.Permutation):
        idx = np.empty(2 * dim, dtype=int)
        for i, p in enumerate(f.perm):
            idx[2 * i], idx[2 * i + 1] = 2 * p, 2 * p + 1
        return lo[idx], hi[idx]
    if isinstance(f, cmaps.UnitaryMap):
        if not box_is_finite(lo, hi):
            return _inf_box(dim)
        m = f.matrix
        real = np.zeros((2 * dim, 2 * dim))
        for i in range(dim):
            for k in range(dim):
                a, b = m[i, k].real, m[i, k].imag
                real[2 * i:2 * i + 2, 2 * k:2 * k + 2] = [[a, -b], [b, a]]
        img = _box_corners(lo, hi) @ real.T
        return img.min(axis=0), img.max(axis=0)
    if isinstance(f, cmaps.ProductMap):
        los, his = [], []
        for k, comp in enumerate(f.components):
            sub = slice(2 * k, 2 * k + 2)
            l2, h2 = _map_box(comp, lo[sub], hi[sub])
            los.append(l2)
            his.append(h2)
        return np.concatenate(los), np.concatenate(his)
    if isinstance(f, cmaps.Composition):
        for m in reversed(f.maps):
            lo, hi = _map_box(m, lo, hi)
        return lo, hi
    if isinstance(f, cmaps.InverseMap):
        return _map_box(f.inner.inverse(), lo, hi)
    if isinstance(f, cmaps.Gj):
        lo2, hi2 = lo.copy(), hi.copy()
        if box_is_finite(lo[0:2], hi[0:2]):
            lo2[0:2], hi2[0:2] = _rotate_plane_box(lo[0:2], hi[0:2], f.t)
        else:
            lo2[0:2], hi2[0:2] = -np.inf, np.inf
        lo2[2] += f.t / f.j
        hi2[2] += f.t / f.j
        return lo2, hi2
    if isinstance(f, cmaps.BallShift):
        if _inside(lo, hi, 1.0):
            return _unit_box(dim)
        return _inf_box(dim)
    if isinstance(f, cmaps.StripToDisc):
        if np.isfinite(lo[1]) and np.isfinite(hi[1]) and lo[1] >= -1 - 1e-9 and hi[1] <= 1 + 1e-9:
            return _unit_box(1)
        return _inf_box(1)
    if isinstance(f, cmaps.DiscToStrip):
        if _inside(lo, hi, 1.0):
            return np.array([-np.inf, -1.0]), np.array([np.inf, 1.0])
        return _inf_box(1)
    if isinstance(f, cmaps.CayleyPhi):
        if _inside(lo, hi, 1.0):
            return np.array([-np.inf, 0.0]), np.array([np.inf, np.inf])
        return _inf_box(1)
    if isinstance(f, cmaps.CayleyPhiInv):
        if np.isfinite(lo[1]) and lo[1] >= -1e-9:
            return _unit_box(1)
        return _inf_box(1)
    if f.maps_unit_disc():
        if _inside(lo, hi, 1.0):
            return _unit_box(1)
        return _inf_box(1)
    return _inf_box(dim)


# ---------------------------------------------------------------------------
# Point classification with the two-sided probe test
# ---------------------------------------------------------------------------

_PLANAR_PROBE_DIRS = np.exp(2j * np.pi * np.arange(8) / 8).reshape(8, 1)


def _probe_directions(dim: int) -> np.ndarray:
    """Eight fixed unit directions in R^{2 dim}, as (8, dim) complex offsets."""
    if dim == 1:
        return _PLANAR_PROBE_DIRS
    rng = np.random.Generator(np.random.Philox(key=20240901))
    vec = rng.normal(size=(8, 2 * dim))
    vec /= np.linalg.norm(vec, axis=1, keepdims=True)
    return vec[:, 0::2] + 1j * vec[:, 1::2]


def contains(region: Region, p, tol: float = DEFAULT_TOL) -> Classification:
    """Classify a single point, resolving boundary candidates by probing.

    A candidate within ``tol`` of a contributing primitive boundary is kept
    as Boundary when probes around it see interior points (two-sided or
    slit/puncture boundary); when all probes land outside, the candidate is
    part of a swallowed arc of an empty sliver and demotes to Exterior.
    """
    pt = cmaps.as_points(p)
    if pt.ndim == 1:
        pt = pt[None, :]
    if pt.shape[-1] != region.dim:
        raise DimensionMismatchError(
            f"point of C^{pt.shape[-1]} against region in C^{region.dim}"
        )
    raw = int(region.classify(pt, tol)[0])
    if raw != 0:
        return Classification(raw)
    dirs = _probe_directions(region.dim)
    probes = pt + 3.0 * tol * dirs
    codes = region.classify(probes, tol)
    if np.any(codes == INTERIOR):
        return Classification.BOUNDARY
    if np.any(codes == EXTERIOR):
        return Classification.EXTERIOR
    return Classification.BOUNDARY


def bounding_box(region: Region) -> tuple[np.ndarray, np.ndarray]:
    """Axis-aligned box in R^{2n} containing the region."""
    return region.bounding_box()


def effective_box(region: Region, window=None, pad: float = 0.0):
    """Finite box for sampling: region box intersected with a window.

    ``window`` is an optional (lo, hi) pair in the same layout.  Raises
    :class:`UnboundedRegionError` when no finite box results.
    """
    lo, hi = region.bounding_box()
    if window is not None:
        wlo, whi = (np.asarray(w, dtype=float) for w in window)
        lo, hi = np.maximum(lo, wlo), np.minimum(hi, whi)
    if not box_is_finite(lo, hi):
        raise UnboundedRegionError(
            "region has an unbounded box; pass a finite sampling window"
        )
    if pad:
        lo = lo - pad
        hi = hi + pad
    return lo, hi


# ---------------------------------------------------------------------------
# Planar slices of higher-dimensional regions
# ---------------------------------------------------------------------------

def slice_region(region: Region, fixed, tol: float = DEFAULT_TOL) -> Region:
    """Planar region in the last coordinate with the leading ones fixed.

    Supports the coordinate-separable part of the catalog (products,
    fibered regions, balls, coordinatewise maps); coordinate-mixing maps
    raise :class:`UnsupportedSliceError`.
    """
    fixed = tuple(complex(v) for v in np.atleast_1d(np.asarray(fixed, dtype=complex)))
    if len(fixed) != region.dim - 1:
        raise DimensionMismatchError(
            f"need {region.dim - 1} fixed coordinates, got {len(fixed)}"
        )
    return _slice(region, fixed, tol)


def _slice(region: Region, fixed: tuple, tol: float) -> Region:
    if not fixed:
        return region
    if isinstance(region, EmptyRegion):
        return EmptyRegion()
    if isinstance(region, Ball):
        c = np.asarray(region.center)
        used = np.abs(np.asarray(fixed) - c[:-1]) ** 2
        rem = region.radius ** 2 - float(np.sum(used))
        if rem <= 0:
            return EmptyRegion()
        return Disc(complex(c[-1]), float(np.sqrt(rem)))
    if isinstance(region, Complement):
        return Complement(_slice(region.region, fixed, tol))
    if isinstance(region, Union):
        return Union(tuple(_slice(r, fixed, tol) for r in region.regions))
    if isinstance(region, Intersection):
        return Intersection(tuple(_slice(r, fixed, tol) for r in region.regions))
    if isinstance(region, Difference):
        return Difference(_slice(region.left, fixed, tol),
                          _slice(region.right, fixed, tol))
    if isinstance(region, Punctured):
        inner = _slice(region.region, fixed, tol)
        punct = region.puncture_array()
        keep = [complex(p[-1]) for p in punct
                if np.all(np.abs(p[:-1] - np.asarray(fixed)) <= tol)]
        return Punctured(inner, tuple((k,) for k in keep)) if keep else inner
    if isinstance(region, Product):
        for val, factor in zip(fixed, region.factors[:-1]):
            code = factor.classify(np.array([[val]], dtype=complex), tol)[0]
            if code != INTERIOR:
                return EmptyRegion()
        return region.factors[-1]
    if isinstance(region, Fibered):
        base_pt = np.asarray(fixed, dtype=complex)[None, :]
        if region.base.classify(base_pt, tol)[0] != INTERIOR:
            return EmptyRegion()
        punct = []
        for m in region.markers:
            v = complex(m.eval(base_pt)[0])
            if np.isfinite(v.real) and np.isfinite(v.imag):
                punct.append((v,))
        out = region.fiber
        return Punctured(out, tuple(punct)) if punct else out
    if isinstance(region, Mapped):
        return _slice_mapped(region.map, region.region, fixed, tol)
    raise UnsupportedSliceError(f"cannot slice a {type(region).__name__} node")


def _slice_mapped(f, inner: Region, fixed: tuple, tol: float) -> Region:
    if isinstance(f, cmaps.Identity):
        return _slice(inner, fixed, tol)
    if isinstance(f, cmaps.Composition):
        node = inner
        for m in reversed(f.maps):
            node = Mapped(m, node)
        return _slice(node, fixed, tol)
    if isinstance(f, cmaps.InverseMap):
        return _slice_mapped(f.inner.inverse(), inner, fixed, tol)
    if isinstance(f, cmaps.ProductMap):
        back = [comp.inverse()(v) for comp, v in zip(f.components[:-1], fixed)]
        sliced = _slice(inner, tuple(back), tol)
        return Mapped(f.components[-1], sliced)
    if isinstance(f, cmaps.Rotation):
        n = f.dim
        if f.coord < n - 1:
            back = list(fixed)
            back[f.coord] = fixed[f.coord] * cmath.exp(-1j * f.theta)
            return _slice(inner, tuple(back), tol)
        return Mapped(cmaps.Rotation(f.theta), _slice(inner, fixed, tol))
    if isinstance(f, cmaps.Gj):
        back = (fixed[0] * cmath.exp(-1j * f.t), fixed[1] - f.t / f.j)
        return _slice(inner, back, tol)
    raise UnsupportedSliceError(
        f"map {type(f).__name__} mixes coordinates; slice not representable"
    )


# ---------------------------------------------------------------------------
# Convenience constructors
# ---------------------------------------------------------------------------

def unit_disc() -> Disc:
    return Disc(0j, 1.0)


def unit_ball(dim: int) -> Region:
    if dim == 1:
        return unit_disc()
    return Ball((0j,) * dim, 1.0)

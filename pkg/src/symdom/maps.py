"""Closed catalog of invertible closed-form holomorphic maps.

Every map in the catalog acts on points of C^n (represented as complex
ndarrays whose last axis has length n), has an exact closed-form inverse,
and evaluates vectorized.  Compositions stay symbolic: ``Composition``
applies its factors one after another instead of flattening them into a
single coefficient matrix, so conjugation chains like ``inv(L) o R o L``
round-trip at machine precision.

The planar members (``DiscMobius``, ``GeneralDiscAuto``, planar
``Rotation``, ``CayleyPhi``, ``Gt``) are Moebius transformations and expose
their 2x2 coefficient matrix for fixed-point computations.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, IdentityMapError, PoleError

_POLE_FLOOR = 1e-300


def _check_dim(pts: np.ndarray, dim: int) -> None:
    if pts.ndim == 0 or pts.shape[-1] != dim:
        raise DimensionMismatchError(
            f"expected points in C^{dim}, got array of shape {pts.shape}"
        )


def _guard_pole(denom: np.ndarray) -> None:
    if np.any(np.abs(denom) < _POLE_FLOOR):
        raise PoleError("map evaluated at a pole")


def as_points(z, dim: int | None = None) -> np.ndarray:
    """Coerce scalars / sequences / arrays to a complex array with point axis.

    A bare complex scalar becomes shape ``(1,)`` (a single planar point); a
    tuple ``(z1, z2)`` becomes shape ``(2,)`` (a single point of C^2).
    Arrays are passed through with a dtype upgrade only.
    """
    arr = np.asarray(z, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if dim is not None and arr.shape[-1] != dim:
        raise DimensionMismatchError(
            f"expected points in C^{dim}, got array of shape {arr.shape}"
        )
    return arr


class ConformalMap:
    """Base class: an invertible holomorphic map on a reference domain."""

    dim: int = 1

    def apply(self, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def inverse(self) -> "ConformalMap":
        raise NotImplementedError

    def __call__(self, z):
        """Scalar/array convenience wrapper around :meth:`apply`.

        Complex scalars map to complex scalars when ``dim == 1``; tuples map
        to 1-d arrays; ndarrays keep their shape.
        """
        if np.isscalar(z) or isinstance(z, complex):
            if self.dim != 1:
                raise DimensionMismatchError("scalar input on a C^n map")
            return complex(self.apply(np.asarray([[z]], dtype=np.complex128))[0, 0])
        pts = as_points(z, None)
        if pts.ndim == 1:
            return self.apply(pts[None, :])[0]
        return self.apply(pts)

    def mobius_matrix(self) -> np.ndarray | None:
        """2x2 complex coefficient matrix for planar Moebius variants."""
        return None

    def maps_unit_disc(self) -> bool:
        """True for planar variants that map the closed unit disc into itself."""
        return False


@dataclass(frozen=True)
class Identity(ConformalMap):
    """Identity on C^n.  Utility member for families and product maps."""

    dim: int = 1

    def apply(self, pts):
        _check_dim(pts, self.dim)
        return np.array(pts, dtype=np.complex128, copy=True)

    def inverse(self):
        return self

    def mobius_matrix(self):
        if self.dim != 1:
            return None
        return np.eye(2, dtype=np.complex128)


@dataclass(frozen=True)
class DiscMobius(ConformalMap):
    """L(z) = (z + a) / (1 + z a) with 0 < a < 1; an automorphism of the disc."""

    a: float
    dim: int = field(default=1, init=False)

    def __post_init__(self):
        if not (0.0 < self.a < 1.0) or not np.isfinite(self.a):
            raise ValueError(f"DiscMobius parameter must be in (0,1), got {self.a}")

    def apply(self, pts):
        _check_dim(pts, 1)
        den = 1.0 + pts * self.a
        _guard_pole(den)
        return (pts + self.a) / den

    def inverse(self):
        # z -> (z - a)/(1 - a z), i.e. the same family with a negated.
        return GeneralDiscAuto(0.0, complex(self.a))

    def mobius_matrix(self):
        return np.array([[1.0, self.a], [self.a, 1.0]], dtype=np.complex128)

    def maps_unit_disc(self):
        return True


@dataclass(frozen=True)
class GeneralDiscAuto(ConformalMap):
    """e^{i theta} (z - alpha) / (1 - conj(alpha) z), |alpha| < 1."""

    theta: float
    alpha: complex
    dim: int = field(default=1, init=False)

    def __post_init__(self):
        if abs(self.alpha) >= 1.0 or not np.isfinite(abs(self.alpha)):
            raise ValueError("GeneralDiscAuto needs |alpha| < 1")

    def apply(self, pts):
        _check_dim(pts, 1)
        den = 1.0 - np.conj(self.alpha) * pts
        _guard_pole(den)
        return cmath.exp(1j * self.theta) * (pts - self.alpha) / den

    def inverse(self):
        # The disc automorphisms form a group; the inverse stays in the family.
        phase = cmath.exp(1j * self.theta)
        return GeneralDiscAuto(-self.theta, -phase * self.alpha)

    def mobius_matrix(self):
        phase = cmath.exp(1j * self.theta)
        return np.array([[phase, -phase * self.alpha], [-np.conj(self.alpha), 1.0]],
                        dtype=np.complex128)

    def maps_unit_disc(self):
        return True


@dataclass(frozen=True)
class Rotation(ConformalMap):
    """z_k -> e^{i theta} z_k on one designated coordinate, identity elsewhere."""

    theta: float
    coord: int = 0
    dim: int = 1

    def __post_init__(self):
        if not (0 <= self.coord < self.dim):
            raise ValueError("rotation coordinate out of range")

    def apply(self, pts):
        _check_dim(pts, self.dim)
        out = np.array(pts, dtype=np.complex128, copy=True)
        out[..., self.coord] *= cmath.exp(1j * self.theta)
        return out

    def inverse(self):
        return Rotation(-self.theta, self.coord, self.dim)

    def mobius_matrix(self):
        if self.dim != 1:
            return None
        return np.array([[cmath.exp(1j * self.theta), 0.0], [0.0, 1.0]],
                        dtype=np.complex128)

    def maps_unit_disc(self):
        return self.dim == 1


@dataclass(frozen=True)
class BallShift(ConformalMap):
    """Unit-ball automorphism moving the origin along the first coordinate.

    z_1 -> (z_1 + a)/(1 + z_1 a),  z_k -> sqrt(1 - a^2) z_k / (1 + z_1 a).
    ``a`` may be any real in (-1, 1); negative values invert positive ones.
    """

    a: float
    dim: int = 2

    def __post_init__(self):
        if not (-1.0 < self.a < 1.0) or not np.isfinite(self.a):
            raise ValueError("BallShift parameter must be in (-1,1)")

    def apply(self, pts):
        _check_dim(pts, self.dim)
        den = 1.0 + pts[..., 0] * self.a
        _guard_pole(den)
        out = np.empty_like(pts, dtype=np.complex128)
        out[..., 0] = (pts[..., 0] + self.a) / den
        s = np.sqrt(1.0 - self.a * self.a)
        for k in range(1, self.dim):
            out[..., k] = s * pts[..., k] / den
        return out

    def inverse(self):
        return BallShift(-self.a, self.dim)


@dataclass(frozen=True)
class Permutation(ConformalMap):
    """Coordinate permutation: output coordinate i is input coordinate perm[i]."""

    perm: tuple

    def __post_init__(self):
        p = tuple(int(i) for i in self.perm)
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"not a permutation: {p}")
        object.__setattr__(self, "perm", p)

    @property
    def dim(self):
        return len(self.perm)

    def apply(self, pts):
        _check_dim(pts, self.dim)
        return np.ascontiguousarray(pts[..., list(self.perm)])

    def inverse(self):
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return Permutation(tuple(inv))


@dataclass(frozen=True)
class CayleyPhi(ConformalMap):
    """phi(w) = -i (w + 1) / (w - 1): the disc onto the upper half-plane."""

    dim: int = field(default=1, init=False)

    def apply(self, pts):
        _check_dim(pts, 1)
        den = pts - 1.0
        _guard_pole(den)
        return -1j * (pts + 1.0) / den

    def inverse(self):
        return CayleyPhiInv()

    def mobius_matrix(self):
        return np.array([[-1j, -1j], [1.0, -1.0]], dtype=np.complex128)


@dataclass(frozen=True)
class CayleyPhiInv(ConformalMap):
    """zeta -> (zeta - i) / (zeta + i): the upper half-plane onto the disc."""

    dim: int = field(default=1, init=False)

    def apply(self, pts):
        _check_dim(pts, 1)
        den = pts + 1j
        _guard_pole(den)
        return (pts - 1j) / den

    def inverse(self):
        return CayleyPhi()

    def mobius_matrix(self):
        return np.array([[1.0, -1j], [1.0, 1j]], dtype=np.complex128)


@dataclass(frozen=True)
class Gt(ConformalMap):
    """g_t(w) = (2 w + i (w - 1) t) / (2 + i (w - 1) t).

    Conjugate of the translation zeta -> zeta + t under the Cayley map; a
    one-parameter automorphism group of the disc fixing w = 1.
    """

    t: float
    dim: int = field(default=1, init=False)

    def apply(self, pts):
        _check_dim(pts, 1)
        den = 2.0 + 1j * (pts - 1.0) * self.t
        _guard_pole(den)
        return (2.0 * pts + 1j * (pts - 1.0) * self.t) / den

    def inverse(self):
        return Gt(-self.t)

    def mobius_matrix(self):
        it = 1j * self.t
        return np.array([[2.0 + it, -it], [it, 2.0 - it]], dtype=np.complex128)

    def maps_unit_disc(self):
        return True


@dataclass(frozen=True)
class Gj(ConformalMap):
    """(z1, z2, z3) -> (e^{it} z1, z2 + t/j, z3) on C^3."""

    j: int
    t: float
    dim: int = field(default=3, init=False)

    def __post_init__(self):
        if self.j < 1:
            raise ValueError("Gj needs a positive integer index")

    def apply(self, pts):
        _check_dim(pts, 3)
        out = np.array(pts, dtype=np.complex128, copy=True)
        out[..., 0] *= cmath.exp(1j * self.t)
        out[..., 1] += self.t / self.j
        return out

    def inverse(self):
        return Gj(self.j, -self.t)


@dataclass(frozen=True)
class StripToDisc(ConformalMap):
    """z -> tanh(pi z / 4): the strip {|Im z| < 1} onto the unit disc."""

    dim: int = field(default=1, init=False)

    def apply(self, pts):
        _check_dim(pts, 1)
        return np.tanh(np.pi * pts / 4.0)

    def inverse(self):
        return DiscToStrip()


@dataclass(frozen=True)
class DiscToStrip(ConformalMap):
    """z -> (4/pi) atanh(z): inverse of :class:`StripToDisc`."""

    dim: int = field(default=1, init=False)

    def apply(self, pts):
        _check_dim(pts, 1)
        _guard_pole(pts - 1.0)
        _guard_pole(pts + 1.0)
        return 4.0 / np.pi * np.arctanh(pts)

    def inverse(self):
        return StripToDisc()


@dataclass(frozen=True)
class AffineMap(ConformalMap):
    """z -> scale * z + offset with real scale > 0 (componentwise offset).

    Utility member used to normalize enclosing balls onto the unit ball.
    """

    scale: float
    offset: tuple

    def __post_init__(self):
        if self.scale <= 0 or not np.isfinite(self.scale):
            raise ValueError("affine scale must be a positive real")
        off = tuple(complex(c) for c in np.atleast_1d(self.offset))
        object.__setattr__(self, "offset", off)

    @property
    def dim(self):
        return len(self.offset)

    def apply(self, pts):
        _check_dim(pts, self.dim)
        return self.scale * pts + np.asarray(self.offset, dtype=np.complex128)

    def inverse(self):
        inv_off = tuple(-c / self.scale for c in self.offset)
        return AffineMap(1.0 / self.scale, inv_off)


@dataclass(frozen=True)
class UnitaryMap(ConformalMap):
    """w = U z for a unitary matrix U; an automorphism of the unit ball."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("unitary matrix must be square")
        if not np.allclose(m @ m.conj().T, np.eye(m.shape[0]), atol=1e-10):
            raise ValueError("matrix is not unitary")
        object.__setattr__(self, "matrix", m)
        m.setflags(write=False)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def apply(self, pts):
        _check_dim(pts, self.dim)
        return pts @ self.matrix.T

    def inverse(self):
        return UnitaryMap(self.matrix.conj().T)

    def __eq__(self, other):
        return isinstance(other, UnitaryMap) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())


@dataclass(frozen=True)
class ProductMap(ConformalMap):
    """Apply one planar map per coordinate."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        for c in comps:
            if c.dim != 1:
                raise DimensionMismatchError("product components must be planar")
        object.__setattr__(self, "components", comps)

    @property
    def dim(self):
        return len(self.components)

    def apply(self, pts):
        _check_dim(pts, self.dim)
        cols = [c.apply(pts[..., k:k + 1]) for k, c in enumerate(self.components)]
        return np.concatenate(cols, axis=-1)

    def inverse(self):
        return ProductMap(tuple(c.inverse() for c in self.components))


@dataclass(frozen=True)
class InverseMap(ConformalMap):
    """Symbolic inverse of a catalog map.

    Evaluation delegates to the concrete closed-form inverse; keeping the
    wrapper (instead of resolving eagerly) lets scene files print back the
    ``inv(...)`` syntax they were written with.
    """

    inner: ConformalMap

    @property
    def dim(self):
        return self.inner.dim

    def apply(self, pts):
        return self.inner.inverse().apply(pts)

    def inverse(self):
        return self.inner

    def mobius_matrix(self):
        mat = self.inner.mobius_matrix()
        if mat is None:
            return None
        (a, b), (c, d) = mat
        return np.array([[d, -b], [-c, a]], dtype=np.complex128)

    def maps_unit_disc(self):
        # Disc automorphisms form a group, so inverses stay inside.
        return self.inner.maps_unit_disc()


@dataclass(frozen=True)
class Composition(ConformalMap):
    """maps[0] o maps[1] o ... o maps[-1]: the last factor applies first.

    Kept symbolic deliberately; no coefficient flattening happens here.
    """

    maps: tuple

    def __post_init__(self):
        ms = tuple(self.maps)
        if not ms:
            raise ValueError("empty composition")
        dims = {m.dim for m in ms}
        if len(dims) != 1:
            raise DimensionMismatchError(f"mixed dims in composition: {dims}")
        object.__setattr__(self, "maps", ms)

    @property
    def dim(self):
        return self.maps[0].dim

    def apply(self, pts):
        out = pts
        for m in reversed(self.maps):
            out = m.apply(out)
        return out

    def inverse(self):
        return Composition(tuple(m.inverse() for m in reversed(self.maps)))

    def mobius_matrix(self):
        acc = np.eye(2, dtype=np.complex128)
        for m in self.maps:
            sub = m.mobius_matrix()
            if sub is None:
                return None
            acc = acc @ sub
        return acc

    def maps_unit_disc(self):
        return all(m.maps_unit_disc() for m in self.maps)


def compose(*maps: ConformalMap) -> ConformalMap:
    """Compose maps (rightmost applies first), unwrapping trivial cases."""
    if len(maps) == 1:
        return maps[0]
    return Composition(tuple(maps))


def inverse(f: ConformalMap) -> ConformalMap:
    """Closed-form inverse of any catalog map."""
    return f.inverse()


def apply(f: ConformalMap, pts: np.ndarray) -> np.ndarray:
    """Functional alias for ``f.apply`` on an ``(..., n)`` complex array."""
    return f.apply(pts)


def fixed_points(f: ConformalMap, tol: float = 1e-12) -> list[complex]:
    """Fixed points of a planar Moebius-type map (boundary ones included).

    Returns the finite roots of the associated quadratic; the fixed point at
    infinity, when present, is outside every bounded domain and is dropped.
    Raises :class:`IdentityMapError` for the identity, where every point is
    fixed.
    """
    mat = f.mobius_matrix()
    if mat is None:
        raise DimensionMismatchError("fixed_points needs a planar Moebius-type map")
    (a, b), (c, d) = mat
    scale = max(abs(a), abs(b), abs(c), abs(d))
    if scale == 0:
        raise ValueError("degenerate map")
    a, b, c, d = a / scale, b / scale, c / scale, d / scale
    if abs(c) <= tol and abs(b) <= tol and abs(a - d) <= tol:
        raise IdentityMapError("identity map: all points are fixed")
    if abs(c) <= tol:
        # linear map a z + b = d z
        return [complex(b / (d - a))]
    roots = np.roots([c, d - a, -b])
    roots = sorted((complex(r) for r in roots), key=lambda z: (z.real, z.imag))
    # double roots of the quadratic split by ~sqrt(eps) under np.roots
    if len(roots) == 2 and abs(roots[0] - roots[1]) <= 1e-6:
        mid = (roots[0] + roots[1]) / 2
        return [mid]
    return [complex(r) for r in roots]


def infinitesimal_generator(family, p, dt: float = 1e-5, id_tol: float = 1e-8) -> np.ndarray:
    """Generator of a one-parameter family at a point, by central differences.

    ``family`` maps a real parameter t to a catalog map with family(0) = id.
    Returns the real tangent vector in R^{2n} (re/im interleaved per
    coordinate); the truncation error is O(dt^2).
    """
    pt = as_points(p)
    if pt.ndim == 1:
        pt = pt[None, :]
    base = family(0.0).apply(pt)
    if np.max(np.abs(base - pt)) > id_tol:
        raise ValueError("family(0) is not the identity at the base point")
    fwd = family(dt).apply(pt)
    bwd = family(-dt).apply(pt)
    deriv = (fwd - bwd) / (2.0 * dt)
    flat = deriv.reshape(-1)
    out = np.empty(2 * flat.size, dtype=np.float64)
    out[0::2] = flat.real
    out[1::2] = flat.imag
    return out

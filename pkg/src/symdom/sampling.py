"""Boundary and interior sampling of region trees.

Planar trees: primitive boundaries are circles and half-plane edge lines
(clipped to the sampling box), pushed through any enclosing map chain with
adaptive parameter subdivision until consecutive image points are at most
``h`` apart.  A candidate survives iff probes at ``+- h/2`` along the local
normal see both interior and exterior -- this removes primitive arcs
swallowed by unions.  Punctures are always included.

Higher-dimensional trees built from balls and rigid maps (affine, unitary,
rotations, permutations): primitive spheres map to exact spheres, so each
image sphere gets a deterministic hyperspherical h-net and the same
normal-probe retention.  Everything else falls back to a stratified
ambient grid refined by bisection (16 iterations) between interior and
exterior neighbor pairs; products and fibered regions sample face by face,
with the excluded marker graph included the way punctures are.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import maps as cmaps
from . import regions as reg
from .errors import (
    EmptyRegionError,
    SamplingError,
    UnboundedRegionError,
)
from .hausdorff import PointCloud

_BISECT_ITERS = 16
_AMBIENT_COARSE_CAP = {2: 192, 4: 28, 6: 10}
_AMBIENT_FINE_BUDGET = 6_000_000


def _rng(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=np.uint64(seed), counter=[stream, 0, 0, 0]))


# ---------------------------------------------------------------------------
# Interior sampling
# ---------------------------------------------------------------------------

def interior_sample(region: reg.Region, count: int, seed: int = 0, *,
                    window=None, tol: float = reg.DEFAULT_TOL,
                    max_batches: int = 400) -> np.ndarray:
    """Rejection-sample ``count`` interior points, deterministically in seed.

    Raises :class:`SamplingError` when the region is too thin (or empty)
    for rejection sampling inside its box / the given window.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    lo, hi = reg.effective_box(region, window)
    if np.any(hi <= lo):
        raise SamplingError("empty sampling box")
    rng = _rng(seed)
    n = region.dim
    out = []
    got = 0
    batch = max(2 * count, 512)
    for _ in range(max_batches):
        flat = rng.uniform(lo, hi, size=(batch, 2 * n))
        pts = flat[:, 0::2] + 1j * flat[:, 1::2]
        codes = region.classify(pts, tol)
        good = pts[codes == reg.INTERIOR]
        if len(good):
            out.append(good)
            got += len(good)
        if got >= count:
            return np.concatenate(out)[:count]
    raise SamplingError(
        f"rejection sampling found {got}/{count} interior points; "
        "region may be empty or too thin at this resolution"
    )


def _subsample(arr: np.ndarray, m: int) -> np.ndarray:
    if len(arr) <= m:
        return arr
    idx = np.linspace(0, len(arr) - 1, m).astype(int)
    return arr[idx]


# ---------------------------------------------------------------------------
# Planar boundary sampling
# ---------------------------------------------------------------------------

@dataclass
class _Curve:
    kind: str                 # "circle" | "segment"
    a: complex                # circle center / segment start
    b: complex                # circle radius (real in .real) / segment end
    transform: cmaps.ConformalMap | None


def _planar_walk(region: reg.Region, transform) -> tuple[list[_Curve], list[complex]]:
    """Collect primitive boundary curves and punctures, with map chains."""
    if isinstance(region, reg.EmptyRegion):
        return [], []
    if isinstance(region, reg.Disc):
        return [_Curve("circle", region.center, complex(region.radius), transform)], []
    if isinstance(region, reg.Ball) and region.dim == 1:
        return [_Curve("circle", region.center[0], complex(region.radius), transform)], []
    if isinstance(region, reg.HalfPlane):
        return [_Curve("line", region.unit_normal, complex(region.offset), transform)], []
    if isinstance(region, reg.Complement):
        return _planar_walk(region.region, transform)
    if isinstance(region, (reg.Union, reg.Intersection)):
        curves, punct = [], []
        for r in region.regions:
            c, p = _planar_walk(r, transform)
            curves.extend(c)
            punct.extend(p)
        return curves, punct
    if isinstance(region, reg.Difference):
        c1, p1 = _planar_walk(region.left, transform)
        c2, p2 = _planar_walk(region.right, transform)
        return c1 + c2, p1 + p2
    if isinstance(region, reg.Mapped):
        chain = region.map if transform is None else cmaps.compose(transform, region.map)
        return _planar_walk(region.region, chain)
    if isinstance(region, reg.Punctured):
        curves, punct = _planar_walk(region.region, transform)
        own = region.puncture_array()[:, 0]
        if transform is not None:
            own = transform.apply(own[:, None])[:, 0]
        return curves, punct + [complex(v) for v in own]
    raise SamplingError(f"node {type(region).__name__} is not planar-samplable")


def _clip_line_to_box(normal: complex, offset: float, lo, hi):
    """Edge line {Re(z conj(n)) = offset} clipped to a box -> segment or None."""
    # parametrize: z = offset*n + t * (i n)
    p0 = offset * normal
    d = 1j * normal
    tmin, tmax = -np.inf, np.inf
    for comp, dcomp, plo, phi in (
        (p0.real, d.real, lo[0], hi[0]),
        (p0.imag, d.imag, lo[1], hi[1]),
    ):
        if abs(dcomp) < 1e-15:
            if comp < plo or comp > phi:
                return None
            continue
        t1 = (plo - comp) / dcomp
        t2 = (phi - comp) / dcomp
        if t1 > t2:
            t1, t2 = t2, t1
        tmin = max(tmin, t1)
        tmax = min(tmax, t2)
    if not (tmin < tmax) or not np.isfinite(tmin) or not np.isfinite(tmax):
        return None
    return p0 + tmin * d, p0 + tmax * d


def _adaptive_curve_points(param_fn, s0: float, s1: float, push, h: float,
                           closed: bool) -> np.ndarray:
    """Sample push(param_fn(s)) on [s0, s1] with image gaps <= h.

    Intervals split proportionally to their chord length; a piece is
    accepted when its chord is short and its midpoint deviates from the
    chord by <= h/4 (guards against aliasing through folds).
    """
    n_init = 16 if closed else 8
    seeds = np.linspace(s0, s1, n_init + 1)
    vals = push(param_fn(seeds))
    stack = [(seeds[i], seeds[i + 1], vals[i], vals[i + 1], 0)
             for i in range(n_init)][::-1]
    out_w = []
    max_depth = 48
    while stack:
        a, b, wa, wb, depth = stack.pop()
        chord = abs(wb - wa)
        if chord <= h or depth >= max_depth:
            mid = 0.5 * (a + b)
            wm = push(param_fn(np.array([mid])))[0]
            if (abs(wm - 0.5 * (wa + wb)) <= 0.25 * h) or depth >= max_depth:
                out_w.append(wa)
                continue
            stack.append((mid, b, wm, wb, depth + 1))
            stack.append((a, mid, wa, wm, depth + 1))
            continue
        # split proportionally to the chord so counts track arc length
        k = min(int(np.ceil(chord / h)) + 1, 64)
        ss = np.linspace(a, b, k + 1)
        ws = push(param_fn(ss))
        ws[0], ws[-1] = wa, wb
        for i in range(k - 1, -1, -1):
            stack.append((ss[i], ss[i + 1], ws[i], ws[i + 1], depth + 1))
        if len(out_w) > 4_000_000:
            raise SamplingError("curve refinement exceeded the point budget")
    if not closed:
        out_w.append(vals[-1])
    return np.asarray(out_w, dtype=np.complex128)


def _planar_boundary(region: reg.Region, h: float, window, keep_curves: bool):
    lo, hi = reg.effective_box(region, window, pad=2 * h)
    curves, punct = _planar_walk(region, None)
    tol = min(reg.DEFAULT_TOL, h * 1e-3)
    polylines = []
    kept_parts = []
    for curve in curves:
        if curve.kind == "circle":
            c, r = curve.a, curve.b.real

            def param(s, c=c, r=r):
                return c + r * np.exp(2j * np.pi * np.asarray(s))

            closed = True
            s0, s1 = 0.0, 1.0
        else:
            seg = _clip_line_to_box(curve.a, curve.b.real, lo, hi)
            if seg is None:
                continue
            p0, p1 = seg

            def param(s, p0=p0, p1=p1):
                return p0 + np.asarray(s) * (p1 - p0)

            closed = False
            s0, s1 = 0.0, 1.0
        push = (lambda z: z) if curve.transform is None else (
            lambda z, t=curve.transform: t.apply(z[:, None])[:, 0]
        )
        pts = _adaptive_curve_points(param, s0, s1, push, h, closed)
        if len(pts) < 2:
            continue
        # local normals from neighbor differences
        nxt = np.roll(pts, -1) if closed else np.append(pts[1:], pts[-1])
        prv = np.roll(pts, 1) if closed else np.insert(pts[:-1], 0, pts[0])
        tang = nxt - prv
        norm = np.abs(tang)
        norm[norm == 0] = 1.0
        normal = 1j * tang / norm
        candidates = pts[:, None]
        raw = region.classify(candidates, tol)
        plus = region.classify(candidates + (0.5 * h) * normal[:, None], tol)
        minus = region.classify(candidates - (0.5 * h) * normal[:, None], tol)
        two_sided = (
            (raw == reg.BOUNDARY)
            & (np.minimum(plus, minus) == reg.EXTERIOR)
            & (np.maximum(plus, minus) == reg.INTERIOR)
        )
        kept_parts.append(pts[two_sided])
        if keep_curves:
            polylines.extend(_runs(pts, two_sided, closed))
    if punct:
        kept_parts.append(np.asarray(punct, dtype=np.complex128))
    if not kept_parts or sum(len(p) for p in kept_parts) == 0:
        raise EmptyRegionError(f"no boundary found at resolution {h}")
    cloud = PointCloud(np.concatenate(kept_parts)[:, None], h)
    return (cloud, polylines) if keep_curves else cloud


def _runs(pts: np.ndarray, mask: np.ndarray, closed: bool) -> list[np.ndarray]:
    """Contiguous retained runs of a curve, for polyline rendering."""
    if not mask.any():
        return []
    if mask.all():
        run = pts
        if closed:
            run = np.append(run, run[:1])
        return [run]
    idx = np.nonzero(mask)[0]
    breaks = np.nonzero(np.diff(idx) > 1)[0]
    segments = np.split(idx, breaks + 1)
    if closed and len(segments) > 1 and idx[0] == 0 and idx[-1] == len(pts) - 1:
        segments[0] = np.concatenate([segments[-1], segments[0]])
        segments.pop()
    return [pts[s] for s in segments if len(s) > 1]


# ---------------------------------------------------------------------------
# Rigid sphere walk (balls under affine / unitary chains)
# ---------------------------------------------------------------------------

def _rigid_scale(f) -> float | None:
    """Uniform metric scale of a sphere-preserving map, or None."""
    if f is None or isinstance(f, (cmaps.Identity, cmaps.Rotation,
                                   cmaps.Permutation, cmaps.UnitaryMap)):
        return 1.0
    if isinstance(f, cmaps.AffineMap):
        return float(f.scale)
    if isinstance(f, cmaps.Composition):
        acc = 1.0
        for m in f.maps:
            s = _rigid_scale(m)
            if s is None:
                return None
            acc *= s
        return acc
    if isinstance(f, cmaps.InverseMap):
        s = _rigid_scale(f.inner)
        return None if s in (None, 0.0) else 1.0 / s
    if isinstance(f, cmaps.ProductMap):
        scales = [_rigid_scale(c) for c in f.components]
        if any(s is None for s in scales) or max(scales) != min(scales):
            return None
        return scales[0]
    return None


def _sphere_walk(region: reg.Region, transform):
    """Collect (center, radius) image spheres, or None if not rigid."""
    if isinstance(region, reg.Ball):
        scale = _rigid_scale(transform)
        if scale is None:
            return None
        center = np.asarray(region.center, dtype=np.complex128)
        if transform is not None:
            center = transform.apply(center[None, :])[0]
        return [(center, region.radius * scale)], []
    if isinstance(region, reg.Complement):
        return _sphere_walk(region.region, transform)
    if isinstance(region, (reg.Union, reg.Intersection)):
        spheres, punct = [], []
        for r in region.regions:
            sub = _sphere_walk(r, transform)
            if sub is None:
                return None
            spheres.extend(sub[0])
            punct.extend(sub[1])
        return spheres, punct
    if isinstance(region, reg.Difference):
        s1 = _sphere_walk(region.left, transform)
        s2 = _sphere_walk(region.right, transform)
        if s1 is None or s2 is None:
            return None
        return s1[0] + s2[0], s1[1] + s2[1]
    if isinstance(region, reg.Mapped):
        chain = region.map if transform is None else cmaps.compose(transform, region.map)
        return _sphere_walk(region.region, chain)
    if isinstance(region, reg.Punctured):
        sub = _sphere_walk(region.region, transform)
        if sub is None:
            return None
        own = region.puncture_array()
        if transform is not None:
            own = transform.apply(own)
        return sub[0], sub[1] + [own[i] for i in range(len(own))]
    return None


def sphere_net(dim: int, h: float) -> np.ndarray:
    """Deterministic h-net of the unit sphere of C^dim, as (N, dim) complex.

    dim = 1 is the unit circle; dim = 2 uses hyperspherical angles on S^3
    with metric-corrected step counts per latitude.
    """
    if dim == 1:
        n = max(8, int(np.ceil(2 * np.pi / h)))
        ang = 2 * np.pi * np.arange(n) / n
        return np.exp(1j * ang)[:, None]
    if dim == 2:
        rows = []
        npsi = max(4, int(np.ceil(np.pi / h)))
        for i in range(npsi + 1):
            psi = np.pi * i / npsi
            sp = math.sin(psi)
            ntheta = max(1, int(np.ceil(np.pi * sp / h)))
            for jj in range(ntheta + 1):
                theta = np.pi * jj / ntheta
                st = math.sin(theta)
                nphi = max(1, int(np.ceil(2 * np.pi * sp * st / h)))
                phi = 2 * np.pi * np.arange(nphi) / nphi
                x0 = math.cos(psi)
                x1 = sp * math.cos(theta)
                x2 = sp * st * np.cos(phi)
                x3 = sp * st * np.sin(phi)
                rows.append(np.stack([np.full(nphi, x0 + 1j * x1),
                                      x2 + 1j * x3], axis=-1))
        return np.concatenate(rows, axis=0)
    raise SamplingError("sphere nets implemented for C^1 and C^2 only")


def _sphere_boundary(region: reg.Region, h: float, spheres, punct):
    tol = min(reg.DEFAULT_TOL, h * 1e-3)
    seen = set()
    parts = []
    for center, radius in spheres:
        key = (tuple(np.round(center, 12).tolist()), round(radius, 12))
        if key in seen:
            continue
        seen.add(key)
        net = sphere_net(region.dim, h / radius) * radius
        pts = net + center
        normal = net / radius
        raw = region.classify(pts, tol)
        plus = region.classify(pts + (0.5 * h) * normal, tol)
        minus = region.classify(pts - (0.5 * h) * normal, tol)
        two_sided = (
            (raw == reg.BOUNDARY)
            & (np.minimum(plus, minus) == reg.EXTERIOR)
            & (np.maximum(plus, minus) == reg.INTERIOR)
        )
        parts.append(pts[two_sided])
    if punct:
        parts.append(np.asarray(punct, dtype=np.complex128).reshape(-1, region.dim))
    if not parts or sum(len(p) for p in parts) == 0:
        raise EmptyRegionError(f"no boundary found at resolution {h}")
    return PointCloud(np.concatenate(parts, axis=0), h)


# ---------------------------------------------------------------------------
# Ambient stratified grid with bisection refinement
# ---------------------------------------------------------------------------

def _collect_punctures(region: reg.Region, transform):
    if isinstance(region, reg.Punctured):
        own = region.puncture_array()
        if transform is not None:
            own = transform.apply(own)
        inner = _collect_punctures(region.region, transform)
        return [own[i] for i in range(len(own))] + inner
    if isinstance(region, (reg.Union, reg.Intersection)):
        out = []
        for r in region.regions:
            out.extend(_collect_punctures(r, transform))
        return out
    if isinstance(region, reg.Difference):
        return (_collect_punctures(region.left, transform)
                + _collect_punctures(region.right, transform))
    if isinstance(region, reg.Complement):
        return _collect_punctures(region.region, transform)
    if isinstance(region, reg.Mapped):
        chain = region.map if transform is None else cmaps.compose(transform, region.map)
        return _collect_punctures(region.region, chain)
    return []


def _bisect_pairs(region, inside, outside, tol):
    """Refine interior/exterior point pairs to boundary midpoints."""
    a = inside.copy()
    b = outside.copy()
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (a + b)
        codes = region.classify(mid, tol)
        take_a = codes == reg.INTERIOR
        a[take_a] = mid[take_a]
        b[~take_a] = mid[~take_a]
    return 0.5 * (a + b)


def _ambient_boundary(region: reg.Region, h: float, window, budget):
    d = 2 * region.dim
    lo, hi = reg.effective_box(region, window, pad=2 * h)
    extent = hi - lo
    cap = _AMBIENT_COARSE_CAP.get(d, 10)
    coarse = np.minimum(np.maximum(np.ceil(extent / (4 * h)).astype(int), 4), cap)
    tol = min(reg.DEFAULT_TOL, h * 1e-3)

    axes = [np.linspace(lo[i], hi[i], coarse[i] + 1) for i in range(d)]
    mesh = np.meshgrid(*axes, indexing="ij")
    flat = np.stack([m.ravel() for m in mesh], axis=-1)
    pts = flat[:, 0::2] + 1j * flat[:, 1::2]
    codes = region.classify(pts, tol).reshape([c + 1 for c in coarse])

    # coarse cells whose corners mix interior and exterior
    from itertools import product as iproduct
    corner_stacks = []
    for offs in iproduct((0, 1), repeat=d):
        sl = tuple(slice(o, o + c) for o, c in zip(offs, coarse))
        corner_stacks.append(codes[sl])
    stack = np.stack(corner_stacks)
    active = (stack.max(axis=0) == reg.INTERIOR) & (stack.min(axis=0) == reg.EXTERIOR)
    active |= (stack == reg.BOUNDARY).any(axis=0)
    idx = np.argwhere(active)
    if len(idx) == 0:
        raise EmptyRegionError(f"no boundary found at resolution {h}")

    g0 = extent / coarse
    refine = np.maximum(np.ceil(g0 / (h / 2)).astype(int), 1)
    fine_per_cell = int(np.prod(refine + 1))
    max_budget = budget or _AMBIENT_FINE_BUDGET
    if fine_per_cell * len(idx) > max_budget:
        raise SamplingError(
            f"ambient refinement needs {fine_per_cell * len(idx)} probes "
            f"(> budget {max_budget}); increase h or the budget"
        )

    # fine lattice corners inside each active cell
    sub_axes = [np.arange(refine[i] + 1) * (g0[i] / refine[i]) for i in range(d)]
    sub_mesh = np.meshgrid(*sub_axes, indexing="ij")
    sub = np.stack([m.ravel() for m in sub_mesh], axis=-1)          # (S, d)
    base = lo + idx * g0                                            # (C, d)
    fine = (base[:, None, :] + sub[None, :, :])                     # (C, S, d)
    C, S = fine.shape[:2]
    fine_pts = fine.reshape(C * S, d)
    fine_c = fine_pts[:, 0::2] + 1j * fine_pts[:, 1::2]
    fine_codes = np.empty(C * S, dtype=np.int8)
    chunk = 1_000_000
    for s in range(0, C * S, chunk):
        fine_codes[s:s + chunk] = region.classify(fine_c[s:s + chunk], tol)
    fine_codes = fine_codes.reshape([C] + list(refine + 1))

    inside_list, outside_list = [], []
    shape = fine_codes.shape
    for ax in range(d):
        sl_a = tuple([slice(None)] + [slice(None, -1) if i == ax else slice(None)
                                      for i in range(d)])
        sl_b = tuple([slice(None)] + [slice(1, None) if i == ax else slice(None)
                                      for i in range(d)])
        ca, cb = fine_codes[sl_a], fine_codes[sl_b]
        crossing = (ca.astype(np.int16) * cb.astype(np.int16)) == -1
        if not crossing.any():
            continue
        fa = fine.reshape([C] + list(refine + 1) + [d])
        pa = fa[sl_a][crossing]
        pb = fa[sl_b][crossing]
        swap = ca[crossing] == reg.EXTERIOR
        pa[swap], pb[swap] = pb[swap], pa[swap].copy()
        inside_list.append(pa)
        outside_list.append(pb)

    parts = []
    if inside_list:
        pin = np.concatenate(inside_list)
        pout = np.concatenate(outside_list)
        mids = _bisect_pairs(
            region,
            pin[:, 0::2] + 1j * pin[:, 1::2],
            pout[:, 0::2] + 1j * pout[:, 1::2],
            tol,
        )
        parts.append(mids)
    punct = _collect_punctures(region, None)
    if punct:
        parts.append(np.asarray(punct, dtype=np.complex128).reshape(-1, region.dim))
    if not parts:
        raise EmptyRegionError(f"no boundary found at resolution {h}")
    return PointCloud(np.concatenate(parts, axis=0), h)


# ---------------------------------------------------------------------------
# Product / fibered boundaries via faces
# ---------------------------------------------------------------------------

def _grid_closure(factor: reg.Region, m: int, h: float, window=None,
                  boundary_pts: np.ndarray | None = None):
    """Deterministic closure cover: interior lattice + boundary subsample.

    Returns (points, spacing) where every closure point of the factor is
    within ~spacing * sqrt(d)/2 of some returned point; the spacing is
    exact (a lattice step), not a statistical estimate.
    """
    lo, hi = reg.effective_box(factor, window)
    d = lo.size
    extent = np.maximum(hi - lo, 1e-12)
    vol = float(np.prod(extent))
    g = (vol / max(m, 4)) ** (1.0 / d)
    axes = [np.arange(lo[i] + g / 2, hi[i], g) for i in range(d)]
    axes = [a if len(a) else np.array([(lo[i] + hi[i]) / 2]) for i, a in enumerate(axes)]
    mesh = np.meshgrid(*axes, indexing="ij")
    flat = np.stack([mm.ravel() for mm in mesh], axis=-1)
    pts = flat[:, 0::2] + 1j * flat[:, 1::2]
    codes = factor.classify(pts, reg.DEFAULT_TOL)
    inner = pts[codes >= reg.BOUNDARY]
    if boundary_pts is None:
        try:
            boundary_pts = boundary_sample(factor, h, window=window).points
        except EmptyRegionError:
            boundary_pts = inner[:0]
    step = max(1, int(round(g / max(h, 1e-12))))
    bsub = boundary_pts[::step]
    out = np.concatenate([inner, bsub], axis=0) if len(inner) or len(bsub) else inner
    if len(out) == 0:
        raise SamplingError("closure cover is empty")
    return out, g * np.sqrt(d)


def _cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """All (row_a ++ row_b) concatenations: (Na*Nb, da+db)."""
    na, nb = len(a), len(b)
    left = np.repeat(a, nb, axis=0)
    right = np.tile(b, (na, 1))
    return np.concatenate([left, right], axis=1)


def _window_slice(window, a: int, b: int):
    if window is None:
        return None
    lo, hi = window
    return np.asarray(lo)[2 * a:2 * b], np.asarray(hi)[2 * a:2 * b]


def _product_boundary(region: reg.Product, h, window, budget, seed=0):
    k = len(region.factors)
    budget = budget or 150_000
    per_face = max(budget // k, 1000)
    faces = []
    spacings = [h]
    clouds = [boundary_sample(f, h, window=_window_slice(window, i, i + 1))
              for i, f in enumerate(region.factors)]
    for i, factor in enumerate(region.factors):
        bpts = clouds[i].points
        m = max(9, int((per_face / max(len(bpts), 1)) ** (1.0 / max(k - 1, 1))))
        bpts = _subsample(bpts, per_face // max(m ** (k - 1), 1) + 1)
        face = bpts
        for jj, other in enumerate(region.factors):
            if jj == i:
                continue
            wj = _window_slice(window, jj, jj + 1)
            closure, spacing = _grid_closure(other, m, h, window=wj,
                                             boundary_pts=clouds[jj].points)
            spacings.append(spacing)
            if jj < i:
                face = _cross(closure, face)
            else:
                face = _cross(face, closure)
        faces.append(face)
    pts = np.concatenate(faces, axis=0)
    return PointCloud(pts, max(spacings))


def _fibered_boundary(region: reg.Fibered, h, window, budget, seed=0):
    k = region.base.dim
    budget = budget or 150_000
    per_face = max(budget // 3, 1000)
    wbase = _window_slice(window, 0, k)
    wfib = _window_slice(window, k, k + 1)

    base_cloud = boundary_sample(region.base, h, window=wbase, budget=per_face)
    fiber_cloud = boundary_sample(region.fiber, h, window=wfib)

    m_fiber = max(16, per_face // max(len(base_cloud), 1))
    fiber_closure, sp_f = _grid_closure(region.fiber, m_fiber, h, window=wfib,
                                        boundary_pts=fiber_cloud.points)
    m_base = max(64, per_face // max(len(fiber_cloud), 1))
    base_closure, sp_b = _grid_closure(region.base, m_base, h, window=wbase,
                                       boundary_pts=base_cloud.points)

    face_a = _cross(_subsample(base_cloud.points, per_face // len(fiber_closure) + 1),
                    fiber_closure)
    face_b = _cross(_subsample(base_closure, per_face // len(fiber_cloud) + 1),
                    fiber_cloud.points)

    # marker graph: fiber punctures over base closure points, like punctures
    graph_pts = []
    base_codes = region.base.classify(base_closure, reg.DEFAULT_TOL)
    marker_base = base_closure[base_codes == reg.INTERIOR]
    for m in region.markers:
        vals = m.eval(marker_base)
        ok = np.isfinite(vals.real) & np.isfinite(vals.imag)
        ok &= region.fiber.classify(vals[:, None], reg.DEFAULT_TOL) >= reg.BOUNDARY
        if ok.any():
            graph_pts.append(np.concatenate(
                [marker_base[ok], vals[ok][:, None]], axis=1))
    parts = [face_a, face_b] + graph_pts
    pts = np.concatenate(parts, axis=0)
    return PointCloud(pts, max(h, sp_f, sp_b))


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

_PUSH_LIP = {
    cmaps.Identity: 1.0,
    cmaps.Rotation: 1.0,
    cmaps.Permutation: 1.0,
    cmaps.UnitaryMap: 1.0,
}


def _push_lipschitz(f) -> float | None:
    """Global Lipschitz bound on the reference domain, when modest."""
    if isinstance(f, (cmaps.Identity, cmaps.Rotation, cmaps.Permutation,
                      cmaps.UnitaryMap)):
        return 1.0
    if isinstance(f, cmaps.AffineMap):
        return float(f.scale)
    if isinstance(f, cmaps.StripToDisc):
        # |d/dz tanh(pi z/4)| <= pi/2 on the closed unit strip
        return np.pi / 2.0
    if isinstance(f, cmaps.ProductMap):
        vals = [_push_lipschitz(c) for c in f.components]
        if any(v is None for v in vals):
            return None
        return max(vals)
    if isinstance(f, cmaps.Composition):
        acc = 1.0
        for m in f.maps:
            v = _push_lipschitz(m)
            if v is None:
                return None
            acc *= v
        return acc
    return None


def boundary_sample(region: reg.Region, h: float, *, window=None,
                    budget: int | None = None, keep_curves: bool = False):
    """Sample the boundary of a region as a :class:`PointCloud`.

    ``h`` is the target resolution (arc/mesh step); ``window`` supplies a
    finite sampling box for trees with unbounded bounding boxes; ``budget``
    caps the point count of the face/ambient strategies.  With
    ``keep_curves=True`` (planar only) the ordered retained polylines are
    returned alongside the cloud for rendering.
    """
    if h <= 0 or not np.isfinite(h):
        raise ValueError("resolution h must be a positive real")
    if region.dim == 1:
        return _planar_boundary(region, h, window, keep_curves)
    if keep_curves:
        raise SamplingError("keep_curves is only meaningful for planar regions")
    if isinstance(region, reg.Product):
        return _product_boundary(region, h, window, budget)
    if isinstance(region, reg.Fibered):
        return _fibered_boundary(region, h, window, budget)
    if isinstance(region, reg.Punctured) and isinstance(region.region, (reg.Product, reg.Fibered)):
        inner = boundary_sample(region.region, h, window=window, budget=budget)
        pts = np.concatenate([inner.points, region.puncture_array()], axis=0)
        return PointCloud(pts, inner.resolution)
    if isinstance(region, reg.Mapped):
        lip = _push_lipschitz(region.map)
        if lip is not None:
            inner = boundary_sample(region.region, h / max(lip, 1e-9),
                                    window=window, budget=budget)
            return PointCloud(region.map.apply(inner.points),
                              inner.resolution * lip)
    walked = _sphere_walk(region, None)
    if walked is not None:
        return _sphere_boundary(region, h, walked[0], walked[1])
    return _ambient_boundary(region, h, window, budget)

"""Numerical verification engine: invariance, group laws, orders, ranks.

Every check produces an immutable :class:`VerificationReport` whose status
is pass iff the measured worst deviation is within the stated tolerance.
Reports are deterministic for fixed inputs and seed; elapsed time is
carried for logging but excluded from equality.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import maps as cmaps
from . import regions as reg
from .hausdorff import PointCloud, SpatialIndex
from .maps import infinitesimal_generator
from .sampling import boundary_sample, interior_sample

DEFAULT_SAMPLES = 1000
DEFAULT_TOL = 1e-6
_CLASSIFY_TOL = 1e-9


@dataclass(frozen=True)
class VerificationReport:
    check_name: str
    status: str
    max_deviation: float
    samples: int
    tolerance: float
    elapsed_ms: float = field(compare=False, default=0.0)
    details: tuple = ()

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _report(name, dev, samples, tol, t0, details=()) -> VerificationReport:
    return VerificationReport(
        check_name=name,
        status="pass" if dev <= tol else "fail",
        max_deviation=float(dev),
        samples=int(samples),
        tolerance=float(tol),
        elapsed_ms=1e3 * (time.perf_counter() - t0),
        details=tuple(details),
    )


def _worst(points: np.ndarray, values: np.ndarray, k: int = 5) -> tuple:
    if len(values) == 0:
        return ()
    idx = np.argsort(-values, kind="stable")[:k]
    return tuple(
        (tuple(np.round(points[i], 12).tolist()), float(values[i]))
        for i in idx if values[i] > 0
    )


@dataclass(frozen=True)
class Family:
    """One-parameter family t -> ConformalMap with an associated domain."""

    name: str
    fn: Callable[[float], cmaps.ConformalMap]
    domain: reg.Region | None = None
    window: tuple | None = None

    def __call__(self, t: float) -> cmaps.ConformalMap:
        return self.fn(float(t))


def check_invariance(region: reg.Region, f: cmaps.ConformalMap,
                     n_samples: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL,
                     seed: int = 0, *, window=None,
                     boundary_cloud: PointCloud | None = None,
                     boundary_index: SpatialIndex | None = None,
                     boundary_h: float = 0.01,
                     name: str = "invariance") -> VerificationReport:
    """Certify f(R) = R by testing f and its inverse together.

    Interior samples must map to interior points; boundary samples must map
    within ``tol + cloud resolution`` of the boundary cloud.  The deviation
    is the worst violation across both directions.
    """
    t0 = time.perf_counter()
    pts = interior_sample(region, n_samples, seed, window=window)
    if boundary_index is not None:
        boundary_cloud = boundary_index.cloud
    elif boundary_cloud is None:
        boundary_cloud = boundary_sample(region, boundary_h, window=window)
    index = boundary_index if boundary_index is not None else SpatialIndex(boundary_cloud)
    dev = 0.0
    offenders = []
    total = 0
    for g in (f, f.inverse()):
        img = g.apply(pts)
        codes = region.classify(img, _CLASSIFY_TOL)
        viol = np.zeros(len(img))
        viol[codes == reg.BOUNDARY] = _CLASSIFY_TOL
        ext = codes == reg.EXTERIOR
        if np.any(ext):
            viol[ext] = index.nearest_distances(img[ext])
        if np.any(viol > 0):
            offenders.extend(_worst(pts, viol))
        dev = max(dev, float(viol.max(initial=0.0)))
        imgb = g.apply(boundary_cloud.points)
        d = index.nearest_distances(imgb)
        bdev = max(0.0, float(d.max()) - boundary_cloud.resolution)
        if bdev > 0:
            offenders.extend(_worst(boundary_cloud.points, np.maximum(d - boundary_cloud.resolution, 0)))
        dev = max(dev, bdev)
        total += len(img) + len(imgb)
    offenders.sort(key=lambda kv: -kv[1])
    return _report(name, dev, total, tol, t0, offenders[:5])


def check_group_law(family, s: float, t: float, *, region: reg.Region | None = None,
                    n_samples: int = DEFAULT_SAMPLES, tol: float = 1e-12,
                    seed: int = 0, window=None) -> VerificationReport:
    """Deviation of family(s) o family(t) from family(s + t) on samples."""
    t0 = time.perf_counter()
    dom, window = _family_domain(family, region, window)
    pts = interior_sample(dom, n_samples, seed, window=window)
    lhs = family(s).apply(family(t).apply(pts))
    rhs = family(s + t).apply(pts)
    dev = _sup(lhs - rhs)
    return _report(f"group_law(s={s}, t={t})", dev, len(pts), tol, t0)


def check_order(f: cmaps.ConformalMap, j: int, *, region: reg.Region | None = None,
                n_samples: int = DEFAULT_SAMPLES, tol: float = 1e-9,
                seed: int = 0, window=None) -> VerificationReport:
    """Deviation of the j-fold iterate of f from the identity."""
    if j < 1:
        raise ValueError("order must be >= 1")
    t0 = time.perf_counter()
    dom = region if region is not None else reg.unit_ball(f.dim)
    pts = interior_sample(dom, n_samples, seed, window=window)
    out = pts
    for _ in range(j):
        out = f.apply(out)
    dev = _sup(out - pts)
    return _report(f"order(j={j})", dev, len(pts), tol, t0)


def check_commuting(f: cmaps.ConformalMap, g: cmaps.ConformalMap, *,
                    region: reg.Region | None = None,
                    n_samples: int = DEFAULT_SAMPLES, tol: float = 1e-12,
                    seed: int = 0, window=None) -> VerificationReport:
    """Deviation of f o g from g o f on samples."""
    t0 = time.perf_counter()
    dom = region if region is not None else reg.unit_ball(f.dim)
    pts = interior_sample(dom, n_samples, seed, window=window)
    dev = _sup(f.apply(g.apply(pts)) - g.apply(f.apply(pts)))
    return _report("commuting", dev, len(pts), tol, t0)


def _sup(diff: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.abs(diff) ** 2, axis=-1)).max(initial=0.0))


def _family_domain(family, region, window):
    if region is not None:
        return region, window
    if isinstance(family, Family) and family.domain is not None:
        return family.domain, window if window is not None else family.window
    raise ValueError("no sample domain: pass region= or use a Family with a domain")


@dataclass(frozen=True)
class TorusRankResult:
    rank: int
    degenerate_base_point: bool
    singular_values: tuple
    reports: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)


def torus_rank_witness(region: reg.Region, families, p, *, dt: float = 1e-5,
                       rank_tol: float = 1e-8, n_samples: int = DEFAULT_SAMPLES,
                       tol: float = DEFAULT_TOL, seed: int = 0,
                       window=None, boundary_cloud=None,
                       boundary_h: float = 0.01) -> TorusRankResult:
    """Real rank of the commuting rotation generators at a base point.

    Verifies the preconditions (each family leaves the region invariant and
    the families pairwise commute), assembles the 2n x k matrix of
    infinitesimal generators at ``p``, and returns its rank by singular
    values with a scale-free threshold.  The rank can never exceed n for a
    region in C^n; that assertion tripping is a build-stopping bug.
    """
    n = region.dim
    reports = []
    probe_t = 0.37
    if boundary_cloud is None:
        boundary_cloud = boundary_sample(region, boundary_h, window=window)
    index = SpatialIndex(boundary_cloud)
    for i, fam in enumerate(families):
        reports.append(check_invariance(
            region, fam(probe_t), n_samples, tol, seed + i, window=window,
            boundary_index=index,
            name=f"invariance[{getattr(fam, 'name', i)}]",
        ))
    for i in range(len(families)):
        for j in range(i + 1, len(families)):
            reports.append(check_commuting(
                families[i](0.53), families[j](0.29),
                region=region, n_samples=n_samples, tol=1e-10,
                seed=seed + 17 + i + 3 * j, window=window,
            ))
    gens = np.stack([infinitesimal_generator(fam, p, dt) for fam in families],
                    axis=1)  # (2n, k)
    svals = np.linalg.svd(gens, compute_uv=False)
    if svals.size == 0 or svals[0] <= rank_tol:
        rank = 0
        degenerate = True
    else:
        rank = int(np.sum(svals > rank_tol * svals[0]))
        degenerate = False
    assert rank <= n, f"rank witness {rank} > n = {n}: build-stopping bug"
    return TorusRankResult(
        rank=rank,
        degenerate_base_point=degenerate,
        singular_values=tuple(float(s) for s in svals),
        reports=tuple(reports),
    )


@dataclass(frozen=True)
class ConvergenceTable:
    """Per-(j, t) sup deviations of a family sequence from its limit."""

    rows: tuple  # of (j, t, deviation)

    def deviation(self, j: int, t: float) -> float:
        for jj, tt, d in self.rows:
            if jj == j and tt == t:
                return d
        raise KeyError((j, t))


def check_convergence(family_seq, limit_family, js, ts, *,
                      region: reg.Region, n_samples: int = DEFAULT_SAMPLES,
                      seed: int = 0, window=None) -> ConvergenceTable:
    """sup_x |family_j(x, t) - limit(x, t)| for each j and t."""
    pts = interior_sample(region, n_samples, seed, window=window)
    rows = []
    for j in js:
        fam = family_seq(j)
        for t in ts:
            dev = _sup(fam(t).apply(pts) - limit_family(t).apply(pts))
            rows.append((int(j), float(t), dev))
    return ConvergenceTable(tuple(rows))

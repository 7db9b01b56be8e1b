"""Diversity of finite point sets.

The diversity of a set is the norm of the difference body of its convex
hull under a set inner product.  That single number is zero exactly on
singletons, grows under insertion, and satisfies the triangle law
``delta(A u B) + delta(B u C) >= delta(A u C)`` for nonempty ``B``;
``diversity_axiom_check`` probes all of that empirically, including the
support-function inclusion that drives the triangle law's proof:
``(A u B) - (A u B)`` sits inside ``(A - A) + (B - B)`` whenever the
two sets share a point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .body import (Body, _dedup_rows, difference_body, minkowski_sum,
                   polytope_from_points)
from .innerprod import (AxiomReport, AxiomResult, Matrix1D, SetIP,
                        SphericalL2, norm)
from .supportcurve import support_gap

__all__ = [
    "PointSet", "point_set", "union", "point_set_to_json",
    "point_set_from_json", "diversity", "diversity_axiom_check",
]


@dataclass(frozen=True, eq=False)
class PointSet:
    """Finite nonempty set of points, deduplicated and lexicographically sorted."""

    points: np.ndarray  # (m, n)

    @property
    def size(self) -> int:
        return int(self.points.shape[0])

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    def hull_body(self) -> Body:
        return polytope_from_points(self.points)


def point_set(points) -> PointSet:
    if isinstance(points, PointSet):
        return points
    arr = np.atleast_2d(np.asarray(points, dtype=float))
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError("a point set is a nonempty list of same-length vectors")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point coordinates must be finite")
    deduped = _dedup_rows(arr, 1e-12)
    deduped.setflags(write=False)
    return PointSet(deduped)


def union(a, b) -> PointSet:
    a = point_set(a)
    b = point_set(b)
    if a.dim != b.dim:
        raise ValueError("cannot union point sets of different dimensions")
    return point_set(np.vstack((a.points, b.points)))


def _check_spec(spec: SetIP, s: PointSet):
    if isinstance(spec, SphericalL2):
        if spec.dim != s.dim:
            raise ValueError(
                f"point dimension {s.dim} does not match spec dimension {spec.dim}")
        return
    if isinstance(spec, Matrix1D):
        if s.dim != 1:
            raise ValueError("Matrix1D diversity needs 1D points")
        return
    raise TypeError(f"not an inner product spec: {spec!r}")


def diversity(spec: SetIP, s) -> float:
    """``sqrt(<D, D>)`` for D the difference body of the hull of ``s``."""
    s = point_set(s)
    _check_spec(spec, s)
    return norm(spec, difference_body(s.hull_body()))


def diversity_axiom_check(spec: SetIP, sampler, trials: int, *, seed: int = 0,
                          tol: float = 1e-9) -> AxiomReport:
    """Probe the diversity laws on sampled point-set triples.

    Per trial: the singleton law and strict positivity on larger sets,
    the shared-middle triangle law, growth under insertion, and the
    difference-body inclusion for overlapping unions.  ``sampler(rng)``
    returns a point set; overlaps are arranged by gluing a shared point.
    """
    rng = np.random.default_rng(seed)
    pos = AxiomResult(True, np.inf)
    tri = AxiomResult(True, np.inf)
    mono = AxiomResult(True, np.inf)
    incl = AxiomResult(True, -np.inf)

    def describe(*sets):
        return [s.points.tolist() for s in sets]

    for _ in range(int(trials)):
        a = point_set(sampler(rng))
        b = point_set(sampler(rng))
        c = point_set(sampler(rng))
        lone = point_set(a.points[:1])
        d_lone = diversity(spec, lone)
        if d_lone > tol:
            pos.passed = False
            pos.witness = {"set": describe(lone)[0], "value": d_lone}
        if a.size >= 2:
            da = diversity(spec, a)
            if da < pos.worst:
                pos.worst = da
                if da <= tol:
                    pos.passed = False
                    pos.witness = {"set": describe(a)[0], "value": da}
        ab, bc, ac = union(a, b), union(b, c), union(a, c)
        resid = diversity(spec, ab) + diversity(spec, bc) - diversity(spec, ac)
        if resid < tri.worst:
            tri.worst = resid
            tri.witness = {"a": describe(a)[0], "b": describe(b)[0],
                           "c": describe(c)[0], "residual": resid}
        if resid < -tol:
            tri.passed = False
        grown = union(a, c.points[:1])
        gain = diversity(spec, grown) - diversity(spec, a)
        if gain < mono.worst:
            mono.worst = gain
            mono.witness = {"set": describe(a)[0],
                            "point": c.points[0].tolist(), "gain": gain}
        if gain < -tol:
            mono.passed = False
        glued = union(a, b.points[:1])
        both = union(glued, b)
        lhs = difference_body(both.hull_body())
        rhs = minkowski_sum(difference_body(glued.hull_body()),
                            difference_body(b.hull_body()))
        gap = support_gap(lhs, rhs)
        if gap > incl.worst:
            incl.worst = gap
            incl.witness = {"a": describe(glued)[0], "b": describe(b)[0],
                            "gap": gap}
        if gap > tol:
            incl.passed = False

    report = AxiomReport(trials=int(trials))
    report.results["positivity"] = pos
    report.results["triangle"] = tri
    report.results["monotonicity"] = mono
    report.results["union_bound"] = incl
    return report


def point_set_to_json(s: PointSet) -> dict:
    return {"points": [[float(x) for x in row] for row in s.points]}


def point_set_from_json(obj) -> PointSet:
    if not isinstance(obj, dict) or "points" not in obj:
        raise ValueError("point set JSON must be an object with 'points'")
    pts = obj["points"]
    if not isinstance(pts, list) or not pts:
        raise ValueError("'points' must be a nonempty list of vectors")
    return point_set(pts)

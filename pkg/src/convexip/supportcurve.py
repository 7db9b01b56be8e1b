"""Exact piecewise-sinusoid support restrictions on the unit circle.

A planar body's support function restricted to angles is piecewise of
the form ``a.u(t) + c`` with ``u(t) = (cos t, sin t)``: one arc per
active polytope vertex, plus a constant from every ball summand.  The
arcs make inner products, suprema and first moments closed-form, which
is what the kernels in :mod:`convexip._kernels` evaluate.

A curve is *valid* (is some body's support function) exactly when it is
continuous, every per-arc constant is nonnegative and the angular
derivative jumps upward at every breakpoint; this is the discrete form
of the curvature-measure condition for sublinearity and is the workhorse
behind the summand and line-classification tests in
:mod:`convexip.geometry`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, grids
from .body import (Ball, Body, MinkowskiSum, Point, Polytope, Scaled, _freeze,
                   point, polytope_from_points, support_grid)

ANG_TOL = 1e-9
TWO_PI = 2.0 * np.pi

__all__ = [
    "ANG_TOL", "SupportCurve", "SupportSample", "support_curve",
    "combine_curves", "corefine", "arc_jumps", "arc_gaps", "body_from_curve",
    "canonicalize_2d", "support_gap", "subset", "hausdorff", "sample_support",
]


@dataclass(frozen=True, eq=False)
class SupportCurve:
    """Piecewise sinusoid on the circle, arc ``k`` starting at ``angles[k]``."""

    angles: np.ndarray  # (K,) sorted, in [0, 2pi)
    ax: np.ndarray      # (K,) generator x components
    ay: np.ndarray      # (K,) generator y components
    offs: np.ndarray    # (K,) per-arc constants

    @property
    def arcs(self) -> int:
        return int(self.angles.shape[0])

    @property
    def gens(self) -> np.ndarray:
        return np.stack((self.ax, self.ay), axis=1)

    def arc_index(self, thetas: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.angles, thetas, side="right") - 1
        return np.where(idx < 0, self.arcs - 1, idx)

    def values(self, thetas) -> np.ndarray:
        t = np.asarray(thetas, dtype=float) % TWO_PI
        idx = self.arc_index(t)
        return self.ax[idx] * np.cos(t) + self.ay[idx] * np.sin(t) + self.offs[idx]

    def value(self, theta: float) -> float:
        return float(self.values(np.array([theta]))[0])

    def evaluate_vector(self, x) -> float:
        """Support value at a possibly non-unit vector, by homogeneity."""
        v = np.asarray(x, dtype=float)
        r = float(np.hypot(v[0], v[1]))
        if r == 0.0:
            return 0.0
        return r * self.value(float(np.arctan2(v[1], v[0])))

    def jumps(self) -> np.ndarray:
        """Angular-derivative jump at each breakpoint (previous arc wraps)."""
        return arc_jumps(self.angles, self.ax, self.ay)

    def gaps(self) -> np.ndarray:
        """Continuity defect magnitude at each breakpoint."""
        return arc_gaps(self.angles, self.ax, self.ay, self.offs)

    def is_valid(self, tol: float = ANG_TOL) -> bool:
        """Whether this curve is the support restriction of some body."""
        if self.arcs == 1:
            return bool(self.offs[0] >= -tol)
        return bool(np.max(self.gaps()) <= tol
                    and np.min(self.jumps()) >= -tol
                    and np.min(self.offs) >= -tol)


def arc_jumps(angles: np.ndarray, ax: np.ndarray, ay: np.ndarray) -> np.ndarray:
    dx = ax - np.roll(ax, 1)
    dy = ay - np.roll(ay, 1)
    # derivative of a.u is a.u', u'(t) = (-sin t, cos t)
    return -dx * np.sin(angles) + dy * np.cos(angles)


def arc_gaps(angles, ax, ay, offs) -> np.ndarray:
    dx = ax - np.roll(ax, 1)
    dy = ay - np.roll(ay, 1)
    do = offs - np.roll(offs, 1)
    return np.abs(dx * np.cos(angles) + dy * np.sin(angles) + do)


# ----------------------------------------------------------------- construction

def _dedup_angles(angles: np.ndarray) -> np.ndarray:
    # angles sorted ascending; collapse clusters tighter than ANG_TOL, wrapping
    if angles.size <= 1:
        return angles
    keep = np.concatenate(([True], np.diff(angles) > ANG_TOL))
    out = angles[keep]
    if out.size > 1 and out[0] + TWO_PI - out[-1] <= ANG_TOL:
        out = out[:-1]
    return out


def _merge_equal_arcs(angles, gx, gy, offs):
    if angles.size > 1:
        same = ((np.abs(gx - np.roll(gx, 1)) <= 1e-12)
                & (np.abs(gy - np.roll(gy, 1)) <= 1e-12)
                & (np.abs(offs - np.roll(offs, 1)) <= 1e-12))
        if same.all():
            angles, gx, gy, offs = angles[:1], gx[:1], gy[:1], offs[:1]
        elif same.any():
            keep = ~same
            angles, gx, gy, offs = angles[keep], gx[keep], gy[keep], offs[keep]
    if angles.size == 1:
        angles = np.zeros(1)
    return angles, gx, gy, offs


def combine_curves(curves, coeffs) -> SupportCurve:
    """Pointwise linear combination ``sum_i coeffs[i] * curve_i``.

    Coefficients may be negative; the result is not necessarily a valid
    support curve.
    """
    parts = [c.angles for c in curves if c.arcs > 1]
    if not parts:
        gx = sum(w * c.ax[0] for c, w in zip(curves, coeffs))
        gy = sum(w * c.ay[0] for c, w in zip(curves, coeffs))
        off = sum(w * c.offs[0] for c, w in zip(curves, coeffs))
        return SupportCurve(_freeze(np.zeros(1)), _freeze([gx]), _freeze([gy]),
                            _freeze([off]))
    angles = _dedup_angles(np.sort(np.concatenate(parts)))
    nxt = np.concatenate((angles[1:], angles[:1] + TWO_PI))
    mids = (0.5 * (angles + nxt)) % TWO_PI
    gx = np.zeros(angles.size)
    gy = np.zeros(angles.size)
    offs = np.zeros(angles.size)
    for c, w in zip(curves, coeffs):
        idx = c.arc_index(mids)
        gx += w * c.ax[idx]
        gy += w * c.ay[idx]
        offs += w * c.offs[idx]
    angles, gx, gy, offs = _merge_equal_arcs(angles, gx, gy, offs)
    return SupportCurve(_freeze(angles), _freeze(gx), _freeze(gy), _freeze(offs))


def corefine(curves) -> list:
    """Re-express curves over their shared breakpoint set, without merging.

    The results all carry identical ``angles`` arrays, so per-arc data
    of different curves can be compared or combined componentwise.
    """
    parts = [c.angles for c in curves if c.arcs > 1]
    if not parts:
        angles = np.zeros(1)
    else:
        angles = _dedup_angles(np.sort(np.concatenate(parts)))
    nxt = np.concatenate((angles[1:], angles[:1] + TWO_PI))
    mids = (0.5 * (angles + nxt)) % TWO_PI
    shared = _freeze(angles)
    out = []
    for c in curves:
        idx = c.arc_index(mids)
        out.append(SupportCurve(shared, _freeze(c.ax[idx]), _freeze(c.ay[idx]),
                                _freeze(c.offs[idx])))
    return out


def _polytope_curve(verts: np.ndarray) -> SupportCurve:
    m = verts.shape[0]
    if m == 1:
        return SupportCurve(_freeze(np.zeros(1)), _freeze(verts[:, 0]),
                            _freeze(verts[:, 1]), _freeze(np.zeros(1)))
    edges = np.roll(verts, -1, axis=0) - verts
    # outward normal of a counterclockwise edge (ex, ey) is (ey, -ex)
    normals = np.arctan2(-edges[:, 0], edges[:, 1]) % TWO_PI
    gens = np.roll(verts, -1, axis=0)  # the vertex entered at each edge normal
    order = np.argsort(normals, kind="stable")
    raw = SupportCurve(_freeze(normals[order]), _freeze(gens[order, 0]),
                       _freeze(gens[order, 1]), _freeze(np.zeros(m)))
    return combine_curves([raw], [1.0])


def _build_curve(body: Body) -> SupportCurve:
    if isinstance(body, Point):
        return SupportCurve(_freeze(np.zeros(1)), _freeze(body.coords[:1]),
                            _freeze(body.coords[1:]), _freeze(np.zeros(1)))
    if isinstance(body, Ball):
        return SupportCurve(_freeze(np.zeros(1)), _freeze(body.center[:1]),
                            _freeze(body.center[1:]), _freeze([body.radius]))
    if isinstance(body, Polytope):
        return _polytope_curve(body.vertices)
    if isinstance(body, Scaled):
        return combine_curves([support_curve(body.body)], [body.factor])
    if isinstance(body, MinkowskiSum):
        return combine_curves([support_curve(t) for t in body.terms],
                              np.ones(len(body.terms)))
    raise TypeError(f"not a body: {body!r}")


def support_curve(body: Body) -> SupportCurve:
    """The body's exact support restriction to the circle (2D only, cached)."""
    if body.dim != 2:
        raise ValueError("support curves exist for 2D bodies only")
    cached = body.__dict__.get("_curve")
    if cached is None:
        cached = _build_curve(body)
        body.__dict__["_curve"] = cached
    return cached


# ------------------------------------------------------------- reconstruction

def body_from_curve(curve: SupportCurve, tol: float = ANG_TOL) -> Body:
    """Body whose support restriction is the given valid curve.

    Works for uniform per-arc constants (every body expression produces
    those): the generators are the polygon vertices and the constant is
    a centred ball summand.
    """
    if not curve.is_valid(tol):
        raise ValueError("curve is not a valid support restriction")
    spread = float(np.max(curve.offs) - np.min(curve.offs))
    if spread > tol:
        raise ValueError(
            "curve has non-uniform arc constants; no closed-form body expression")
    c = max(float(np.mean(curve.offs)), 0.0)
    if curve.arcs == 1:
        ctr = np.array([curve.ax[0], curve.ay[0]])
        if c <= tol:
            return point(ctr)
        return Ball(_freeze(ctr), c)
    poly = polytope_from_points(curve.gens)
    if c <= tol:
        return poly
    return MinkowskiSum((poly, Ball(_freeze(np.zeros(2)), c)))


def canonicalize_2d(body: Body) -> Body:
    """Canonical polygon/ball form of a planar body expression."""
    return body_from_curve(support_curve(body))


# ---------------------------------------------------------------- comparisons

def _grid_for(n: int, directions):
    if directions is not None:
        return np.asarray(directions, dtype=float), None
    return grids.grid_directions(n), ("grid", n, grids.DEFAULT_GRID)


def support_gap(inner: Body, outer: Body, directions=None) -> float:
    """Signed worst excess ``sup (h_inner - h_outer)``; <= 0 means contained.

    Exact in one and two dimensions; a declared direction grid decides
    in higher dimension.
    """
    if inner.dim != outer.dim:
        raise ValueError("support comparison requires bodies of one dimension")
    n = inner.dim
    if n == 2:
        ci = support_curve(inner)
        co = support_curve(outer)
        return float(_kernels.sup_difference(ci.angles, ci.ax, ci.ay, ci.offs,
                                             co.angles, co.ax, co.ay, co.offs,
                                             False))
    dirs, token = _grid_for(n, directions)
    gap = support_grid(inner, dirs, token) - support_grid(outer, dirs, token)
    return float(np.max(gap))


def subset(inner: Body, outer: Body, tol: float = ANG_TOL, directions=None) -> bool:
    """Whether ``inner`` is contained in ``outer`` up to ``tol``."""
    return support_gap(inner, outer, directions=directions) <= tol


def hausdorff(a: Body, b: Body, directions=None) -> float:
    """Hausdorff distance, the sup-norm gap of the support functions."""
    if a.dim != b.dim:
        raise ValueError("hausdorff requires bodies of one dimension")
    n = a.dim
    if n == 2:
        ca = support_curve(a)
        cb = support_curve(b)
        return float(_kernels.sup_difference(ca.angles, ca.ax, ca.ay, ca.offs,
                                             cb.angles, cb.ax, cb.ay, cb.offs,
                                             True))
    dirs, token = _grid_for(n, directions)
    gap = support_grid(a, dirs, token) - support_grid(b, dirs, token)
    return float(np.max(np.abs(gap)))


# -------------------------------------------------------------------- sampling

@dataclass(frozen=True, eq=False)
class SupportSample:
    """Support values over a weighted direction grid."""

    directions: np.ndarray  # (G, n), unit rows
    values: np.ndarray      # (G,)
    weights: np.ndarray     # (G,), positive

    def __post_init__(self):
        if not (self.directions.shape[0] == self.values.shape[0]
                == self.weights.shape[0] > 0):
            raise ValueError("sample arrays must share a positive length")
        norms = np.linalg.norm(self.directions, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise ValueError("sample directions must be unit length")
        if np.min(self.weights) <= 0.0:
            raise ValueError("sample weights must be positive")

    @property
    def total_weight(self) -> float:
        return float(np.sum(self.weights))


def sample_support(body: Body, directions, weights, cache_token=None) -> SupportSample:
    dirs = np.asarray(directions, dtype=float)
    w = np.asarray(weights, dtype=float)
    vals = support_grid(body, dirs, cache_token)
    return SupportSample(_freeze(dirs), _freeze(vals), _freeze(w))

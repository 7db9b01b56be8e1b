"""Convex bodies as immutable Minkowski expressions.

A body is a closed expression tree over five node kinds: single points,
polytopes (convex hulls of finite point sets), balls, Minkowski sums and
nonnegative dilations.  Support values ``sup {a.x : a in body}`` are
evaluated exactly in every dimension by structural recursion; all the
2D metric work (subset tests, Hausdorff distance, canonical polygon
forms) lives in :mod:`convexip.supportcurve` on top of the exact
piecewise-sinusoid restriction to the unit circle.

Polytopes in the plane are kept canonical: vertices are deduplicated,
reduced to the extreme points, ordered counterclockwise and rolled so
the lexicographically smallest vertex comes first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

COORD_TOL = 1e-12

__all__ = [
    "COORD_TOL", "Body", "Point", "Polytope", "Ball", "MinkowskiSum", "Scaled",
    "point", "ball", "polytope_from_points", "minkowski_sum", "scale",
    "translate", "negate", "difference_body", "support", "support_grid",
    "is_polytopal", "body_to_json", "body_from_json",
]


def _freeze(a) -> np.ndarray:
    out = np.ascontiguousarray(np.asarray(a, dtype=float))
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Body:
    """Base class of the body expression tree."""

    @property
    def dim(self) -> int:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Point(Body):
    coords: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.coords.shape[0])


@dataclass(frozen=True, eq=False)
class Polytope(Body):
    """Hull of finitely many points; planar instances are canonical."""

    vertices: np.ndarray  # (m, n)

    @property
    def dim(self) -> int:
        return int(self.vertices.shape[1])


@dataclass(frozen=True, eq=False)
class Ball(Body):
    center: np.ndarray
    radius: float

    @property
    def dim(self) -> int:
        return int(self.center.shape[0])


@dataclass(frozen=True, eq=False)
class MinkowskiSum(Body):
    terms: tuple

    @property
    def dim(self) -> int:
        return self.terms[0].dim


@dataclass(frozen=True, eq=False)
class Scaled(Body):
    factor: float
    body: Body

    @property
    def dim(self) -> int:
        return self.body.dim


# ----------------------------------------------------------------- constructors

def point(coords) -> Point:
    c = _freeze(coords)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("point needs a nonempty 1D coordinate vector")
    if not np.all(np.isfinite(c)):
        raise ValueError("point coordinates must be finite")
    return Point(c)


def ball(center, radius) -> Ball:
    c = _freeze(center)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("ball needs a nonempty 1D center vector")
    r = float(radius)
    if not (np.all(np.isfinite(c)) and np.isfinite(r)):
        raise ValueError("ball parameters must be finite")
    if r < 0.0:
        raise ValueError("ball radius must be >= 0")
    return Ball(c, r)


def _lexsorted(pts: np.ndarray) -> np.ndarray:
    return pts[np.lexsort(pts.T[::-1])]


def _dedup_rows(pts: np.ndarray, tol: float = COORD_TOL) -> np.ndarray:
    pts = _lexsorted(pts)
    keep = [pts[0]]
    for row in pts[1:]:
        if np.max(np.abs(row - keep[-1])) > tol:
            keep.append(row)
    return np.array(keep)


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(pts: np.ndarray) -> np.ndarray:
    # monotone chain on deduped lexsorted points; collinear vertices dropped
    if pts.shape[0] <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= COORD_TOL:
            lower.pop()
        lower.append(p)
    upper = []
    for p in pts[::-1]:
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= COORD_TOL:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def _roll_to_lexmin(verts: np.ndarray) -> np.ndarray:
    start = int(np.lexsort(verts.T[::-1])[0])
    return np.roll(verts, -start, axis=0)


def polytope_from_points(points) -> Body:
    """Canonical polytope from a nonempty point cloud.

    In the plane this is the strictly convex counterclockwise hull; in
    one dimension the interval endpoints; in higher dimensions the
    deduplicated cloud is stored as given.  A cloud that collapses to a
    single point comes back as a ``Point``.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
        raise ValueError("polytope needs a nonempty (m, n) point array")
    if not np.all(np.isfinite(pts)):
        raise ValueError("polytope points must be finite")
    pts = _dedup_rows(pts)
    n = pts.shape[1]
    if n == 1:
        lo, hi = float(pts.min()), float(pts.max())
        verts = np.array([[lo]]) if hi - lo <= COORD_TOL else np.array([[lo], [hi]])
    elif n == 2:
        verts = _hull_2d(pts)
    else:
        verts = pts
    if verts.shape[0] == 1:
        return Point(_freeze(verts[0]))
    return Polytope(_freeze(verts))


# ------------------------------------------------------------------- evaluation

def support(body: Body, direction) -> float:
    """Exact support value ``sup {a.direction : a in body}``."""
    d = np.asarray(direction, dtype=float)
    if d.shape != (body.dim,):
        raise ValueError(
            f"direction has shape {d.shape}, body has dimension {body.dim}")
    return float(support_grid(body, d[np.newaxis, :])[0])


def support_grid(body: Body, directions: np.ndarray, cache_token=None) -> np.ndarray:
    """Support values on a stack of directions, shape (G, n).

    ``cache_token`` memoises the result on the body node; pass one only
    for direction sets that are interned for the process lifetime.
    """
    if cache_token is not None:
        cache = body.__dict__.get("_support_cache")
        if cache is None:
            cache = {}
            body.__dict__["_support_cache"] = cache
        hit = cache.get(cache_token)
        if hit is not None:
            return hit
    dirs = np.asarray(directions, dtype=float)
    if isinstance(body, Point):
        vals = dirs @ body.coords
    elif isinstance(body, Polytope):
        vals = (dirs @ body.vertices.T).max(axis=1)
    elif isinstance(body, Ball):
        vals = dirs @ body.center + body.radius * np.linalg.norm(dirs, axis=1)
    elif isinstance(body, MinkowskiSum):
        vals = support_grid(body.terms[0], dirs, cache_token).copy()
        for term in body.terms[1:]:
            vals += support_grid(term, dirs, cache_token)
    elif isinstance(body, Scaled):
        vals = body.factor * support_grid(body.body, dirs, cache_token)
    else:
        raise TypeError(f"not a body: {body!r}")
    if cache_token is not None:
        vals.setflags(write=False)
        cache[cache_token] = vals
    return vals


# ------------------------------------------------------------------- arithmetic

def is_polytopal(body: Body) -> bool:
    """True when the expression contains no ball of positive radius."""
    if isinstance(body, (Point, Polytope)):
        return True
    if isinstance(body, Ball):
        return body.radius <= COORD_TOL
    if isinstance(body, MinkowskiSum):
        return all(is_polytopal(t) for t in body.terms)
    if isinstance(body, Scaled):
        return is_polytopal(body.body)
    raise TypeError(f"not a body: {body!r}")


def scale(body: Body, factor) -> Body:
    """Dilation by a nonnegative factor; zero collapses to the origin."""
    t = float(factor)
    if not np.isfinite(t) or t < 0.0:
        raise ValueError("scale factor must be finite and >= 0")
    if t == 0.0:
        return Point(_freeze(np.zeros(body.dim)))
    if isinstance(body, Point):
        return Point(_freeze(t * body.coords))
    if isinstance(body, Ball):
        return Ball(_freeze(t * body.center), t * body.radius)
    if isinstance(body, Polytope):
        return Polytope(_freeze(t * body.vertices))
    if isinstance(body, Scaled):
        return Scaled(t * body.factor, body.body)
    return Scaled(t, body)


def negate(body: Body) -> Body:
    """Pointwise reflection through the origin."""
    if isinstance(body, Point):
        return Point(_freeze(-body.coords))
    if isinstance(body, Ball):
        return Ball(_freeze(-body.center), body.radius)
    if isinstance(body, Polytope):
        v = -body.vertices
        if body.dim == 1:
            v = np.sort(v, axis=0)
        elif body.dim == 2 and v.shape[0] >= 2:
            # central symmetry preserves orientation; re-anchor the start
            v = _roll_to_lexmin(v)
        return Polytope(_freeze(v))
    if isinstance(body, MinkowskiSum):
        return MinkowskiSum(tuple(negate(t) for t in body.terms))
    if isinstance(body, Scaled):
        return Scaled(body.factor, negate(body.body))
    raise TypeError(f"not a body: {body!r}")


def minkowski_sum(*bodies: Body) -> Body:
    """Minkowski sum; planar polytope-only sums come back as polygons."""
    if not bodies:
        raise ValueError("minkowski_sum needs at least one body")
    dims = {b.dim for b in bodies}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch in minkowski_sum: {sorted(dims)}")
    terms: list[Body] = []
    for b in bodies:
        if isinstance(b, MinkowskiSum):
            terms.extend(b.terms)
        else:
            terms.append(b)
    if len(terms) == 1:
        return terms[0]
    out = MinkowskiSum(tuple(terms))
    n = out.dim
    if n == 1:
        lo = -support(out, np.array([-1.0]))
        hi = support(out, np.array([1.0]))
        return polytope_from_points([[lo], [hi]])
    if n == 2 and is_polytopal(out):
        from .supportcurve import canonicalize_2d

        return canonicalize_2d(out)
    return out


def translate(body: Body, vector) -> Body:
    v = np.asarray(vector, dtype=float)
    if v.shape != (body.dim,):
        raise ValueError(
            f"translation vector shape {v.shape} does not match dimension {body.dim}")
    return minkowski_sum(body, Point(_freeze(v)))


def difference_body(body: Body) -> Body:
    """The centrally symmetric body ``A + (-A)``."""
    return minkowski_sum(body, negate(body))


# ------------------------------------------------------------------------- JSON

def body_to_json(body: Body) -> dict:
    if isinstance(body, Point):
        return {"kind": "point", "coords": [float(x) for x in body.coords]}
    if isinstance(body, Polytope):
        return {"kind": "polytope",
                "vertices": [[float(x) for x in row] for row in body.vertices]}
    if isinstance(body, Ball):
        return {"kind": "ball",
                "center": [float(x) for x in body.center],
                "radius": float(body.radius)}
    if isinstance(body, MinkowskiSum):
        return {"kind": "sum", "terms": [body_to_json(t) for t in body.terms]}
    if isinstance(body, Scaled):
        return {"kind": "scaled", "factor": float(body.factor),
                "body": body_to_json(body.body)}
    raise TypeError(f"not a body: {body!r}")


def _expect_numbers(obj, what: str) -> list:
    if (not isinstance(obj, (list, tuple)) or not obj
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool)
                       for x in obj)):
        raise ValueError(f"{what} must be a nonempty list of numbers")
    return [float(x) for x in obj]


def body_from_json(obj) -> Body:
    """Parse the body wire format, validating shapes and dimensions."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("body JSON must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "point":
        return point(_expect_numbers(obj.get("coords"), "point coords"))
    if kind == "polytope":
        verts = obj.get("vertices")
        if not isinstance(verts, (list, tuple)) or not verts:
            raise ValueError("polytope vertices must be a nonempty list of rows")
        rows = [_expect_numbers(row, "polytope vertex") for row in verts]
        if len({len(r) for r in rows}) != 1:
            raise ValueError("polytope vertex rows must share one dimension")
        return polytope_from_points(rows)
    if kind == "ball":
        if "radius" not in obj:
            raise ValueError("ball JSON needs a radius")
        return ball(_expect_numbers(obj.get("center"), "ball center"),
                    obj["radius"])
    if kind == "sum":
        terms = obj.get("terms")
        if not isinstance(terms, (list, tuple)) or not terms:
            raise ValueError("sum terms must be a nonempty list")
        parsed = tuple(body_from_json(t) for t in terms)
        if len({t.dim for t in parsed}) != 1:
            raise ValueError("sum terms must share one dimension")
        return MinkowskiSum(parsed)
    if kind == "scaled":
        factor = obj.get("factor")
        if not isinstance(factor, (int, float)) or isinstance(factor, bool):
            raise ValueError("scaled factor must be a number")
        if factor < 0:
            raise ValueError("scaled factor must be >= 0")
        return Scaled(float(factor), body_from_json(obj.get("body")))
    raise ValueError(
        f"unknown body kind {kind!r}; expected point|polytope|ball|sum|scaled")

"""Lines, summands and endpoints in the cone of planar convex bodies.

The affine path ``t -> h_B + t (h_A - h_B)`` stays a support function
for ``t`` in an interval, because validity is a conjunction of
constraints, each affine in ``t``: every breakpoint derivative jump and
every per-arc constant of the combined curve must be nonnegative.  The
interval's shape gives the trichotomy ``classify_line`` reports: the
whole real line (``A`` is a translate of ``B``), a half line, or a
compact segment.  The same constraint algebra answers summand and
endpoint questions exactly, with no parameter sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .body import Body, Point, Polytope, body_to_json, is_polytopal, \
    polytope_from_points
from .supportcurve import (ANG_TOL, SupportCurve, arc_jumps, body_from_curve,
                           canonicalize_2d, combine_curves, corefine,
                           support_curve)

TWO_PI = 2.0 * np.pi
_SLOPE_EPS = 1e-12

__all__ = [
    "Translation", "Ray", "Segment", "LineClass", "classify_line",
    "is_support_function", "is_summand", "is_endpoint",
    "is_indecomposable_2d", "endpoint_witness", "line_class_to_json",
]


@dataclass(frozen=True)
class Translation:
    """The path is a full line: A = B + direction."""

    direction: np.ndarray


@dataclass(frozen=True)
class Ray:
    """Half line: endpoint + s * generator for s >= 0.

    ``lam`` is the endpoint's parameter on the path t=0 at B, t=1 at A.
    """

    endpoint: Body
    generator: Body
    lam: float


@dataclass(frozen=True)
class Segment:
    """Compact segment; ``end_a`` extends past A (t_a >= 1), ``end_b`` past B."""

    end_a: Body
    end_b: Body
    t_a: float
    t_b: float


LineClass = Union[Translation, Ray, Segment]


def _require_2d(a: Body):
    if not isinstance(a, Body):
        raise ValueError(f"expected a body, got {type(a).__name__}")
    if a.dim != 2:
        raise ValueError("line geometry is implemented for 2D bodies")


def _constraint_rows(curve: SupportCurve) -> np.ndarray:
    # validity of a continuous curve == all jumps and all arc constants >= 0
    return np.concatenate((curve.jumps(), curve.offs))


def _affine_bounds(c0: np.ndarray, c1: np.ndarray) -> tuple:
    """Feasible interval of ``t`` for the system ``c0 + t*c1 >= 0``."""
    lo, hi = -np.inf, np.inf
    pos = c1 > _SLOPE_EPS
    neg = c1 < -_SLOPE_EPS
    if pos.any():
        lo = float(np.max(-c0[pos] / c1[pos])) + 0.0  # folds -0.0 to 0.0
    if neg.any():
        hi = float(np.min(-c0[neg] / c1[neg])) + 0.0
    return lo, hi


def _body_at(ca: SupportCurve, cb: SupportCurve, t: float) -> Body:
    # point on the path, t=0 at B; boundary parameters give valid curves
    return body_from_curve(combine_curves([cb, ca], [1.0 - t, t]))


def classify_line(a: Body, b: Body, tol: float = ANG_TOL) -> LineClass:
    """Classify the maximal support-function line through A and B.

    The path is ``h_B + t (h_A - h_B)`` with t=0 at B and t=1 at A,
    extended as far as validity allows.  Returns ``Translation`` when
    every t works, ``Ray`` when exactly one side is unbounded (its
    ``lam`` is the endpoint parameter), else ``Segment``.
    """
    _require_2d(a)
    _require_2d(b)
    ca, cb = support_curve(a), support_curve(b)
    ra, rb = corefine([ca, cb])
    sx = ra.ax - rb.ax
    sy = ra.ay - rb.ay
    so = ra.offs - rb.offs
    if max(np.max(np.abs(sx)), np.max(np.abs(sy)), np.max(np.abs(so))) <= 1e-12:
        raise ValueError("bodies coincide; they span no line")
    step_jumps = arc_jumps(ra.angles, sx, sy)
    if np.max(np.abs(step_jumps)) <= tol and np.max(np.abs(so)) <= tol:
        return Translation(direction=np.array([sx[0], sy[0]]))
    lo, hi = _affine_bounds(_constraint_rows(rb),
                            np.concatenate((step_jumps, so)))
    if hi == np.inf:
        return Ray(endpoint=_body_at(ca, cb, lo),
                   generator=body_from_curve(combine_curves([ca, cb], [1.0, -1.0])),
                   lam=lo)
    if lo == -np.inf:
        return Ray(endpoint=_body_at(ca, cb, hi),
                   generator=body_from_curve(combine_curves([cb, ca], [1.0, -1.0])),
                   lam=hi)
    return Segment(end_a=_body_at(ca, cb, hi), end_b=_body_at(ca, cb, lo),
                   t_a=hi, t_b=lo)


def is_support_function(f, tol: float = ANG_TOL) -> bool:
    """Whether a piecewise-sinusoid curve (or a body's curve) is sublinear."""
    curve = f if isinstance(f, SupportCurve) else support_curve(f)
    return curve.is_valid(tol)


def is_summand(l: Body, k: Body, tol: float = ANG_TOL) -> bool:
    """Whether some M completes ``l + M = k``; exact via the difference curve."""
    _require_2d(l)
    _require_2d(k)
    diff = combine_curves([support_curve(k), support_curve(l)], [1.0, -1.0])
    return diff.is_valid(tol)


def is_endpoint(a: Body, b: Body, tol: float = ANG_TOL) -> bool:
    """Whether no positive multiple of B is a summand of A.

    The constraints "jump_A - eps*jump_B >= 0, const_A - eps*const_B >= 0"
    are affine in eps, so the supremum of workable eps is a minimum of
    ratios; A is an endpoint exactly when that supremum is 0.  With
    B = A the supremum is 1, so a body is never an endpoint against
    itself, and a singleton B (no curvature at all) slides freely.
    """
    _require_2d(a)
    _require_2d(b)
    ra, rb = corefine([support_curve(a), support_curve(b)])
    num = _constraint_rows(ra)
    den = _constraint_rows(rb)
    binding = den > _SLOPE_EPS
    if not binding.any():
        return False
    eps_max = float(np.min(num[binding] / den[binding]))
    return eps_max <= tol


def is_indecomposable_2d(a: Body) -> bool:
    """Whether the body's only summands are its own scaled translates.

    Polytopes only: points, segments and triangles qualify, nothing
    else.  Bodies with a ball summand are rejected.
    """
    _require_2d(a)
    canon = canonicalize_2d(a)
    if not is_polytopal(canon):
        raise ValueError("indecomposability classification covers polytopes only")
    if isinstance(canon, Point):
        return True
    assert isinstance(canon, Polytope)
    return canon.vertices.shape[0] <= 3


def endpoint_witness(a: Body) -> Body:
    """A unit segment B making A an endpoint of the line toward A + B.

    B lies in a supporting line of A at an exposed point: the
    lexicographically largest vertex, touched along its normal cone's
    bisector so the contact is a single point (mid-arc directions never
    expose an edge).  ``is_endpoint(a, a + B)`` then holds.
    """
    _require_2d(a)
    curve = support_curve(canonicalize_2d(a))
    if curve.arcs == 1:
        k = 0
        theta = 0.0
    else:
        gens = curve.gens
        k = int(np.lexsort((gens[:, 1], gens[:, 0]))[-1])
        start = curve.angles[k]
        end = curve.angles[(k + 1) % curve.arcs]
        if end <= start:
            end += TWO_PI
        theta = 0.5 * (start + end)
    d = np.array([np.cos(theta), np.sin(theta)])
    x = np.array([curve.ax[k], curve.ay[k]]) + curve.offs[k] * d
    along = np.array([-d[1], d[0]])
    return polytope_from_points([x, x + along])


def line_class_to_json(lc: LineClass) -> dict:
    if isinstance(lc, Translation):
        return {"class": "translation",
                "direction": [float(v) for v in lc.direction]}
    if isinstance(lc, Ray):
        return {"class": "ray", "endpoint": body_to_json(lc.endpoint),
                "generator": body_to_json(lc.generator), "lambda": lc.lam}
    if isinstance(lc, Segment):
        return {"class": "segment", "end_a": body_to_json(lc.end_a),
                "end_b": body_to_json(lc.end_b), "t_a": lc.t_a, "t_b": lc.t_b}
    raise TypeError(f"not a line classification: {lc!r}")

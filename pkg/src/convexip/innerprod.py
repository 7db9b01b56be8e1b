"""Inner products on convex bodies and the geometry they induce.

Two families are provided.  ``SphericalL2`` integrates products of
support functions over directions: exactly (closed form per arc) on the
plane with uniform weight, and by a declared quadrature grid otherwise.
Its normalisation is pinned so singletons reproduce the Euclidean dot
product, which makes the induced center of a planar body its Steiner
point.  ``Matrix1D`` is the quadratic form ``[b, -a] M [d, -c]^T`` on
intervals ``[a, b]``, ``[c, d]``; any symmetric positive-definite ``M``
works and the normalisation ``[1,-1] M [1,-1]^T = 1`` recovers the dot
product on degenerate intervals.

``counterexample_form`` is a symmetric, Minkowski-bilinear, positive
form on planar bodies that still violates the Cauchy-Schwarz bound, so
it is *not* an inner product; ``axiom_check`` exhibits that with an
explicit witness pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from . import _kernels, grids
from .body import (Body, body_to_json, minkowski_sum, point, scale, support,
                   translate)
from .supportcurve import hausdorff, support_curve

__all__ = [
    "SphericalL2", "Matrix1D", "SetIP", "CenteredBody", "spherical_l2",
    "matrix1d", "as_interval", "inner", "norm", "distance", "center",
    "steiner_point", "recentre", "counterexample_form", "counterexample_pair",
    "counterexample_gap", "AxiomResult", "AxiomReport", "axiom_check",
    "setip_to_json", "setip_from_json",
]


@dataclass(frozen=True)
class SphericalL2:
    """Support-function L2 product over directions."""

    dim: int = 2
    grid: int = grids.DEFAULT_GRID
    weight: Optional[tuple] = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("SphericalL2 dimension must be >= 1")
        if self.grid < 8:
            raise ValueError("SphericalL2 grid must be >= 8")
        if self.weight is not None:
            w = np.asarray(self.weight, dtype=float)
            expected = 2 if self.dim == 1 else self.grid
            if w.shape != (expected,):
                raise ValueError(
                    f"weight table must have length {expected}, got {w.shape}")
            if not np.all(np.isfinite(w)) or np.min(w) <= 0.0:
                raise ValueError("weight table entries must be finite and > 0")

    @property
    def exact(self) -> bool:
        """Whether the closed-form planar path applies."""
        return self.dim == 2 and self.weight is None


@dataclass(frozen=True)
class Matrix1D:
    """Quadratic-form product on intervals, ``<[a,b],[c,d]> = [b,-a] M [d,-c]^T``."""

    m: tuple

    def __post_init__(self):
        mat = np.asarray(self.m, dtype=float)
        if mat.shape != (2, 2) or not np.all(np.isfinite(mat)):
            raise ValueError("Matrix1D needs a finite 2x2 matrix")
        if abs(mat[0, 1] - mat[1, 0]) > 1e-12:
            raise ValueError("Matrix1D matrix must be symmetric")

    @property
    def matrix(self) -> np.ndarray:
        return np.asarray(self.m, dtype=float)

    @property
    def positive_definite(self) -> bool:
        cached = self.__dict__.get("_pd")
        if cached is None:
            cached = bool(np.min(np.linalg.eigvalsh(self.matrix)) > 0.0)
            self.__dict__["_pd"] = cached
        return cached


SetIP = Union[SphericalL2, Matrix1D]


def spherical_l2(dim: int = 2, grid: int = grids.DEFAULT_GRID,
                 weight=None) -> SphericalL2:
    if weight is not None:
        weight = tuple(float(x) for x in np.asarray(weight, dtype=float))
    return SphericalL2(dim=int(dim), grid=int(grid), weight=weight)


def matrix1d(m) -> Matrix1D:
    mat = np.asarray(m, dtype=float)
    if mat.shape != (2, 2):
        raise ValueError("Matrix1D needs a 2x2 matrix")
    return Matrix1D(tuple(tuple(float(x) for x in row) for row in mat))


def as_interval(x) -> tuple:
    """Coerce an interval argument: a pair ``(a, b)`` or a 1D body."""
    if isinstance(x, Body):
        if x.dim != 1:
            raise ValueError("Matrix1D products need 1D bodies or (a, b) pairs")
        return (-support(x, np.array([-1.0])), support(x, np.array([1.0])))
    arr = np.asarray(x, dtype=float)
    if arr.shape != (2,) or not np.all(np.isfinite(arr)):
        raise ValueError("an interval is a finite pair (a, b)")
    a, b = float(arr[0]), float(arr[1])
    if a > b + 1e-12:
        raise ValueError(f"interval endpoints out of order: ({a}, {b})")
    return (a, max(a, b))


def _matrix_form(mat: np.ndarray, ab, cd) -> float:
    a, b = ab
    c, d = cd
    left = np.array([b, -a])
    right = np.array([d, -c])
    return float(left @ mat @ right)


def _weights_for(spec: SphericalL2) -> np.ndarray:
    cached = spec.__dict__.get("_warr")
    if cached is None:
        cached = grids.grid_weights(spec.dim, spec.grid)
        if spec.weight is not None:
            cached = np.ascontiguousarray(cached * np.asarray(spec.weight))
            cached.setflags(write=False)
        spec.__dict__["_warr"] = cached
    return cached


def _grid_token(spec: SphericalL2):
    return ("grid", spec.dim, spec.grid)


def _check_body(spec: SphericalL2, x) -> Body:
    if not isinstance(x, Body):
        raise ValueError(f"SphericalL2 products need bodies, got {type(x).__name__}")
    if x.dim != spec.dim:
        raise ValueError(
            f"body dimension {x.dim} does not match SphericalL2 dimension {spec.dim}")
    return x


def inner(spec: SetIP, a, b) -> float:
    """The product ``<a, b>`` under the given spec."""
    if isinstance(spec, Matrix1D):
        if not spec.positive_definite:
            raise ValueError("Matrix1D matrix is not positive definite")
        return _matrix_form(spec.matrix, as_interval(a), as_interval(b))
    if not isinstance(spec, SphericalL2):
        raise TypeError(f"not an inner product spec: {spec!r}")
    a = _check_body(spec, a)
    b = _check_body(spec, b)
    if spec.exact:
        ca = support_curve(a)
        cb = support_curve(b)
        raw = _kernels.product_integral(ca.angles, ca.ax, ca.ay, ca.offs,
                                        cb.angles, cb.ax, cb.ay, cb.offs)
        return float(raw / np.pi)
    dirs = grids.grid_directions(spec.dim, spec.grid)
    token = _grid_token(spec)
    from .body import support_grid

    va = support_grid(a, dirs, token)
    vb = support_grid(b, dirs, token)
    return float(np.sum(_weights_for(spec) * va * vb))


def norm(spec: SetIP, a) -> float:
    return float(np.sqrt(max(inner(spec, a, a), 0.0)))


def distance(spec: SetIP, a, b) -> float:
    d2 = inner(spec, a, a) - 2.0 * inner(spec, a, b) + inner(spec, b, b)
    return float(np.sqrt(max(d2, 0.0)))


# ---------------------------------------------------------------- centres

@dataclass(frozen=True)
class CenteredBody:
    """A body, its induced center, and the recentred body."""

    original: object
    center: object
    centered: object


def center(spec: SetIP, a):
    """Riesz representer of ``x -> <a, {x}>`` in the induced point product.

    Solves the small Gram system on the coordinate singletons; for the
    exact planar ``SphericalL2`` this is the Steiner point.
    """
    if isinstance(spec, Matrix1D):
        if not spec.positive_definite:
            raise ValueError("Matrix1D matrix is not positive definite")
        lo, hi = as_interval(a)
        mat = spec.matrix
        kappa = _matrix_form(mat, (1.0, 1.0), (1.0, 1.0))
        if abs(kappa) < 1e-300:
            raise ValueError("Matrix1D induced point product is singular")
        return _matrix_form(mat, (lo, hi), (1.0, 1.0)) / kappa
    a = _check_body(spec, a)
    n = spec.dim
    basis = [point(row) for row in np.eye(n)]
    rhs = np.array([inner(spec, a, e) for e in basis])
    gram = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            gram[i, j] = gram[j, i] = inner(spec, basis[i], basis[j])
    try:
        sol = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError as exc:
        raise ValueError("singular Gram matrix; invalid inner product spec") from exc
    return sol


def steiner_point(a: Body, grid: int = grids.DEFAULT_GRID) -> np.ndarray:
    """Center under the default unweighted product of the body's dimension."""
    return center(SphericalL2(dim=a.dim, grid=grid), a)


def recentre(spec: SetIP, a) -> CenteredBody:
    k = center(spec, a)
    if isinstance(spec, Matrix1D):
        lo, hi = as_interval(a)
        return CenteredBody(original=(lo, hi), center=float(k),
                            centered=(lo - k, hi - k))
    return CenteredBody(original=a, center=k, centered=translate(a, -k))


# ------------------------------------------------------- the failing pseudo-ip

def counterexample_form(a: Body, b: Body) -> float:
    """Symmetric Minkowski-bilinear positive form that fails Cauchy-Schwarz.

    Evaluates supports at the axis directions and at (1, 1)/-(1, 1);
    the cross terms reward asymmetry in a way no inner product can.
    """
    if not (isinstance(a, Body) and isinstance(b, Body)):
        raise ValueError("counterexample_form needs two bodies")
    if a.dim != 2 or b.dim != 2:
        raise ValueError("counterexample_form is defined for 2D bodies")
    e1 = np.array([1.0, 0.0])
    e2 = np.array([0.0, 1.0])
    dd = np.array([1.0, 1.0])
    ha = {
        "e1": support(a, e1), "e2": support(a, e2), "d": support(a, dd),
        "m1": support(a, -e1), "m2": support(a, -e2), "md": support(a, -dd),
    }
    hb = {
        "e1": support(b, e1), "e2": support(b, e2), "d": support(b, dd),
        "m1": support(b, -e1), "m2": support(b, -e2), "md": support(b, -dd),
    }
    quad = (ha["e1"] * hb["e1"] + ha["e2"] * hb["e2"]
            + ha["m1"] * hb["m1"] + ha["m2"] * hb["m2"]) / 8.0
    cross = ((ha["e1"] + ha["e2"] - ha["d"]) * (hb["m1"] + hb["m2"] - hb["md"])
             + (hb["e1"] + hb["e2"] - hb["d"]) * (ha["m1"] + ha["m2"] - ha["md"]))
    return float(quad + cross)


def counterexample_pair() -> tuple:
    """The witness pair: unit disk and the right triangle (0,0),(1,0),(0,1)."""
    from .body import ball, polytope_from_points

    disk = ball([0.0, 0.0], 1.0)
    tri = polytope_from_points([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    return disk, tri


def counterexample_gap() -> float:
    """``-F(A,A) + 2 F(A,B) - F(B,B)`` for the witness pair.

    Positive, i.e. the squared 'distance' the form induces between the
    pair is negative, so the form violates Cauchy-Schwarz.
    """
    a, b = counterexample_pair()
    faa = counterexample_form(a, a)
    fab = counterexample_form(a, b)
    fbb = counterexample_form(b, b)
    return float(-faa + 2.0 * fab - fbb)


# ----------------------------------------------------------------- axiom suite

@dataclass
class AxiomResult:
    passed: bool
    worst: float
    witness: object = None


@dataclass
class AxiomReport:
    trials: int
    results: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "passed": self.passed,
            "axioms": {
                name: {"passed": r.passed, "worst": r.worst, "witness": r.witness}
                for name, r in self.results.items()
            },
        }


def _resolve_form(spec) -> Callable:
    if callable(spec):
        return spec
    if isinstance(spec, Matrix1D):
        # evaluate the raw bilinear form so axiom failures are reportable
        mat = spec.matrix
        return lambda a, b: _matrix_form(mat, as_interval(a), as_interval(b))
    if isinstance(spec, SphericalL2):
        return lambda a, b: inner(spec, a, b)
    raise TypeError(f"not an inner product spec or form: {spec!r}")


def _combine(alpha: float, a, beta: float, b):
    if isinstance(a, Body):
        return minkowski_sum(scale(a, alpha), scale(b, beta))
    (a0, a1), (b0, b1) = as_interval(a), as_interval(b)
    return (alpha * a0 + beta * b0, alpha * a1 + beta * b1)


def _scale_like(a, t: float):
    if isinstance(a, Body):
        return scale(a, t)
    a0, a1 = as_interval(a)
    return (t * a0, t * a1)


def _gap_like(a, b) -> float:
    if isinstance(a, Body):
        return hausdorff(a, b)
    (a0, a1), (b0, b1) = as_interval(a), as_interval(b)
    return max(abs(a0 - b0), abs(a1 - b1))


def _is_effectively_zero(a) -> bool:
    if isinstance(a, Body):
        from .body import Point

        return hausdorff(a, Point(np.zeros(a.dim))) <= 1e-9
    a0, a1 = as_interval(a)
    return max(abs(a0), abs(a1)) <= 1e-9


def _describe(a):
    if isinstance(a, Body):
        return body_to_json(a)
    a0, a1 = as_interval(a)
    return [a0, a1]


def axiom_check(spec, sampler: Callable, trials: int, *, seed: int = 0,
                tol: float = 1e-9, extra_pairs=()) -> AxiomReport:
    """Empirically test the four inner-product axioms.

    ``spec`` is a product spec or a raw symmetric form; ``sampler(rng)``
    draws arguments of the matching kind.  Trials are deterministic
    given ``seed`` regardless of evaluation order.  Failures are report
    content, not exceptions.
    """
    form = _resolve_form(spec)
    rng = np.random.default_rng(seed)
    sym = AxiomResult(True, 0.0)
    lin = AxiomResult(True, 0.0)
    pos = AxiomResult(True, np.inf)
    cs = AxiomResult(True, np.inf)

    def check_symmetry(a, b):
        r = abs(form(a, b) - form(b, a))
        if r > sym.worst:
            sym.worst = r
            sym.witness = {"a": _describe(a), "b": _describe(b)}
        if r > tol:
            sym.passed = False

    def check_cs(a, b):
        faa, fbb, fab = form(a, a), form(b, b), form(a, b)
        slack = faa * fbb - fab * fab
        if slack < cs.worst:
            cs.worst = slack
            cs.witness = {"a": _describe(a), "b": _describe(b), "slack": slack}
        if slack < -tol:
            cs.passed = False
            return
        scale_ref = max(abs(faa * fbb), 1e-30)
        if slack / scale_ref < 1e-9 and faa > 0.0 and fbb > 0.0:
            # equality must pin a to a nonnegative dilate of b
            lam = float(np.sqrt(faa / fbb))
            if _gap_like(a, _scale_like(b, lam)) >= 1e-6:
                cs.passed = False
                cs.witness = {"a": _describe(a), "b": _describe(b),
                              "slack": slack, "dilation": lam}

    for _ in range(int(trials)):
        a = sampler(rng)
        b = sampler(rng)
        c = sampler(rng)
        check_symmetry(a, b)
        alpha, beta = rng.uniform(0.0, 2.0, size=2)
        mix = _combine(alpha, a, beta, b)
        r = abs(form(mix, c) - alpha * form(a, c) - beta * form(b, c))
        if r > lin.worst:
            lin.worst = r
            lin.witness = {"a": _describe(a), "b": _describe(b), "c": _describe(c),
                           "alpha": float(alpha), "beta": float(beta)}
        if r > tol:
            lin.passed = False
        if not _is_effectively_zero(a):
            v = form(a, a)
            if v < pos.worst:
                pos.worst = v
                pos.witness = {"a": _describe(a)}
            if v <= 0.0:
                pos.passed = False
        check_cs(a, b)
    for a, b in extra_pairs:
        check_symmetry(a, b)
        check_cs(a, b)

    report = AxiomReport(trials=int(trials))
    report.results["symmetry"] = sym
    report.results["linearity"] = lin
    report.results["positivity"] = pos
    report.results["cauchy_schwarz"] = cs
    return report


# ------------------------------------------------------------------------ JSON

def setip_to_json(spec: SetIP) -> dict:
    if isinstance(spec, SphericalL2):
        return {"kind": "spherical_l2", "dim": spec.dim, "grid": spec.grid,
                "weight": None if spec.weight is None else list(spec.weight)}
    if isinstance(spec, Matrix1D):
        return {"kind": "matrix1d", "m": [list(row) for row in spec.m]}
    raise TypeError(f"not an inner product spec: {spec!r}")


def setip_from_json(obj) -> SetIP:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("inner product JSON must be an object with a 'kind'")
    kind = obj["kind"]
    if kind == "spherical_l2":
        dim = obj.get("dim", 2)
        grid = obj.get("grid", grids.DEFAULT_GRID)
        if not isinstance(dim, int) or not isinstance(grid, int):
            raise ValueError("spherical_l2 dim and grid must be integers")
        return spherical_l2(dim=dim, grid=grid, weight=obj.get("weight"))
    if kind == "matrix1d":
        m = obj.get("m")
        if (not isinstance(m, (list, tuple)) or len(m) != 2
                or any(not isinstance(r, (list, tuple)) or len(r) != 2 for r in m)):
            raise ValueError("matrix1d 'm' must be a 2x2 matrix")
        return matrix1d(m)
    raise ValueError(f"unknown inner product kind {kind!r}")

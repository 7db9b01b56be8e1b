"""Command-line surface: compute, verify, reconstruct, render.

All numeric output is JSON with floats printed at 17 significant
digits, so identical inputs give byte-identical bytes; ``--pretty``
adds indentation only.  Exit codes: 0 on success, 2 for input problems
(missing files, bad JSON or Newick, dimension mismatches), 3 for
internal invariant violations.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import grids
from .body import Body, body_from_json, body_to_json, minkowski_sum, point, scale
from .diversity import diversity, point_set_from_json
from .geometry import classify_line, line_class_to_json
from .innerprod import (SphericalL2, axiom_check, counterexample_form,
                        counterexample_gap, counterexample_pair,
                        distance, inner, norm, setip_from_json, spherical_l2,
                        steiner_point)
from .newick import NewickError, parse_newick
from .phylo import lambda_coefficients, reconstruct, tree_length, weights_to_json
from .render import RenderSpec, render_lattice, render_strip, render_tree
from .samplers import random_body, random_interval, random_polygon
from .supportcurve import subset

__all__ = ["main", "emit_json"]


# ------------------------------------------------------------- JSON emission

def _fmt_float(v: float) -> str:
    if not np.isfinite(v):
        raise RuntimeError(f"non-finite value {v!r} in output")
    return format(float(v), ".17g")


def emit_json(value, pretty: bool = False) -> str:
    """Serialize with deterministic key order and 17-digit floats."""
    pieces = []

    def walk(v, depth):
        pad = "  " * (depth + 1) if pretty else ""
        close_pad = "  " * depth if pretty else ""
        nl = "\n" if pretty else ""
        if isinstance(v, bool):
            pieces.append("true" if v else "false")
        elif v is None:
            pieces.append("null")
        elif isinstance(v, (int, np.integer)):
            pieces.append(str(int(v)))
        elif isinstance(v, (float, np.floating)):
            pieces.append(_fmt_float(float(v)))
        elif isinstance(v, str):
            pieces.append(json.dumps(v))
        elif isinstance(v, dict):
            if not v:
                pieces.append("{}")
                return
            pieces.append("{" + nl)
            for i, (k, item) in enumerate(v.items()):
                if not isinstance(k, str):
                    raise TypeError(f"JSON keys must be strings, got {k!r}")
                pieces.append(f"{pad}{json.dumps(k)}:" + (" " if pretty else ""))
                walk(item, depth + 1)
                pieces.append(("," if i < len(v) - 1 else "") + nl)
            pieces.append(close_pad + "}")
        elif isinstance(v, (list, tuple, np.ndarray)):
            items = list(v)
            if not items:
                pieces.append("[]")
                return
            pieces.append("[" + nl)
            for i, item in enumerate(items):
                pieces.append(pad)
                walk(item, depth + 1)
                pieces.append(("," if i < len(items) - 1 else "") + nl)
            pieces.append(close_pad + "]")
        else:
            raise TypeError(f"cannot serialize {type(v).__name__}")

    walk(value, 0)
    return "".join(pieces)


# ----------------------------------------------------------------- plumbing

def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _load_json(path: str):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(
            f"{path}: invalid JSON at offset {exc.pos}: {exc.msg}") from exc


def _load_body(path: str) -> Body:
    obj = _load_json(path)  # already path-prefixed on failure
    try:
        return body_from_json(obj)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc


def _effective(args):
    seed = 0 if args.seed is None else args.seed
    grid = grids.DEFAULT_GRID if args.grid is None else args.grid
    tol = 1e-9 if args.tol is None else args.tol
    return seed, grid, tol, bool(args.pretty)


def _resolve_ip(args, dim: int):
    _, grid, _, _ = _effective(args)
    path = getattr(args, "ipspec", None)
    if path is None:
        return spherical_l2(dim=dim, grid=grid)
    obj = _load_json(path)  # already path-prefixed on failure
    try:
        return setip_from_json(obj)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc


def _write_output(args, text: str):
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit(args, payload):
    _, _, _, pretty = _effective(args)
    _write_output(args, emit_json(payload, pretty) + "\n")


# ----------------------------------------------------------------- commands

def _cmd_ip(args):
    a = _load_body(args.body_a)
    b = _load_body(args.body_b)
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    spec = _resolve_ip(args, a.dim)
    _emit(args, {
        "inner": inner(spec, a, b),
        "norm_a": norm(spec, a),
        "norm_b": norm(spec, b),
        "distance": distance(spec, a, b),
    })


def _cmd_reconstruct(args):
    try:
        tree = parse_newick(_read_text(args.tree))
    except NewickError as exc:
        raise ValueError(f"{args.tree}: {exc}") from exc
    obj = _load_json(args.leaves)
    if not isinstance(obj, dict) or not isinstance(obj.get("leaves"), dict):
        raise ValueError(f"{args.leaves}: expected an object with a "
                         "'leaves' mapping")
    assignment = {}
    for name, body_json in obj["leaves"].items():
        try:
            assignment[name] = body_from_json(body_json)
        except ValueError as exc:
            raise ValueError(f"{args.leaves}: leaf {name!r}: {exc}") from exc
    weights = lambda_coefficients(tree, strict_binary=args.strict_binary)
    ext = reconstruct(tree, assignment, canonical=True, weights=weights)
    dim = next(iter(assignment.values())).dim
    spec = _resolve_ip(args, dim)
    payload = {
        "lambda": weights_to_json(weights),
        "ancestors": {v: body_to_json(ext.bodies[v])
                      for v in tree.internal_nodes},
        "length": tree_length(spec, tree, ext),
    }
    if args.svg:
        if dim != 2:
            raise ValueError("SVG rendering needs 2D leaf bodies")
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_tree(tree, ext.bodies))
    _emit(args, payload)


def _interpolants(start: Body, end: Body, k: int):
    if k < 1:
        raise ValueError("frame count must be >= 1")
    alphas = [0.0] if k == 1 else np.linspace(0.0, 1.0, k)
    return [minkowski_sum(scale(start, float(1.0 - t)), scale(end, float(t)))
            for t in alphas]


def _cmd_segment(args):
    start = _load_body(args.body_start)
    end = _load_body(args.body_end)
    if start.dim != 2 or end.dim != 2:
        raise ValueError("segment rendering needs 2D bodies")
    frames = _interpolants(start, end, args.frames)
    svg = render_strip(frames, RenderSpec(directions=args.directions))
    _write_output(args, svg)


def _cmd_plane(args):
    c = _load_body(args.body_a)
    t = _load_body(args.body_b)
    if c.dim != 2 or t.dim != 2:
        raise ValueError("plane rendering needs 2D bodies")
    alphas = np.linspace(0.0, args.alpha_max, args.steps)
    betas = np.linspace(0.0, args.beta_max, args.steps)
    rows = []
    for beta in reversed(betas):  # beta grows upward, like a plot axis
        rows.append([minkowski_sum(scale(c, float(a)), scale(t, float(beta)))
                     for a in alphas])
    svg = render_lattice(rows, RenderSpec(directions=args.directions))
    _write_output(args, svg)


def _cmd_axioms(args):
    seed, _, tol, _ = _effective(args)
    spec = _resolve_ip(args, 2)
    if isinstance(spec, SphericalL2):
        if spec.dim == 2:
            sampler = random_body if args.sampler == "body" else random_polygon
        else:
            d = spec.dim

            def sampler(rng, d=d):
                from .body import polytope_from_points

                k = int(rng.integers(d + 1, d + 5))
                return polytope_from_points(rng.normal(0.0, 1.0, size=(k, d)))
    else:
        sampler = random_interval
    report = axiom_check(spec, sampler, args.trials, seed=seed, tol=tol)
    _emit(args, report.to_json())


def _cmd_counterexample(args):
    a, b = counterexample_pair()
    _emit(args, {
        "gap": counterexample_gap(),
        "form_aa": counterexample_form(a, a),
        "form_ab": counterexample_form(a, b),
        "form_bb": counterexample_form(b, b),
        "bodies": {"a": body_to_json(a), "b": body_to_json(b)},
    })


def _cmd_diversity(args):
    ps = point_set_from_json(_load_json(args.points))
    spec = _resolve_ip(args, ps.dim)
    _emit(args, {"diversity": diversity(spec, ps), "size": ps.size})


def _cmd_classify(args):
    a = _load_body(args.body_a)
    b = _load_body(args.body_b)
    _, _, tol, _ = _effective(args)
    _emit(args, line_class_to_json(classify_line(a, b, tol=tol)))


def _cmd_steiner(args):
    a = _load_body(args.body)
    _, grid, tol, _ = _effective(args)
    k = steiner_point(a, grid=grid)
    _emit(args, {
        "steiner": [float(x) for x in k],
        "inside": subset(point(k), a, tol=tol),
    })


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--seed", type=int, default=None, help="RNG seed (default 0)")
    g.add_argument("--grid", type=int, default=None,
                   help=f"quadrature grid size (default {grids.DEFAULT_GRID})")
    g.add_argument("--tol", type=float, default=None,
                   help="comparison tolerance (default 1e-9)")
    g.add_argument("--pretty", action="store_const", const=True, default=None,
                   help="indent JSON output")

    p = argparse.ArgumentParser(
        prog="convexip", parents=[g],
        description="Inner products, lines and ancestral reconstruction "
                    "for convex bodies.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("ip", parents=[g],
                        help="inner product, norms and distance of two bodies")
    sp.add_argument("body_a")
    sp.add_argument("body_b")
    sp.add_argument("--ip", dest="ipspec", help="inner product spec JSON file")
    sp.set_defaults(func=_cmd_ip)

    sp = sub.add_parser("reconstruct", parents=[g],
                        help="ancestral bodies on a Newick tree")
    sp.add_argument("tree", help="Newick file")
    sp.add_argument("leaves", help='JSON file {"leaves": {name: body}}')
    sp.add_argument("--ip", dest="ipspec")
    sp.add_argument("--svg", help="also draw the tree to this SVG file")
    sp.add_argument("--out", help="write JSON here instead of stdout")
    sp.add_argument("--strict-binary", action=argparse.BooleanOptionalAction,
                    default=True, help="require internal degree 3 (default on)")
    sp.set_defaults(func=_cmd_reconstruct)

    sp = sub.add_parser("segment", parents=[g],
                        help="SVG strip interpolating between two bodies")
    sp.add_argument("body_start", help="frame at t=0")
    sp.add_argument("body_end", help="frame at t=1")
    sp.add_argument("-k", "--frames", type=int, default=9)
    sp.add_argument("--directions", type=int, default=256)
    sp.add_argument("--out", help="write SVG here instead of stdout")
    sp.set_defaults(func=_cmd_segment)

    sp = sub.add_parser("plane", parents=[g],
                        help="SVG lattice of alpha*A + beta*B combinations")
    sp.add_argument("body_a")
    sp.add_argument("body_b")
    sp.add_argument("--steps", type=int, default=5)
    sp.add_argument("--alpha-max", type=float, default=2.0)
    sp.add_argument("--beta-max", type=float, default=2.0)
    sp.add_argument("--directions", type=int, default=256)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_plane)

    sp = sub.add_parser("axioms", parents=[g],
                        help="empirical inner-product axiom report")
    sp.add_argument("--ip", dest="ipspec")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--sampler", choices=("polygon", "body"), default="polygon")
    sp.set_defaults(func=_cmd_axioms)

    sp = sub.add_parser("counterexample", parents=[g],
                        help="the bilinear form that defeats Cauchy-Schwarz")
    sp.set_defaults(func=_cmd_counterexample)

    sp = sub.add_parser("diversity", parents=[g],
                        help="diversity of a point set")
    sp.add_argument("points", help='JSON file {"points": [[...], ...]}')
    sp.add_argument("--ip", dest="ipspec")
    sp.set_defaults(func=_cmd_diversity)

    sp = sub.add_parser("classify", parents=[g],
                        help="translation/ray/segment verdict for two bodies")
    sp.add_argument("body_a")
    sp.add_argument("body_b")
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("steiner", parents=[g],
                        help="Steiner point of a body and membership check")
    sp.add_argument("body")
    sp.set_defaults(func=_cmd_steiner)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RuntimeError, AssertionError, np.linalg.LinAlgError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())

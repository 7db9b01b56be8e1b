"""SVG rendering: single panels, interpolation strips, plane lattices, trees.

Smooth or polytopal, every body is drawn the same way: its support
values over a direction grid become a circumscribing polygon by
intersecting consecutive support lines.  The polygon contains the body
and hugs it to within the sagitta of one direction gap, which is plenty
for qualitative figures; bodies that collapse to a point get a dot
marker instead of an invisible polygon.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .body import Body, support_grid
from .newick import Phylogeny

TWO_PI = 2.0 * np.pi

__all__ = ["RenderSpec", "polygonalize", "render_bodies", "render_strip",
           "render_lattice", "render_tree"]


@dataclass(frozen=True)
class RenderSpec:
    width: int = 320           # pixels per panel
    height: int = 320
    viewport: tuple = None     # (xmin, ymin, xmax, ymax); None picks one
    directions: int = 256
    stroke: str = "#264d73"
    fill: str = "#9ec3e6"
    stroke_width: float = 1.4

    def __post_init__(self):
        if self.directions < 8:
            raise ValueError("rendering needs at least 8 directions")
        if self.viewport is not None:
            x0, y0, x1, y1 = self.viewport
            if not (x1 > x0 and y1 > y0):
                raise ValueError("viewport rectangle is degenerate")
        if self.width < 16 or self.height < 16:
            raise ValueError("canvas too small")


def polygonalize(body: Body, k: int = 256) -> np.ndarray:
    """Circumscribing k-gon from support lines at k evenly spaced angles."""
    if body.dim != 2:
        raise ValueError("rendering is for 2D bodies")
    thetas = (np.arange(k) + 0.5) * TWO_PI / k
    dirs = np.stack((np.cos(thetas), np.sin(thetas)), axis=1)
    h = support_grid(body, dirs, None)
    u2 = np.roll(dirs, -1, axis=0)
    h2 = np.roll(h, -1)
    det = dirs[:, 0] * u2[:, 1] - dirs[:, 1] * u2[:, 0]
    px = (h * u2[:, 1] - h2 * dirs[:, 1]) / det
    py = (h2 * dirs[:, 0] - h * u2[:, 0]) / det
    return np.stack((px, py), axis=1)


def _auto_viewport(point_sets, pad: float = 0.08) -> tuple:
    pts = np.vstack(point_sets)
    x0, y0 = np.min(pts, axis=0)
    x1, y1 = np.max(pts, axis=0)
    w = max(x1 - x0, 1e-9)
    h = max(y1 - y0, 1e-9)
    extra = max(w, h) * pad + 1e-6
    half = 0.5 * max(w, h) + extra
    cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
    return (cx - half, cy - half, cx + half, cy + half)


class _Panel:
    """World-to-pixel mapping for one drawing cell (y axis flipped)."""

    def __init__(self, viewport, width, height, ox=0.0, oy=0.0):
        x0, y0, x1, y1 = viewport
        self.sx = width / (x1 - x0)
        self.sy = height / (y1 - y0)
        self.x0, self.y1 = x0, y1
        self.ox, self.oy = ox, oy
        self.height = height

    def to_px(self, pts: np.ndarray) -> np.ndarray:
        x = self.ox + (pts[:, 0] - self.x0) * self.sx
        y = self.oy + (self.y1 - pts[:, 1]) * self.sy
        return np.stack((x, y), axis=1)


def _fmt(v: float) -> str:
    return format(float(v), ".2f")


def _body_element(poly_px: np.ndarray, spec: RenderSpec, *,
                  stroke=None, width=None, fill=None) -> str:
    stroke = stroke or spec.stroke
    fill = fill or spec.fill
    width = spec.stroke_width if width is None else width
    span = float(np.max(np.ptp(poly_px, axis=0)))
    if span < 1.5:  # the body is a point at this scale
        cx, cy = np.mean(poly_px, axis=0)
        return (f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="3" '
                f'fill="{stroke}" />')
    coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in poly_px)
    return (f'<path d="M {coords} Z" fill="{fill}" fill-opacity="0.45" '
            f'stroke="{stroke}" stroke-width="{_fmt(width)}" '
            'stroke-linejoin="round" />')


def _document(width: int, height: int, elements) -> str:
    body = "\n".join(elements)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">\n'
            f'<rect width="{width}" height="{height}" fill="white" />\n'
            f"{body}\n</svg>\n")


def render_bodies(bodies, spec: RenderSpec = RenderSpec(), labels=None) -> str:
    """One shared frame containing every body."""
    polys = [polygonalize(b, spec.directions) for b in bodies]
    viewport = spec.viewport or _auto_viewport(polys)
    panel = _Panel(viewport, spec.width, spec.height)
    elements = [_body_element(panel.to_px(p), spec) for p in polys]
    if labels:
        for label, p in zip(labels, polys):
            px = panel.to_px(np.mean(p, axis=0, keepdims=True))[0]
            elements.append(f'<text x="{_fmt(px[0])}" y="{_fmt(px[1])}" '
                            f'font-size="12" text-anchor="middle">'
                            f"{escape(str(label))}</text>")
    return _document(spec.width, spec.height, elements)


def render_strip(bodies, spec: RenderSpec = RenderSpec()) -> str:
    """Horizontal strip, one panel per body, shared world scale."""
    polys = [polygonalize(b, spec.directions) for b in bodies]
    viewport = spec.viewport or _auto_viewport(polys)
    elements = []
    for i, p in enumerate(polys):
        panel = _Panel(viewport, spec.width, spec.height, ox=i * spec.width)
        elements.append(f'<rect x="{i * spec.width}" y="0" '
                        f'width="{spec.width}" height="{spec.height}" '
                        'fill="none" stroke="#cccccc" />')
        elements.append(_body_element(panel.to_px(p), spec))
    return _document(spec.width * len(polys), spec.height, elements)


def render_lattice(rows, spec: RenderSpec = RenderSpec(), row_labels=None,
                   col_labels=None) -> str:
    """Grid of panels; ``rows`` is a list of lists of bodies."""
    polys = [[polygonalize(b, spec.directions) for b in row] for row in rows]
    flat = [p for row in polys for p in row]
    viewport = spec.viewport or _auto_viewport(flat)
    elements = []
    for r, row in enumerate(polys):
        for c, p in enumerate(row):
            panel = _Panel(viewport, spec.width, spec.height,
                           ox=c * spec.width, oy=r * spec.height)
            elements.append(f'<rect x="{c * spec.width}" y="{r * spec.height}" '
                            f'width="{spec.width}" height="{spec.height}" '
                            'fill="none" stroke="#dddddd" />')
            elements.append(_body_element(panel.to_px(p), spec))
    n_cols = max(len(row) for row in polys)
    return _document(spec.width * n_cols, spec.height * len(polys), elements)


def _equal_angle_layout(tree: Phylogeny) -> dict:
    """Unit-edge unrooted embedding; leaf wedges proportional to leaf counts."""
    leaves = set(tree.leaves)
    nb = tree.neighbors
    if len(tree.nodes) == 2:
        a, b = tree.nodes
        return {a: np.zeros(2), b: np.array([1.0, 0.0])}
    root = tree.internal_nodes[0]
    counts = {}
    order = [(root, None)]
    seq = []
    while order:
        v, p = order.pop()
        seq.append((v, p))
        for u in nb[v]:
            if u != p:
                order.append((u, v))
    for v, p in reversed(seq):
        counts[v] = 1 if v in leaves else sum(counts[u] for u in nb[v] if u != p)
    total = counts[root]
    pos = {root: np.zeros(2)}
    wedge = {root: (0.0, TWO_PI)}
    for v, p in seq:
        if p is None:
            lo = 0.0
        else:
            lo = wedge[v][0]
        for u in sorted(x for x in nb[v] if x != p):
            span = TWO_PI * counts[u] / total
            mid = lo + 0.5 * span
            pos[u] = pos[v] + np.array([np.cos(mid), np.sin(mid)])
            wedge[u] = (lo, lo + span)
            lo += span
    return pos


def render_tree(tree: Phylogeny, bodies: dict,
                spec: RenderSpec = RenderSpec(width=640, height=640)) -> str:
    """Tree drawing with a body glyph at every node; ancestors are bold."""
    pos = _equal_angle_layout(tree)
    nodes = list(tree.nodes)
    coords = np.array([pos[v] for v in nodes])
    viewport = spec.viewport or _auto_viewport([coords], pad=0.22)
    panel = _Panel(viewport, spec.width, spec.height)
    px = {v: panel.to_px(pos[v][None, :])[0] for v in nodes}
    elements = []
    for u, v in tree.edges:
        (x1, y1), (x2, y2) = px[u], px[v]
        elements.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                        f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                        'stroke="#999999" stroke-width="1" />')
    glyph_world = 0.34  # half-extent of a glyph in layout units
    internal = set(tree.internal_nodes)
    for v in nodes:
        body = bodies.get(v)
        if body is None:
            continue
        poly = polygonalize(body, spec.directions)
        center = 0.5 * (np.min(poly, axis=0) + np.max(poly, axis=0))
        half = max(float(np.max(np.abs(poly - center))), 1e-9)
        local = pos[v] + (poly - center) * (glyph_world / half)
        kwargs = {"stroke": "#8a2d2d", "width": 2.6} if v in internal else {}
        elements.append(_body_element(panel.to_px(local), spec, **kwargs))
    for leaf in tree.leaves:
        x, y = px[leaf]
        elements.append(f'<text x="{_fmt(x)}" y="{_fmt(y - 14)}" '
                        f'font-size="12" text-anchor="middle">'
                        f"{escape(str(leaf))}</text>")
    return _document(spec.width, spec.height, elements)

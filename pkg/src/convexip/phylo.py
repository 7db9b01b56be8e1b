"""Ancestral convex bodies on phylogenies by squared-distance parsimony.

The extension of leaf bodies that minimizes the sum of squared induced
distances over tree edges is unique, and each ancestral body is a
Minkowski combination of the leaf bodies with nonnegative coefficients
summing to one.  Those coefficients depend only on the tree shape, not
on which inner product measures the distances, so they are computed
once per tree: ``lambda_coefficients`` runs one linear-time directed
pass per leaf (quadratic total, matching the output size), while
``dense_laplacian_weights`` solves the stationarity system directly
and serves as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .body import Body, MinkowskiSum, polytope_from_points, scale, support
from .innerprod import SetIP, inner
from .newick import Phylogeny

__all__ = [
    "ReconstructionWeights", "Extension", "lambda_coefficients",
    "dense_laplacian_weights", "reconstruct", "tree_length",
    "weights_to_json",
]


@dataclass(frozen=True, eq=False)
class ReconstructionWeights:
    """Per-node leaf coefficients; ``rows[v]`` aligns with ``leaf_order``."""

    tree: Phylogeny
    leaf_order: tuple
    rows: dict
    alphas: dict  # audit: per root leaf, the directed-pass alpha table

    def row(self, node) -> np.ndarray:
        return self.rows[node]

    def entry(self, node, leaf) -> float:
        return float(self.rows[node][self.leaf_order.index(leaf)])

    def as_dict(self) -> dict:
        return {node: {leaf: float(v) for leaf, v in zip(self.leaf_order, row)}
                for node, row in self.rows.items()}


@dataclass(frozen=True, eq=False)
class Extension:
    """A body at every tree node; leaves carry the input assignment."""

    tree: Phylogeny
    bodies: dict


def _frozen_row(values) -> np.ndarray:
    arr = np.ascontiguousarray(values, dtype=float)
    arr.setflags(write=False)
    return arr


def lambda_coefficients(tree: Phylogeny, *,
                        strict_binary: bool = True) -> ReconstructionWeights:
    """Leaf coefficients of every node's optimal body, one pass per leaf.

    Rooting at a leaf x orients the tree; away-from-x subtrees get
    ``alpha = 1/(degree - sum of child alphas)`` (zero at leaves), and
    the x-column entry of a node is the product of alphas down its
    path to x.  Non-binary trees need ``strict_binary=False``, which
    extends the same stationarity recursion to any internal degree.
    """
    if strict_binary:
        tree.validate_binary()
    leaves = tree.leaves
    nb = tree.neighbors
    leaf_set = set(leaves)
    cols = {leaf: j for j, leaf in enumerate(leaves)}
    n = len(leaves)
    rows = {}
    for leaf in leaves:
        ind = np.zeros(n)
        ind[cols[leaf]] = 1.0
        rows[leaf] = ind
    for v in tree.internal_nodes:
        rows[v] = np.zeros(n)
    alphas = {}
    for x in leaves:
        parent = {x: None}
        order = [x]
        stack = [x]
        while stack:
            v = stack.pop()
            for u in nb[v]:
                if u != parent[v]:
                    parent[u] = v
                    order.append(u)
                    stack.append(u)
        alpha = {}
        for v in reversed(order):
            if v == x or v in leaf_set:
                alpha[v] = 0.0
            else:
                child_sum = sum(alpha[u] for u in nb[v] if u != parent[v])
                alpha[v] = 1.0 / (len(nb[v]) - child_sum)
        prefix = {x: 1.0}
        j = cols[x]
        for v in order[1:]:
            prefix[v] = prefix[parent[v]] * alpha[v]
            if v not in leaf_set:
                rows[v][j] = prefix[v]
        alphas[x] = {v: alpha[v] for v in tree.internal_nodes}
    return ReconstructionWeights(tree=tree, leaf_order=leaves,
                                 rows={v: _frozen_row(r) for v, r in rows.items()},
                                 alphas=alphas)


def dense_laplacian_weights(tree: Phylogeny) -> ReconstructionWeights:
    """The same coefficients from the stationarity system, solved densely.

    Every internal node must sit at the coefficient-wise mean of its
    neighbors; with indicator rows at the leaves that is one linear
    system per leaf column, solved here in a single call.  Independent
    of :func:`lambda_coefficients` by construction; quadratic memory.
    """
    nodes = tree.nodes
    leaves = tree.leaves
    leaf_set = set(leaves)
    index = {v: i for i, v in enumerate(nodes)}
    cols = {leaf: j for j, leaf in enumerate(leaves)}
    v_count = len(nodes)
    mat = np.zeros((v_count, v_count))
    rhs = np.zeros((v_count, len(leaves)))
    for v, i in index.items():
        if v in leaf_set:
            mat[i, i] = 1.0
            rhs[i, cols[v]] = 1.0
        else:
            mat[i, i] = float(tree.degree(v))
            for u in tree.neighbors[v]:
                mat[i, index[u]] -= 1.0
    try:
        sol = np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError("internal error: singular stationarity system "
                           "on a tree") from exc
    rows = {v: _frozen_row(sol[index[v]]) for v in nodes}
    return ReconstructionWeights(tree=tree, leaf_order=leaves, rows=rows,
                                 alphas={})


def _canonical_nd(body: Body) -> Body:
    if body.dim == 2:
        from .supportcurve import canonicalize_2d

        return canonicalize_2d(body)
    if body.dim == 1:
        lo = -support(body, np.array([-1.0]))
        hi = support(body, np.array([1.0]))
        return polytope_from_points([[lo], [hi]])
    return body


def reconstruct(tree: Phylogeny, assignment: dict, *,
                strict_binary: bool = True, canonical: bool = False,
                weights: ReconstructionWeights = None) -> Extension:
    """Minimum squared-parsimony extension of a leaf-to-body assignment.

    Internal bodies are Minkowski combinations of the leaf bodies with
    the ``lambda_coefficients`` weights, left symbolic unless
    ``canonical`` asks for closed polygon/interval form.
    """
    missing = sorted(set(tree.leaves) - set(assignment))
    if missing:
        raise ValueError(f"assignment misses leaves: {', '.join(missing)}")
    unknown = sorted(set(assignment) - set(tree.leaves))
    if unknown:
        raise ValueError(f"assignment names unknown leaves: {', '.join(unknown)}")
    dims = set()
    for leaf, body in assignment.items():
        if not isinstance(body, Body):
            raise ValueError(f"leaf {leaf!r} is not assigned a body")
        dims.add(body.dim)
    if len(dims) != 1:
        raise ValueError(f"leaf bodies mix dimensions {sorted(dims)}")
    if weights is None:
        weights = lambda_coefficients(tree, strict_binary=strict_binary)
    bodies = {leaf: assignment[leaf] for leaf in tree.leaves}
    for v in tree.internal_nodes:
        row = weights.row(v)
        terms = tuple(scale(assignment[leaf], float(lam))
                      for leaf, lam in zip(weights.leaf_order, row)
                      if lam > 1e-15)
        combo = terms[0] if len(terms) == 1 else MinkowskiSum(terms)
        bodies[v] = _canonical_nd(combo) if canonical else combo
    return Extension(tree=tree, bodies=bodies)


def tree_length(spec: SetIP, tree: Phylogeny, extension) -> float:
    """Sum over edges of the squared induced distance between endpoints."""
    bodies = extension.bodies if isinstance(extension, Extension) else dict(extension)
    missing = sorted(set(tree.nodes) - set(bodies))
    if missing:
        raise ValueError(f"extension misses nodes: {', '.join(missing)}")
    self_ip = {v: inner(spec, bodies[v], bodies[v]) for v in tree.nodes}
    total = 0.0
    for u, v in tree.edges:
        term = self_ip[u] + self_ip[v] - 2.0 * inner(spec, bodies[u], bodies[v])
        total += max(term, 0.0)
    return float(total)


def weights_to_json(weights: ReconstructionWeights) -> dict:
    return weights.as_dict()

"""Newick parsing into unrooted phylogenies with stable node identifiers.

The textual rooting is an artifact of the format, so a degree-2 root is
suppressed on input.  Branch lengths are accepted syntactically and
ignored with a warning; edges here are unweighted.  Internal nodes get
deterministic identifiers ``v1, v2, ...`` assigned in preorder from the
lexicographically smallest leaf, with siblings ordered by the smallest
leaf below them, so two Newick strings describing the same labelled
shape get the same identifiers regardless of child ordering.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

__all__ = ["NewickError", "Phylogeny", "phylogeny", "parse_newick"]

_LABEL = re.compile(r"[A-Za-z0-9_.\-]+")
_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


class NewickError(ValueError):
    """Malformed Newick input; carries the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


@dataclass(frozen=True, eq=False)
class Phylogeny:
    """Unrooted tree; leaves are named nodes of degree 1."""

    nodes: tuple
    edges: tuple
    leaves: tuple

    @property
    def neighbors(self) -> dict:
        cached = self.__dict__.get("_neighbors")
        if cached is None:
            cached = {n: [] for n in self.nodes}
            for u, v in self.edges:
                cached[u].append(v)
                cached[v].append(u)
            for n in cached:
                cached[n] = tuple(sorted(cached[n]))
            self.__dict__["_neighbors"] = cached
        return cached

    @property
    def internal_nodes(self) -> tuple:
        leaf_set = set(self.leaves)
        return tuple(n for n in self.nodes if n not in leaf_set)

    def degree(self, node) -> int:
        return len(self.neighbors[node])

    @property
    def is_binary(self) -> bool:
        return all(self.degree(n) == 3 for n in self.internal_nodes)

    def validate_binary(self):
        bad = [n for n in self.internal_nodes if self.degree(n) != 3]
        if bad:
            degs = ", ".join(f"{n} (degree {self.degree(n)})" for n in sorted(bad))
            raise ValueError(f"tree is not binary: internal nodes {degs}")


def phylogeny(edges, leaf_names=None) -> Phylogeny:
    """Build and validate a Phylogeny from an undirected edge list.

    Leaves default to the degree-1 nodes; passing ``leaf_names`` checks
    the expectation instead.
    """
    edge_list = []
    adj = {}
    for e in edges:
        u, v = str(e[0]), str(e[1])
        if u == v:
            raise ValueError(f"self-loop at node {u!r}")
        edge_list.append((u, v) if u <= v else (v, u))
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    if len(set(edge_list)) != len(edge_list):
        raise ValueError("duplicate edge in tree")
    nodes = sorted(adj)
    if not nodes:
        raise ValueError("empty tree")
    if len(edge_list) != len(nodes) - 1:
        raise ValueError("edge count does not match a tree")
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    if len(seen) != len(nodes):
        raise ValueError("tree is not connected")
    found_leaves = tuple(sorted(n for n in nodes if len(adj[n]) == 1))
    if leaf_names is not None:
        expected = tuple(sorted(str(x) for x in leaf_names))
        if expected != found_leaves:
            raise ValueError(
                f"leaf mismatch: expected {list(expected)}, found {list(found_leaves)}")
    if len(found_leaves) < 2:
        raise ValueError("a phylogeny needs at least 2 leaves")
    ordered = found_leaves + tuple(n for n in nodes if len(adj[n]) > 1)
    return Phylogeny(nodes=ordered, edges=tuple(sorted(set(edge_list))),
                     leaves=found_leaves)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.saw_length = False
        self.counter = 0
        self.adj = []  # (child, parent) provisional links
        self.leaf_offsets = {}

    def fail(self, message: str):
        raise NewickError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fresh_internal(self) -> str:
        self.counter += 1
        return f"@{self.counter}"

    def parse_label(self) -> str:
        m = _LABEL.match(self.text, self.pos)
        if not m:
            self.fail("expected a name")
        self.pos = m.end()
        return m.group(0)

    def maybe_length(self):
        self.skip_ws()
        if self.peek() == ":":
            self.pos += 1
            self.skip_ws()
            m = _NUMBER.match(self.text, self.pos)
            if not m:
                self.fail("expected a branch length after ':'")
            self.pos = m.end()
            self.saw_length = True

    def parse_element(self, names: dict) -> str:
        self.skip_ws()
        if self.peek() == "(":
            open_at = self.pos
            self.pos += 1
            me = self.fresh_internal()
            kids = [self.parse_element(names)]
            self.skip_ws()
            while self.peek() == ",":
                self.pos += 1
                kids.append(self.parse_element(names))
                self.skip_ws()
            if self.peek() != ")":
                self.fail("expected ',' or ')'")
            self.pos += 1
            if len(kids) == 1:
                self.pos = open_at
                self.fail("internal node with a single child")
            for k in kids:
                self.adj.append((k, me))
            self.skip_ws()
            if _LABEL.match(self.text, self.pos):
                self.parse_label()  # internal labels carry no meaning here
            self.maybe_length()
            return me
        name_at = self.pos
        name = self.parse_label()
        if name in names:
            self.pos = name_at
            self.fail(f"duplicate leaf name {name!r}")
        names[name] = name_at
        self.maybe_length()
        return name


def parse_newick(text: str) -> Phylogeny:
    """Parse one Newick tree; see the module docstring for conventions."""
    if not isinstance(text, str):
        raise NewickError("input must be a string", 0)
    p = _Parser(text)
    names: dict = {}
    root = p.parse_element(names)
    p.skip_ws()
    if p.peek() != ";":
        p.fail("expected ';'")
    p.pos += 1
    p.skip_ws()
    if p.pos != len(text):
        p.fail("trailing content after ';'")
    if p.saw_length:
        warnings.warn("Newick branch lengths are ignored; edges are unweighted",
                      UserWarning, stacklevel=2)

    adj: dict = {n: set() for n in names}
    adj.setdefault(root, set())
    for child, parent in p.adj:
        adj.setdefault(child, set()).add(parent)
        adj.setdefault(parent, set()).add(child)
    if len(adj[root]) == 2:  # rooted rendering of an unrooted edge
        a, b = sorted(adj[root])
        adj[a].discard(root)
        adj[b].discard(root)
        adj[a].add(b)
        adj[b].add(a)
        del adj[root]
    if len(names) < 2:
        raise NewickError("a phylogeny needs at least 2 leaves", len(text) - 1)
    renamed = _canonical_internal_ids(adj, set(names))
    edges = set()
    for u, vs in adj.items():
        for v in vs:
            edges.add(tuple(sorted((renamed[u], renamed[v]))))
    return phylogeny(sorted(edges), leaf_names=names)


def _canonical_internal_ids(adj: dict, leaf_set: set) -> dict:
    prefix = "v"
    while any(re.fullmatch(re.escape(prefix) + r"\d+", leaf) for leaf in leaf_set):
        prefix = "_" + prefix
    start = min(leaf_set)
    min_leaf = {}
    order = []
    seen = {start}
    stack = [(start, False)]
    while stack:  # iterative post-order to get the smallest leaf under each node
        node, done = stack.pop()
        if done:
            below = [min_leaf[u] for u in adj[node] if u in min_leaf]
            min_leaf[node] = min(below + ([node] if node in leaf_set else []))
            continue
        order.append(node)
        stack.append((node, True))
        for u in adj[node]:
            if u not in seen:
                seen.add(u)
                stack.append((u, False))
    renamed = {}
    counter = 0
    stack = [start]
    visited = set()
    while stack:  # preorder, siblings by their smallest descendant leaf
        node = stack.pop()
        if node in visited:
            continue
        visited.add(node)
        if node in leaf_set:
            renamed[node] = node
        else:
            counter += 1
            renamed[node] = f"{prefix}{counter}"
        kids = sorted((u for u in adj[node] if u not in visited),
                      key=lambda u: min_leaf[u], reverse=True)
        stack.extend(kids)
    return renamed

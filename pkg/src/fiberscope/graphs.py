"""Paths, cycles and star-like trees with exact rational vertex values.

Vertices are numbered from 0.  For a star the central vertex is 0 and the
branches follow in order, each listed from the vertex next to the centre
out to the leaf.
"""
import numbers
from dataclasses import dataclass, field
from fractions import Fraction

SHAPES = ("path", "cycle", "star")

# 1-based labels for the seven-vertex Y tree: centre 3, branches 3-2-1,
# 3-4-5 and 3-6-7.  Y7_LABELS[k] is the label of internal vertex k.
Y7_LABELS = (3, 2, 1, 4, 5, 6, 7)


class GraphError(ValueError):
    """Invalid shape descriptor or graph."""


class NotTypical(ValueError):
    """The operation needs pairwise distinct vertex values."""


@dataclass(frozen=True)
class Graph:
    """A path, cycle or star-like tree.

    ``params`` echoes the descriptor: ``(N,)`` for paths and cycles, the
    tuple of branch lengths for stars.  ``branches`` lists the vertices of
    each star branch from the centre outwards (empty for other shapes).
    """

    vertex_count: int
    edges: frozenset
    shape_tag: str
    params: tuple
    branches: tuple = ()
    _adj: tuple = field(default=(), repr=False, compare=False)

    def neighbors(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    @property
    def center(self):
        return 0 if self.shape_tag == "star" else None

    def edge_list(self):
        return sorted(self.edges)

    def traversal_order(self):
        """Canonical vertex order: cycle/path order; for stars the centre then each branch."""
        if self.shape_tag == "star":
            return [0] + [v for b in self.branches for v in b]
        return list(range(self.vertex_count))

    def branch_of(self, v):
        """Index of the branch holding ``v`` (``None`` for the centre or non-stars)."""
        for q, b in enumerate(self.branches):
            if v in b:
                return q
        return None

    def depth(self, v):
        """Distance from the centre of a star."""
        if v == 0:
            return 0
        q = self.branch_of(v)
        return self.branches[q].index(v) + 1

    def is_connected(self):
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self._adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    def path_between(self, a, b):
        """Vertex path from ``a`` to ``b`` (graphs here have unique paths except cycles)."""
        prev = {a: None}
        queue = [a]
        for v in queue:
            if v == b:
                break
            for w in self._adj[v]:
                if w not in prev:
                    prev[w] = v
                    queue.append(w)
        out = [b]
        while out[-1] != a:
            out.append(prev[out[-1]])
        return out[::-1]


def _make(n, edges, tag, params, branches=()):
    edges = frozenset((min(a, b), max(a, b)) for a, b in edges)
    adj = [[] for _ in range(n)]
    for a, b in sorted(edges):
        adj[a].append(b)
        adj[b].append(a)
    return Graph(n, edges, tag, tuple(params), tuple(tuple(b) for b in branches),
                 tuple(tuple(sorted(x)) for x in adj))


def path(n):
    if n < 3:
        raise GraphError(f"a path needs at least 3 vertices, got {n}")
    return _make(n, [(i, i + 1) for i in range(n - 1)], "path", (n,))


def cycle(n):
    if n < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got {n}")
    return _make(n, [(i, (i + 1) % n) for i in range(n)], "cycle", (n,))


def star(lengths):
    lengths = [int(x) for x in lengths]
    if len(lengths) < 3:
        raise GraphError(f"a star needs at least 3 branches, got {len(lengths)}")
    if any(x < 2 for x in lengths):
        raise GraphError(f"star branches must have length >= 2, got {lengths}")
    edges, branches, nxt = [], [], 1
    for L in lengths:
        b = list(range(nxt, nxt + L))
        edges.append((0, b[0]))
        edges.extend(zip(b, b[1:]))
        branches.append(b)
        nxt += L
    return _make(nxt, edges, "star", lengths, branches)


def build_graph(shape, params=None):
    """Build a graph from ``(shape, params)``.

    ``build_graph("cycle", 5)``, ``build_graph("path", [4])`` and
    ``build_graph("star", [2, 2, 2])`` are all accepted, as is a single
    tuple ``("star", [2, 2, 2])``.
    """
    if params is None and isinstance(shape, (tuple, list)):
        shape, params = shape
    if shape not in SHAPES:
        raise GraphError(f"unknown shape {shape!r}")
    if shape == "star":
        if isinstance(params, numbers.Integral):
            raise GraphError("a star needs a list of branch lengths")
        return star(params)
    n = params[0] if isinstance(params, (tuple, list)) else params
    if isinstance(params, (tuple, list)) and len(params) != 1:
        raise GraphError(f"{shape} takes one size parameter")
    return path(int(n)) if shape == "path" else cycle(int(n))


def as_fraction(x):
    """Exact rational from an int, Fraction, ``"a/b"`` string or ``(num, den)`` pair."""
    if isinstance(x, bool):
        raise TypeError("booleans are not vertex values")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, (tuple, list)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        # decimal reading keeps 0.1 as 1/10
        return Fraction(repr(x))
    if isinstance(x, numbers.Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot read {x!r} as a rational")


@dataclass(frozen=True)
class VertexFunction:
    """A graph with one exact rational value per vertex."""

    graph: Graph
    values: tuple

    def __init__(self, graph, values):
        values = tuple(as_fraction(v) for v in values)
        if len(values) != graph.vertex_count:
            raise GraphError(f"expected {graph.vertex_count} values, got {len(values)}")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "values", values)

    def __getitem__(self, v):
        return self.values[v]

    def __len__(self):
        return len(self.values)

    def replace(self, updates):
        """Copy with some vertex values changed (``updates`` maps vertex to value)."""
        vals = list(self.values)
        for v, x in dict(updates).items():
            vals[v] = as_fraction(x)
        return VertexFunction(self.graph, vals)


@dataclass(frozen=True)
class Digraph:
    graph: Graph
    arcs: frozenset

    def out_degree(self, v):
        return sum(1 for a, _ in self.arcs if a == v)

    def two_sided_edges(self):
        return sorted((a, b) for a, b in self.arcs if a < b and (b, a) in self.arcs)


@dataclass(frozen=True)
class CriticalValueSequence:
    entries: tuple

    def __len__(self):
        return len(self.entries)

    @property
    def vertices(self):
        return tuple(v for v, _ in self.entries)

    @property
    def values(self):
        return tuple(x for _, x in self.entries)


def digraph_of(z):
    """Arc ``v -> w`` for every edge with ``z_v >= z_w``."""
    arcs = set()
    for a, b in z.graph.edges:
        if z[a] >= z[b]:
            arcs.add((a, b))
        if z[b] >= z[a]:
            arcs.add((b, a))
    return Digraph(z.graph, frozenset(arcs))


def is_typical(z):
    return len(set(z.values)) == len(z.values)


def _require_typical(z):
    if not is_typical(z):
        raise NotTypical("vertex values must be pairwise distinct")


def local_extrema(z):
    """``(maxima, minima)`` as sorted vertex lists; ``z`` must be typical."""
    _require_typical(z)
    g = z.graph
    maxima = [v for v in range(g.vertex_count) if all(z[v] >= z[w] for w in g.neighbors(v))]
    minima = [v for v in range(g.vertex_count) if all(z[v] <= z[w] for w in g.neighbors(v))]
    return maxima, minima


def critical_value_sequence(z):
    """Local extrema in traversal order, as ``(vertex, value)`` pairs."""
    maxima, minima = local_extrema(z)
    ext = set(maxima) | set(minima)
    return CriticalValueSequence(tuple((v, z[v]) for v in z.graph.traversal_order() if v in ext))


def contracted_classes(z):
    """Classes of vertices joined by equal-valued edges, as a vertex -> class-root map."""
    parent = list(range(z.graph.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in z.graph.edges:
        if z[a] == z[b]:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return [find(v) for v in range(z.graph.vertex_count)]


def contracted_out_degrees(z):
    """Out-degree of each class after contracting two-sided edges."""
    cls = contracted_classes(z)
    out = {c: 0 for c in set(cls)}
    for a, b in z.graph.edges:
        if z[a] > z[b]:
            out[cls[a]] += 1
        elif z[b] > z[a]:
            out[cls[b]] += 1
    return cls, out


def critical_coordinates(z):
    """Vertices whose contracted class does not have out-degree exactly one."""
    cls, out = contracted_out_degrees(z)
    return sorted(v for v in range(z.graph.vertex_count) if out[cls[v]] != 1)

"""Zero- and one-dimensional sublevel persistence on graphs.

Values live on vertices; an edge enters the filtration at the larger of
its two endpoint values.  Diagrams are exact: births and deaths are
Fractions, and an infinite death is the singleton :data:`INF`.
"""
from collections import Counter
from dataclasses import dataclass

from .graphs import GraphError, as_fraction


class _Infinity:
    """Infinite death time.  Compares above every number and equals only itself."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    __str__ = __repr__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("fiberscope.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def _key(point):
    b, d = point
    return (b, 1, 0) if d is INF else (b, 0, d)


@dataclass(frozen=True)
class PersistenceDiagram:
    """A multiset of ``(birth, death)`` pairs in one homological dimension."""

    dimension: int
    points: tuple

    def __init__(self, dimension, points):
        pts = []
        for b, d in points:
            b = as_fraction(b)
            d = INF if (d is INF or d in ("inf", "INF", float("inf"))) else as_fraction(d)
            pts.append((b, d))
        object.__setattr__(self, "dimension", int(dimension))
        object.__setattr__(self, "points", tuple(sorted(pts, key=_key)))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def multiset(self):
        return Counter(self.points)

    def finite(self):
        return [p for p in self.points if p[1] is not INF]

    def essential(self):
        return [p for p in self.points if p[1] is INF]

    def coordinates(self):
        """All finite births and deaths, with multiplicity."""
        out = []
        for b, d in self.points:
            out.append(b)
            if d is not INF:
                out.append(d)
        return out


def _require_connected(graph):
    if not graph.is_connected():
        raise GraphError("graph must be connected")


def sublevel_ph0(z):
    """Zero-dimensional sublevel persistence by the elder rule.

    Vertices enter by increasing value, ties by index.  When two components
    meet, the one with the later birth dies (the lower birth vertex index
    breaks ties).  Pairs with zero persistence are dropped.
    """
    g = z.graph
    _require_connected(g)
    order = sorted(range(g.vertex_count), key=lambda v: (z[v], v))
    parent = {}
    # each root carries its birth vertex
    birth_vertex = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    points = []
    for v in order:
        parent[v] = v
        birth_vertex[v] = v
        for w in g.neighbors(v):
            if w not in parent:
                continue
            rv, rw = find(v), find(w)
            if rv == rw:
                continue
            bv, bw = birth_vertex[rv], birth_vertex[rw]
            if (z[bv], bv) < (z[bw], bw):
                elder, young = rv, rw
            else:
                elder, young = rw, rv
            yb = birth_vertex[young]
            if z[yb] < z[v]:
                points.append((z[yb], z[v]))
            parent[young] = elder
    roots = {find(v) for v in parent}
    for r in roots:
        points.append((z[birth_vertex[r]], INF))
    return PersistenceDiagram(0, points)


def ph0_oracle(z):
    """Zero-dimensional persistence by recomputing components at every threshold.

    Slow and independent of :func:`sublevel_ph0`; used as a cross-check.
    """
    g = z.graph
    _require_connected(g)
    levels = sorted(set(z.values))
    alive = {}  # frozenset of vertices -> (birth value, birth vertex)
    points = []
    for r in levels:
        present = {v for v in range(g.vertex_count) if z[v] <= r}
        comps = []
        seen = set()
        for s in sorted(present):
            if s in seen:
                continue
            comp, stack = {s}, [s]
            seen.add(s)
            while stack:
                v = stack.pop()
                for w in g.neighbors(v):
                    if w in present and w not in seen:
                        seen.add(w)
                        comp.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
        nxt = {}
        for comp in comps:
            old = [info for prev, info in alive.items() if prev <= comp]
            if not old:
                bv = min(comp, key=lambda v: (z[v], v))
                nxt[comp] = (z[bv], bv)
                continue
            old.sort()
            nxt[comp] = old[0]
            for b, _ in old[1:]:
                points.append((b, r))
        alive = nxt
    for b, _ in alive.values():
        points.append((b, INF))
    return PersistenceDiagram(0, points)


def ph1_cycle(z):
    """One-dimensional diagram: ``{(max z, INF)}`` on a cycle, empty on trees."""
    if z.graph.shape_tag == "cycle":
        return PersistenceDiagram(1, [(max(z.values), INF)])
    return PersistenceDiagram(1, [])


def diagram_is_typical(P):
    """Whether all coordinates of the zero-dimensional diagram are distinct."""
    if P.dimension != 0:
        raise ValueError("typicality is defined for zero-dimensional diagrams")
    coords = P.coordinates()
    return len(set(coords)) == len(coords)


def in_fiber(z, P, ph1=None):
    """Whether ``z`` has zero-dimensional diagram ``P`` (and ``ph1`` when given)."""
    if P.dimension != 0:
        raise ValueError("fibers are taken over zero-dimensional diagrams")
    if sublevel_ph0(z).multiset() != P.multiset():
        return False
    if ph1 is not None:
        return ph1_cycle(z).multiset() == ph1.multiset()
    return True

"""Components of the fiber over a diagram on the (2M+1)-gon.

With ``N = 2M + 1`` every point has ``2M`` local extrema and one other
vertex.  Components correspond to cyclic classes of critical value
sequences; each is a cycle of closed intervals, one interval per position
of the non-extremal vertex and per rotation of the sequence.
"""
from fractions import Fraction
from itertools import permutations

from .graphs import VertexFunction, cycle
from .persistence import INF, PersistenceDiagram, diagram_is_typical, sublevel_ph0


class DiagramError(ValueError):
    """The diagram cannot come from a typical point on the polygon."""


def extremal_values(P, top):
    """Minima and maxima a typical point with diagram ``P`` and maximum ``top`` must have."""
    if P.dimension != 0 or not diagram_is_typical(P):
        raise DiagramError("need a typical zero-dimensional diagram")
    ess = P.essential()
    if len(ess) != 1:
        raise DiagramError("need exactly one point with infinite death")
    top = Fraction(top)
    coords = P.coordinates()
    if any(top <= c for c in coords):
        raise DiagramError("the maximum must exceed every diagram coordinate")
    minima = sorted(b for b, _ in P.points)
    maxima = sorted([d for _, d in P.finite()] + [top])
    return minima, maxima


def canonical_rotation(seq):
    """Lexicographically least rotation."""
    n = len(seq)
    return min(tuple(seq[k:] + seq[:k]) for k in range(n))


def _cycle_diagram(values):
    if len(values) < 3:
        # a 2-gon is connected from its first vertex on
        return PersistenceDiagram(0, [(min(values), INF)])
    return sublevel_ph0(VertexFunction(cycle(len(values)), values))


def critical_sequences(P, top):
    """All alternating value sequences (minimum first) on the ``2M``-gon realizing ``P``."""
    minima, maxima = extremal_values(P, top)
    target = P.multiset()
    out = []
    first = minima[0]
    # fix the global minimum in front to enumerate each rotation class once
    for mins in permutations(minima[1:]):
        mins = (first,) + mins
        for maxs in permutations(maxima):
            seq = [x for pair in zip(mins, maxs) for x in pair]
            if _cycle_diagram(seq).multiset() == target:
                out.append(tuple(seq))
    return out


def component_classes(P, top):
    """Cyclic classes of critical value sequences, each as its least rotation."""
    return sorted({canonical_rotation(list(s)) for s in critical_sequences(P, top)})


def _place(seq, i, value):
    """Point on the ``(len(seq)+1)``-gon with ``value`` inserted at position ``i``."""
    return tuple(seq[:i]) + (value,) + tuple(seq[i:])


def component_graph(seq):
    """Closed intervals ``C_i(v)`` over all rotations ``v`` of ``seq``.

    Nodes are the endpoint vectors; an edge joins the two endpoints of each
    interval.  Returns ``(nodes, edges)``.
    """
    n = len(seq)
    nodes = {}
    edges = set()
    for r in range(n):
        v = list(seq[r:] + seq[:r])
        N = n + 1
        for i in range(N):
            left = v[i - 1] if i > 0 else v[-1]
            right = v[i] if i < n else v[0]
            ends = []
            for e in (left, right):
                vec = _place(v, i, e)
                ends.append(nodes.setdefault(vec, len(nodes)))
            edges.add(tuple(sorted(ends)))
    return list(nodes), sorted(edges)


def graph_betti(n_nodes, edges):
    """``(b0, b1)`` of a graph."""
    parent = list(range(n_nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    b0 = len({find(x) for x in range(n_nodes)})
    return b0, len(edges) - n_nodes + b0


def interval_midpoint_check(seq, i):
    """Whether the open interval ``C_i`` of ``seq`` stays in the fiber (tested at its midpoint)."""
    n = len(seq)
    left = seq[i - 1] if i > 0 else seq[-1]
    right = seq[i] if i < n else seq[0]
    return _cycle_diagram(_place(seq, i, (left + right) / 2))


def brute_force_classes(P, top):
    """Independent count: place the extremal values and one extra value on the polygon.

    The extra value runs over midpoints between consecutive sorted
    extremal values.  Every placement with diagram ``P`` contributes the
    cyclic class of its extremal values read around the polygon.
    """
    minima, maxima = extremal_values(P, top)
    vals = sorted(minima + maxima)
    N = len(vals) + 1
    extras = [(a + b) / 2 for a, b in zip(vals, vals[1:])]
    target = P.multiset()
    found = set()
    for x in extras:
        for perm in permutations(vals + [x]):
            if perm[0] != vals[0]:
                continue  # rotate the global minimum to the front
            if _cycle_diagram(list(perm)).multiset() != target:
                continue
            seq = [y for y in perm if y != x]
            found.add(canonical_rotation(seq))
    return sorted(found)


def parse_diagram(points):
    """Diagram from ``[(b, d), ...]`` with ``d`` possibly ``"inf"``."""
    return PersistenceDiagram(0, [(b, INF if d in ("inf", INF, None) else d) for b, d in points])

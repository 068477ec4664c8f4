"""Order complexes and mod-2 simplicial homology.

Simplices are stored per dimension as integer arrays, one sorted row per
simplex, with rows in colexicographic order.  The boundary reduction and
chain enumeration run in :mod:`fiberscope._kernels`.
"""
import os
from dataclasses import dataclass

import numpy as np

from . import _kernels

DEFAULT_MAX_SIMPLICES = 5_000_000


class ComplexTooLarge(RuntimeError):
    """The complex would exceed the simplex-count guardrail."""


def max_simplices():
    raw = os.environ.get("FIBERSCOPE_MAX_SIMPLICES")
    return int(raw) if raw else DEFAULT_MAX_SIMPLICES


@dataclass(frozen=True)
class BettiVector:
    """Mod-2 Betti numbers with trailing zeros removed, plus the Euler characteristic."""

    ranks: tuple
    euler: int

    def __getitem__(self, k):
        return self.ranks[k] if k < len(self.ranks) else 0

    def __iter__(self):
        return iter(self.ranks)

    def __eq__(self, other):
        if isinstance(other, BettiVector):
            return self.ranks == other.ranks and self.euler == other.euler
        if isinstance(other, (tuple, list)):
            return self.ranks == _trim(tuple(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.ranks, self.euler))

    def to_json(self):
        return {"b": list(self.ranks), "euler": self.euler}


def _trim(ranks):
    ranks = list(ranks)
    while len(ranks) > 1 and ranks[-1] == 0:
        ranks.pop()
    return tuple(ranks)


class SimplicialComplex:
    """A finite simplicial complex on vertices ``0..n-1``.

    ``chains[k]`` is an ``(n_k, k+1)`` int32 array of k-simplices.  The
    complex is assumed closed under faces.  ``labels`` optionally names
    the vertices (for order complexes: the poset elements).
    """

    def __init__(self, n_vertices, chains, labels=None):
        self.n_vertices = int(n_vertices)
        self.chains = [np.ascontiguousarray(c, dtype=np.int32) for c in chains]
        while self.chains and len(self.chains[-1]) == 0:
            self.chains.pop()
        self.labels = tuple(labels) if labels is not None else tuple(range(self.n_vertices))

    @classmethod
    def from_simplices(cls, n_vertices, simplices, labels=None):
        """Build the downward closure of the given simplices."""
        faces = set()
        for s in simplices:
            s = tuple(sorted(int(v) for v in s))
            if len(set(s)) != len(s):
                raise ValueError(f"repeated vertex in simplex {s}")
            _add_faces(s, faces)
        for v in range(n_vertices):
            faces.add((v,))
        return cls(n_vertices, _colex_arrays(faces), labels)

    @property
    def dimension(self):
        return len(self.chains) - 1

    def f_vector(self):
        return [len(c) for c in self.chains]

    def simplex_count(self):
        return sum(self.f_vector())

    def simplices(self):
        for c in self.chains:
            for row in c.tolist():
                yield tuple(row)

    def euler_characteristic(self):
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def to_json(self):
        return {"vertices": self.n_vertices,
                "simplices": [list(s) for s in self.simplices()]}

    def __repr__(self):
        return f"SimplicialComplex(f={self.f_vector()})"


def _add_faces(s, faces):
    if s in faces:
        return
    faces.add(s)
    if len(s) > 1:
        for j in range(len(s)):
            _add_faces(s[:j] + s[j + 1:], faces)


def _colex_arrays(faces):
    by_dim = {}
    for s in faces:
        by_dim.setdefault(len(s) - 1, []).append(s)
    out = []
    for k in range(max(by_dim, default=-1) + 1):
        rows = sorted(by_dim.get(k, []), key=lambda s: s[::-1])
        out.append(np.array(rows, dtype=np.int32).reshape(len(rows), k + 1))
    return out


def chain_count(poset):
    """Number of non-empty strict chains of ``poset`` (simplices of its order complex)."""
    count = {}
    for i in poset.linear_extension():
        count[i] = 1 + sum(count[j] for j in poset.below[i])
    return sum(count.values())


def order_complex(poset, limit=None):
    """Order complex of a finite poset: one simplex per strict chain.

    Vertices are renumbered along a linear extension; ``labels`` maps the
    new vertex ids back to poset elements.  Raises :class:`ComplexTooLarge`
    when the number of chains exceeds the guardrail.
    """
    limit = max_simplices() if limit is None else limit
    total = chain_count(poset)
    if total > limit:
        raise ComplexTooLarge(
            f"order complex has {total} simplices, above the limit {limit} "
            "(set FIBERSCOPE_MAX_SIMPLICES to raise it)")
    order = poset.linear_extension()
    new_id = {old: new for new, old in enumerate(order)}
    indptr = [0]
    indices = []
    for old in order:
        indices.extend(sorted(new_id[j] for j in poset.below[old]))
        indptr.append(len(indices))
    n = len(order)
    chains = _kernels.chains_from_below(
        np.asarray(indptr, dtype=np.int32), np.asarray(indices, dtype=np.int32), n)
    labels = [poset.elements[old] for old in order]
    return SimplicialComplex(n, chains, labels)


def betti(complex_):
    """Mod-2 Betti numbers of a simplicial complex.

    The Euler characteristic from the ranks is checked against the
    alternating simplex count.
    """
    f = complex_.f_vector()
    if not f:
        return BettiVector((0,), 0)
    ranks = _kernels.boundary_ranks(list(complex_.chains)) + [0]
    b = [f[k] - ranks[k] - ranks[k + 1] for k in range(len(f))]
    euler = sum((-1) ** k * x for k, x in enumerate(b))
    if euler != complex_.euler_characteristic():
        raise AssertionError("Euler characteristic mismatch in homology computation")
    return BettiVector(_trim(b), euler)


def connected_components(complex_):
    """Number of connected components of the 1-skeleton."""
    parent = list(range(complex_.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if len(complex_.chains) > 1:
        for a, b in complex_.chains[1].tolist():
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return len({find(v) for v in range(complex_.n_vertices)})


def poset_betti(poset, limit=None):
    """Shortcut for ``betti(order_complex(poset))``."""
    return betti(order_complex(poset, limit))

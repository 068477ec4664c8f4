"""Cover of the fiber over a two-point diagram on star-shaped trees.

The diagram is ``{(v0, INF), (v1, v2)}`` with ``v0 < v1 < v2``.  For each
branch ``q`` the subspace ``Br_q`` holds the points with a ``v0`` on that
branch (the centre counts as being on every branch) and no ``v2`` farther
out.  ``Br'_q`` is the intersection of the ``Br_p`` with ``p != q``.

Branches are numbered from 0.  On the Y tree branches 0, 1 and 2 play the
roles usually called alpha, beta and gamma.
"""
import random
from dataclasses import dataclass
from fractions import Fraction

from .graphs import GraphError, VertexFunction, as_fraction, star
from .homology import betti, order_complex
from .persistence import INF, PersistenceDiagram, in_fiber
from .poset import FinitePoset


class SamplingExhausted(RuntimeError):
    """Too many rejected proposals while sampling the fiber."""


class NotInCover(ValueError):
    """The point is outside the requested cover subspace."""


@dataclass(frozen=True)
class StarFiberProblem:
    """A star tree together with the diagram ``{(v0, INF), (v1, v2)}``."""

    tree: object
    v0: Fraction = Fraction(0)
    v1: Fraction = Fraction(1)
    v2: Fraction = Fraction(4)

    def __post_init__(self):
        if self.tree.shape_tag != "star":
            raise GraphError("the tree must be a star")
        for name in ("v0", "v1", "v2"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if not (self.v0 < self.v1 < self.v2):
            raise ValueError("need v0 < v1 < v2")

    @classmethod
    def from_lengths(cls, lengths, v0=0, v1=1, v2=4):
        return cls(star(lengths), as_fraction(v0), as_fraction(v1), as_fraction(v2))

    @property
    def n(self):
        return len(self.tree.branches)

    @property
    def diagram(self):
        return PersistenceDiagram(0, [(self.v0, INF), (self.v1, self.v2)])

    def point(self, values):
        return VertexFunction(self.tree, values)

    def contains(self, z):
        return in_fiber(z, self.diagram)


def _check_branch(problem, q):
    if not (isinstance(q, int) and 0 <= q < problem.n):
        raise IndexError(f"branch index {q!r} out of range for {problem.n} branches")


def in_Br(problem, q, z):
    """Branch condition for ``Br_q`` (fiber membership is not checked here)."""
    _check_branch(problem, q)
    line = (0,) + problem.tree.branches[q]
    for d, i in enumerate(line):
        if z[i] == problem.v0 and all(z[j] != problem.v2 for j in line[d + 1:]):
            return True
    return False


def in_Br_prime(problem, q, z):
    """Membership in ``Br'_q``: in every ``Br_p`` with ``p != q``."""
    _check_branch(problem, q)
    return all(in_Br(problem, p, z) for p in range(problem.n) if p != q)


def in_Br_prime_direct(problem, q, z):
    """``v0`` at the centre, with the ``v1`` and ``v2`` vertices on branch ``q``."""
    _check_branch(problem, q)
    b = problem.tree.branches[q]
    return (z[0] == problem.v0
            and any(z[j] == problem.v1 for j in b)
            and any(z[j] == problem.v2 for j in b))


def br_signature(problem, z):
    """Set of branches ``q`` with ``z`` in ``Br_q``."""
    return frozenset(q for q in range(problem.n) if in_Br(problem, q, z))


def nerve_element(problem, sig):
    """Name of the nerve element matching a signature, or ``None``.

    A single branch ``{q}`` gives ``Br_q``; all branches but ``q`` give ``Br'_q``.
    """
    n = problem.n
    if len(sig) == 1:
        return br_name(next(iter(sig)))
    if len(sig) == n - 1:
        (q,) = set(range(n)) - set(sig)
        return br_prime_name(q)
    return None


def br_name(q):
    return f"Br_{q}"


def br_prime_name(q):
    return f"Br'_{q}"


def nerve(problem_or_n):
    """The nerve poset: ``Br'_q < Br_p`` whenever ``p != q``."""
    n = problem_or_n if isinstance(problem_or_n, int) else problem_or_n.n
    if n < 3:
        raise GraphError("a star needs at least 3 branches")
    elements = [br_prime_name(q) for q in range(n)] + [br_name(q) for q in range(n)]
    covers = [(br_prime_name(q), br_name(p)) for q in range(n) for p in range(n) if p != q]
    return FinitePoset.from_covers(elements, covers)


def gamma_metrics(problem_or_n):
    """Vertex and edge counts, degrees, Euler characteristic and Betti numbers of the nerve graph."""
    Q = nerve(problem_or_n)
    C = order_complex(Q)
    f = C.f_vector()
    deg = [0] * C.n_vertices
    for a, b in C.chains[1].tolist():
        deg[a] += 1
        deg[b] += 1
    b = betti(C)
    return {
        "vertices": f[0],
        "edges": f[1] if len(f) > 1 else 0,
        "higher_simplices": sum(f[2:]),
        "degrees": sorted(set(deg)),
        "euler": b.euler,
        "betti": list(b.ranks),
    }


# canonical fill and paths ---------------------------------------------------------

@dataclass(frozen=True)
class PLPath:
    """Piecewise-linear path through vertex functions on one tree."""

    waypoints: tuple

    def __init__(self, waypoints):
        pts = []
        for w in waypoints:
            if not pts or w.values != pts[-1].values:
                pts.append(w)
        if not pts:
            raise ValueError("a path needs at least one waypoint")
        object.__setattr__(self, "waypoints", tuple(pts))

    def __len__(self):
        return len(self.waypoints)

    @property
    def tree(self):
        return self.waypoints[0].graph

    def is_closed(self):
        return self.waypoints[0].values == self.waypoints[-1].values

    def segments(self):
        return list(zip(self.waypoints, self.waypoints[1:]))

    def points(self, steps_per_segment):
        """All interpolated points ``a + (k/steps)(b - a)``, endpoints included once."""
        if steps_per_segment < 1:
            raise ValueError("steps_per_segment must be >= 1")
        yield self.waypoints[0]
        for a, b in self.segments():
            for k in range(1, steps_per_segment + 1):
                t = Fraction(k, steps_per_segment)
                yield VertexFunction(a.graph, [x + t * (y - x) for x, y in zip(a.values, b.values)])

    def then(self, other):
        if self.waypoints[-1].values != other.waypoints[0].values:
            raise ValueError("paths do not meet")
        return PLPath(self.waypoints + other.waypoints[1:])


def verify_path_in_fiber(path, P, steps_per_segment=100):
    """Check every interpolated point of ``path`` has diagram ``P``.

    Returns ``(ok, first_failure)`` where ``first_failure`` is ``None`` or a
    ``(index, point)`` pair.
    """
    for k, z in enumerate(path.points(steps_per_segment)):
        if not in_fiber(z, P):
            return False, (k, z)
    return True, None


def _chains(tree, fixed):
    """Dangling chains of non-fixed vertices: ``(attachment, [vertices outward])``."""
    out = []
    if 0 not in fixed:
        raise ValueError("the centre must be fixed")
    for b in tree.branches:
        start = 0
        while start < len(b) and b[start] in fixed:
            start += 1
        if any(v in fixed for v in b[start:]):
            raise ValueError("fixed vertices must form a prefix of each branch")
        if start < len(b):
            out.append((b[start - 1] if start else 0, list(b[start:])))
    return out


def canonical_fill(problem, fixed_values):
    """Full vertex function from values on a centre-containing subtree.

    Every other vertex gets a value strictly between ``max(s, v1)`` and
    ``v2`` increasing outward, where ``s`` is the value where its chain
    attaches.  Chains are offset by ``j/(number of chains)`` steps so the
    values stay distinct.
    """
    tree = problem.tree
    vals = [None] * tree.vertex_count
    for v, x in fixed_values.items():
        vals[v] = as_fraction(x)
    chains = _chains(tree, set(fixed_values))
    m = len(chains)
    for j, (att, verts) in enumerate(chains):
        lo = max(vals[att], problem.v1)
        K = len(verts)
        theta = Fraction(j, m)
        for k, v in enumerate(verts, start=1):
            vals[v] = lo + (problem.v2 - lo) * (k + theta) / (K + 1)
    return VertexFunction(tree, vals)


def _raised(problem, fixed_values, lifted):
    """Like :func:`canonical_fill` but chains on ``lifted`` branches sit above ``v2``."""
    z = canonical_fill(problem, fixed_values)
    tree = problem.tree
    upd = {}
    m = max(1, len(lifted))
    for j, q in enumerate(sorted(lifted)):
        for k, v in enumerate(tree.branches[q], start=1):
            upd[v] = problem.v2 + k + Fraction(j, m)
    return z.replace(upd)


def _moves_to(tree, z, target):
    """One-coordinate moves from ``z`` to ``target``.

    Upward moves run from the outermost vertex inwards, then downward moves
    from the innermost vertex outwards, so chains stay monotone throughout.
    """
    ups = [v for v in range(tree.vertex_count) if target[v] > z[v]]
    downs = [v for v in range(tree.vertex_count) if target[v] < z[v]]
    ups.sort(key=lambda v: (-tree.depth(v), v))
    downs.sort(key=lambda v: (tree.depth(v), v))
    out = []
    for v in ups + downs:
        z = z.replace({v: target[v]})
        out.append(z)
    return out


def _slide_once(problem, z, line, i, off_line):
    """Move the window ``line[i:i+3]`` one place along ``line``."""
    tree = problem.tree
    a, v2, b = z[line[i]], z[line[i + 1]], z[line[i + 2]]
    P, Vp, R, Xp = line[i], line[i + 1], line[i + 2], line[i + 3]
    steps = []
    z = z.replace({Xp: b})
    steps.append(z)
    z = z.replace({R: v2})
    steps.append(z)
    z = z.replace({Vp: a})
    steps.append(z)
    # new value at P: above max(a, v1) and below its outward neighbour
    lo = max(a, problem.v1)
    outward = [w for w in tree.neighbors(P) if w != Vp and w not in off_line]
    if outward:
        hi = min(z[w] for w in outward)
    else:
        hi = problem.v2
    z = z.replace({P: (lo + hi) / 2})
    steps.append(z)
    return z, steps


def _pattern(problem, branch_of_pattern, placement):
    """Canonical point with values ``placement`` on (centre, x1, x2) of a branch."""
    tree = problem.tree
    b = tree.branches[branch_of_pattern]
    c_val, x1, x2 = placement
    return canonical_fill(problem, {0: c_val, b[0]: x1, b[1]: x2})


def kturn_patterns(problem, branches=(0, 1, 2)):
    """The six pattern points of the loop, keyed ``A, B, C, A', B', C'``."""
    a, b, c = branches
    v0, v1, v2 = problem.v0, problem.v1, problem.v2
    return {
        "A": _pattern(problem, a, (v1, v2, v0)),
        "B": _pattern(problem, b, (v0, v2, v1)),
        "C": _pattern(problem, c, (v1, v2, v0)),
        "A'": _pattern(problem, a, (v0, v2, v1)),
        "B'": _pattern(problem, b, (v1, v2, v0)),
        "C'": _pattern(problem, c, (v0, v2, v1)),
    }


def _stage(problem, z, u, w):
    """Slide the pattern from branch ``u`` through the centre onto branch ``w``."""
    tree = problem.tree
    bu, bw = tree.branches[u], tree.branches[w]
    line = [bu[1], bu[0], 0, bw[0], bw[1]]
    off = [q for q in range(problem.n) if q not in (u, w)]
    off_vertices = {v for q in off for v in tree.branches[q]}
    steps = []
    # lift the other branches above v2 before the centre reaches v2
    lifted = _raised(problem, {0: z[0], bu[0]: z[bu[0]], bu[1]: z[bu[1]]}, off)
    target = z.replace({v: lifted[v] for v in off_vertices})
    steps += _moves_to(tree, z, target)
    z = target
    for i in range(2):
        z, s = _slide_once(problem, z, line, i, off_vertices)
        steps += s
    final = canonical_fill(problem, {0: z[0], bw[0]: z[bw[0]], bw[1]: z[bw[1]]})
    steps += _moves_to(tree, z, final)
    return final, steps


def kturn_loop(problem, branches=None):
    """Closed path through the six pattern points, one coordinate moving at a time.

    ``branches`` picks the three branches used (default ``(0, 1, 2)``);
    with two indices the third is the smallest other branch.
    """
    if branches is None:
        branches = (0, 1, 2)
    branches = tuple(branches)
    if len(branches) == 2:
        rest = [q for q in range(problem.n) if q not in branches]
        branches = branches + (rest[0],)
    if len(branches) != 3 or len(set(branches)) != 3:
        raise ValueError("need three distinct branches")
    for q in branches:
        _check_branch(problem, q)
        if len(problem.tree.branches[q]) < 2:
            raise GraphError("branches must have length >= 2")
    a, b, c = branches
    pats = kturn_patterns(problem, branches)
    z = pats["A"]
    points = [z]
    for u, w in ((a, b), (b, c), (c, a), (a, b), (b, c), (c, a)):
        z, steps = _stage(problem, z, u, w)
        points += steps
    return PLPath(points)


def pattern_waypoint_indices(path, problem, branches=(0, 1, 2)):
    """Positions of the six pattern points within ``path`` (in loop order)."""
    pats = kturn_patterns(problem, branches)
    vals = [w.values for w in path.waypoints]
    out = {}
    start = 0
    for key in ("A", "B", "C", "A'", "B'", "C'"):
        k = vals.index(pats[key].values, start)
        out[key] = k
        start = k
    return out


def signature_walk(problem, path):
    """Nerve elements visited by ``path``, with consecutive repeats merged.

    Raises :class:`NotInCover` if a waypoint matches no nerve element.
    """
    walk = []
    for k, z in enumerate(path.waypoints):
        name = nerve_element(problem, br_signature(problem, z))
        if name is None:
            raise NotInCover(f"waypoint {k} has signature {sorted(br_signature(problem, z))}")
        if not walk or walk[-1] != name:
            walk.append(name)
    return walk


def walk_is_hexagon_cycle(problem, walk):
    """Whether ``walk`` is a closed walk along nerve edges visiting six distinct elements once."""
    Q = nerve(problem)
    if len(walk) != 7 or walk[0] != walk[-1]:
        return False
    if len(set(walk[:-1])) != 6:
        return False
    return all(Q.lt(x, y) or Q.lt(y, x) for x, y in zip(walk, walk[1:]))


# retraction of Br_q ------------------------------------------------------------

def retract_Br(problem, q, z, stage):
    """One of the three linear stages contracting ``Br_q`` to a point.

    Stage 1 lowers every vertex between the branch-``q`` leaf and the
    nearest ``v0`` to ``v0``.  Stage 2 sets every vertex reachable from the
    leaf without passing a ``v1`` vertex (other than the leaf) to ``v2``.
    Stage 3 sets all vertices except the leaf and its neighbour to ``v1``.
    Each stage starts from the end of the previous one; the returned path
    has the stage's start and end as waypoints.
    """
    if stage not in (1, 2, 3):
        raise ValueError("stage must be 1, 2 or 3")
    if not in_Br(problem, q, z):
        raise NotInCover(f"point is not in {br_name(q)}")
    start = z
    for s in range(1, stage):
        start = _retract_step(problem, q, start, s)
    end = _retract_step(problem, q, start, stage)
    return PLPath([start, end])


def retract_Br_full(problem, q, z):
    """The three retraction stages joined into one path."""
    path = retract_Br(problem, q, z, 1)
    for s in (2, 3):
        path = path.then(retract_Br(problem, q, z, s))
    return path


def _retract_step(problem, q, z, stage):
    tree = problem.tree
    line = (0,) + tree.branches[q]
    leaf = line[-1]
    if stage == 1:
        i0 = max(d for d, v in enumerate(line) if z[v] == problem.v0)
        return z.replace({v: problem.v0 for v in line[i0:]})
    if stage == 2:
        reach = set()
        stack = [leaf]
        seen = {leaf}
        while stack:
            v = stack.pop()
            for w in tree.neighbors(v):
                if w in seen or z[w] == problem.v1:
                    continue
                seen.add(w)
                reach.add(w)
                stack.append(w)
        return z.replace({v: problem.v2 for v in reach})
    keep = {leaf, line[-2]}
    return z.replace({v: problem.v1 for v in range(tree.vertex_count) if v not in keep})


def retraction_endpoint(problem, q):
    """The point all of ``Br_q`` contracts to."""
    tree = problem.tree
    line = (0,) + tree.branches[q]
    vals = [problem.v1] * tree.vertex_count
    vals[line[-1]] = problem.v0
    vals[line[-2]] = problem.v2
    return VertexFunction(tree, vals)


# sampling -------------------------------------------------------------------------

GRID = 16


def _grid_range(lo, hi):
    """Integers ``k`` with ``lo < k/GRID < hi``."""
    k0 = (lo * GRID).__floor__() + 1
    k1 = (hi * GRID).__ceil__() - 1
    return range(k0, k1 + 1)


def _grid_pick(rng, lo, hi, banned, m=None):
    """One grid value (or ``m`` sorted distinct ones) strictly inside ``(lo, hi)``."""
    ks = [k for k in _grid_range(lo, hi) if k not in banned]
    if m is None:
        return Fraction(rng.choice(ks), GRID)
    return [Fraction(k, GRID) for k in sorted(rng.sample(ks, m))]


def _propose(problem, rng):
    tree = problem.tree
    n = tree.vertex_count
    v0, v1, v2 = problem.v0, problem.v1, problem.v2
    roles = {v0, v1, v2}
    banned = {int(x * GRID) for x in roles if (x * GRID).denominator == 1}
    while True:
        a, b = rng.sample(range(n), 2)
        p = tree.path_between(a, b)
        if len(p) >= 3:
            break
    ci = rng.randrange(1, len(p) - 1)
    vals = [None] * n
    vals[p[0]], vals[p[-1]], vals[p[ci]] = v0, v1, v2
    for side, lo in ((p[1:ci], v0), (p[ci + 1:-1][::-1], v1)):
        # strictly increasing from the role vertex towards the v2 vertex
        if side:
            for v, x in zip(side, _grid_pick(rng, lo, v2, banned, len(side))):
                vals[v] = x
    # off-path vertices increase away from the path
    queue = list(p)
    seen = set(p)
    for v in queue:
        for w in tree.neighbors(v):
            if w in seen:
                continue
            seen.add(w)
            vals[w] = _grid_pick(rng, vals[v], max(vals[v], v2) + 1, banned)
            queue.append(w)
    if rng.random() < 0.5:
        free = [v for v in range(n) if vals[v] not in roles]
        if free:
            v = rng.choice(free)
            vals[v] = _grid_pick(rng, v0 - 1, v2 + 1, banned)
    return VertexFunction(tree, vals)


def sample_fiber(problem, count, seed=0, max_proposals=None):
    """Seeded pseudo-random points of the fiber.

    Proposals put ``v0``, ``v2`` and ``v1`` in order along a path, fill the
    rest from a grid of step ``1/16`` avoiding the three critical values,
    and sometimes perturb one vertex; only proposals in the fiber are kept.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = random.Random(seed)
    limit = max_proposals if max_proposals is not None else 20 * count + 1000
    P = problem.diagram
    out = []
    for _ in range(limit):
        z = _propose(problem, rng)
        if in_fiber(z, P):
            out.append(z)
            if len(out) == count:
                return out
    raise SamplingExhausted(f"only {len(out)} of {count} samples after {limit} proposals")


def cover_report(problem, samples):
    """Cover and nerve statistics for fiber samples.

    Returns a dict with the number of uncovered points, the number whose
    signature is neither a single branch nor all branches but one, counts
    per signature size and the first witnesses of each failure.
    """
    uncovered, unfaithful = [], []
    sizes = {}
    for z in samples:
        sig = br_signature(problem, z)
        sizes[len(sig)] = sizes.get(len(sig), 0) + 1
        if not sig:
            uncovered.append(z)
        elif nerve_element(problem, sig) is None:
            unfaithful.append(z)
    return {
        "samples": len(samples),
        "uncovered": len(uncovered),
        "unfaithful": len(unfaithful),
        "signature_sizes": dict(sorted(sizes.items())),
        "uncovered_witness": uncovered[0] if uncovered else None,
        "unfaithful_witness": unfaithful[0] if unfaithful else None,
    }

"""Numbered acceptance checks shared by ``fiberscope verify-all`` and the test suite.

Each ``check_*`` function returns a :class:`CheckResult`; a failing result
carries a witness.
"""
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import strings as S
from .fibertree import (StarFiberProblem, br_signature, cover_report, gamma_metrics, kturn_loop,
                        nerve_element, sample_fiber, signature_walk, verify_path_in_fiber,
                        walk_is_hexagon_cycle)
from .graphs import VertexFunction, critical_value_sequence, cycle, local_extrema, star
from .homology import poset_betti
from .persistence import ph0_oracle, sublevel_ph0


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    witness: object = None
    seconds: float = 0.0

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        extra = f" witness={self.witness}" if self.witness is not None else ""
        return f"[{status}] {self.name} ({self.seconds:.1f}s){extra}"

    def to_json(self):
        return {"name": self.name, "pass": self.passed, "details": self.details,
                "witness": None if self.witness is None else str(self.witness),
                "seconds": round(self.seconds, 3)}


def _timed(fn):
    def wrapper(*args, **kwargs):
        t = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def parameter_pairs(max_n, min_n=3):
    return [(N, M) for N in range(min_n, max_n + 1) for M in range(1, N) if 2 * M < N]


CONTRACTIBLE_SELECTORS = ("Str00", "Str11", "closure00", "closure11",
                          "Str0X", "StrX0", "Str1X", "StrX1", "Str0", "Str1")


@_timed
def check_str_circle(max_n=9):
    """Order complex of every ``Str(N, M)`` has Betti numbers (1, 1)."""
    table = {}
    witness = None
    for N, M in parameter_pairs(max_n):
        b = poset_betti(S.enumerate_strings(N, M))
        table[f"{N},{M}"] = list(b.ranks)
        if b != (1, 1) and witness is None:
            witness = ((N, M), list(b.ranks))
    return CheckResult("Str(N,M) has the homology of a circle", witness is None, table, witness)


@_timed
def check_subposets_contractible(max_n=8):
    """The ten sub-posets have the homology of a point."""
    table = {}
    witness = None
    for N, M in parameter_pairs(max_n):
        P = S.enumerate_strings(N, M)
        for name in CONTRACTIBLE_SELECTORS:
            b = poset_betti(S.subposet(P, name))
            table[f"{N},{M},{name}"] = list(b.ranks)
            if b != (1,) and witness is None:
                witness = ((N, M, name), list(b.ranks))
    return CheckResult("sub-posets have the homology of a point", witness is None, table, witness)


@_timed
def check_str_structure(max_n=8):
    """Maximal elements, maximal chain lengths and the glb property."""
    witness = None
    counts = {}
    for N, M in parameter_pairs(max_n):
        P = S.enumerate_strings(N, M)
        top = N - 2 * M
        maximal = set(P.maximal())
        by_dim = {s for s in P if s.dimension == top}
        if maximal != by_dim:
            witness = ("maximal", (N, M), sorted(maximal ^ by_dim)[:3])
            break
        lengths = P.maximal_chain_lengths()
        if lengths != {top}:
            witness = ("chain lengths", (N, M), sorted(lengths))
            break
        for s in P:
            above = [t for t in maximal if P.leq(s, t)]
            try:
                g = S.glb(above)
            except S.InvalidString:
                g = None
            if g != s:
                witness = ("glb", (N, M), s, g)
                break
        if witness:
            break
        counts[f"{N},{M}"] = len(P)
    return CheckResult("Str structure: maximal elements, chain length, glb", witness is None,
                       counts, witness)


def expected_stable_image(domain, N, M):
    """Where iterating F_1 ends on a domain: strings starting 0X, or the domain itself when N = 2M+1."""
    if N == 2 * M + 1:
        return set(domain)
    return {s for s in domain if s[1] == S.X}


@_timed
def check_moves(max_n=8):
    """F_1 order-preserving with stable image at level 2; R idempotent and below the identity."""
    witness = None
    steps = {}
    for N, M in parameter_pairs(max_n):
        P = S.enumerate_strings(N, M)
        for dom in ("Str00", "Str0X"):
            D = S.subposet(P, dom)
            img = {s: S.move_F1(s) for s in D}
            out_of_domain = [s for s, t in img.items() if t not in D]
            if out_of_domain:
                witness = ("F1 leaves domain", dom, out_of_domain[0])
                break
            bad = D.is_order_preserving(D, lambda s: img[s])
            if bad:
                witness = ("F1 not monotone", dom, bad)
                break
            cur, k = set(D), 0
            while True:
                nxt = {img[s] for s in cur}
                if nxt == cur:
                    break
                cur, k = nxt, k + 1
            if cur != expected_stable_image(D, N, M):
                witness = ("F1 stable image", dom, (N, M), sorted(cur)[:3])
                break
            steps[f"{N},{M},{dom}"] = k
        if witness:
            break
        for name in ("closure00", "closure11"):
            for s in S.subposet(P, name):
                r = S.retraction_R(s)
                if S.retraction_R(r) != r or not P.leq(r, s):
                    witness = ("R", s, r)
                    break
            if witness:
                break
        if witness:
            break
    return CheckResult("moves F1 and retraction R", witness is None, {"iterations": steps}, witness)


@_timed
def check_classification(max_n=8):
    """The map f to the octagon: totality, order preservation and comma fibers."""
    Q = S.octagon()
    classes = {
        "0X": S.SELECTORS["Str0X"], "X1": S.SELECTORS["StrX1"],
        "X0": S.SELECTORS["StrX0"], "1X": S.SELECTORS["Str1X"],
        "00": S.SELECTORS["Str00"], "11": S.SELECTORS["Str11"],
        "0": lambda s: S.in_str0(s) and (s[0], s[-1]) not in (("0", "X"), ("X", "1")),
        "1": lambda s: S.in_str1(s) and (s[0], s[-1]) not in (("1", "X"), ("X", "0")),
    }
    expected_fiber = {
        "0X": "Str0X", "X1": "StrX1", "X0": "StrX0", "1X": "Str1X",
        "00": "closure00", "11": "closure11", "0": "Str0", "1": "Str1",
    }
    total_witness = monotone_witness = fiber_witness = None
    for N, M in parameter_pairs(max_n):
        P = S.enumerate_strings(N, M)
        for s in P:
            hits = [q for q, pred in classes.items() if pred(s)]
            if len(hits) != 1 or hits[0] != S.classify_f(s):
                total_witness = total_witness or (s, hits, S.classify_f(s))
        bad = P.is_order_preserving(Q, S.classify_f)
        if bad and monotone_witness is None:
            a, b = bad
            monotone_witness = (f"{a} < {b} but f({a})={S.classify_f(a)} is not below "
                                f"f({b})={S.classify_f(b)}")
        for q, name in expected_fiber.items():
            got = set(S.comma_fiber(q, P))
            want = set(S.subposet(P, name))
            if got != want and fiber_witness is None:
                fiber_witness = (q, (N, M), sorted(got ^ want)[:3])
    details = {"total": total_witness is None, "order_preserving": monotone_witness is None,
               "comma_fibers": fiber_witness is None}
    witness = total_witness or monotone_witness or fiber_witness
    return CheckResult("classification map f to the octagon", witness is None, details, witness)


@_timed
def check_kturn(lengths=(2, 2, 2), steps=100):
    """K-turn loop stays in the fiber and walks once around the hexagon."""
    problem = StarFiberProblem.from_lengths(lengths)
    path = kturn_loop(problem)
    ok, fail = verify_path_in_fiber(path, problem.diagram, steps)
    walk = signature_walk(problem, path)
    hexagon = walk_is_hexagon_cycle(problem, walk)
    details = {"waypoints": len(path), "closed": path.is_closed(), "in_fiber": ok, "walk": walk}
    passed = ok and hexagon and path.is_closed() and len(path) >= 12
    witness = None
    if not ok:
        witness = (fail[0], [str(x) for x in fail[1].values])
    elif not passed:
        witness = walk
    return CheckResult("K-turn loop", passed, details, witness)


@_timed
def check_star_formula(ns=range(3, 9)):
    """Nerve graph counts for stars with branch length 2."""
    table = {}
    witness = None
    for n in ns:
        m = gamma_metrics(n)
        want = {"vertices": 2 * n, "edges": n * n - n, "higher_simplices": 0,
                "degrees": [n - 1], "euler": 3 * n - n * n, "betti": [1, n * n - 3 * n + 1]}
        table[n] = m
        if m != want and witness is None:
            witness = (n, m)
    return CheckResult("star nerve graph formula", witness is None, table, witness)


@_timed
def check_cover(ns=(3, 4, 5), count=10_000, seed=0, branch_length=2):
    """Sampled fiber points are covered by the Br_q with nerve-shaped overlaps."""
    table = {}
    witness = None
    for n in ns:
        problem = StarFiberProblem.from_lengths([branch_length] * n)
        pts = sample_fiber(problem, count, seed=seed + n)
        rep = cover_report(problem, pts)
        table[n] = {k: v for k, v in rep.items() if not k.endswith("witness")}
        if witness is None:
            w = rep["uncovered_witness"] or rep["unfaithful_witness"]
            if w is not None:
                witness = (n, [str(x) for x in w.values], sorted(br_signature(problem, w)))
    return CheckResult("cover of the tree fiber", witness is None, table, witness)


def star_shapes(max_n):
    """Branch lengths (non-increasing, at least 3 branches, each >= 2) of stars with at most ``max_n`` vertices."""
    out = []

    def extend(prefix, left):
        if len(prefix) >= 3:
            out.append(list(prefix))
        top = prefix[-1] if prefix else left
        for k in range(min(top, left), 1, -1):
            extend(prefix + [k], left - k)

    extend([], max_n - 1)
    return sorted(out, key=lambda b: (sum(b), b))


def _all_permutations(n):
    from itertools import permutations
    return permutations(range(1, n + 1))


@_timed
def check_persistence_oracle(max_n=7):
    """Elder rule agrees with threshold recomputation on cycles and stars."""
    graphs = [cycle(n) for n in range(3, max_n + 1)]
    graphs += [star(b) for b in star_shapes(max_n)]
    witness = None
    cases = 0
    for g in graphs:
        for perm in _all_permutations(g.vertex_count):
            z = VertexFunction(g, perm)
            cases += 1
            if sublevel_ph0(z) != ph0_oracle(z):
                witness = (g.shape_tag, g.params, perm)
                break
        if witness:
            break
    return CheckResult("persistence engine vs threshold oracle", witness is None,
                       {"cases": cases}, witness)


def alternates(z, seq):
    """Whether the critical sequence alternates between maxima and minima cyclically."""
    maxima, _ = local_extrema(z)
    kinds = [v in maxima for v in seq.vertices]
    n = len(kinds)
    return n % 2 == 0 and all(kinds[i] != kinds[(i + 1) % n] for i in range(n))


@_timed
def check_extrema_count(count=10_000, max_n=12, seed=0):
    """Typical points on cycles have 2|PH0| alternating local extrema."""
    rng = random.Random(seed)
    witness = None
    for _ in range(count):
        n = rng.randint(3, max_n)
        vals = [Fraction(k, rng.randint(1, 16)) for k in rng.sample(range(-500, 500), n)]
        if len(set(vals)) != n:
            continue
        z = VertexFunction(cycle(n), vals)
        seq = critical_value_sequence(z)
        if len(seq) != 2 * len(sublevel_ph0(z)) or not alternates(z, seq):
            witness = [str(x) for x in vals]
            break
    return CheckResult("local extrema count on cycles", witness is None, {"points": count}, witness)


CHECKS = [
    ("1", check_str_circle),
    ("2", check_subposets_contractible),
    ("3", check_str_structure),
    ("4", check_moves),
    ("5", check_classification),
    ("6", check_kturn),
    ("7", check_star_formula),
    ("8", check_cover),
    ("9", check_persistence_oracle),
    ("10", check_extrema_count),
]


def run_all(only=None):
    out = []
    for key, fn in CHECKS:
        if only and key not in only:
            continue
        out.append((key, fn()))
    return out

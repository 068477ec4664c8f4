"""Command-line front end.

Exit status is 0 when every check passes, 1 when a mathematical check
fails (the witness is printed) and 2 for bad input.
"""
import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from . import acceptance
from . import strings as S
from .fibertree import (StarFiberProblem, cover_report, gamma_metrics, kturn_loop, nerve,
                        sample_fiber, signature_walk, verify_path_in_fiber, walk_is_hexagon_cycle)
from .graphs import GraphError
from .homology import ComplexTooLarge, order_complex, poset_betti
from .ngon import (DiagramError, brute_force_classes, component_classes, component_graph,
                   graph_betti, interval_midpoint_check, parse_diagram)
from .persistence import ph1_cycle, sublevel_ph0
from .serialize import (diagram_to_json, graph_dot, hasse_dot, path_to_json, rat_text,
                        vertex_function_from_json)


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    passed: bool = True
    elapsed_ms: int = 0
    witness: object = None
    dot: str = None

    def to_json(self):
        doc = {"command": self.command, "inputs": self.inputs, "results": self.results,
               "pass": self.passed, "elapsed_ms": self.elapsed_ms}
        if self.witness is not None:
            doc["witness"] = self.witness
        if self.dot is not None:
            doc["dot"] = self.dot
        return doc


def _text(report):
    lines = [f"{report.command}: {'PASS' if report.passed else 'FAIL'} ({report.elapsed_ms} ms)"]
    for k, v in report.results.items():
        lines.append(f"  {k}: {json.dumps(v, default=str)}")
    if report.witness is not None:
        lines.append(f"  witness: {report.witness}")
    return "\n".join(lines)


def _fail(report, witness):
    report.passed = False
    if report.witness is None:
        report.witness = witness


# commands -------------------------------------------------------------------------

def cmd_persistence(args):
    raw = args.json if args.json is not None else _read_input(args.input)
    try:
        doc = json.loads(raw)
        z = vertex_function_from_json(doc)
    except (json.JSONDecodeError, GraphError, KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise UsageError(f"malformed input: {e}") from e
    rep = RunReport("persistence", {"shape": z.graph.shape_tag, "params": list(z.graph.params),
                                    "values": [str(v) for v in z.values]})
    rep.results["ph0"] = diagram_to_json(sublevel_ph0(z))
    if z.graph.shape_tag == "cycle":
        rep.results["ph1"] = diagram_to_json(ph1_cycle(z))
    return rep


def _read_input(path):
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(str(e)) from e


def cmd_str(args):
    N, M = args.N, args.M
    try:
        P = S.enumerate_strings(N, M)
    except ValueError as e:
        raise UsageError(str(e)) from e
    rep = RunReport("str", {"N": N, "M": M, "subposets": args.subposet or [],
                            "homology": not args.no_homology, "moves": args.moves})
    rep.results["elements"] = len(P)
    rep.results["max_chain_length"] = P.height()
    if P.height() != N - 2 * M:
        _fail(rep, f"longest chain has length {P.height()}, not {N - 2 * M}")
    if not args.no_homology:
        b = poset_betti(P)
        rep.results["betti"] = b.to_json()
        if b != (1, 1):
            _fail(rep, f"Str({N},{M}) has Betti numbers {list(b.ranks)}")
    subs = {}
    for name in args.subposet or []:
        try:
            sub = S.subposet(P, name)
        except (KeyError, ValueError) as e:
            raise UsageError(str(e)) from e
        entry = {"elements": len(sub)}
        if not args.no_homology and len(sub):
            b = poset_betti(sub)
            entry["betti"] = b.to_json()
            if b != (1,):
                _fail(rep, f"{name} has Betti numbers {list(b.ranks)}")
        subs[name] = entry
    if subs:
        rep.results["subposets"] = subs
    if args.moves:
        moves = {}
        for dom in ("Str00", "Str0X"):
            D = S.subposet(P, dom)
            img = {s: S.move_F1(s) for s in D}
            bad = D.is_order_preserving(D, lambda s: img[s])
            if bad:
                _fail(rep, f"F1 not monotone on {dom}: {bad}")
            worst = max((S.iterate_to_fixed_point(S.move_F1, s)[1] for s in D), default=0)
            cur = {S.iterate_to_fixed_point(S.move_F1, s)[0] for s in D}
            if cur != acceptance.expected_stable_image(D, N, M):
                _fail(rep, f"F1 iteration on {dom} does not end at level 2")
            moves[dom] = {"elements": len(D), "steps_to_converge": worst,
                          "stable_image": len(cur)}
        rep.results["F1"] = moves
    if args.format == "dot" or args.dot:
        rep.dot = hasse_dot(P, name=f"Str_{N}_{M}")
    return rep


def _parse_points(text):
    pts = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ":" not in item:
            raise UsageError(f"diagram point {item!r} should look like birth:death")
        b, d = item.split(":", 1)
        pts.append((b.strip(), d.strip()))
    return pts


def cmd_ngon(args):
    try:
        P = parse_diagram(_parse_points(args.diagram))
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad diagram: {e}") from e
    M = len(P)
    if args.M is not None and args.M != M:
        raise UsageError(f"diagram has {M} points but M={args.M}")
    N = args.N if args.N is not None else 2 * M + 1
    if N != 2 * M + 1:
        raise UsageError(f"this command needs N = 2M + 1 = {2 * M + 1}, got N={N}")
    rep = RunReport("ngon", {"N": N, "M": M, "diagram": args.diagram, "top": args.top})
    try:
        classes = component_classes(P, args.top)
    except DiagramError as e:
        raise UsageError(str(e)) from e
    comps = []
    for seq in classes:
        nodes, edges = component_graph(seq)
        b = graph_betti(len(nodes), edges)
        inside = all(interval_midpoint_check(list(seq), i).multiset() == P.multiset()
                     for i in range(N))
        comps.append({"sequence": [rat_text(x) for x in seq], "intervals": len(edges),
                      "betti": list(b), "intervals_in_fiber": inside})
        if b != (1, 1) or not inside:
            _fail(rep, {"sequence": [rat_text(x) for x in seq], "betti": list(b)})
    rep.results["components"] = len(classes)
    rep.results["classes"] = comps
    if N <= args.brute_max:
        brute = brute_force_classes(P, args.top)
        rep.results["brute_force_components"] = len(brute)
        if brute != classes:
            _fail(rep, "brute-force placement count disagrees")
    return rep


def cmd_star(args):
    try:
        problem = StarFiberProblem.from_lengths(args.lengths, args.v0, args.v1, args.v2)
    except (GraphError, ValueError) as e:
        raise UsageError(str(e)) from e
    n = problem.n
    rep = RunReport("star", {"lengths": args.lengths, "v": [args.v0, args.v1, args.v2],
                             "kturn": args.kturn, "sample": args.sample, "seed": args.seed})
    m = gamma_metrics(problem)
    rep.results["gamma"] = m
    want = {"vertices": 2 * n, "edges": n * n - n, "euler": 3 * n - n * n,
            "betti": [1, n * n - 3 * n + 1]}
    for k, v in want.items():
        if m[k] != v:
            _fail(rep, f"Gamma {k} = {m[k]}, expected {v}")
    if args.kturn:
        path = kturn_loop(problem)
        ok, fail = verify_path_in_fiber(path, problem.diagram, args.steps)
        walk = signature_walk(problem, path)
        hexagon = walk_is_hexagon_cycle(problem, walk)
        rep.results["kturn"] = {"waypoints": len(path), "in_fiber": ok, "walk": walk,
                                "hexagon_cycle": hexagon}
        if not ok:
            _fail(rep, {"step": fail[0], "point": [str(x) for x in fail[1].values]})
        elif not hexagon:
            _fail(rep, {"walk": walk})
        if args.path:
            rep.results["kturn"]["path"] = path_to_json(path)
    if args.sample:
        pts = sample_fiber(problem, args.sample, seed=args.seed)
        cov = cover_report(problem, pts)
        w = cov.pop("uncovered_witness")
        u = cov.pop("unfaithful_witness")
        rep.results["cover"] = cov
        if w is not None:
            _fail(rep, {"uncovered": [str(x) for x in w.values]})
        if u is not None:
            _fail(rep, {"unfaithful": [str(x) for x in u.values]})
    if args.format == "dot" or args.dot:
        rep.dot = graph_dot(order_complex(nerve(problem)), name=f"gamma_{n}")
    return rep


def cmd_verify_all(args):
    only = set(args.only.split(",")) if args.only else None
    rep = RunReport("verify-all", {"only": sorted(only) if only else "all"})
    lines = []
    for key, res in acceptance.run_all(only):
        rep.results[key] = res.to_json()
        lines.append(f"{key:>2} {res.line()}")
        if not res.passed:
            _fail(rep, {key: str(res.witness)})
            rep.passed = False
    rep.results["summary"] = lines
    return rep


# entry point ----------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="fiberscope", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("json", "dot", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("persistence", help="diagrams of a vertex function given as JSON")
    sp.add_argument("input", nargs="?", default="-", help="JSON file, or - for stdin")
    sp.add_argument("--json", help="inline JSON document")
    sp.set_defaults(func=cmd_persistence)

    sp = sub.add_parser("str", help="the poset of circular cellular strings")
    sp.add_argument("N", type=int)
    sp.add_argument("M", type=int)
    sp.add_argument("--subposet", action="append", metavar="SEL",
                    help="Str0, Str1, Str00, ..., closure00, closure11, level(l); repeatable")
    sp.add_argument("--no-homology", action="store_true")
    sp.add_argument("--homology", action="store_true", help="accepted for clarity; on by default")
    sp.add_argument("--moves", action="store_true", help="check the move F1")
    sp.add_argument("--dot", action="store_true", help="print the Hasse diagram as DOT")
    sp.set_defaults(func=cmd_str)

    sp = sub.add_parser("ngon", help="fiber components on the (2M+1)-gon")
    sp.add_argument("--diagram", required=True, help='points "b:d,..." with d possibly inf')
    sp.add_argument("--top", required=True, help="global maximum (the PH1 birth)")
    sp.add_argument("--N", type=int)
    sp.add_argument("--M", type=int)
    sp.add_argument("--brute-max", type=int, default=7,
                    help="largest N for the brute-force cross-check")
    sp.set_defaults(func=cmd_ngon)

    sp = sub.add_parser("star", help="cover and nerve of the fiber on a star tree")
    sp.add_argument("lengths", type=int, nargs="+")
    sp.add_argument("--kturn", action="store_true")
    sp.add_argument("--steps", type=int, default=100)
    sp.add_argument("--path", action="store_true", help="include the K-turn waypoints")
    sp.add_argument("--sample", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--v0", default="0")
    sp.add_argument("--v1", default="1")
    sp.add_argument("--v2", default="4")
    sp.add_argument("--dot", action="store_true")
    sp.set_defaults(func=cmd_star)

    sp = sub.add_parser("verify-all", help="run every acceptance check")
    sp.add_argument("--only", help="comma-separated criterion numbers")
    sp.set_defaults(func=cmd_verify_all)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    t = time.perf_counter()
    try:
        rep = args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ComplexTooLarge as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    rep.elapsed_ms = int((time.perf_counter() - t) * 1000)
    if args.format == "dot" and rep.dot is not None:
        sys.stdout.write(rep.dot)
    elif args.format == "text":
        print(_text(rep))
        if rep.dot:
            sys.stdout.write(rep.dot)
    else:
        print(json.dumps(rep.to_json(), indent=2, default=str))
    if not rep.passed and args.format != "text":
        print(f"check failed; witness: {rep.witness}", file=sys.stderr)
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())

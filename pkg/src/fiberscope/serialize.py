"""JSON and DOT encodings.

Rationals are written as ``[numerator, denominator]`` string pairs; an
infinite death is the string ``"inf"``.
"""
from fractions import Fraction

from .graphs import Y7_LABELS, GraphError, VertexFunction, as_fraction, build_graph
from .persistence import INF, PersistenceDiagram


def rat_to_json(x):
    x = Fraction(x)
    return [str(x.numerator), str(x.denominator)]


def rat_from_json(x):
    if isinstance(x, list) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    return as_fraction(x)


def rat_text(x):
    return "inf" if x is INF else str(x)


def vertex_function_to_json(z):
    return {"shape": z.graph.shape_tag, "params": list(z.graph.params),
            "values": [rat_to_json(v) for v in z.values]}


def vertex_function_from_json(doc):
    """Parse ``{"shape", "params", "values"}``.

    For the seven-vertex Y tree, ``"labeling": "y7"`` reads ``values`` in the
    1-based order where the centre is vertex 3.
    """
    if not isinstance(doc, dict):
        raise GraphError("expected a JSON object")
    for key in ("shape", "params", "values"):
        if key not in doc:
            raise GraphError(f"missing key {key!r}")
    params = doc["params"]
    g = build_graph(doc["shape"], params if isinstance(params, list) else [params])
    vals = [rat_from_json(v) for v in doc["values"]]
    labeling = doc.get("labeling", "internal")
    if labeling == "y7":
        if g.shape_tag != "star" or list(g.params) != [2, 2, 2]:
            raise GraphError("the y7 labelling applies only to star [2, 2, 2]")
        if len(vals) != 7:
            raise GraphError("expected 7 values")
        vals = [vals[Y7_LABELS[k] - 1] for k in range(7)]
    elif labeling != "internal":
        raise GraphError(f"unknown labelling {labeling!r}")
    return VertexFunction(g, vals)


def diagram_to_json(P):
    pts = []
    for b, d in P.points:
        pts.append({"b": rat_to_json(b), "d": "inf" if d is INF else rat_to_json(d)})
    return {"dim": P.dimension, "points": pts}


def diagram_from_json(doc):
    pts = []
    for p in doc["points"]:
        d = p["d"]
        pts.append((rat_from_json(p["b"]), INF if d == "inf" else rat_from_json(d)))
    return PersistenceDiagram(doc.get("dim", 0), pts)


def poset_to_json(P):
    doc = {}
    if hasattr(P, "N"):
        doc.update({"N": P.N, "M": P.M})
    doc["elements"] = [str(e) for e in P.elements]
    doc["covers"] = [list(c) for c in P.cover_pairs]
    return doc


def complex_to_json(C):
    return C.to_json()


def betti_to_json(b):
    return b.to_json()


def path_to_json(path):
    g = path.tree
    return {"tree": {"shape": g.shape_tag, "params": list(g.params)},
            "waypoints": [[rat_to_json(v) for v in w.values] for w in path.waypoints]}


def _dot_id(x):
    return '"' + str(x).replace('"', '\\"') + '"'


def hasse_dot(P, name="hasse"):
    """Hasse diagram with edges pointing from each element up to its covers."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for e in P.elements:
        lines.append(f"  {_dot_id(e)};")
    for lo, hi in P.covers():
        lines.append(f"  {_dot_id(lo)} -> {_dot_id(hi)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_dot(C, name="gamma"):
    """Undirected 1-skeleton of a complex with its vertex labels."""
    lines = [f"graph {name} {{"]
    for lab in C.labels:
        lines.append(f"  {_dot_id(lab)};")
    if len(C.chains) > 1:
        for a, b in C.chains[1].tolist():
            lines.append(f"  {_dot_id(C.labels[a])} -- {_dot_id(C.labels[b])};")
    lines.append("}")
    return "\n".join(lines) + "\n"

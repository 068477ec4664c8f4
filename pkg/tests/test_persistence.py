import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fiberscope.graphs import (VertexFunction, contracted_out_degrees, critical_coordinates,
                               cycle, path, star)
from fiberscope.persistence import (INF, PersistenceDiagram, diagram_is_typical, in_fiber,
                                    ph0_oracle, ph1_cycle, sublevel_ph0)

from conftest import y7

P_Y = PersistenceDiagram(0, [(0, INF), (1, 4)])


def test_inf_is_not_a_number():
    assert INF > 10**100 and not INF < 5 and INF == INF and INF != float("inf")
    assert sorted([INF, Fraction(3)]) == [Fraction(3), INF]


def test_ph0_path():
    assert sublevel_ph0(VertexFunction(path(3), [0, 2, 1])) == PersistenceDiagram(
        0, [(0, INF), (1, 2)])


def test_ph0_constant():
    for g in (path(4), cycle(5), star([2, 2, 2])):
        z = VertexFunction(g, [7] * g.vertex_count)
        assert sublevel_ph0(z) == PersistenceDiagram(0, [(7, INF)])


def test_ph0_y_tree(z_a):
    assert sublevel_ph0(z_a) == P_Y
    assert ph0_oracle(z_a) == P_Y


def test_ph0_four_cycle():
    z = VertexFunction(cycle(4), [0, 3, 1, 2])
    # the vertex with value 2 joins the two minima
    assert sublevel_ph0(z) == PersistenceDiagram(0, [(0, INF), (1, 2)])


def test_ph1():
    assert ph1_cycle(VertexFunction(cycle(4), [0, 3, 1, 2])) == PersistenceDiagram(1, [(3, INF)])
    assert len(ph1_cycle(VertexFunction(path(5), [4, 1, 0, 2, 3]))) == 0
    assert ph1_cycle(VertexFunction(cycle(3), [0, 0, 0])) == PersistenceDiagram(1, [(0, INF)])


def test_diagram_is_typical():
    assert diagram_is_typical(P_Y)
    assert not diagram_is_typical(PersistenceDiagram(0, [(0, INF), (1, 4), (1, 5)]))
    assert diagram_is_typical(PersistenceDiagram(0, [(0, INF)]))


def test_in_fiber(z_a):
    assert in_fiber(z_a, P_Y)
    # a leaf value above the death creates no new pair
    z = y7((0, 4, 1, 2, 5, Fraction(5, 2), Fraction(7, 2)))
    assert ph0_oracle(z) == P_Y
    assert in_fiber(z, P_Y)
    assert not in_fiber(VertexFunction(path(3), [0, 2, 1]), PersistenceDiagram(0, [(0, INF)]))


def test_in_fiber_with_ph1():
    z = VertexFunction(cycle(4), [0, 3, 1, 2])
    P = PersistenceDiagram(0, [(0, INF), (1, 2)])
    assert in_fiber(z, P, PersistenceDiagram(1, [(3, INF)]))
    assert not in_fiber(z, P, PersistenceDiagram(1, [(4, INF)]))


def test_disconnected_rejected():
    from fiberscope.graphs import GraphError, _make
    g = _make(4, [(0, 1), (2, 3)], "path", (4,))
    with pytest.raises(GraphError):
        sublevel_ph0(VertexFunction(g, [0, 1, 2, 3]))


def graphs_and_values():
    shapes = st.sampled_from([("cycle", n) for n in range(3, 9)] + [("path", n) for n in range(3, 9)]
                             + [("star", (2, 2, 2)), ("star", (2, 3, 2)), ("star", (2, 2, 2, 2))])

    def build(sh):
        g = cycle(sh[1]) if sh[0] == "cycle" else path(sh[1]) if sh[0] == "path" else star(sh[1])
        return st.lists(st.integers(0, 6), min_size=g.vertex_count,
                        max_size=g.vertex_count).map(lambda v: VertexFunction(g, v))
    return shapes.flatmap(build)


@settings(max_examples=400, deadline=None)
@given(graphs_and_values())
def test_elder_rule_matches_oracle_with_ties(z):
    assert sublevel_ph0(z) == ph0_oracle(z)


@settings(max_examples=200, deadline=None)
@given(graphs_and_values())
def test_point_count_is_number_of_sinks(z):
    cls, out = contracted_out_degrees(z)
    sinks = sum(1 for c, d in out.items() if d == 0)
    assert len(sublevel_ph0(z)) == sinks


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 10).flatmap(
    lambda n: st.lists(st.integers(-40, 40), min_size=n, max_size=n, unique=True)),
    st.integers(0, 20))
def test_rotation_invariance(vals, k):
    k %= len(vals)
    a = sublevel_ph0(VertexFunction(cycle(len(vals)), vals))
    b = sublevel_ph0(VertexFunction(cycle(len(vals)), vals[k:] + vals[:k]))
    assert a == b


def test_critical_coordinates_appear_in_diagram():
    # typical points: sinks are births; out-degree >= 2 vertices are deaths,
    # except the maximum of a cycle, which is the one-dimensional birth
    for g in (cycle(5), cycle(6), star([2, 2, 2]), path(6)):
        for perm in itertools.islice(itertools.permutations(range(g.vertex_count)), 0, None, 7):
            z = VertexFunction(g, perm)
            P = sublevel_ph0(z)
            births = {b for b, _ in P.points}
            deaths = {d for _, d in P.finite()}
            ph1 = {b for b, _ in ph1_cycle(z).points}
            cls, out = contracted_out_degrees(z)
            for v in critical_coordinates(z):
                if out[cls[v]] == 0:
                    assert z[v] in births
                else:
                    assert z[v] in deaths or z[v] in ph1
            assert set(P.coordinates()) <= {z[v] for v in critical_coordinates(z)}

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fiberscope.graphs import (Y7_LABELS, GraphError, NotTypical, VertexFunction, build_graph,
                               critical_coordinates, critical_value_sequence, cycle, digraph_of,
                               is_typical, local_extrema, path, star)

from conftest import y7


def labels(vs):
    return sorted(Y7_LABELS[v] for v in vs)


def test_cycle_edges():
    g = build_graph("cycle", 5)
    assert g.vertex_count == 5
    assert g.edges == {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}


def test_star_is_y_tree():
    g = build_graph("star", [2, 2, 2])
    assert g.vertex_count == 7
    assert g.degree(0) == 3
    assert g.branches == ((1, 2), (3, 4), (5, 6))
    # relabelled, the edges are those of the 1-based Y tree
    rel = {tuple(sorted((Y7_LABELS[a], Y7_LABELS[b]))) for a, b in g.edges}
    assert rel == {(1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (6, 7)}


@pytest.mark.parametrize("shape,params", [
    ("path", 2), ("cycle", 2), ("star", [2, 2]), ("star", [2, 1, 2]), ("blob", 3)])
def test_build_graph_rejects(shape, params):
    with pytest.raises(GraphError):
        build_graph(shape, params)


def test_build_graph_tuple_form():
    assert build_graph(("path", [4])).edges == {(0, 1), (1, 2), (2, 3)}


def test_values_are_exact():
    z = VertexFunction(path(3), ["1/3", 0.1, 2])
    assert z.values == (Fraction(1, 3), Fraction(1, 10), Fraction(2))
    with pytest.raises(GraphError):
        VertexFunction(path(3), [1, 2])


def test_digraph_strict():
    d = digraph_of(VertexFunction(cycle(3), [1, 2, 3]))
    assert d.arcs == {(1, 0), (2, 1), (2, 0)}


def test_digraph_two_sided():
    d = digraph_of(VertexFunction(path(3), [5, 5, 1]))
    assert d.arcs == {(0, 1), (1, 0), (1, 2)}
    assert d.two_sided_edges() == [(0, 1)]


def test_digraph_y_tree(z_a):
    d = digraph_of(z_a)
    arcs = {(Y7_LABELS[a], Y7_LABELS[b]) for a, b in d.arcs}
    # 4 at vertex 2 points to both neighbours; X values point towards the centre
    assert arcs == {(2, 1), (2, 3), (4, 3), (5, 4), (6, 3), (7, 6)}


def test_is_typical(z_a):
    assert is_typical(VertexFunction(path(3), [0, 4, 1]))
    assert not is_typical(VertexFunction(path(3), [0, 4, 4]))
    assert is_typical(z_a)


def test_local_extrema():
    assert local_extrema(VertexFunction(cycle(4), [0, 3, 1, 2])) == ([1, 3], [0, 2])
    assert local_extrema(VertexFunction(path(3), [0, 2, 1])) == ([1], [0, 2])


def test_local_extrema_y_tree(z_a):
    maxima, minima = local_extrema(z_a)
    assert labels(maxima) == [2, 5, 7]
    assert labels(minima) == [1, 3]


def test_local_extrema_rejects_ties():
    with pytest.raises(NotTypical):
        local_extrema(VertexFunction(path(3), [0, 4, 4]))


def test_critical_value_sequence():
    seq = critical_value_sequence(VertexFunction(cycle(5), [0, 3, 1, 2, 4]))
    assert seq.values == (0, 3, 1, 4)
    assert seq.vertices == (0, 1, 2, 4)
    assert critical_value_sequence(VertexFunction(cycle(4), [0, 3, 1, 2])).values == (0, 3, 1, 2)
    assert critical_value_sequence(VertexFunction(path(3), [0, 2, 1])).entries == (
        (0, 0), (1, 2), (2, 1))


def test_critical_coordinates():
    assert critical_coordinates(VertexFunction(cycle(4), [0, 3, 1, 2])) == [0, 1, 2, 3]
    assert critical_coordinates(VertexFunction(path(3), [5, 5, 1])) == [2]


def test_critical_coordinates_y_tree(z_a):
    assert labels(critical_coordinates(z_a)) == [1, 2, 3]


def test_traversal_order_star():
    g = star([2, 3, 2])
    assert g.traversal_order() == [0, 1, 2, 3, 4, 5, 6, 7]
    assert g.depth(5) == 3 and g.branch_of(5) == 1


distinct_values = st.integers(3, 12).flatmap(
    lambda n: st.lists(st.integers(-50, 50), min_size=n, max_size=n, unique=True))


@settings(max_examples=200, deadline=None)
@given(distinct_values)
def test_cycle_extrema_alternate(vals):
    z = VertexFunction(cycle(len(vals)), vals)
    maxima, minima = local_extrema(z)
    assert len(maxima) == len(minima)
    kinds = [v in maxima for v in critical_value_sequence(z).vertices]
    assert all(a != b for a, b in zip(kinds, kinds[1:] + kinds[:1]))


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 9).flatmap(
    lambda n: st.lists(st.integers(0, 3), min_size=n, max_size=n)))
def test_two_sided_edges_are_ties(vals):
    z = VertexFunction(cycle(len(vals)), vals)
    d = digraph_of(z)
    assert {tuple(e) for e in d.two_sided_edges()} == {e for e in z.graph.edges
                                                        if z[e[0]] == z[e[1]]}
    outdeg0 = {v for v in range(len(vals)) if all(z[w] >= z[v] for w in z.graph.neighbors(v))
               and all(z[w] > z[v] for w in z.graph.neighbors(v))}
    assert outdeg0 <= set(critical_coordinates(z))


def test_y7_helper_roundtrip(z_a):
    assert y7((0, 4, 1, 2, 3, Fraction(5, 2), Fraction(7, 2))) == z_a

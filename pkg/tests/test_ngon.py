from fractions import Fraction as F

import pytest

from fiberscope.ngon import (DiagramError, brute_force_classes, canonical_rotation,
                             component_classes, component_graph, extremal_values,
                             graph_betti, interval_midpoint_check, parse_diagram)

CASES = [
    ([(0, "inf")], 4, 1),
    ([(0, "inf"), (1, 4)], 5, 2),
    ([(0, "inf"), (1, 5), (2, 4)], 6, 8),
    ([(0, "inf"), (1, 4), (2, 5)], 6, 4),
]


@pytest.mark.parametrize("points,top,count", CASES)
def test_class_counts_match_brute_force(points, top, count):
    P = parse_diagram(points)
    classes = component_classes(P, top)
    assert len(classes) == count
    assert classes == brute_force_classes(P, top)


def test_four_minima_count():
    nested = parse_diagram([(0, "inf"), (1, 7), (2, 6), (3, 5)])
    staggered = parse_diagram([(0, "inf"), (1, 5), (2, 6), (3, 7)])
    assert len(component_classes(nested, 8)) == 48
    assert len(component_classes(staggered, 8)) == 8


@pytest.mark.parametrize("points,top,count", CASES)
def test_each_component_is_a_circle(points, top, count):
    for seq in component_classes(parse_diagram(points), top):
        nodes, edges = component_graph(seq)
        assert graph_betti(len(nodes), edges) == (1, 1)


def test_interval_midpoints_in_fiber():
    P = parse_diagram([(0, "inf"), (1, 4)])
    for seq in component_classes(P, 5):
        for i in range(len(seq) + 1):
            assert interval_midpoint_check(seq, i).multiset() == P.multiset()


def test_extremal_values():
    P = parse_diagram([(0, "inf"), (1, 4)])
    assert extremal_values(P, 5) == ([0, 1], [4, 5])
    assert extremal_values(P, F(9, 2))[1] == [4, F(9, 2)]


def test_preconditions():
    with pytest.raises(DiagramError):
        extremal_values(parse_diagram([(0, "inf"), (1, 4)]), 4)
    with pytest.raises(DiagramError):
        extremal_values(parse_diagram([(0, "inf"), (0, 4)]), 5)
    with pytest.raises(DiagramError):
        extremal_values(parse_diagram([(0, "inf"), (1, "inf")]), 5)


def test_canonical_rotation():
    assert canonical_rotation([3, 1, 2]) == (1, 2, 3)

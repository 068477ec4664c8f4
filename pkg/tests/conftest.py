from fractions import Fraction

import pytest

from fiberscope.graphs import Y7_LABELS, VertexFunction, star


def y7(values):
    """Vertex function on the Y tree from values listed by the 1-based labels."""
    vals = [None] * 7
    for k in range(7):
        vals[k] = values[Y7_LABELS[k] - 1]
    return VertexFunction(star([2, 2, 2]), vals)


Z_A = (0, 4, 1, 2, 3, Fraction(5, 2), Fraction(7, 2))


@pytest.fixture
def z_a():
    return y7(Z_A)

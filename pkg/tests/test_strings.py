import itertools

import pytest

from fiberscope import strings as S
from fiberscope.acceptance import parameter_pairs
from fiberscope.homology import poset_betti

# sizes of Str(N, M); the brute-force filter below reproduces them for N <= 8
SIZES = {(3, 1): 12, (4, 1): 40, (5, 1): 100, (5, 2): 20, (6, 1): 210, (6, 2): 108,
         (7, 1): 392, (7, 2): 420, (7, 3): 28, (8, 1): 672, (8, 2): 1320, (8, 3): 208,
         (9, 1): 1080, (9, 2): 3564, (9, 3): 1092, (9, 4): 36}


def literal_filter(N, M):
    """Cellular strings by direct reading of the block conditions over all 3^N words."""
    out = []
    for t in itertools.product("01X", repeat=N):
        blocks = [[k, len(list(g))] for k, g in itertools.groupby(t)]
        if len(blocks) > 1 and blocks[0][0] == blocks[-1][0]:
            blocks[0][1] += blocks.pop()[1]
        J = len(blocks)
        if J == 1:
            continue
        syms = [b[0] for b in blocks]
        if syms.count("0") != M:
            continue
        if any(c == "X" and syms[j - 1] == syms[(j + 1) % J] for j, c in enumerate(syms)):
            continue
        out.append("".join(t))
    return sorted(out)


@pytest.mark.parametrize("N,M", parameter_pairs(8))
def test_enumeration_matches_literal_filter(N, M):
    P = S.enumerate_strings(N, M)
    assert list(P.elements) == literal_filter(N, M)
    assert len(P) == SIZES[(N, M)]


def test_size_table_n9():
    for M in range(1, 5):
        assert len(S.enumerate_strings(9, M)) == SIZES[(9, M)]


def test_example_chain():
    P = S.enumerate_strings(3, 1)
    assert {"X01", "001", "0X1", "011", "01X"} <= set(P)
    assert P.lt("001", "X01") and P.lt("001", "0X1")
    assert P.lt("011", "0X1") and P.lt("011", "01X")


def test_maximal_dimension_two():
    P = S.enumerate_strings(4, 1)
    top = {s for s in P if s.dimension == 2}
    assert top and top == set(P.maximal())
    assert max(s.dimension for s in P) == 2


def test_enumerate_rejects():
    for N, M in ((4, 2), (3, 0), (15, 1)):
        with pytest.raises(ValueError):
            S.enumerate_strings(N, M)


def test_leq():
    assert S.leq("001", "X01")
    assert not S.leq("X01", "001")
    assert S.leq("0X1", "0X1")
    assert not S.leq("001", "XX1")  # XX1 is not a cellular string


def test_glb():
    assert S.glb(["X01", "0X1"]) == "001"
    assert S.glb(["0X1"]) == "0X1"
    P = S.enumerate_strings(3, 1)
    above = [t for t in P.maximal() if P.leq("011", t)]
    assert S.glb(above) == "011"
    with pytest.raises(S.InvalidString):
        S.glb(["001", "011"])


def test_cell_shape_and_blocks():
    assert S.cell_shape("0X1X") == [1, 1]
    assert S.cell_shape("0101") == []
    assert S.cell_shape("0XX1") == [2]
    runs, wraps = S.blocks("0X10")
    assert runs == [("0", 1), ("X", 1), ("1", 1), ("0", 1)] and wraps
    assert sum(S.cell_shape("X0X1X")) == 3


def test_str0_examples():
    for s in ("0X1X", "X0101", "XXX01"):
        assert S.is_valid(s) and S.in_str0(s)


@pytest.mark.parametrize("N,M", parameter_pairs(8))
def test_closure_intersections(N, M):
    P = S.enumerate_strings(N, M)
    cl = set(S.subposet(P, "closure00"))
    assert cl & set(S.subposet(P, "Str0")) == set(S.subposet(P, "Str0X"))
    assert cl & set(S.subposet(P, "Str1")) == set(S.subposet(P, "StrX0"))


@pytest.mark.parametrize("N,M", parameter_pairs(9))
def test_last_level_is_one_point(N, M):
    P = S.enumerate_strings(N, M)
    k = N - 2 * M
    point = "0" + "X" * (k - 1) + "10" * M
    assert list(S.subposet(P, f"level({k})")) == [point]
    assert len(S.subposet(P, f"level({k + 1})")) == 0


def test_retraction_examples():
    assert S.retraction_R("01010") == "01010"
    assert S.retraction_R("0101X") == "01010"
    assert S.retraction_R("X1010") == "01010"
    with pytest.raises(S.InvalidString):
        S.retraction_R("X010X")


@pytest.mark.parametrize("N,M", parameter_pairs(8))
def test_retraction_properties(N, M):
    P = S.enumerate_strings(N, M)
    for name, target in (("closure00", "Str00"), ("closure11", "Str11")):
        tgt = set(S.subposet(P, target))
        for s in S.subposet(P, name):
            r = S.retraction_R(s)
            assert r in tgt and P.leq(r, s) and S.retraction_R(r) == r


def test_f1_examples():
    assert S.move_F1("0XX1010") == "0XX1010"
    assert S.move_F1("01X010") == "0X1010"  # the X moves left past the 1
    assert S.move_F1("011010") == "001010"  # abb -> aab
    with pytest.raises(S.InvalidString):
        S.move_F1("10100")


def test_f1_iteration_reaches_level_two():
    P = S.enumerate_strings(7, 2)
    D = S.subposet(P, "Str00")
    ends = {S.iterate_to_fixed_point(S.move_F1, s)[0] for s in D}
    assert ends == set(S.subposet(P, "level(2)"))


@pytest.mark.parametrize("N,M", [(7, 1), (7, 2), (8, 2), (8, 1)])
def test_fell_images(N, M):
    P = S.enumerate_strings(N, M)
    for ell in range(1, N - 2 * M):
        lvl = set(S.subposet(P, f"level({ell})"))
        img = {S.iterate_to_fixed_point(lambda s: S.move_Fell(s, ell), s)[0] for s in lvl}
        assert img == set(S.subposet(P, f"level({ell + 1})"))
        for s in lvl:
            assert S.move_Fell(s, ell)[:ell] == s[:ell]


def test_fell_reduces_to_f1():
    for s in S.subposet(S.enumerate_strings(7, 2), "Str00"):
        assert S.move_Fell(s, 1) == S.move_F1(s)


@pytest.mark.parametrize("N,M", parameter_pairs(8))
def test_comparison_string_h(N, M):
    P = S.enumerate_strings(N, M)
    for dom in ("Str00", "Str0X"):
        for s in S.subposet(P, dom):
            t = S.move_F1(s)
            h = S.homotopy_h(s)
            assert (P.leq(h, s) and P.leq(h, t)) or (P.leq(s, h) and P.leq(t, h))


def test_classify_examples():
    assert S.classify_f("0X1X") == "0X"
    assert S.classify_f("00101") == "0"
    assert S.classify_f("01010") == "00"
    assert S.classify_f("0101X") == "0X"
    assert S.classify_f("1011X") == "1X"
    assert S.classify_f("XX101") == "X1"
    assert S.classify_f("X1X0X") == "1"


def test_octagon():
    Q = S.octagon()
    assert len(Q) == 8 and len(Q.covers()) == 8
    assert set(Q.minimal()) == set(S.Q_MINIMAL) and set(Q.maximal()) == set(S.Q_MAXIMAL)
    assert Q.height() == 1


def test_comma_fiber_examples():
    P = S.enumerate_strings(6, 2)
    assert set(S.comma_fiber("0X", P)) == set(S.subposet(P, "Str0X"))
    want = {s for s in P if S.classify_f(s) in ("00", "0X", "X0")}
    assert set(S.comma_fiber("00", P)) == want == set(S.subposet(P, "closure00"))
    assert set(S.comma_fiber("0", P)) == set(S.subposet(P, "Str0"))


def test_f_is_not_monotone_witness():
    # two strings in order whose images are incomparable maximal elements of the octagon
    Q = S.octagon()
    a, b = "00010", "X001X"
    P = S.enumerate_strings(5, 1)
    assert P.lt(a, b)
    fa, fb = S.classify_f(a), S.classify_f(b)
    assert (fa, fb) == ("00", "0")
    assert not Q.leq(fa, fb) and not Q.leq(fb, fa)


@pytest.mark.parametrize("N,M", parameter_pairs(8))
def test_structure(N, M):
    P = S.enumerate_strings(N, M)
    assert P.height() == N - 2 * M
    for i, j in P.cover_pairs:
        a, b = P.elements[i], P.elements[j]
        assert sum(x != y for x, y in zip(a, b)) == 1


@pytest.mark.parametrize("N,M", [(5, 1), (6, 2), (7, 2), (8, 3)])
def test_reversal_isomorphism(N, M):
    P = S.enumerate_strings(N, M)
    A, B = S.subposet(P, "Str0X"), S.subposet(P, "StrX0")
    assert {S.reverse(s) for s in A} == set(B)
    for x in A:
        for y in A:
            assert A.leq(x, y) == B.leq(S.reverse(x), S.reverse(y))
    assert poset_betti(A) == poset_betti(B) == (1,)


def test_rotation_and_swap():
    assert S.rotate("0X10", 1) == "X100"
    assert S.swap_bits("0X10") == "1X01"
    assert isinstance(S.CellularString("0X1X"), str)
    assert S.CellularString("0X1X").rank == 1
    with pytest.raises(S.InvalidString):
        S.CellularString("0X0X")

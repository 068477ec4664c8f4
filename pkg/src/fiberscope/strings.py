"""Circular cellular strings and the poset Str(N, M).

A cellular string is a word over ``0``, ``1`` and ``X`` read circularly.
Its blocks are maximal runs of one symbol, with the last block merged into
the first when they carry the same symbol.  A string of rank ``M`` has
exactly ``M`` blocks of ``0`` and every ``X``-block sits between two
different bits.

Strings are ordered by ``s' <= s`` when ``s`` comes from ``s'`` by turning
some bits into ``X``.  The moves ``F_1``/``F_l``, the retraction ``R`` and
the map ``f`` to the octagon poset are all plain functions on words.
"""
from functools import cached_property

from .poset import FinitePoset

ZERO, ONE, X = "0", "1", "X"
ALPHABET = (ZERO, ONE, X)
MAX_N = 14


class InvalidString(ValueError):
    """Raised when a word is not a valid cellular string for the operation."""


class CellularString(str):
    """A validated circular cellular string.

    Behaves as an ordinary ``str`` of symbols; the extra properties expose
    rank, dimension and the block structure.
    """

    def __new__(cls, symbols):
        s = str.__new__(cls, symbols)
        if not is_valid(s):
            raise InvalidString(f"not a circular cellular string: {symbols!r}")
        return s

    @property
    def symbols(self):
        return str(self)

    @property
    def circular(self):
        return True

    @property
    def rank(self):
        return rank(self)

    @property
    def dimension(self):
        return self.count(X)

    def blocks(self):
        return blocks(self)


def _runs(s):
    out = []
    for c in s:
        if out and out[-1][0] == c:
            out[-1][1] += 1
        else:
            out.append([c, 1])
    return out


def blocks(s):
    """Linear block decomposition of ``s`` and a wrap flag.

    Returns ``(runs, wraps)`` where ``runs`` is a list of ``(symbol, length)``
    read left to right without merging, and ``wraps`` says whether the
    first and last runs carry the same symbol (so they form one circular block).
    """
    runs = [(c, n) for c, n in _runs(s)]
    wraps = len(runs) > 1 and runs[0][0] == runs[-1][0]
    return runs, wraps


def circular_blocks(s):
    """Block symbols and lengths after merging the wrap-around block."""
    runs = _runs(s)
    if len(runs) > 1 and runs[0][0] == runs[-1][0]:
        runs[0][1] += runs[-1][1]
        runs.pop()
    return [(c, n) for c, n in runs]


def rank(s):
    """Number of circular ``0``-blocks."""
    return sum(1 for c, _ in circular_blocks(s) if c == ZERO)


def dimension(s):
    return s.count(X)


def is_valid(s, M=None):
    """Whether ``s`` is a circular cellular string (of rank ``M`` if given)."""
    N = len(s)
    if N == 0 or any(c not in ALPHABET for c in s):
        return False
    bl = circular_blocks(s)
    if len(bl) == 1:
        return False
    syms = [c for c, _ in bl]
    J = len(syms)
    m = syms.count(ZERO)
    if m == 0 or 2 * m >= N:
        return False
    if M is not None and m != M:
        return False
    for j, c in enumerate(syms):
        if c == X and syms[j - 1] == syms[(j + 1) % J]:
            return False
    return True


def initial_bit(s):
    """First non-``X`` symbol of ``s``."""
    for c in s:
        if c != X:
            return c
    return None


def leq(a, b):
    """``a <= b``: ``b`` is ``a`` with some bits replaced by ``X``."""
    if len(a) != len(b):
        return False
    return all(x == y or y == X for x, y in zip(a, b)) and is_valid(b)


def _check_NM(N, M):
    if not (isinstance(N, int) and isinstance(M, int)):
        raise TypeError("N and M must be integers")
    if M < 1 or 2 * M >= N:
        raise ValueError(f"need 1 <= M and 2M < N, got N={N}, M={M}")
    if N > MAX_N:
        raise ValueError(f"N={N} exceeds the enumeration bound {MAX_N}")


def _generate(N, M):
    # depth-first over symbols; prune on linear X-blocks between equal bits
    # and on the number of bit changes, then apply the full circular check
    out = []
    buf = []

    def rec(pos, last_bit, x_after, changes):
        if changes > 2 * M:
            return
        if pos == N:
            s = "".join(buf)
            if is_valid(s, M):
                out.append(s)
            return
        for c in ALPHABET:
            if c == X:
                buf.append(c)
                rec(pos + 1, last_bit, last_bit is not None, changes)
                buf.pop()
            else:
                if x_after and c == last_bit:
                    continue
                ch = changes + (last_bit is not None and c != last_bit)
                buf.append(c)
                rec(pos + 1, c, False, ch)
                buf.pop()

    rec(0, None, False, 0)
    out.sort()
    return out


class StringPoset(FinitePoset):
    """The poset of circular cellular strings of length ``N`` and rank ``M``.

    Elements are :class:`CellularString` objects in lexicographic order.
    Sub-posets built with :func:`subposet` keep ``N`` and ``M``.
    """

    def __init__(self, N, M, elements=None, below=None):
        self.N, self.M = N, M
        if elements is None:
            elements = [CellularString(s) for s in _generate(N, M)]
        if below is None:
            below = _string_down_sets(elements)
        super().__init__(elements, below)

    def _derive(self, elements, below):
        return StringPoset(self.N, self.M, elements, below)

    @cached_property
    def cover_pairs(self):
        # graded by dimension: covers differ in exactly one position
        out = []
        for j, s in enumerate(self.elements):
            for i in self.below[j]:
                if self.elements[i].count(X) + 1 == s.count(X):
                    out.append((i, j))
        out.sort()
        return out

    def __repr__(self):
        return f"StringPoset(N={self.N}, M={self.M}, {len(self)} elements)"


def _string_down_sets(elements):
    index = {s: i for i, s in enumerate(elements)}
    below = {}
    for s in sorted(elements, key=lambda t: t.count(X)):
        acc = set()
        for p, c in enumerate(s):
            if c != X:
                continue
            for b in (ZERO, ONE):
                t = s[:p] + b + s[p + 1:]
                k = index.get(t)
                if k is not None:
                    acc.add(k)
                    acc |= below[t]
        below[s] = frozenset(acc)
    return [below[s] for s in elements]


def enumerate_strings(N, M):
    """All circular cellular strings of length ``N`` and rank ``M``, as a poset."""
    _check_NM(N, M)
    return StringPoset(N, M)


def _as_string(s):
    return s if isinstance(s, CellularString) else CellularString(s)


def meet(strings):
    """Greatest lower bound of a non-empty set of strings.

    Raises :class:`InvalidString` if there is no common lower bound.
    """
    strings = list(strings)
    if not strings:
        raise ValueError("meet of an empty set")
    N = len(strings[0])
    out = []
    for p in range(N):
        bits = {s[p] for s in strings} - {X}
        if len(bits) > 1:
            raise InvalidString(f"bit conflict at position {p}")
        out.append(bits.pop() if bits else X)
    w = "".join(out)
    if not is_valid(w):
        raise InvalidString(f"no common lower bound ({w} is not a cellular string)")
    return CellularString(w)


glb = meet


def join(a, b):
    """Least upper bound of two strings, or ``None`` when it does not exist."""
    w = "".join(x if x == y else X for x, y in zip(a, b))
    return CellularString(w) if is_valid(w) else None


def cell_shape(s):
    """Lengths of the linear ``X``-blocks of ``s``, left to right."""
    runs, _ = blocks(s)
    return [n for c, n in runs if c == X]


def rotate(s, k=1):
    """Cyclic rotation moving the symbol at position ``k`` to the front."""
    k %= len(s)
    return type(s)(s[k:] + s[:k]) if isinstance(s, CellularString) else s[k:] + s[:k]


def reverse(s):
    """Front-to-back reversal."""
    return type(s)(s[::-1]) if isinstance(s, CellularString) else s[::-1]


def swap_bits(s):
    """Exchange ``0`` and ``1``; the result has the complementary rank."""
    return s.translate(str.maketrans("01", "10"))


# sub-poset selectors ------------------------------------------------------

def _ends(s):
    return s[0], s[-1]


def in_str0(s):
    return initial_bit(s) == ZERO and not (s[0] == ZERO and s[-1] == ZERO)


def in_str1(s):
    return initial_bit(s) == ONE and not (s[0] == ONE and s[-1] == ONE)


def in_closure00(s):
    return _ends(s) in {(ZERO, ZERO), (ZERO, X), (X, ZERO)}


def in_closure11(s):
    return _ends(s) in {(ONE, ONE), (ONE, X), (X, ONE)}


def in_level(s, ell):
    """Member of ``Str_00`` starting with ``0`` followed by ``ell-1`` copies of ``X``."""
    return s[0] == ZERO and s[-1] == ZERO and ell >= 1 and s[1:ell] == X * (ell - 1)


def _pair(a, b):
    return lambda s: s[0] == a and s[-1] == b


SELECTORS = {
    "Str0": in_str0,
    "Str1": in_str1,
    "Str00": _pair(ZERO, ZERO),
    "Str11": _pair(ONE, ONE),
    "Str0X": _pair(ZERO, X),
    "StrX0": _pair(X, ZERO),
    "Str1X": _pair(ONE, X),
    "StrX1": _pair(X, ONE),
    "closure00": in_closure00,
    "closure11": in_closure11,
}


def selector(name):
    """Membership predicate for a named sub-poset.

    Besides the keys of ``SELECTORS`` this accepts ``level(l)`` / ``level:l``.
    """
    if name in SELECTORS:
        return SELECTORS[name]
    for pre in ("level(", "level:", "level="):
        if name.startswith(pre):
            ell = int(name[len(pre):].rstrip(")"))
            return lambda s: in_level(s, ell)
    raise KeyError(f"unknown selector {name!r}")


def subposet(poset, name):
    """Induced sub-poset of ``poset`` on the strings selected by ``name``."""
    return poset.subposet(selector(name))


# retraction and moves -------------------------------------------------------

def retraction_R(s):
    """Retraction of ``closure00`` (or ``closure11``) onto ``Str_00`` (``Str_11``).

    A terminal or initial ``X`` becomes the bit at the other end; strings
    with equal bits at both ends are fixed.
    """
    s = _as_string(s)
    a, b = s[0], s[-1]
    if a != X and b != X:
        if a != b:
            raise InvalidString(f"{s} is not in a closure sub-poset")
        return s
    if a == X and b == X:
        raise InvalidString(f"{s} is not in a closure sub-poset")
    bit = a if a != X else b
    return CellularString(bit + s[1:-1] + bit)


def _move(s, st):
    # one step of F at offset st (st = 1 for F_1); terminal symbol is frozen
    N = len(s)
    if st >= N or s[st] == X:
        return s
    p = next((i for i in range(st, N - 1) if s[i] == X), None)
    lim = p if p is not None else N
    q = next((i for i in range(st - 1, lim - 1) if s[i] == s[i + 1] and s[i] != X), None)
    if q is None:
        if p is None:
            return s
        # case (i): swap the X with the bit just before it
        return s[:p - 1] + X + s[p - 1] + s[p + 1:]
    if q >= st:
        # case (ii): ...a b b... becomes ...a a b...
        return s[:q] + s[q - 1] + s[q + 1:]
    # a run of 0 directly after the frozen prefix: its last 0 becomes X
    r = q
    while r + 1 < lim and s[r + 1] == s[q]:
        r += 1
    return s[:r] + X + s[r + 1:]


def _in_move_domain(s):
    return is_valid(s) and s[0] == ZERO and s[-1] in (ZERO, X)


def move_F1(s):
    """The move ``F_1`` on ``Str_00`` and ``Str_0X``."""
    if not _in_move_domain(s):
        raise InvalidString(f"F1 is defined on Str_00 and Str_0X, got {s!r}")
    return CellularString(_move(str(s), 1))


def move_Fell(s, ell):
    """The move ``F_l``: keep the prefix ``0X^(l-1)`` and apply ``F_1`` to the rest."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if not _in_move_domain(s) or s[1:ell] != X * (ell - 1):
        raise InvalidString(f"{s!r} does not start with 0 followed by {ell - 1} X")
    return CellularString(_move(str(s), ell))


def iterate_to_fixed_point(f, s, limit=10_000):
    """Apply ``f`` until it fixes the value; returns ``(value, steps)``."""
    for k in range(limit):
        t = f(s)
        if t == s:
            return s, k
        s = t
    raise RuntimeError("no fixed point reached")


def homotopy_h(s):
    """Comparison string between ``s`` and ``F_1(s)``.

    Returns the meet of the two when it exists and otherwise their join.
    Either way ``s`` and ``F_1(s)`` are both comparable to the result in the
    same direction.
    """
    t = move_F1(s)
    try:
        return meet([s, t])
    except InvalidString:
        pass
    j = join(s, t)
    if j is None:
        raise InvalidString(f"{s} and F1({s}) have neither meet nor join")
    return j


# the octagon ------------------------------------------------------------------

Q_MINIMAL = ("0X", "X1", "X0", "1X")
Q_MAXIMAL = ("0", "1", "00", "11")
Q_COVERS = (
    ("0X", "0"), ("0X", "00"),
    ("X1", "0"), ("X1", "11"),
    ("X0", "00"), ("X0", "1"),
    ("1X", "1"), ("1X", "11"),
)


def octagon():
    """The eight-element poset whose order complex is an octagon."""
    return FinitePoset.from_covers(Q_MINIMAL + Q_MAXIMAL, Q_COVERS)


def classify_f(s):
    """The map ``f`` from strings to the octagon poset."""
    a, b = s[0], s[-1]
    if a == b and a != X:
        return a + b
    if a == X and b == X:
        bit = initial_bit(s)
        if bit is None:
            raise InvalidString(f"{s!r} has no bits")
        return bit
    if a == X or b == X:
        return a + b
    # a and b are different bits
    return a


def comma_fiber(q, poset):
    """Sub-poset ``{s : f(s) <= q}``."""
    Q = octagon()
    if q not in Q:
        raise KeyError(f"{q!r} is not an element of the octagon")
    return poset.subposet(lambda s: Q.leq(classify_f(s), q))

"""Explicit finite posets.

A :class:`FinitePoset` stores its elements in a fixed order together with
the strict down-set of every element.  Everything else (covers, minimal
and maximal elements, sub-posets, chains) is derived from that.
"""
from functools import cached_property


class FinitePoset:
    """Finite partially ordered set with an explicit strict order.

    ``below[i]`` is the frozenset of indices strictly below element ``i``.
    Use :meth:`from_covers` or :meth:`from_relation` rather than building
    the down-sets by hand.
    """

    def __init__(self, elements, below):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("poset elements must be distinct")
        self.below = tuple(frozenset(b) for b in below)
        if len(self.below) != len(self.elements):
            raise ValueError("one down-set per element is required")
        for i, b in enumerate(self.below):
            if i in b:
                raise ValueError("order relation must be irreflexive")

    @classmethod
    def from_covers(cls, elements, covers):
        """Build from cover pairs ``(lower, upper)`` given as elements."""
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        down = [[] for _ in elements]
        for lo, hi in covers:
            down[index[hi]].append(index[lo])
        below = [None] * len(elements)

        def close(i, trail):
            if below[i] is not None:
                return below[i]
            if i in trail:
                raise ValueError("cover relation has a cycle")
            trail.add(i)
            acc = set()
            for j in down[i]:
                acc.add(j)
                acc |= close(j, trail)
            trail.discard(i)
            below[i] = frozenset(acc)
            return below[i]

        for i in range(len(elements)):
            close(i, set())
        return cls(elements, below)

    @classmethod
    def from_relation(cls, elements, less_than):
        """Build from a strict order predicate ``less_than(a, b)``."""
        elements = tuple(elements)
        below = [frozenset(j for j, a in enumerate(elements) if a != b and less_than(a, b))
                 for b in elements]
        return cls(elements, below)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e):
        return e in self.index

    def __repr__(self):
        return f"{type(self).__name__}({len(self)} elements)"

    def lt(self, a, b):
        return self.index[a] in self.below[self.index[b]]

    def leq(self, a, b):
        return a == b or self.lt(a, b)

    def down_set(self, e):
        """Elements strictly below ``e``."""
        return [self.elements[j] for j in sorted(self.below[self.index[e]])]

    def up_set(self, e):
        """Elements strictly above ``e``."""
        i = self.index[e]
        return [self.elements[j] for j, b in enumerate(self.below) if i in b]

    @cached_property
    def cover_pairs(self):
        """Index pairs ``(i, j)`` with ``i`` covered by ``j``, sorted."""
        out = []
        for j, b in enumerate(self.below):
            for i in b:
                if not any(i in self.below[k] for k in b):
                    out.append((i, j))
        out.sort()
        return out

    def covers(self):
        return [(self.elements[i], self.elements[j]) for i, j in self.cover_pairs]

    def minimal(self):
        return [e for e, b in zip(self.elements, self.below) if not b]

    def maximal(self):
        has_above = set()
        for b in self.below:
            has_above |= b
        return [e for i, e in enumerate(self.elements) if i not in has_above]

    def linear_extension(self):
        """Indices in an order compatible with the poset order."""
        # a < b forces |below(a)| < |below(b)|
        return sorted(range(len(self)), key=lambda i: (len(self.below[i]), i))

    def height(self):
        """Number of strict inequalities in a longest chain."""
        h = {}
        for i in self.linear_extension():
            h[i] = 1 + max((h[j] for j in self.below[i]), default=-1)
        return max(h.values(), default=-1)

    def maximal_chain_lengths(self):
        """Set of lengths of all maximal chains (as counts of inequalities)."""
        cover_down = [[] for _ in self.elements]
        for i, j in self.cover_pairs:
            cover_down[j].append(i)
        memo = {}
        for i in self.linear_extension():
            if not cover_down[i]:
                memo[i] = {0}
            else:
                memo[i] = {1 + x for j in cover_down[i] for x in memo[j]}
        tops = [self.index[e] for e in self.maximal()]
        out = set()
        for t in tops:
            out |= memo[t]
        return out

    def subposet(self, keep):
        """Induced sub-poset on the elements selected by ``keep``.

        ``keep`` is either a predicate on elements or an iterable of them.
        Element order is inherited.
        """
        if callable(keep):
            chosen = [i for i, e in enumerate(self.elements) if keep(e)]
        else:
            wanted = set(keep)
            chosen = [i for i, e in enumerate(self.elements) if e in wanted]
        remap = {old: new for new, old in enumerate(chosen)}
        below = [[remap[j] for j in self.below[i] if j in remap] for i in chosen]
        return self._derive([self.elements[i] for i in chosen], below)

    def _derive(self, elements, below):
        return FinitePoset(elements, below)

    def is_order_preserving(self, other, f):
        """Return ``None`` if ``f`` is monotone into ``other``, else a witness pair."""
        for j, b in enumerate(self.below):
            for i in b:
                x, y = self.elements[i], self.elements[j]
                if not other.leq(f(x), f(y)):
                    return (x, y)
        return None

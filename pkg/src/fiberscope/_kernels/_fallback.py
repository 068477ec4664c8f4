"""Pure-Python versions of the compiled kernels.

Outputs match :mod:`fiberscope._kernels._core` exactly, including chain
order, so either implementation can back the homology module.
"""
import numpy as np


def chains_from_below(indptr, indices, n):
    """Enumerate all strict chains of a poset given by strictly-below lists.

    Element ids must form a linear extension and each below-list must be
    sorted ascending.  Returns one ``(count, k+1)`` int32 array per
    dimension ``k``; rows run bottom to top and are sorted colexicographically.
    """
    indptr = [int(x) for x in indptr]
    below = [[int(x) for x in indices[indptr[t]:indptr[t + 1]]] for t in range(n)]
    out = []
    for t in range(n):
        stack = [(t, iter(below[t]))]
        if not out:
            out.append([])
        out[0].append((t,))
        path = [t]
        while stack:
            x, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                path.pop()
                continue
            path.append(nxt)
            stack.append((nxt, iter(below[nxt])))
            k = len(path) - 1
            if len(out) <= k:
                out.append([])
            out[k].append(tuple(reversed(path)))
    return [np.array(rows, dtype=np.int32).reshape(len(rows), k + 1)
            for k, rows in enumerate(out)]


def boundary_ranks(chains):
    """Ranks over F2 of the boundary maps, by column reduction with clearing.

    ``chains[k]`` is the colex-sorted array of k-simplices.  Returns a list
    with ``ranks[k] = rank(d_k)`` and ``ranks[0] = 0``.
    """
    K = len(chains) - 1
    ranks = [0] * (K + 1)
    cleared = set()
    for k in range(K, 0, -1):
        lower = {tuple(row): i for i, row in enumerate(np.asarray(chains[k - 1]).tolist())}
        pivots = {}
        next_cleared = set()
        rank = 0
        for c, row in enumerate(np.asarray(chains[k]).tolist()):
            if c in cleared:
                continue
            col = 0
            for j in range(k + 1):
                col ^= 1 << lower[tuple(row[:j] + row[j + 1:])]
            while col:
                low = col.bit_length() - 1
                other = pivots.get(low)
                if other is None:
                    pivots[low] = col
                    next_cleared.add(low)
                    rank += 1
                    break
                col ^= other
        ranks[k] = rank
        cleared = next_cleared
    return ranks

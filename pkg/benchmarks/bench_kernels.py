"""Compare the compiled kernels with the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [N,M ...] [--repeat R]

For each Str(N, M) the order complex is enumerated and its boundary ranks
reduced by both implementations; outputs are checked for equality.
"""
import argparse
import time

import numpy as np

from fiberscope import _kernels
from fiberscope._kernels import _fallback
from fiberscope.strings import enumerate_strings

try:
    from fiberscope._kernels import _core
except ImportError:
    _core = None


def csr_input(P):
    order = P.linear_extension()
    new_id = {old: new for new, old in enumerate(order)}
    indptr, indices = [0], []
    for old in order:
        indices.extend(sorted(new_id[j] for j in P.below[old]))
        indptr.append(len(indices))
    return np.asarray(indptr, dtype=np.int32), np.asarray(indices, dtype=np.int32), len(order)


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def run(sizes, repeat):
    print(f"backend selected at import: {_kernels.BACKEND}")
    header = f"{'N,M':>6} {'simplices':>10} {'kernel':>8} {'compiled s':>11} {'python s':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for N, M in sizes:
        args = csr_input(enumerate_strings(N, M))
        t_py, chains = best_of(lambda: _fallback.chains_from_below(*args), repeat)
        count = sum(len(c) for c in chains)
        rows = []
        if _core is not None:
            t_c, chains_c = best_of(lambda: _core.chains_from_below(*args), repeat)
            assert all(np.array_equal(a, b) for a, b in zip(chains, chains_c))
        else:
            t_c = float("nan")
        rows.append(("chains", t_c, t_py))
        t_py, r_py = best_of(lambda: _fallback.boundary_ranks(chains), repeat)
        if _core is not None:
            t_c, r_c = best_of(lambda: _core.boundary_ranks(chains), repeat)
            assert r_c == r_py
        else:
            t_c = float("nan")
        rows.append(("ranks", t_c, t_py))
        for name, tc, tp in rows:
            print(f"{N},{M:<4} {count:>10} {name:>8} {tc:>11.4f} {tp:>10.4f} {tp / tc:>7.1f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("sizes", nargs="*", default=["6,1", "7,2", "7,1", "8,2"])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    sizes = [tuple(int(x) for x in s.split(",")) for s in args.sizes]
    run(sizes, args.repeat)


if __name__ == "__main__":
    main()

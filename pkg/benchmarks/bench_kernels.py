"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both paths are imported from the same module regardless of FITSET_NUMBA, so
one run compares them side by side.  The first numba call (compilation or
cache load) is excluded from the timings.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from fitset import _kernels as K
from fitset.group import Group


def _groups():
    yield Group.from_generators("S4", 4, [(1, 0, 2, 3), (1, 2, 3, 0)])
    yield Group.from_generators("A5", 5, [(1, 2, 0, 3, 4), (1, 2, 3, 4, 0)])
    yield Group.from_generators("S5", 5, [(1, 0, 2, 3, 4), (1, 2, 3, 4, 0)])


def _cases(G: Group):
    mul, inv = G.mul_table, G.inverse
    n = G.order
    start = np.zeros(n, dtype=bool)
    start[0] = True
    gens = np.array(G.generators, dtype=np.int64)
    a_elems = np.arange(n, dtype=np.int64)
    b_mask = np.zeros(n, dtype=bool)
    b_mask[0] = True
    cands = np.arange(n, dtype=np.int64)
    x_gens = np.zeros(0, dtype=np.int64)
    return {
        "closure": (K.closure_numpy, K.closure_numba, (mul, start, gens)),
        "associativity": (K.associativity_numpy, K.associativity_numba, (mul,)),
        "section_centralizer": (K.section_centralizer_numpy, K.section_centralizer_numba,
                                (mul, inv, a_elems, b_mask)),
        "joins_with_elements": (K.joins_with_elements_numpy, K.joins_with_elements_numba,
                                (mul, start, x_gens, cands)),
    }


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"backend in use: {K.BACKEND}")
    print(f"{'group':6} {'kernel':22} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for G in _groups():
        for name, (np_fn, nb_fn, fargs) in _cases(G).items():
            t_np = min(timeit.repeat(lambda: np_fn(*fargs), number=1, repeat=args.repeat))
            if nb_fn is None:
                print(f"{G.name:6} {name:22} {t_np * 1e3:10.3f} {'n/a':>10} {'':>8}")
                continue
            a, b = np_fn(*fargs), nb_fn(*fargs)
            assert np.array_equal(np.asarray(a), np.asarray(b)), f"{name} backends disagree"
            t_nb = min(timeit.repeat(lambda: nb_fn(*fargs), number=1, repeat=args.repeat))
            print(f"{G.name:6} {name:22} {t_np * 1e3:10.3f} {t_nb * 1e3:10.3f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()

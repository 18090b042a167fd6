"""Inner loops over multiplication tables.

Each kernel has a numba version and a vectorised numpy version with
identical results.  The numba path is used when numba imports and the
environment variable ``FITSET_NUMBA`` is not ``0``.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("FITSET_NUMBA", "1").strip() not in ("0", "false", "no")
BACKEND = "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# closure under right multiplication


def closure_numpy(mul: np.ndarray, start: np.ndarray, gens: np.ndarray) -> np.ndarray:
    out = start.copy()
    frontier = np.flatnonzero(out)
    if gens.size == 0:
        return out
    while frontier.size:
        cand = np.unique(mul[np.ix_(frontier, gens)])
        new = cand[~out[cand]]
        out[new] = True
        frontier = new
    return out


def _closure_loop(mul, start, gens):
    n = mul.shape[0]
    out = start.copy()
    queue = np.empty(n, np.int64)
    m = 0
    for x in range(n):
        if out[x]:
            queue[m] = x
            m += 1
    head = 0
    while head < m:
        x = queue[head]
        head += 1
        for i in range(gens.shape[0]):
            y = mul[x, gens[i]]
            if not out[y]:
                out[y] = True
                queue[m] = y
                m += 1
    return out


# ---------------------------------------------------------------------------
# exhaustive associativity


def associativity_numpy(mul: np.ndarray) -> tuple[int, int, int]:
    n = mul.shape[0]
    for a in range(n):
        left = mul[mul[a][:, None], np.arange(n)[None, :]]  # (a*b)*c over (b, c)
        right = mul[a][mul]  # a*(b*c)
        bad = np.argwhere(left != right)
        if bad.size:
            b, c = bad[0]
            return a, int(b), int(c)
    return -1, -1, -1


def _associativity_loop(mul):
    n = mul.shape[0]
    for a in range(n):
        for b in range(n):
            ab = mul[a, b]
            for c in range(n):
                if mul[ab, c] != mul[a, mul[b, c]]:
                    return a, b, c
    return -1, -1, -1


# ---------------------------------------------------------------------------
# {g : [g, a] in B for all a in A}


def section_centralizer_numpy(mul, inv, a_elems, b_mask):
    n = mul.shape[0]
    g = np.arange(n)
    left = mul[inv[g][:, None], inv[a_elems][None, :]]  # g^-1 a^-1
    right = mul[g[:, None], a_elems[None, :]]  # g a
    comm = mul[left, right]
    return b_mask[comm].all(axis=1)


def _section_centralizer_loop(mul, inv, a_elems, b_mask):
    n = mul.shape[0]
    out = np.ones(n, np.bool_)
    for g in range(n):
        gi = inv[g]
        for j in range(a_elems.shape[0]):
            a = a_elems[j]
            c = mul[mul[gi, inv[a]], mul[g, a]]
            if not b_mask[c]:
                out[g] = False
                break
    return out


# ---------------------------------------------------------------------------
# closed-subset growth used by lattice enumeration: for every element c
# outside a subgroup, the join <X, c>; duplicates are left to the caller


def joins_with_elements_numpy(mul, x_mask, x_gens, cands):
    rows = np.zeros((cands.shape[0], mul.shape[0]), dtype=bool)
    for i, c in enumerate(cands):
        gens = np.append(x_gens, c)
        start = x_mask.copy()
        start[c] = True
        rows[i] = closure_numpy(mul, start, gens)
    return rows


if USE_NUMBA:
    _njit = numba.njit(cache=True, nogil=True)
    closure_numba = _njit(_closure_loop)
    associativity_numba = _njit(_associativity_loop)
    section_centralizer_numba = _njit(_section_centralizer_loop)
    _closure_loop_jit = closure_numba

    @numba.njit(cache=True, nogil=True)
    def joins_with_elements_numba(mul, x_mask, x_gens, cands):
        n = mul.shape[0]
        k = x_gens.shape[0]
        rows = np.zeros((cands.shape[0], n), np.bool_)
        gens = np.empty(k + 1, np.int64)
        for j in range(k):
            gens[j] = x_gens[j]
        for i in range(cands.shape[0]):
            gens[k] = cands[i]
            start = x_mask.copy()
            start[cands[i]] = True
            rows[i] = _closure_loop_jit(mul, start, gens)
        return rows

    closure = closure_numba
    associativity = associativity_numba
    section_centralizer = section_centralizer_numba
    joins_with_elements = joins_with_elements_numba
else:
    closure_numba = associativity_numba = None
    section_centralizer_numba = joins_with_elements_numba = None
    closure = closure_numpy
    associativity = associativity_numpy
    section_centralizer = section_centralizer_numpy
    joins_with_elements = joins_with_elements_numpy

"""Restriction to subgroups, quotient groups and chief series."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ArgumentError
from .group import Group, Subgroup
from .lattice import SubgroupLattice, is_normal


def _restrict(H: Subgroup) -> tuple[Group, np.ndarray]:
    G = H.parent
    key = ("abstract", H.mask)
    hit = G.memo.get(key)
    if hit is None:
        idx = np.array(H.elements, dtype=np.int64)
        local = np.full(G.order, -1, dtype=np.int64)
        local[idx] = np.arange(idx.size)
        table = local[G.mul_table[np.ix_(idx, idx)]]
        name = G.name if H.mask == G.full_mask else f"{G.name}[{H.order}]"
        hit = (Group.from_table(name, table), idx)
        G.memo[key] = hit
    return hit


def as_abstract(H: Subgroup) -> Group:
    """``H`` as a standalone group; local element i is ``H.elements[i]``."""
    return _restrict(H)[0]


def localize(H: Subgroup, mask: int) -> int:
    """Re-express a mask of ``H.parent`` inside ``as_abstract(H)``."""
    _, idx = _restrict(H)
    out = 0
    for pos, x in enumerate(idx):
        if (mask >> int(x)) & 1:
            out |= 1 << pos
    return out


def globalize(H: Subgroup, local_mask: int) -> int:
    _, idx = _restrict(H)
    out = 0
    for pos in Group.indices(local_mask):
        out |= 1 << int(idx[pos])
    return out


@dataclass(frozen=True, eq=False)
class Quotient:
    source: Group
    kernel: Subgroup
    quotient_group: Group
    projection: np.ndarray  # element index -> coset index
    representatives: np.ndarray  # coset index -> minimal element index

    def image(self, mask: int) -> int:
        """Mask (in the quotient) of the image of a source subset."""
        cosets = np.unique(self.projection[self.kernel.parent.indices(mask)])
        return self.quotient_group.mask_of(cosets)

    def pullback(self, qmask: int) -> int:
        """Source mask of the full preimage of a quotient subset."""
        sel = self.quotient_group.to_bool(qmask)[self.projection]
        return self.source.from_bool(sel)


def quotient(G: Group, N: Subgroup) -> Quotient:
    if N.parent is not G:
        raise ArgumentError("N is not a subgroup of G")
    key = ("quotient", N.mask)
    hit = G.memo.get(key)
    if hit is not None:
        return hit
    if not is_normal(N, Subgroup(G, G.full_mask)):
        raise ArgumentError("quotient requires a normal subgroup")
    mul = G.mul_table
    kern = np.array(N.elements, dtype=np.int64)
    proj = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in range(G.order):
        if proj[x] < 0:
            proj[mul[x, kern]] = len(reps)
            reps.append(x)
    reps_a = np.array(reps, dtype=np.int64)
    table = proj[mul[np.ix_(reps_a, reps_a)]]
    name = G.name if N.order == 1 else f"{G.name}/{N.order}"
    Q = Quotient(G, N, Group.from_table(name, table), proj, reps_a)
    G.memo[key] = Q
    return Q


def quotient_group(G: Group, mask: int) -> Group:
    return quotient(G, Subgroup(G, mask)).quotient_group


def section_group(lat: SubgroupLattice, h: int, n: int) -> Group:
    """The abstract group ``H_h / H_n`` for lattice indices with ``n`` normal in ``h``."""
    key = ("section", h, n)
    hit = lat.memo.get(key)
    if hit is None:
        H = lat.subgroups[h]
        A = as_abstract(H)
        hit = quotient(A, Subgroup(A, localize(H, lat.masks[n]))).quotient_group
        lat.memo[key] = hit
    return hit


# ---------------------------------------------------------------------------
# chief series


@dataclass(frozen=True, eq=False)
class ChiefSeries:
    group: Group
    chain: tuple[Subgroup, ...]  # 1 = N_0 < N_1 < ... < N_r = G

    @property
    def factor_orders(self) -> list[int]:
        return [b.order // a.order for a, b in zip(self.chain, self.chain[1:])]

    @cached_property
    def factors(self) -> list[Group]:
        out = []
        for lo, hi in zip(self.chain, self.chain[1:]):
            A = as_abstract(hi)
            out.append(quotient_group(A, localize(hi, lo.mask)))
        return out

    def factor_is_abelian(self, i: int) -> bool:
        G = self.group
        lo, hi = self.chain[i], self.chain[i + 1]
        e = np.array(hi.elements, dtype=np.int64)
        inv, mul = G.inverse, G.mul_table
        comm = mul[mul[inv[e][:, None], inv[e][None, :]], mul[np.ix_(e, e)]]
        return bool(G.to_bool(lo.mask)[comm].all())


def chief_series(G: Group) -> ChiefSeries:
    """Chief series choosing, at each step, the first minimal normal subgroup
    of the current quotient in (order, mask) order.

    For an empty chain (trivial G) the chain is just ``(1,)``.
    """
    hit = G.memo.get("chief")
    if hit is not None:
        return hit
    normals = G.normal_subgroups  # sorted by (order, mask)
    chain = [1]
    cur = 1
    while cur != G.full_mask:
        above = [m for m in normals if m != cur and cur & ~m == 0]
        minimal = [m for m in above if not any(o != m and o & ~m == 0 for o in above)]
        cur = minimal[0]
        chain.append(cur)
    series = ChiefSeries(G, tuple(Subgroup(G, m) for m in chain))
    G.memo["chief"] = series
    return series

"""Complete subgroup lattices with normality and conjugacy metadata.

Subgroups are identified by element masks (Python ints).  A lattice lists
every subgroup sorted by ``(order, mask)``; relations between subgroups are
stored as Python-int bitmasks over lattice indices.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import _kernels
from .errors import ArgumentError, SizeError
from .group import Group, PrimeSet, Subgroup

DEFAULT_SUBGROUP_CAP = 20000

_LATTICES: "weakref.WeakKeyDictionary[Group, SubgroupLattice]" = weakref.WeakKeyDictionary()


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def enumerate_subgroups(G: Group, max_subgroups: int = DEFAULT_SUBGROUP_CAP) -> dict[int, tuple[int, ...]]:
    """All subgroup masks of ``G`` mapped to a generating tuple.

    Cyclic subgroups first, then joins with cyclic subgroups until nothing new
    appears; every subgroup is a join of its cyclic subgroups, so this is
    complete.
    """
    mul = G.mul_table
    cyclic: dict[int, int] = {}
    for x in range(G.order):
        m = G.closure_mask([x])
        cyclic.setdefault(m, x)
    found: dict[int, tuple[int, ...]] = {1: ()}
    for m, x in cyclic.items():
        found.setdefault(m, (x,) if x else ())
    queue = list(found)
    cyc_gens = np.array(sorted(cyclic.values()), dtype=np.int64)
    while queue:
        x = queue.pop()
        xb = G.to_bool(x)
        cands = cyc_gens[~xb[cyc_gens]]
        if cands.size == 0:
            continue
        rows = _kernels.joins_with_elements(mul, xb, np.array(found[x], dtype=np.int64), cands)
        for c, y in zip(cands, G.rows_to_masks(rows)):
            if y not in found:
                found[y] = found[x] + (int(c),)
                queue.append(y)
                if len(found) > max_subgroups:
                    raise SizeError(f"{G.name}: more than {max_subgroups} subgroups")
    return found


class SubgroupLattice:
    """Every subgroup of a group, with inclusion, normality and conjugacy data."""

    def __init__(self, group: Group, max_subgroups: int = DEFAULT_SUBGROUP_CAP):
        self.group = group
        found = enumerate_subgroups(group, max_subgroups)
        masks = sorted(found, key=lambda m: (m.bit_count(), m))
        self.masks: list[int] = masks
        self.gens: list[tuple[int, ...]] = [found[m] for m in masks]
        self.orders: list[int] = [m.bit_count() for m in masks]
        self.index: dict[int, int] = {m: i for i, m in enumerate(masks)}
        self.subgroups: list[Subgroup] = [Subgroup(group, m) for m in masks]
        self._conjugacy()
        self._inclusion()
        self._join_cache: dict[tuple[int, int], int] = {}
        self.memo: dict = {}

    # -- construction --------------------------------------------------------

    def _conjugacy(self) -> None:
        G = self.group
        L = len(self.masks)
        class_of = [-1] * L
        transversal = [0] * L
        normalizers = [0] * L
        classes = []
        for i, m in enumerate(self.masks):
            if class_of[i] >= 0:
                continue
            conj = G.rows_to_masks(G.conjugates_rows(m))
            members: dict[int, int] = {}
            for g, cm in enumerate(conj):
                j = self.index[cm]
                if j not in members:
                    members[j] = g
            norm = G.mask_of(g for g, cm in enumerate(conj) if cm == m)
            cid = len(classes)
            classes.append(tuple(sorted(members)))
            for j, g in members.items():
                class_of[j] = cid
                transversal[j] = g
                normalizers[j] = norm if g == 0 else G.conjugate_mask(norm, g)
        self.conjugacy_classes: list[tuple[int, ...]] = classes
        self.class_of = class_of
        self.transversal = transversal  # masks[j] == masks[rep]^transversal[j]
        self.normalizer_masks = normalizers
        self.normal_flags: list[bool] = [len(classes[class_of[i]]) == 1 for i in range(L)]

    def _inclusion(self) -> None:
        L = len(self.masks)
        masks, orders = self.masks, self.orders
        below = [1 << i for i in range(L)]
        above = [1 << i for i in range(L)]
        for i in range(L):
            mi, oi = masks[i], orders[i]
            for j in range(i):
                if oi % orders[j] == 0 and orders[j] < oi and masks[j] & ~mi == 0:
                    below[i] |= 1 << j
                    above[j] |= 1 << i
        self.below = below  # lattice mask of subgroups contained in i (incl. i)
        self.above = above
        normal_in = []
        for i in range(L):
            mi = masks[i]
            nm = 0
            for j in _iter_bits(below[i]):
                if mi & ~self.normalizer_masks[j] == 0:
                    nm |= 1 << j
            normal_in.append(nm)
        self.normal_in = normal_in  # lattice mask of subgroups normal in i

    # -- basic access --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.masks)

    @property
    def top(self) -> int:
        return len(self.masks) - 1

    def idx(self, H: Subgroup | int) -> int:
        mask = H.mask if isinstance(H, Subgroup) else H
        try:
            return self.index[mask]
        except KeyError:
            raise ArgumentError("mask is not a subgroup of this lattice") from None

    @property
    def inclusion(self) -> list[list[int]]:
        return [list(_iter_bits(b)) for b in self.below]

    def normal_indices(self) -> list[int]:
        return [i for i, f in enumerate(self.normal_flags) if f]

    def is_normal_in(self, j: int, i: int) -> bool:
        return bool((self.normal_in[i] >> j) & 1)

    def contains(self, i: int, j: int) -> bool:
        """Whether subgroup ``j`` lies inside subgroup ``i``."""
        return bool((self.below[i] >> j) & 1)

    def meet(self, i: int, j: int) -> int:
        return self.index[self.masks[i] & self.masks[j]]

    def join(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        key = (i, j)
        hit = self._join_cache.get(key)
        if hit is not None:
            return hit
        if self.contains(j, i):
            k = j
        else:
            m = self.group.closure_mask(self.gens[i] + self.gens[j], base=self.masks[j])
            k = self.index[m]
        self._join_cache[key] = k
        return k

    def join_all(self, idxs: Iterable[int]) -> int:
        out = 0
        for i in idxs:
            out = self.join(out, i)
        return out

    def conjugate_index(self, i: int, g: int) -> int:
        return self.index[self.group.conjugate_mask(self.masks[i], g)]

    def conjugator(self, i: int, j: int) -> int | None:
        """Some g with ``H_i^g == H_j`` or None."""
        if self.class_of[i] != self.class_of[j]:
            return None
        G = self.group
        # H_i = rep^t_i, H_j = rep^t_j, so H_i^(t_i^-1 t_j) = H_j
        return int(G.mul_table[G.inverse[self.transversal[i]], self.transversal[j]])

    # -- subnormality ----------------------------------------------------------

    def normal_closure_in(self, j: int, k: int) -> int:
        """Smallest subgroup normal in ``k`` containing ``j`` (``j <= k``)."""
        cands = self.above[j] & self.below[k]
        best = -1
        for c in _iter_bits(cands):
            if self.is_normal_in(c, k):
                best = c
                break  # ascending order; the unique minimum has the smallest order
        return best

    def is_subnormal_in(self, j: int, k: int) -> bool:
        if not self.contains(k, j):
            return False
        key = ("subnormal", j, k)
        hit = self.memo.get(key)
        if hit is None:
            cur = k
            while True:
                nxt = self.normal_closure_in(j, cur)
                if nxt == cur:
                    break
                cur = nxt
            hit = cur == j
            self.memo[key] = hit
        return hit

    def subnormal_in(self, k: int) -> list[int]:
        return [j for j in _iter_bits(self.below[k]) if self.is_subnormal_in(j, k)]

    # -- conversion ------------------------------------------------------------

    def dump(self) -> dict:
        G = self.group
        return {
            "group": G.name,
            "order": G.order,
            "subgroups": [
                {
                    "index": i,
                    "order": self.orders[i],
                    "elements": G.indices(m),
                    "normal": self.normal_flags[i],
                    "class": self.class_of[i],
                    "contains": list(_iter_bits(self.below[i] & ~(1 << i))),
                }
                for i, m in enumerate(self.masks)
            ],
            "conjugacy_classes": [list(c) for c in self.conjugacy_classes],
        }


def all_subgroups(G: Group, max_subgroups: int = DEFAULT_SUBGROUP_CAP) -> SubgroupLattice:
    """The (cached) complete subgroup lattice of ``G``."""
    lat = _LATTICES.get(G)
    if lat is None:
        lat = SubgroupLattice(G, max_subgroups)
        _LATTICES[G] = lat
    return lat


# ---------------------------------------------------------------------------
# subgroup-level queries


def _same_parent(*subs: Subgroup) -> Group:
    G = subs[0].parent
    if any(s.parent is not G for s in subs):
        raise ArgumentError("subgroups belong to different groups")
    return G


def is_normal(H: Subgroup, K: Subgroup) -> bool:
    G = _same_parent(H, K)
    if not H <= K:
        raise ArgumentError("is_normal requires H <= K")
    for g in G.generating_set(K.mask):
        if G.conjugate_mask(H.mask, g) != H.mask:
            return False
    return True


def is_subnormal(H: Subgroup, G: Group | None = None) -> bool:
    """Normal-closure descent ``K_0 = G``, ``K_{i+1} = H^{K_i}``."""
    G = H.parent if G is None else G
    if H.parent is not G:
        raise ArgumentError("H is not a subgroup of G")
    cur = G.full_mask
    while True:
        nxt = G.normal_closure_mask(H.mask, within=cur)
        if nxt == cur:
            return cur == H.mask
        cur = nxt


def are_conjugate(H1: Subgroup, H2: Subgroup, within: Subgroup | None = None) -> int | None:
    """Index of some g (in ``within``, default the whole group) with ``H1^g == H2``."""
    G = _same_parent(H1, H2)
    if H1.order != H2.order:
        return None
    if H1.mask == H2.mask:
        return 0
    rows = G.conjugates_rows(H1.mask)
    target = G.to_bool(H2.mask)
    hits = np.flatnonzero((rows == target).all(axis=1))
    if within is not None:
        hits = [g for g in hits if (within.mask >> int(g)) & 1]
    return int(hits[0]) if len(hits) else None


def conjugate(H: Subgroup, g: int) -> Subgroup:
    return Subgroup(H.parent, H.parent.conjugate_mask(H.mask, g))


def maximal_normal_subgroups(G: Group) -> list[Subgroup]:
    normals = [m for m in G.normal_subgroups if m != G.full_mask]
    out = []
    for m in normals:
        if not any(o != m and m & ~o == 0 for o in normals):
            out.append(Subgroup(G, m))
    return out


@dataclass(frozen=True)
class JoinResult:
    subgroup: Subgroup
    product_is_subgroup: bool


def setwise_product(H: Subgroup, K: Subgroup) -> int:
    G = _same_parent(H, K)
    prod = G.mul_table[np.ix_(H.elements, K.elements)]
    arr = np.zeros(G.order, dtype=bool)
    arr[prod.ravel()] = True
    return G.from_bool(arr)


def join(H: Subgroup, K: Subgroup) -> JoinResult:
    G = _same_parent(H, K)
    m = G.closure_mask(G.generating_set(H.mask) + G.generating_set(K.mask), base=H.mask)
    return JoinResult(Subgroup(G, m), setwise_product(H, K) == m)


def normalizer(H: Subgroup) -> Subgroup:
    G = H.parent
    rows = G.conjugates_rows(H.mask)
    target = G.to_bool(H.mask)
    return Subgroup(G, G.from_bool((rows == target).all(axis=1)))


def centralizer_of_section(G: Group, A: Subgroup, B: Subgroup) -> Subgroup:
    """``{g in G : [g, a] in B for all a in A}`` for G-invariant ``B <= A``."""
    _same_parent(A, B)
    if A.parent is not G:
        raise ArgumentError("A and B must be subgroups of G")
    if not B <= A:
        raise ArgumentError("centralizer_of_section requires B <= A")
    whole_g = Subgroup(G, G.full_mask)
    if not (is_normal(A, whole_g) and is_normal(B, whole_g)):
        raise ArgumentError("A and B must be normal in G")
    a_elems = np.array(A.elements, dtype=np.int64)
    res = _kernels.section_centralizer(G.mul_table, G.inverse, a_elems, G.to_bool(B.mask))
    return Subgroup(G, G.from_bool(res))


def hall_subgroups(G: Group, pi: Iterable[int]) -> list[Subgroup]:
    pi = PrimeSet(pi)
    target = pi.part(G.order)
    lat = all_subgroups(G)
    return [lat.subgroups[i] for i, o in enumerate(lat.orders) if o == target]

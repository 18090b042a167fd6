"""Fitting sets of a fixed group and the calculus built on them.

A Fitting set is stored as a bitmask over the indices of the group's subgroup
lattice.  Radicals of every subgroup are computed when the set is built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .classes import ClassPredicate, class_member, class_spec
from .errors import ArgumentError, ConsistencyError, PreconditionError
from .group import PrimeSet, Subgroup, sigma_primes
from .lattice import SubgroupLattice, _iter_bits
from .quotients import as_abstract, section_group


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""
    witness: dict = field(default_factory=dict)
    detail: object = None

    def __bool__(self) -> bool:
        return self.ok


def _as_mask(members: int | Iterable[int]) -> int:
    if isinstance(members, int):
        return members
    out = 0
    for i in members:
        out |= 1 << int(i)
    return out


def verify_axioms(lat: SubgroupLattice, members: int | Iterable[int]) -> Verdict:
    """Check the three Fitting-set axioms; on failure report the first one broken."""
    S = _as_mask(members)
    if S == 0:
        raise ArgumentError("a Fitting set must be nonempty")
    if S >> len(lat):
        raise ArgumentError("member index outside the lattice")
    idx = list(_iter_bits(S))
    for s in idx:
        missing = lat.normal_in[s] & ~S
        if missing:
            t = (missing & -missing).bit_length() - 1
            return Verdict(False, "i", {"member": s, "normal_subgroup": t})
    norms = lat.normalizer_masks
    masks = lat.masks
    for a, s in enumerate(idx):
        for t in idx[a + 1:]:
            if masks[t] & ~norms[s] or masks[s] & ~norms[t]:
                continue
            j = lat.join(s, t)
            if not (S >> j) & 1:
                return Verdict(False, "ii", {"members": [s, t], "product": j})
    for s in idx:
        for t in lat.conjugacy_classes[lat.class_of[s]]:
            if not (S >> t) & 1:
                return Verdict(
                    False, "iii", {"member": s, "conjugate": t, "element": lat.conjugator(s, t)}
                )
    return Verdict(True)


class FittingSet:
    """A Fitting set of ``lattice.group`` with eagerly computed radicals."""

    __slots__ = ("lattice", "members", "provenance", "radicals", "sigma", "__weakref__")

    def __init__(self, lattice: SubgroupLattice, members: int | Iterable[int],
                 provenance: dict | None = None, check: bool = True):
        members = _as_mask(members)
        if check:
            v = verify_axioms(lattice, members)
            if not v:
                raise ConsistencyError(f"not a Fitting set (axiom {v.reason}): {v.witness}")
        self.lattice = lattice
        self.members = members
        self.provenance = provenance or {"kind": "explicit"}
        rads = []
        for h in range(len(lattice)):
            nm = lattice.normal_in[h] & members
            r = nm.bit_length() - 1  # largest order; lattice is sorted by order
            if nm & ~lattice.below[r]:
                raise ConsistencyError(f"subgroup {h} has no unique maximal normal member")
            rads.append(r)
        self.radicals = tuple(rads)
        sig: set[int] = set()
        for i in _iter_bits(members):
            sig |= sigma_primes(lattice.orders[i])
        self.sigma = PrimeSet(sig)

    def __contains__(self, i: int) -> bool:
        return bool((self.members >> i) & 1)

    def __len__(self) -> int:
        return self.members.bit_count()

    def __eq__(self, other) -> bool:
        return (isinstance(other, FittingSet) and other.lattice is self.lattice
                and other.members == self.members)

    def __hash__(self) -> int:
        return hash((id(self.lattice), self.members))

    def __le__(self, other: "FittingSet") -> bool:
        return self.members & ~other.members == 0

    def __and__(self, other: "FittingSet") -> "FittingSet":
        return FittingSet(self.lattice, self.members & other.members,
                          {"kind": "intersection", "args": [self.provenance, other.provenance]})

    def indices(self) -> list[int]:
        return list(_iter_bits(self.members))

    def subgroups(self) -> list[Subgroup]:
        return [self.lattice.subgroups[i] for i in self.indices()]

    def radical_index(self, h: int) -> int:
        return self.radicals[h]

    @property
    def group_radical(self) -> int:
        """Lattice index of G_F."""
        return self.radicals[self.lattice.top]

    def __repr__(self) -> str:
        return f"FittingSet({len(self)} of {len(self.lattice)} subgroups of {self.lattice.group.name})"


# ---------------------------------------------------------------------------
# constructors


def fitting_closure(lat: SubgroupLattice, seed: int | Iterable[int]) -> FittingSet:
    """Smallest Fitting set containing the seed indices."""
    S = _as_mask(seed)
    if S == 0:
        raise ArgumentError("closure seed must be nonempty")
    S |= 1  # trivial subgroup
    norms, masks = lat.normalizer_masks, lat.masks
    while True:
        nxt = S
        for s in _iter_bits(S):
            nxt |= lat.normal_in[s]
            for t in lat.conjugacy_classes[lat.class_of[s]]:
                nxt |= 1 << t
        idx = list(_iter_bits(nxt))
        for a, s in enumerate(idx):
            for t in idx[a + 1:]:
                if masks[t] & ~norms[s] == 0 and masks[s] & ~norms[t] == 0:
                    nxt |= 1 << lat.join(s, t)
        if nxt == S:
            break
        S = nxt
    return FittingSet(lat, S, {"kind": "closure", "seed": list(_iter_bits(_as_mask(seed)))})


def trace(lat: SubgroupLattice, C: ClassPredicate) -> FittingSet:
    """All subgroups lying in the Fitting class C."""
    if not C.fitting:
        raise ArgumentError(f"{C} is not a Fitting class")
    key = ("trace", C)
    hit = lat.memo.get(key)
    if hit is None:
        members = 0
        for i, H in enumerate(lat.subgroups):
            ok = C.accepts_order(H.order) if C.order_only else class_member(as_abstract(H), C)
            if ok:
                members |= 1 << i
        hit = FittingSet(lat, members, {"kind": "trace", "class": C.key})
        lat.memo[key] = hit
    return hit


def trivial_set(lat: SubgroupLattice) -> FittingSet:
    return FittingSet(lat, 1, {"kind": "trivial"})


def section_in_class(F: FittingSet, h: int, C: ClassPredicate) -> bool:
    """Whether ``H_h / (H_h)_F`` lies in C."""
    lat = F.lattice
    n = F.radicals[h]
    if C.order_only:
        return C.accepts_order(lat.orders[h] // lat.orders[n])
    return class_member(section_group(lat, h, n), C)


def product_with_class(F: FittingSet, C: ClassPredicate) -> FittingSet:
    """``F o C = {H : H / H_F in C}``."""
    if not C.fitting:
        raise ArgumentError(f"{C} is not a Fitting class")
    lat = F.lattice
    key = ("product", F.members, C)
    hit = lat.memo.get(key)
    if hit is None:
        members = 0
        for h in range(len(lat)):
            if section_in_class(F, h, C):
                members |= 1 << h
        hit = FittingSet(lat, members, {"kind": "product", "base": F.provenance, "class": C.key})
        lat.memo[key] = hit
    return hit


def radical(H: Subgroup, F: FittingSet) -> Subgroup:
    lat = F.lattice
    return lat.subgroups[F.radicals[lat.idx(H)]]


def sigma_of_set(F: FittingSet) -> PrimeSet:
    return F.sigma


def hall_pullback_set(F: FittingSet, pi: Iterable[int]) -> FittingSet:
    """``{H : the Hall pi-subgroups of H lie in F}`` for pi-soluble G."""
    pi = PrimeSet(pi)
    lat = F.lattice
    G = lat.group
    if not class_member(G, class_spec("pi_soluble", pi=pi)):
        raise PreconditionError(f"{G.name} is not {sorted(pi)}-soluble")
    members = 0
    for h in range(len(lat)):
        target = pi.part(lat.orders[h])
        halls = [j for j in _iter_bits(lat.below[h]) if lat.orders[j] == target]
        inside = [j in F for j in halls]
        if not halls:
            raise ConsistencyError(f"subgroup {h} of a pi-soluble group has no Hall pi-subgroup")
        if all(inside):
            members |= 1 << h
        elif any(inside):
            raise ConsistencyError(f"Hall {sorted(pi)}-subgroups of subgroup {h} disagree on membership")
    M = FittingSet(lat, members, {"kind": "hall_pullback", "base": F.provenance, "pi": sorted(pi)})
    if not is_semilocal(M, pi):
        raise ConsistencyError("Hall pullback set is not semilocal")
    return M


# ---------------------------------------------------------------------------
# H-functions


def _p_prime(p: int) -> ClassPredicate:
    return class_spec("pi_prime_group", pi=[p])


def _p_group(p: int) -> ClassPredicate:
    return class_spec("p_group", p=p)


@dataclass(frozen=True, eq=False)
class HFunction:
    pi: PrimeSet
    assignments: Mapping[int, FittingSet]
    slr_set: FittingSet
    f_radicals: tuple[int, ...]
    integrated: bool
    full: bool
    invariable: bool

    def __call__(self, p: int) -> FittingSet:
        return self.assignments[p]

    @property
    def flags(self) -> dict[str, bool]:
        return {"integrated": self.integrated, "full": self.full, "invariable": self.invariable}

    @property
    def lattice(self) -> SubgroupLattice:
        return self.slr_set.lattice

    @property
    def group_f_radical(self) -> int:
        return self.f_radicals[self.lattice.top]


def slr(pi: Iterable[int], f: Mapping[int, FittingSet] | FittingSet) -> HFunction:
    """``SLR(f)``: intersection over p in pi of ``f(p) o E_{p'}``.

    ``f`` may be a single Fitting set, meaning the invariable function.
    """
    pi = PrimeSet(pi)
    if not pi:
        raise ArgumentError("pi must be nonempty")
    if isinstance(f, FittingSet):
        f = {p: f for p in pi}
    missing = sorted(set(pi) - set(f))
    if missing:
        raise ArgumentError(f"H-function undefined at {missing}")
    f = {p: f[p] for p in sorted(pi)}
    lats = {id(F.lattice) for F in f.values()}
    if len(lats) != 1:
        raise ArgumentError("all f(p) must share one lattice")
    lat = next(iter(f.values())).lattice
    members = (1 << len(lat)) - 1
    for p, F in f.items():
        members &= product_with_class(F, _p_prime(p)).members
    S = FittingSet(lat, members, {"kind": "slr", "pi": sorted(pi),
                                  "f": {str(p): F.provenance for p, F in f.items()}})
    integrated = all(F <= S for F in f.values())
    full = all(product_with_class(F, _p_group(p)) == F for p, F in f.items())
    values = list(f.values())
    invariable = all(F == values[0] for F in values)
    rads = []
    for h in range(len(lat)):
        rads.append(lat.join_all(F.radicals[h] for F in f.values()))
    return HFunction(pi, f, S, tuple(rads), integrated, full, invariable)


def f_radical(H: Subgroup, hf: HFunction) -> Subgroup:
    lat = hf.lattice
    return lat.subgroups[hf.f_radicals[lat.idx(H)]]


def canonical_hfunction(F: FittingSet, pi: Iterable[int]) -> HFunction:
    """The invariable function ``f(p) = F`` used for semilocal sets."""
    return slr(pi, F)


def is_semilocal(F: FittingSet, pi: Iterable[int]) -> Verdict:
    """``F o E_{pi'} == F``; on success ``detail`` is the function ``f(p) = F``."""
    pi = PrimeSet(pi)
    P = product_with_class(F, class_spec("pi_prime_group", pi=pi))
    diff = P.members ^ F.members
    if diff:
        w = (diff & -diff).bit_length() - 1
        return Verdict(False, "F o E_pi' differs from F", {"subgroup": w, "in_product": w in P})
    hf = canonical_hfunction(F, pi) if pi else None
    if hf is not None and hf.slr_set != F:
        raise ConsistencyError("semilocal set differs from SLR of its canonical H-function")
    return Verdict(True, detail=hf)

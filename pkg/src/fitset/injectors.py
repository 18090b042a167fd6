"""F-maximal subgroups, injectors and the theorem checks built on them.

Brute force over the lattice is the reference; the Hall-subgroup construction
is always compared against it rather than trusted on its own.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .classes import class_member, class_spec
from .errors import HypothesesUnmet
from .fitting import FittingSet, HFunction, is_semilocal, product_with_class
from .group import PrimeSet, Subgroup, is_pi_number, sigma_primes
from .lattice import SubgroupLattice, _iter_bits, all_subgroups
from .quotients import quotient


# ---------------------------------------------------------------------------
# maximality and injectors


def f_maximal_mask(F: FittingSet, within: int | None = None) -> int:
    """Lattice mask of the F-maximal subgroups of ``within`` (default G)."""
    lat = F.lattice
    k = lat.top if within is None else within
    key = ("fmax", F.members, k)
    hit = lat.memo.get(key)
    if hit is None:
        inside = lat.below[k] & F.members
        hit = 0
        for m in _iter_bits(inside):
            if lat.above[m] & inside == 1 << m:
                hit |= 1 << m
        lat.memo[key] = hit
    return hit


def f_maximal_subgroups(F: FittingSet, within: int | None = None) -> list[Subgroup]:
    lat = F.lattice
    return [lat.subgroups[i] for i in _iter_bits(f_maximal_mask(F, within))]


def injector_mask(F: FittingSet, within: int | None = None) -> int:
    """Lattice mask of the F-injectors of ``within`` (default G), by exhaustion.

    V is an injector of K when V meet L is F-maximal in L for every L subnormal
    in K.  Taking L = K shows every injector is F-maximal in K, so only those
    are tried.
    """
    lat = F.lattice
    k = lat.top if within is None else within
    key = ("injectors", F.members, k)
    hit = lat.memo.get(key)
    if hit is None:
        subnormal = lat.subnormal_in(k)
        fmax = {s: f_maximal_mask(F, s) for s in subnormal}
        hit = 0
        for v in _iter_bits(fmax[k]):
            if all((fmax[s] >> lat.meet(v, s)) & 1 for s in subnormal):
                hit |= 1 << v
        lat.memo[key] = hit
    return hit


@dataclass(frozen=True)
class InjectorResult:
    lattice: SubgroupLattice = field(repr=False, compare=False)
    indices_in_lattice: tuple[int, ...]
    conjugacy_class_count: int
    indices: tuple[int, ...]  # |G:V| per injector
    method: str
    decomposition: tuple[tuple[int, int], ...] | None = None  # (Hall pi', V) pairs

    @property
    def injectors(self) -> list[Subgroup]:
        return [self.lattice.subgroups[i] for i in self.indices_in_lattice]

    @property
    def mask(self) -> int:
        out = 0
        for i in self.indices_in_lattice:
            out |= 1 << i
        return out

    def to_json(self) -> dict:
        lat = self.lattice
        out = {
            "method": self.method,
            "injectors": [_subgroup_json(lat, i) for i in self.indices_in_lattice],
            "conjugacy_class_count": self.conjugacy_class_count,
            "indices": list(self.indices),
        }
        if self.decomposition is not None:
            out["decomposition"] = [{"hall": h, "injector": v} for h, v in self.decomposition]
        return out


def _result(lat: SubgroupLattice, mask: int, method: str, decomposition=None) -> InjectorResult:
    idx = tuple(_iter_bits(mask))
    classes = {lat.class_of[i] for i in idx}
    G = lat.group
    return InjectorResult(lat, idx, len(classes), tuple(G.order // lat.orders[i] for i in idx),
                          method, decomposition)


def injectors_brute(F: FittingSet) -> InjectorResult:
    return _result(F.lattice, injector_mask(F), "brute")


def _pi_prime(lat: SubgroupLattice, pi: PrimeSet) -> PrimeSet:
    return PrimeSet(sigma_primes(lat.group.order)) - pi


def theorem_b_hypotheses(hf: HFunction) -> list[tuple[str, bool, dict]]:
    lat = hf.lattice
    G = lat.group
    gf = hf.group_f_radical
    Q = quotient(G, lat.subgroups[gf]).quotient_group
    return [
        ("f is full", hf.full, {}),
        ("f is invariable", hf.invariable, {}),
        ("G/G_f is pi-soluble", class_member(Q, class_spec("pi_soluble", pi=hf.pi)),
         {"f_radical": _subgroup_json(lat, gf)}),
    ]


def hall_prime_pullbacks(lat: SubgroupLattice, base: int, pi: PrimeSet) -> int:
    """Lattice mask of preimages of the Hall pi'-subgroups of ``G/H_base``."""
    G = lat.group
    Q = quotient(G, lat.subgroups[base])
    target = _pi_prime(lat, pi).part(Q.quotient_group.order)
    qlat = all_subgroups(Q.quotient_group)
    out = 0
    for j, o in enumerate(qlat.orders):
        if o == target:
            out |= 1 << lat.index[Q.pullback(qlat.masks[j])]
    return out


def injectors_theorem_b(hf: HFunction) -> InjectorResult:
    """Injectors as preimages of Hall pi'-subgroups of ``G/G_f``.

    When G itself is pi-soluble the result also lists, for each Hall
    pi'-subgroup H of G, the injector ``H G_f`` it produces.
    """
    failed = [name for name, ok, _ in theorem_b_hypotheses(hf) if not ok]
    if failed:
        raise HypothesesUnmet(failed)
    lat = hf.lattice
    G = lat.group
    gf = hf.group_f_radical
    mask = hall_prime_pullbacks(lat, gf, hf.pi)
    decomposition = None
    if class_member(G, class_spec("pi_soluble", pi=hf.pi)):
        target = _pi_prime(lat, hf.pi).part(G.order)
        decomposition = tuple(
            (h, lat.join(h, gf)) for h, o in enumerate(lat.orders) if o == target
        )
    return _result(lat, mask, "theorem_b", decomposition)


# ---------------------------------------------------------------------------
# reports


class Check(NamedTuple):
    name: str
    ok: bool
    witness: dict

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "witness": self.witness}


@dataclass
class TheoremReport:
    theorem_id: str
    hypotheses: list[Check] = field(default_factory=list)
    conclusions: list[Check] = field(default_factory=list)
    context: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if not all(c.ok for c in self.hypotheses):
            return "hypotheses_unmet"
        return "pass" if all(c.ok for c in self.conclusions) else "fail"

    def hyp(self, name: str, ok: bool, witness: dict | None = None) -> bool:
        self.hypotheses.append(Check(name, bool(ok), witness or {}))
        return bool(ok)

    def check(self, name: str, ok: bool, witness: dict | None = None) -> bool:
        self.conclusions.append(Check(name, bool(ok), witness or {}))
        return bool(ok)

    @property
    def applicable(self) -> bool:
        return all(c.ok for c in self.hypotheses)

    def to_json(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "status": self.status,
            "context": self.context,
            "hypotheses_checked": [c.to_json() for c in self.hypotheses],
            "conclusions_checked": [c.to_json() for c in self.conclusions],
        }


def _subgroup_json(lat: SubgroupLattice, i: int) -> dict:
    return {"index": i, "order": lat.orders[i], "mask": hex(lat.masks[i])}


def _subgroups_json(lat: SubgroupLattice, mask: int) -> list[dict]:
    return [_subgroup_json(lat, i) for i in _iter_bits(mask)]


def _context(F: FittingSet, **extra) -> dict:
    out = {"group": F.lattice.group.name, "set": F.provenance}
    out.update(extra)
    return out


def _single_class(lat: SubgroupLattice, mask: int) -> bool:
    return mask != 0 and len({lat.class_of[i] for i in _iter_bits(mask)}) == 1


def _injector_checks(rep: TheoremReport, F: FittingSet, inj: int) -> None:
    lat = F.lattice
    rep.check("injectors exist", inj != 0)
    rep.check("one conjugacy class of injectors", _single_class(lat, inj),
              {"injectors": _subgroups_json(lat, inj)})


def verify_theorem_a(F: FittingSet, case: int, pi: Iterable[int] | None = None) -> TheoremReport:
    """Existence and conjugacy of injectors under one of the three case hypotheses.

    Case 1 uses ``pi = sigma(F)`` and ignores the argument.
    """
    lat = F.lattice
    G = lat.group
    if case == 1:
        pi = F.sigma
    elif pi is None:
        raise ValueError("cases 2 and 3 need pi")
    pi = PrimeSet(pi)
    rep = TheoremReport(f"theorem-a.{case}", context=_context(F, pi=sorted(pi), case=case))
    pisol = class_spec("pi_soluble", pi=pi)
    if case == 1:
        rep.hyp("G in F o S^pi with pi = sigma(F)", lat.top in product_with_class(F, pisol))
    elif case == 2:
        v = is_semilocal(F, pi)
        rep.hyp("F is pi-semilocal", v.ok, v.witness)
        rep.hyp("G is pi-soluble", class_member(G, pisol))
    elif case == 3:
        v = is_semilocal(F, pi)
        rep.hyp("F is pi-semilocal", v.ok, v.witness)
        rep.hyp("G in F o S^pi", lat.top in product_with_class(F, pisol))
        sig = sigma_primes(lat.orders[F.group_radical])
        rep.hyp("sigma(G_F) within pi", sig <= set(pi), {"sigma": sorted(sig)})
    else:
        raise ValueError(f"unknown case {case}")
    if not rep.applicable:
        return rep
    inj = injector_mask(F)
    _injector_checks(rep, F, inj)
    if case == 2:
        bad = [i for i in _iter_bits(inj) if not is_pi_number(G.order // lat.orders[i], pi)]
        rep.check("injector index is a pi-number", not bad, {"injectors": bad})
    return rep


def verify_theorem_b(hf: HFunction) -> TheoremReport:
    F = hf.slr_set
    lat = F.lattice
    rep = TheoremReport("theorem-b", context=_context(F, pi=sorted(hf.pi)))
    for name, ok, w in theorem_b_hypotheses(hf):
        rep.hyp(name, ok, w)
    if not rep.applicable:
        return rep
    brute = injector_mask(F)
    built = injectors_theorem_b(hf)
    rep.check("injectors are the Hall pi' pullbacks", brute == built.mask,
              {"brute": _subgroups_json(lat, brute), "hall": _subgroups_json(lat, built.mask)})
    _injector_checks(rep, F, brute)
    fmax = f_maximal_mask(F) & lat.above[F.group_radical]
    rep.check("injectors are the F-maximal subgroups over G_F", brute == fmax,
              {"brute": _subgroups_json(lat, brute), "f_maximal": _subgroups_json(lat, fmax)})
    if built.decomposition is not None:
        typed = 0
        for _, v in built.decomposition:
            typed |= 1 << v
        rep.check("injectors are the products of a Hall pi' and G_f", brute == typed,
                  {"brute": _subgroups_json(lat, brute), "typed": _subgroups_json(lat, typed)})
    return rep


def _product_order(lat: SubgroupLattice, k: int, n_mask: int) -> int:
    ko = lat.orders[k]
    return ko * n_mask.bit_count() // (lat.masks[k] & n_mask).bit_count()


def verify_prop_5_6(F: FittingSet, pi: Iterable[int]) -> TheoremReport:
    """Frattini-type factorisation and pi-index for injectors of a semilocal set."""
    pi = PrimeSet(pi)
    lat = F.lattice
    G = lat.group
    rep = TheoremReport("prop-5-6", context=_context(F, pi=sorted(pi)))
    v = is_semilocal(F, pi)
    rep.hyp("F is pi-semilocal", v.ok, v.witness)
    rep.hyp("G in F o S_pi", lat.top in product_with_class(F, class_spec("soluble_pi", pi=pi)))
    hall = _pi_prime(lat, pi).part(G.order)
    rep.hyp("G has a Hall pi'-subgroup", hall in lat.orders)
    if not rep.applicable:
        return rep
    inj = injector_mask(F)
    rep.hyp("G has an F-injector", inj != 0)
    if not rep.applicable:
        return rep
    normals = lat.normal_indices()
    for vi in _iter_bits(inj):
        bad = []
        for k in normals:
            n_mask = lat.normalizer_masks[lat.meet(vi, k)]
            if _product_order(lat, k, n_mask) != G.order:
                bad.append(k)
        rep.check("G = K N_G(V meet K) for all normal K", not bad,
                  {"injector": _subgroup_json(lat, vi), "normal_subgroups": bad})
        rep.check("|G:V| is a pi-number", is_pi_number(G.order // lat.orders[vi], pi),
                  {"injector": _subgroup_json(lat, vi)})
    return rep


def lemma_2_2_suite(F: FittingSet) -> TheoremReport:
    lat = F.lattice
    rep = TheoremReport("lemma-2-2", context=_context(F))
    inj = injector_mask(F)
    rep.hyp("G has an F-injector", inj != 0)
    if not rep.applicable:
        return rep
    rad = F.group_radical
    fmax = f_maximal_mask(F)
    bad = [v for v in _iter_bits(inj) if not lat.contains(v, rad)]
    rep.check("(1) G_F within every injector", not bad, {"injectors": bad})
    rep.check("(2) injectors are F-maximal", inj & ~fmax == 0,
              {"not_maximal": list(_iter_bits(inj & ~fmax))})
    maxnormal = [
        m for m in lat.normal_indices()
        if m != lat.top and not any(
            o != m and o != lat.top and lat.contains(o, m) for o in lat.normal_indices()
        )
    ]
    bad = []
    for v in _iter_bits(fmax):
        if all((injector_mask(F, m) >> lat.meet(v, m)) & 1 for m in maxnormal):
            if not (inj >> v) & 1:
                bad.append(v)
    rep.check("(3) F-maximal with injector traces on maximal normals is an injector", not bad,
              {"subgroups": bad})
    bad = []
    for n in lat.normal_indices():
        ninj = injector_mask(F, n)
        for v in _iter_bits(ninj):
            for w in lat.conjugacy_classes[lat.class_of[v]]:
                if not (ninj >> w) & 1:
                    bad.append({"normal": n, "injector": v, "conjugate": w})
    rep.check("(4) conjugates of injectors of normal N are injectors of N", not bad,
              {"cases": bad[:5]})
    bad = []
    for k in lat.subnormal_in(lat.top):
        kinj = injector_mask(F, k)
        for v in _iter_bits(inj):
            if not (kinj >> lat.meet(v, k)) & 1:
                bad.append({"subnormal": k, "injector": v})
    rep.check("(5) V meet K is an injector of subnormal K", not bad, {"cases": bad[:5]})
    return rep


def counterexample_search(F: FittingSet) -> dict:
    """F-maximal subgroups over ``G_F`` that are not injectors, if any."""
    lat = F.lattice
    fmax = f_maximal_mask(F) & lat.above[F.group_radical]
    inj = injector_mask(F)
    odd = fmax & ~inj
    return {
        "group": lat.group.name,
        "set": F.provenance,
        "f_maximal_over_radical": len(list(_iter_bits(fmax))),
        "injectors": len(list(_iter_bits(inj))),
        "non_injectors": _subgroups_json(lat, odd),
    }

"""Checks of the supporting results: radicals of subnormal subgroups, the
product calculus, semilocal sets, constraint results and corollaries.

Every function returns a :class:`TheoremReport`; hypotheses are evaluated
before conclusions and a report whose hypotheses fail asserts nothing.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from . import _kernels
from .classes import ClassPredicate, class_member, class_radical, class_spec, o_pi
from .fitting import (
    FittingSet,
    HFunction,
    hall_pullback_set,
    is_semilocal,
    product_with_class,
    slr,
    trace,
    trivial_set,
)
from .group import PrimeSet, Subgroup, is_pi_prime_number, sigma_primes
from .injectors import (
    TheoremReport,
    _context,
    _single_class,
    _subgroup_json,
    _subgroups_json,
    f_maximal_mask,
    injector_mask,
)
from .lattice import SubgroupLattice, _iter_bits
from .quotients import as_abstract, globalize, localize, quotient


def _pisol(pi) -> ClassPredicate:
    return class_spec("pi_soluble", pi=pi)


def _centralizer_mask(lat: SubgroupLattice, a: int, b: int) -> int:
    """Element mask of ``{g : [g, x] in H_b for all x in H_a}``."""
    G = lat.group
    a_elems = np.array(G.indices(lat.masks[a]), dtype=np.int64)
    res = _kernels.section_centralizer(G.mul_table, G.inverse, a_elems, G.to_bool(lat.masks[b]))
    return G.from_bool(res)


# ---------------------------------------------------------------------------
# radicals and injectors in general


def lemma_2_1(F: FittingSet) -> TheoremReport:
    lat = F.lattice
    rep = TheoremReport("lemma-2-1", context=_context(F))
    gf = F.group_radical
    bad = [n for n in lat.subnormal_in(lat.top) if F.radicals[n] != lat.meet(n, gf)]
    rep.check("N_F = N meet G_F for subnormal N", not bad, {"subnormal": bad})
    return rep


def lemma_2_3(F: FittingSet) -> TheoremReport:
    lat = F.lattice
    rep = TheoremReport("lemma-2-3", context=_context(F, pi=sorted(F.sigma)))
    rep.hyp("G is sigma(F)-soluble", class_member(lat.group, _pisol(F.sigma)))
    if rep.applicable:
        inj = injector_mask(F)
        rep.check("one conjugacy class of injectors", _single_class(lat, inj),
                  {"injectors": _subgroups_json(lat, inj)})
    return rep


def lemma_2_5(F: FittingSet) -> TheoremReport:
    lat = F.lattice
    rep = TheoremReport("lemma-2-5", context=_context(F))
    Q = quotient(lat.group, lat.subgroups[F.group_radical]).quotient_group
    rep.hyp("G/G_F is soluble", class_member(Q, class_spec("soluble")))
    if rep.applicable:
        inj = injector_mask(F)
        rep.check("one conjugacy class of injectors", _single_class(lat, inj),
                  {"injectors": _subgroups_json(lat, inj)})
    return rep


def lemma_2_4(F: FittingSet, pi: Iterable[int]) -> TheoremReport:
    """For every admissible normal N and F-maximal W of N, the F-maximal
    subgroups of G over W are pairwise conjugate.

    N is admissible when G/N is a nilpotent pi-group or a pi'-group.  Reading
    the second alternative as "pi'-soluble" is false already for S3 with N = 1.
    """
    pi = PrimeSet(pi)
    lat = F.lattice
    G = lat.group
    rep = TheoremReport("lemma-2-4", context=_context(F, pi=sorted(pi)))
    rep.hyp("G is pi-soluble", class_member(G, _pisol(pi)))
    v = is_semilocal(F, pi)
    rep.hyp("F o E_pi' = F", v.ok, v.witness)
    if not rep.applicable:
        return rep
    nil_pi = class_spec("nilpotent_pi", pi=pi)
    fmax = f_maximal_mask(F)
    instances = 0
    bad = []
    for n in lat.normal_indices():
        Q = quotient(G, lat.subgroups[n]).quotient_group
        if not (class_member(Q, nil_pi) or is_pi_prime_number(Q.order, pi)):
            continue
        for w in _iter_bits(f_maximal_mask(F, n)):
            over = [u for u in _iter_bits(fmax & lat.above[w])]
            instances += 1
            if len({lat.class_of[u] for u in over}) > 1:
                bad.append({"normal": n, "w": w, "over": over})
    rep.context["instances"] = instances
    rep.check("F-maximal subgroups over W are conjugate", not bad, {"cases": bad[:5]})
    return rep


# ---------------------------------------------------------------------------
# product calculus


def prop_3_2(F: FittingSet, C: ClassPredicate) -> TheoremReport:
    lat = F.lattice
    rep = TheoremReport("prop-3-2", context=_context(F, cls=C.key))
    P = product_with_class(F, C)
    rep.check("(1) F within F o C", F <= P,
              {"missing": list(_iter_bits(F.members & ~P.members))})
    bad = []
    for h in range(len(lat)):
        H = lat.subgroups[h]
        A = as_abstract(H)
        n = F.radicals[h]
        Qt = quotient(A, Subgroup(A, localize(H, lat.masks[n])))
        r = class_radical(Qt.quotient_group, C)
        expect = lat.index[globalize(H, Qt.pullback(r.mask))]
        if expect != P.radicals[h]:
            bad.append({"subgroup": h, "expected": expect, "got": P.radicals[h]})
    rep.check("(2) H_{F o C} / H_F is the C-radical of H/H_F", not bad, {"cases": bad[:5]})
    return rep


def prop_3_3(F: FittingSet, M: ClassPredicate, H: ClassPredicate) -> TheoremReport:
    lat = F.lattice
    rep = TheoremReport("prop-3-3", context=_context(F, classes=[M.key, H.key]))
    left = product_with_class(product_with_class(F, M), H)
    right = product_with_class(F, class_spec("product", args=(M, H)))
    rep.check("(F o M) o H = F o MH", left == right,
              {"difference": _subgroups_json(lat, left.members ^ right.members)})
    return rep


def prop_3_4_sets(F: FittingSet, K: FittingSet, M: ClassPredicate) -> TheoremReport:
    """Parts (1) and (2): behaviour of ``o M`` under inclusion and intersection."""
    rep = TheoremReport("prop-3-4", context=_context(F, other=K.provenance, cls=M.key))
    rep.hyp("M is a Fitting formation", M.homomorph)
    if not rep.applicable:
        return rep
    FM, KM = product_with_class(F, M), product_with_class(K, M)
    if F <= K:
        rep.check("(1) F within K gives F o M within K o M", FM <= KM,
                  {"missing": list(_iter_bits(FM.members & ~KM.members))})
    left = product_with_class(F & K, M)
    right = FM.members & KM.members
    rep.check("(2) (F meet K) o M = (F o M) meet (K o M)", left.members == right,
              {"difference": list(_iter_bits(left.members ^ right))})
    return rep


def prop_3_4_classes(F: FittingSet, M: ClassPredicate, H: ClassPredicate) -> TheoremReport:
    """Part (3): ``F o (M meet H) = (F o M) meet (F o H)``."""
    rep = TheoremReport("prop-3-4", context=_context(F, classes=[M.key, H.key]))
    left = product_with_class(F, class_spec("intersection", args=(M, H)))
    right = product_with_class(F, M).members & product_with_class(F, H).members
    rep.check("(3) F o (M meet H) = (F o M) meet (F o H)", left.members == right,
              {"difference": list(_iter_bits(left.members ^ right))})
    return rep


# ---------------------------------------------------------------------------
# semilocal sets


def lemma_4_2(F: FittingSet, pi: Iterable[int]) -> TheoremReport:
    """The semilocal test agrees with building SLR of ``f(p) = F``."""
    pi = PrimeSet(pi)
    rep = TheoremReport("lemma-4-2", context=_context(F, pi=sorted(pi)))
    rep.hyp("pi nonempty", bool(pi))
    if not rep.applicable:
        return rep
    direct = product_with_class(F, class_spec("pi_prime_group", pi=pi)) == F
    v = is_semilocal(F, pi)
    rep.check("semilocal test matches F o E_pi' = F", v.ok == direct)
    via_slr = slr(pi, F).slr_set == F
    rep.check("F o E_pi' = F iff F = SLR(p -> F)", direct == via_slr,
              {"direct": direct, "slr": via_slr})
    return rep


def example_4_1(lat: SubgroupLattice, pi: Iterable[int]) -> TheoremReport:
    pi = PrimeSet(pi)
    G = lat.group
    rep = TheoremReport("example-4-1", context={"group": G.name, "pi": sorted(pi)})
    rep.hyp("pi nonempty", bool(pi))
    if not rep.applicable:
        return rep
    a = slr(pi, trivial_set(lat)).slr_set
    expect = trace(lat, class_spec("pi_prime_group", pi=pi))
    rep.check("(a) SLR of the trivial function is the set of pi'-subgroups", a == expect,
              {"difference": list(_iter_bits(a.members ^ expect.members))})
    f = {p: product_with_class(trivial_set(lat), class_spec("p_group", p=p)) for p in pi}
    b = slr(pi, f).slr_set
    expect = trace(lat, class_spec("pi_special", pi=pi))
    rep.check("(b) SLR of p -> Tr(N_p) is the pi-special subgroups", b == expect,
              {"difference": list(_iter_bits(b.members ^ expect.members))})
    if class_member(G, _pisol(pi)):
        for C in (class_spec("nilpotent"), class_spec("p_group", p=min(pi))):
            M = hall_pullback_set(trace(lat, C), pi)
            rep.check(f"(c) Hall pullback of Tr({C.key}) is semilocal", bool(is_semilocal(M, pi)))
    return rep


def lemma_4_3(hf: HFunction) -> TheoremReport:
    lat = hf.lattice
    F = hf.slr_set
    rep = TheoremReport("lemma-4-3", context=_context(F, pi=sorted(hf.pi)))
    rep.hyp("f is integrated", hf.integrated)
    if not rep.applicable:
        return rep
    gf = hf.group_f_radical
    bad = [h for h in _iter_bits(lat.above[gf])
           if is_pi_prime_number(lat.orders[h] // lat.orders[gf], hf.pi) and h not in F]
    rep.check("H over G_f with H/G_f a pi'-group lies in F", not bad, {"subgroups": bad})
    return rep


def lemma_4_4(hf: HFunction, X: FittingSet) -> TheoremReport:
    lat = hf.lattice
    F = hf.slr_set
    G = lat.group
    rep = TheoremReport("lemma-4-4", context=_context(F, pi=sorted(hf.pi), x=X.provenance))
    rep.hyp("f is full", hf.full)
    Q = quotient(G, lat.subgroups[F.group_radical]).quotient_group
    rep.hyp("G/G_F is pi-soluble", class_member(Q, _pisol(hf.pi)))
    common = (1 << len(lat)) - 1
    for S in hf.assignments.values():
        common &= S.members
    rep.hyp("X within every f(p)", X.members & ~common == 0)
    if not rep.applicable:
        return rep
    gF, gX = F.group_radical, X.group_radical
    c = _centralizer_mask(lat, gF, gX)
    rep.check("C_G(G_F/G_X) within G_F", c & ~lat.masks[gF] == 0,
              {"centralizer": hex(c), "radical": _subgroup_json(lat, gF)})
    return rep


def prop_4_8(hf: HFunction) -> TheoremReport:
    lat = hf.lattice
    F = hf.slr_set
    rep = TheoremReport("prop-4-8", context=_context(F, pi=sorted(hf.pi)))
    rep.hyp("f is full", hf.full)
    rep.hyp("f is invariable", hf.invariable)
    rep.hyp("G in F o S^pi", lat.top in product_with_class(F, _pisol(hf.pi)))
    if not rep.applicable:
        return rep
    gf = hf.group_f_radical
    bad = []
    for v in _iter_bits(lat.above[F.group_radical]):
        quotient_ok = is_pi_prime_number(lat.orders[v] // lat.orders[gf], hf.pi)
        if (v in F) != quotient_ok:
            bad.append(v)
    rep.check("V over G_F lies in F iff V/G_f is a pi'-group", not bad, {"subgroups": bad})
    return rep


# ---------------------------------------------------------------------------
# constraint results


def corollary_4_5(lat: SubgroupLattice, pi: Iterable[int]) -> TheoremReport:
    pi = PrimeSet(pi)
    G = lat.group
    rep = TheoremReport("corollary-4-5", context={"group": G.name, "pi": sorted(pi)})
    rep.hyp("G is pi-soluble", class_member(G, _pisol(pi)))
    rep.hyp("pi nonempty", bool(pi))
    if not rep.applicable:
        return rep
    F = trace(lat, class_spec("pi_closed", pi=pi))
    hf = slr(pi, trace(lat, class_spec("pi_group", pi=pi)))
    rep.check("Tr(pi-closed) = SLR(p -> Tr(E_pi))", hf.slr_set == F)
    rep.check("p -> Tr(E_pi) is full", hf.full)
    r = F.group_radical
    c = _centralizer_mask(lat, r, 0)
    rep.check("C_G(G_F) within G_F", c & ~lat.masks[r] == 0,
              {"centralizer": hex(c), "radical": _subgroup_json(lat, r)})
    return rep


def corollary_4_6(lat: SubgroupLattice) -> TheoremReport:
    G = lat.group
    rep = TheoremReport("corollary-4-6", context={"group": G.name})
    rep.hyp("G is soluble", class_member(G, class_spec("soluble")))
    if not rep.applicable:
        return rep
    fit = trace(lat, class_spec("nilpotent")).group_radical
    c = _centralizer_mask(lat, fit, 0)
    rep.check("C_G(F(G)) within F(G)", c & ~lat.masks[fit] == 0,
              {"centralizer": hex(c), "fitting_subgroup": _subgroup_json(lat, fit)})
    return rep


# ---------------------------------------------------------------------------
# corollaries on injectors


def _one_class_report(rep: TheoremReport, F: FittingSet) -> TheoremReport:
    inj = injector_mask(F)
    rep.check("exactly one conjugacy class of injectors", _single_class(F.lattice, inj),
              {"injectors": _subgroups_json(F.lattice, inj)})
    return rep


def corollary_5_1(lat: SubgroupLattice, X: ClassPredicate, pi: Iterable[int]) -> TheoremReport:
    pi = PrimeSet(pi)
    rep = TheoremReport("corollary-5-1", context={"group": lat.group.name, "cls": X.key,
                                                   "pi": sorted(pi)})
    rep.hyp("G is pi-soluble", class_member(lat.group, _pisol(pi)))
    F = trace(lat, X)
    rep.hyp("Tr_X(G) o E_pi' = Tr_X(G)", bool(is_semilocal(F, pi)))
    return _one_class_report(rep, F) if rep.applicable else rep


def corollary_5_2(lat: SubgroupLattice, pi: Iterable[int]) -> TheoremReport:
    rep = corollary_5_1(lat, class_spec("pi_closed", pi=pi), pi)
    rep.theorem_id = "corollary-5-2"
    return rep


def corollary_5_3(lat: SubgroupLattice, pi: Iterable[int]) -> TheoremReport:
    rep = corollary_5_1(lat, class_spec("pi_special", pi=pi), pi)
    rep.theorem_id = "corollary-5-3"
    return rep


def corollary_5_4(F: FittingSet) -> TheoremReport:
    rep = TheoremReport("corollary-5-4", context=_context(F))
    rep.hyp("G is soluble", class_member(F.lattice.group, class_spec("soluble")))
    return _one_class_report(rep, F) if rep.applicable else rep


def corollary_6_1(lat: SubgroupLattice, pi: Iterable[int]) -> TheoremReport:
    pi = PrimeSet(pi)
    G = lat.group
    rep = TheoremReport("corollary-6-1", context={"group": G.name, "pi": sorted(pi)})
    rep.hyp("G is pi-soluble", class_member(G, _pisol(pi)))
    if not rep.applicable:
        return rep
    F = trace(lat, class_spec("pi_closed", pi=pi))
    inj = injector_mask(F)
    opi = lat.index[o_pi(G, pi)]
    target = (PrimeSet(sigma_primes(G.order)) - pi).part(G.order)
    typed = 0
    for h, o in enumerate(lat.orders):
        if o == target:
            typed |= 1 << lat.join(h, opi)
    rep.check("pi-closed injectors are the products of a Hall pi' and O_pi(G)", inj == typed,
              {"injectors": _subgroups_json(lat, inj), "typed": _subgroups_json(lat, typed)})
    return rep


def corollary_6_2(lat: SubgroupLattice, pi: Iterable[int], k: int) -> TheoremReport:
    pi = PrimeSet(pi)
    G = lat.group
    rep = TheoremReport("corollary-6-2", context={"group": G.name, "pi": sorted(pi), "k": k})
    rep.hyp("G is pi-soluble", class_member(G, _pisol(pi)))
    if not rep.applicable:
        return rep
    F = trace(lat, class_spec("pi_length_le_k", pi=pi, k=k))
    inj = injector_mask(F)
    fmax = f_maximal_mask(F) & lat.above[F.group_radical]
    rep.check("injectors are the F_k-maximal subgroups over the F_k-radical", inj == fmax,
              {"injectors": _subgroups_json(lat, inj), "f_maximal": _subgroups_json(lat, fmax)})
    return rep


# ---------------------------------------------------------------------------
# degenerate cases


def sylow_degeneration(lat: SubgroupLattice, p: int) -> TheoremReport:
    G = lat.group
    rep = TheoremReport("degeneration-sylow", context={"group": G.name, "p": p})
    rep.hyp("G is soluble", class_member(G, class_spec("soluble")))
    if not rep.applicable:
        return rep
    inj = injector_mask(trace(lat, class_spec("p_group", p=p)))
    target = PrimeSet([p]).part(G.order)
    sylow = sum(1 << i for i, o in enumerate(lat.orders) if o == target)
    rep.check("Tr(N_p) injectors are the Sylow p-subgroups", inj == sylow,
              {"injectors": _subgroups_json(lat, inj)})
    return rep


def trace_all_degeneration(lat: SubgroupLattice) -> TheoremReport:
    rep = TheoremReport("degeneration-all", context={"group": lat.group.name})
    inj = injector_mask(trace(lat, class_spec("all")))
    rep.check("Tr(all) has the single injector G", inj == 1 << lat.top)
    return rep


def disjoint_pi_degeneration(lat: SubgroupLattice, pi: Iterable[int]) -> TheoremReport:
    pi = PrimeSet(pi)
    G = lat.group
    rep = TheoremReport("degeneration-disjoint-pi", context={"group": G.name, "pi": sorted(pi)})
    rep.hyp("pi disjoint from sigma(G)", not (set(pi) & sigma_primes(G.order)))
    if not rep.applicable:
        return rep
    inj = injector_mask(trace(lat, class_spec("pi_closed", pi=pi)))
    rep.check("G is the only injector of the pi-closed set", inj == 1 << lat.top)
    return rep


"""Fitting-set documents and the catalog-generated sets used by the harness."""

from __future__ import annotations

from itertools import combinations

from sympy import nextprime

from .classes import catalog_instances, class_spec, class_member, parse_class
from .errors import ParseError
from .fitting import (
    FittingSet,
    HFunction,
    fitting_closure,
    hall_pullback_set,
    product_with_class,
    slr,
    trace,
    trivial_set,
)
from .group import PrimeSet, element_index, sigma_primes
from .lattice import SubgroupLattice

KINDS = ("trace", "closure", "slr", "product", "hall_pullback", "intersection", "trivial")


def parse_fitting_set(lat: SubgroupLattice, spec: dict) -> FittingSet:
    """Build a Fitting set of ``lat.group`` from its JSON document."""
    if not isinstance(spec, dict) or spec.get("kind") not in KINDS:
        raise ParseError(f"fitting-set spec needs a kind in {KINDS}, got {spec!r}")
    kind = spec["kind"]
    try:
        if kind == "trivial":
            return trivial_set(lat)
        if kind == "trace":
            return trace(lat, parse_class(spec["class"]))
        if kind == "closure":
            G = lat.group
            seed = []
            for gens in spec["seed"]:
                elems = [element_index(G, g) for g in gens]
                seed.append(lat.index[G.closure_mask(elems)])
            return fitting_closure(lat, seed or [0])
        if kind == "slr":
            return parse_hfunction(lat, spec).slr_set
        if kind == "product":
            return product_with_class(parse_fitting_set(lat, spec["base"]), parse_class(spec["class"]))
        if kind == "hall_pullback":
            return hall_pullback_set(parse_fitting_set(lat, spec["base"]), spec["pi"])
        a, b = (parse_fitting_set(lat, s) for s in spec["args"])
        return a & b
    except KeyError as exc:
        raise ParseError(f"{kind} spec missing field {exc}") from None


def parse_hfunction(lat: SubgroupLattice, spec: dict) -> HFunction:
    try:
        pi = spec["pi"]
        f = {int(p): parse_fitting_set(lat, s) for p, s in spec["f"].items()}
    except (KeyError, ValueError, AttributeError) as exc:
        raise ParseError(f"slr spec malformed: {exc}") from None
    return slr(pi, f)


def _extra_prime(order: int) -> int:
    p = 2
    sig = sigma_primes(order)
    while p in sig:
        p = nextprime(p)
    return p


def prime_subsets(order: int, with_extra: bool = True) -> list[PrimeSet]:
    """Nonempty subsets of sigma(|G|), plus a single prime outside it."""
    sig = sorted(sigma_primes(order))
    out = [PrimeSet(c) for r in range(1, len(sig) + 1) for c in combinations(sig, r)]
    if with_extra:
        out.append(PrimeSet([_extra_prime(order)]))
    return out


def catalog_classes(lat: SubgroupLattice):
    order = lat.group.order
    return [C for C in catalog_instances(sigma_primes(order), _extra_prime(order)) if C.fitting]


def generated_sets(lat: SubgroupLattice) -> list[FittingSet]:
    """Deduplicated Fitting sets built from the catalog: traces, closures of
    cyclic subgroups, products, SLR sets and Hall pullbacks."""
    key = "generated_sets"
    hit = lat.memo.get(key)
    if hit is not None:
        return hit
    G = lat.group
    out: dict[int, FittingSet] = {}

    def add(F: FittingSet) -> None:
        out.setdefault(F.members, F)

    for C in catalog_classes(lat):
        add(trace(lat, C))
    orders = G.element_orders
    for cls in lat.conjugacy_classes:
        rep = cls[0]
        if int(orders[G.indices(lat.masks[rep])].max()) == lat.orders[rep]:
            add(fitting_closure(lat, [rep]))
    nil = trace(lat, class_spec("nilpotent"))
    for p in sorted(sigma_primes(G.order)):
        add(product_with_class(trivial_set(lat), class_spec("p_group", p=p)))
        add(product_with_class(nil, class_spec("pi_prime_group", pi=[p])))
    for pi in prime_subsets(G.order, with_extra=False):
        add(slr(pi, trivial_set(lat)).slr_set)
        add(slr(pi, nil).slr_set)
        add(slr(pi, {p: trace(lat, class_spec("p_group", p=p)) for p in pi}).slr_set)
        add(slr(pi, trace(lat, class_spec("soluble_pi", pi=pi))).slr_set)
        if class_member(G, class_spec("pi_soluble", pi=pi)):
            add(hall_pullback_set(nil, pi))
    hit = sorted(out.values(), key=lambda F: (F.members.bit_count(), F.members))
    lat.memo[key] = hit
    return hit


def generated_hfunctions(lat: SubgroupLattice) -> list[HFunction]:
    """Invariable H-functions ``p -> X`` over every pi and generated X.

    Both full and non-full functions are kept so that hypothesis checks are
    exercised in both directions.
    """
    key = "generated_hfunctions"
    hit = lat.memo.get(key)
    if hit is None:
        hit = []
        seen = set()
        for pi in prime_subsets(lat.group.order):
            for X in generated_sets(lat):
                hf = slr(pi, X)
                sig = (tuple(sorted(pi)), X.members)
                if sig not in seen:
                    seen.add(sig)
                    hit.append(hf)
        lat.memo[key] = hit
    return hit


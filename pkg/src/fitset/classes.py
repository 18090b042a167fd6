"""Catalog of group classes: membership, radicals and residuals.

A :class:`ClassPredicate` names a catalog entry plus its parameters.  Each
entry carries flags saying whether it is a Fitting class (radicals allowed)
and a formation (residuals allowed); asking for a radical or residual of a
class without the flag is an error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .errors import ArgumentError, ConfigError, ConsistencyError, ParseError
from .group import Group, PrimeSet, Subgroup, is_pi_number, is_pi_prime_number, sigma_primes
from .lattice import all_subgroups
from .quotients import as_abstract, chief_series, quotient_group


@dataclass(frozen=True)
class ClassPredicate:
    name: str
    pi: PrimeSet | None = None
    p: int | None = None
    k: int | None = None
    args: tuple["ClassPredicate", ...] = ()
    _entry: "_Entry" = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        entry = CATALOG.get(self.name)
        if entry is None:
            raise ConfigError(f"unknown class {self.name!r}")
        for param in entry.params:
            if getattr(self, param) in (None, ()):
                raise ConfigError(f"class {self.name!r} needs parameter {param!r}")
        if self.pi is not None and not isinstance(self.pi, PrimeSet):
            object.__setattr__(self, "pi", PrimeSet(self.pi))
        if self.p is not None:
            PrimeSet([self.p])
        object.__setattr__(self, "_entry", entry)

    @property
    def key(self) -> str:
        out = self.name
        if self.pi is not None:
            out += "{" + ",".join(map(str, sorted(self.pi))) + "}"
        if self.p is not None:
            out += f"({self.p})"
        if self.k is not None:
            out += f"[k={self.k}]"
        if self.args:
            out += "(" + ",".join(a.key for a in self.args) + ")"
        return out

    def __str__(self) -> str:
        return self.key

    @property
    def fitting(self) -> bool:
        return self._entry.fitting(self)

    @property
    def formation(self) -> bool:
        return self._entry.formation(self)

    @property
    def homomorph(self) -> bool:
        """Fitting class closed under homomorphic images."""
        return self.fitting and self.formation

    @property
    def order_only(self) -> bool:
        return self._entry.by_order is not None

    def accepts_order(self, n: int) -> bool:
        return self._entry.by_order(self, n)

    def contains(self, G: Group) -> bool:
        return class_member(G, self)

    def to_spec(self) -> dict:
        out: dict = {"name": self.name}
        if self.pi is not None:
            out["pi"] = sorted(self.pi)
        if self.p is not None:
            out["p"] = self.p
        if self.k is not None:
            out["k"] = self.k
        if self.args:
            out["args"] = [a.to_spec() for a in self.args]
        return out


@dataclass(frozen=True)
class _Entry:
    params: tuple[str, ...]
    member: Callable[[Group, ClassPredicate], bool]
    fitting: Callable[[ClassPredicate], bool]
    formation: Callable[[ClassPredicate], bool]
    by_order: Callable[[ClassPredicate, int], bool] | None = None


def class_spec(name: str, pi: Iterable[int] | None = None, p: int | None = None,
               k: int | None = None, args: Iterable[ClassPredicate] = ()) -> ClassPredicate:
    return ClassPredicate(name, PrimeSet(pi) if pi is not None else None, p, k, tuple(args))


def parse_class(spec: dict) -> ClassPredicate:
    """ClassPredicate from its JSON form ``{"name", "pi"|"p"|"k"|"args"}``."""
    if isinstance(spec, str):
        spec = {"name": spec}
    if not isinstance(spec, dict) or "name" not in spec:
        raise ParseError(f"class spec must be an object with a name, got {spec!r}")
    unknown = set(spec) - {"name", "pi", "p", "k", "args"}
    if unknown:
        raise ParseError(f"unknown class spec fields {sorted(unknown)}")
    try:
        return class_spec(
            spec["name"],
            pi=spec.get("pi"),
            p=spec.get("p"),
            k=spec.get("k"),
            args=[parse_class(a) for a in spec.get("args", [])],
        )
    except ArgumentError as exc:
        raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# group-level structure used by several entries


def derived_subgroup(G: Group, mask: int | None = None) -> int:
    mask = G.full_mask if mask is None else mask
    e = np.array(G.indices(mask), dtype=np.int64)
    inv, mul = G.inverse, G.mul_table
    comm = np.unique(mul[mul[inv[e][:, None], inv[e][None, :]], mul[np.ix_(e, e)]])
    return G.closure_mask(comm.tolist())


def is_soluble(G: Group) -> bool:
    hit = G.memo.get("soluble")
    if hit is None:
        cur = G.full_mask
        while True:
            nxt = derived_subgroup(G, cur)
            if nxt == cur:
                break
            cur = nxt
        hit = G.memo["soluble"] = cur == 1
    return hit


def is_nilpotent(G: Group) -> bool:
    """Every Sylow subgroup is normal, i.e. each prime has exactly |G|_p p-elements."""
    hit = G.memo.get("nilpotent")
    if hit is None:
        orders = G.element_orders
        hit = True
        for p in sigma_primes(G.order):
            n_p = sum(1 for o in orders if is_pi_number(int(o), (p,)))
            if n_p != PrimeSet([p]).part(G.order):
                hit = False
                break
        G.memo["nilpotent"] = hit
    return hit


def _largest_normal_over(G: Group, base: int, ok: Callable[[int], bool]) -> int:
    """Largest normal M >= base with ``ok(|M : base|)``."""
    nb = base.bit_count()
    best = base
    for m in G.normal_subgroups:
        if m & base == base and ok(m.bit_count() // nb) and m.bit_count() > best.bit_count():
            best = m
    return best


def o_pi(G: Group, pi: Iterable[int]) -> int:
    """Mask of O_pi(G), the largest normal pi-subgroup."""
    pi = tuple(pi)
    return _largest_normal_over(G, 1, lambda n: is_pi_number(n, pi))


def o_pi_prime(G: Group, pi: Iterable[int]) -> int:
    pi = tuple(pi)
    return _largest_normal_over(G, 1, lambda n: is_pi_prime_number(n, pi))


def is_pi_soluble(G: Group, pi: Iterable[int]) -> bool:
    """Every chief factor is a pi'-group or an (abelian) soluble pi-group."""
    pi = tuple(pi)
    cs = chief_series(G)
    for i, n in enumerate(cs.factor_orders):
        if is_pi_prime_number(n, pi):
            continue
        if is_pi_number(n, pi) and cs.factor_is_abelian(i):
            continue
        return False
    return True


def pi_length(G: Group, pi: Iterable[int]) -> int | None:
    """Number of pi-steps in the upper pi-series, or None if it stalls."""
    pi = tuple(pi)
    cur, length = 1, 0
    while True:
        cur = _largest_normal_over(G, cur, lambda n: is_pi_prime_number(n, pi))
        if cur == G.full_mask:
            return length
        nxt = _largest_normal_over(G, cur, lambda n: is_pi_number(n, pi))
        if nxt == cur:
            return None
        cur, length = nxt, length + 1


# ---------------------------------------------------------------------------
# entries


def _true(_C):
    return True


def _false(_C):
    return False


def _m_nilpotent(G, C):
    return is_nilpotent(G)


def _m_soluble(G, C):
    return is_soluble(G)


def _m_abelian_p(G, C):
    return is_pi_number(G.order, (C.p,)) and G.is_abelian


def _m_pi_soluble(G, C):
    return is_pi_soluble(G, C.pi)


def _m_pi_nilpotent(G, C):
    q = o_pi_prime(G, C.pi)
    if q.bit_count() * C.pi.part(G.order) != G.order:
        return False
    return is_nilpotent(quotient_group(G, q))


def _m_pi_closed(G, C):
    return o_pi(G, C.pi).bit_count() == C.pi.part(G.order)


def _m_pi_special(G, C):
    m = o_pi(G, C.pi)
    return m.bit_count() == C.pi.part(G.order) and is_nilpotent(as_abstract(Subgroup(G, m)))


def _m_has_hall(G, C):
    target = C.pi.part(G.order)
    return any(o == target for o in all_subgroups(G).orders)


def _m_pi_length(G, C):
    if not is_pi_soluble(G, C.pi):
        return False
    n = pi_length(G, C.pi)
    return n is not None and n <= C.k


def _m_product(G, C):
    a, b = C.args
    r = class_radical(G, a)
    return class_member(quotient_group(G, r.mask), b)


def _m_intersection(G, C):
    return all(class_member(G, a) for a in C.args)


def _by_order_member(G, C):
    return C.accepts_order(G.order)


CATALOG: dict[str, _Entry] = {
    "all": _Entry((), _by_order_member, _true, _true, lambda C, n: True),
    "trivial": _Entry((), _by_order_member, _true, _true, lambda C, n: n == 1),
    "nilpotent": _Entry((), _m_nilpotent, _true, _true),
    "soluble": _Entry((), _m_soluble, _true, _true),
    "p_group": _Entry(("p",), _by_order_member, _true, _true, lambda C, n: is_pi_number(n, (C.p,))),
    "pi_group": _Entry(("pi",), _by_order_member, _true, _true, lambda C, n: is_pi_number(n, C.pi)),
    "pi_prime_group": _Entry(
        ("pi",), _by_order_member, _true, _true, lambda C, n: is_pi_prime_number(n, C.pi)
    ),
    "soluble_pi": _Entry(("pi",), lambda G, C: is_pi_number(G.order, C.pi) and is_soluble(G), _true, _true),
    "nilpotent_pi": _Entry(
        ("pi",), lambda G, C: is_pi_number(G.order, C.pi) and is_nilpotent(G), _true, _true
    ),
    # abelian p-groups: not closed under normal products (D8 = V4 * V4')
    "abelian_p": _Entry(("p",), _m_abelian_p, _false, _true),
    "pi_soluble": _Entry(("pi",), _m_pi_soluble, _true, _true),
    "pi_nilpotent": _Entry(("pi",), _m_pi_nilpotent, _true, _true),
    "pi_closed": _Entry(("pi",), _m_pi_closed, _true, _true),
    "pi_special": _Entry(("pi",), _m_pi_special, _true, _true),
    "has_hall": _Entry(("pi",), _m_has_hall, _false, _false),
    "pi_length_le_k": _Entry(("pi", "k"), _m_pi_length, _true, _true),
    "product": _Entry(
        ("args",), _m_product, lambda C: len(C.args) == 2 and all(a.fitting for a in C.args), _false
    ),
    "intersection": _Entry(
        ("args",),
        _m_intersection,
        lambda C: all(a.fitting for a in C.args),
        lambda C: all(a.formation for a in C.args),
    ),
}


def class_member(G: Group, C: ClassPredicate) -> bool:
    if C.order_only:
        return C.accepts_order(G.order)
    key = ("member", C)
    hit = G.memo.get(key)
    if hit is None:
        if C.name == "product" and len(C.args) != 2:
            raise ConfigError("product needs exactly two arguments")
        if C.name == "product" and not C.args[0].fitting:
            raise ArgumentError(f"product base {C.args[0]} is not a Fitting class")
        hit = bool(C._entry.member(G, C))
        G.memo[key] = hit
    return hit


def class_radical(G: Group, C: ClassPredicate) -> Subgroup:
    """Join of all normal C-subgroups; C must be a Fitting class."""
    if not C.fitting:
        raise ArgumentError(f"{C} is not marked as a Fitting class")
    key = ("radical", C)
    hit = G.memo.get(key)
    if hit is None:
        members = []
        for m in G.normal_subgroups:
            if C.order_only:
                ok = C.accepts_order(m.bit_count())
            else:
                ok = class_member(as_abstract(Subgroup(G, m)), C)
            if ok:
                members.append(m)
        best = members[-1]  # largest order; trivial group is always a member
        if any(m & ~best for m in members):
            raise ConsistencyError(f"{C} has no unique maximal normal member in {G.name}")
        hit = G.memo[key] = Subgroup(G, best)
    return hit


def residual(G: Group, C: ClassPredicate) -> Subgroup:
    """Smallest normal N with G/N in C; C must be a formation."""
    if not C.formation:
        raise ArgumentError(f"{C} is not marked as a formation")
    key = ("residual", C)
    hit = G.memo.get(key)
    if hit is None:
        ok = [m for m in G.normal_subgroups if class_member(quotient_group(G, m), C)]
        best = ok[0]
        if any(best & ~m for m in ok):
            raise ConsistencyError(f"{C}-residual of {G.name} is not unique")
        hit = G.memo[key] = Subgroup(G, best)
    return hit


def catalog_instances(primes: Iterable[int], extra_prime: int | None = None,
                      lengths: Iterable[int] = (0, 1)) -> list[ClassPredicate]:
    """Fitting-class catalog entries instantiated over subsets of ``primes``."""
    from itertools import combinations

    primes = sorted(set(primes))
    singles = primes + ([extra_prime] if extra_prime else [])
    pis = [c for r in range(1, len(primes) + 1) for c in combinations(primes, r)]
    if extra_prime:
        pis.append((extra_prime,))
    out = [class_spec("all"), class_spec("trivial"), class_spec("nilpotent"), class_spec("soluble")]
    out += [class_spec("p_group", p=p) for p in singles]
    for pi in pis:
        for name in ("pi_group", "pi_prime_group", "soluble_pi", "nilpotent_pi", "pi_soluble",
                     "pi_nilpotent", "pi_closed", "pi_special"):
            out.append(class_spec(name, pi=pi))
        for k in lengths:
            out.append(class_spec("pi_length_le_k", pi=pi, k=k))
    return out

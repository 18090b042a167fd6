"""Finite groups as multiplication tables over indexed permutations.

Permutations are tuples of 0-based images; ``p[i]`` is the image of point
``i``.  Products compose left to right: ``(a*b)[i] == b[a[i]]``, so
conjugation is ``h^g = g^-1 h g``.  External cycle notation is 1-based.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from sympy import isprime, primefactors

from . import _kernels
from .errors import ArgumentError, ParseError, SizeError

DEFAULT_CAP = 512

Perm = tuple[int, ...]


def order_cap() -> int:
    """The configured group-order cap (``FITSET_CAP`` overrides the default)."""
    raw = os.environ.get("FITSET_CAP")
    if not raw:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ArgumentError(f"FITSET_CAP must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ArgumentError("FITSET_CAP must be positive")
    return cap


# ---------------------------------------------------------------------------
# prime arithmetic


class PrimeSet(frozenset):
    """A finite set of primes."""

    def __new__(cls, primes: Iterable[int] = ()):
        ps = frozenset(int(p) for p in primes)
        bad = sorted(p for p in ps if not isprime(p))
        if bad:
            raise ArgumentError(f"not prime: {bad}")
        return super().__new__(cls, ps)

    def __repr__(self) -> str:
        return "PrimeSet({" + ", ".join(map(str, sorted(self))) + "})"

    def sorted(self) -> list[int]:
        return sorted(self)

    def part(self, n: int) -> int:
        """The largest divisor of ``n`` that is a pi-number."""
        out = 1
        for p in self:
            while n % p == 0:
                n //= p
                out *= p
        return out

    def __or__(self, other):
        return PrimeSet(frozenset.__or__(self, other))

    def __and__(self, other):
        return PrimeSet(frozenset.__and__(self, other))

    def __sub__(self, other):
        return PrimeSet(frozenset.__sub__(self, other))


def sigma_primes(n: int) -> PrimeSet:
    if n < 1:
        raise ArgumentError("sigma_primes expects a positive integer")
    return PrimeSet(primefactors(n))


def is_pi_number(n: int, pi: Iterable[int]) -> bool:
    pi = set(pi)
    return all(p in pi for p in sigma_primes(n))


def is_pi_prime_number(n: int, pi: Iterable[int]) -> bool:
    """True iff no prime divisor of ``n`` lies in ``pi``."""
    pi = set(pi)
    return not any(p in pi for p in sigma_primes(n))


# ---------------------------------------------------------------------------
# cycle notation


def parse_cycles(cycles: Sequence[Sequence[int]], degree: int) -> Perm:
    """Turn 1-based disjoint cycles into a 0-based image tuple."""
    img = list(range(degree))
    seen: set[int] = set()
    for cyc in cycles:
        if not isinstance(cyc, (list, tuple)):
            raise ParseError(f"cycle must be a list of points, got {cyc!r}")
        pts = []
        for pt in cyc:
            if isinstance(pt, bool) or not isinstance(pt, int):
                raise ParseError(f"cycle point must be an integer, got {pt!r}")
            if pt < 1 or pt > degree:
                raise ParseError(f"point {pt} outside 1..{degree}")
            if pt in seen:
                raise ParseError(f"repeated point {pt} in cycle {list(cyc)}")
            seen.add(pt)
            pts.append(pt - 1)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


def format_cycles(perm: Perm) -> list[list[int]]:
    """Inverse of :func:`parse_cycles`; fixed points are omitted."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = perm[x]
        out.append(cyc)
    return out


def compose(a: Perm, b: Perm) -> Perm:
    return tuple(b[i] for i in a)


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True, eq=False)
class Group:
    name: str
    degree: int
    elements: tuple[Perm, ...]
    mul_table: np.ndarray = field(repr=False)
    generators: tuple[int, ...]

    def __post_init__(self):
        self.mul_table.setflags(write=False)
        # memo for derived data (class membership, radicals, quotients)
        object.__setattr__(self, "_memo", {})

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def memo(self) -> dict:
        return self._memo  # type: ignore[attr-defined]

    def __repr__(self) -> str:
        return f"Group({self.name!r}, order={self.order})"

    # -- element arithmetic ------------------------------------------------

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.argmax(self.mul_table == 0, axis=1).astype(np.int64)
        inv.setflags(write=False)
        return inv

    @cached_property
    def conj_inv_table(self) -> np.ndarray:
        """``t[g, x] = g x g^-1``; a mask ``m`` conjugated by g is ``m[t[g]]``."""
        t = self.mul_table[self.mul_table, self.inverse[:, None]]
        t.setflags(write=False)
        return t

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def conjugate_element(self, x: int, g: int) -> int:
        """``g^-1 x g``."""
        return int(self.mul_table[self.mul_table[self.inverse[g], x], g])

    @cached_property
    def element_orders(self) -> np.ndarray:
        ar = np.arange(self.order)
        power = ar.copy()
        orders = np.ones(self.order, dtype=np.int64)
        active = power != 0
        while active.any():
            power[active] = self.mul_table[power[active], ar[active]]
            orders[active] += 1
            active = power != 0
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul_table == self.mul_table.T).all())

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    # -- masks ---------------------------------------------------------------

    def to_bool(self, mask: int) -> np.ndarray:
        n = self.order
        raw = mask.to_bytes((n + 7) // 8, "little")
        return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little", count=n).astype(bool)

    def from_bool(self, arr: np.ndarray) -> int:
        return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")

    def rows_to_masks(self, rows: np.ndarray) -> list[int]:
        packed = np.packbits(rows, axis=1, bitorder="little")
        return [int.from_bytes(r.tobytes(), "little") for r in packed]

    def mask_of(self, indices: Iterable[int]) -> int:
        m = 0
        for i in indices:
            m |= 1 << int(i)
        return m

    @staticmethod
    def indices(mask: int) -> list[int]:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def closure_mask(self, seed: Iterable[int], base: int = 1) -> int:
        """Mask of the subgroup generated by ``base`` and ``seed`` indices.

        ``base`` must itself be a subgroup mask (default: the trivial group)
        and ``seed`` must contain generators for it.
        """
        gens = np.fromiter((int(s) for s in seed), dtype=np.int64)
        start = self.to_bool(base | 1)
        if gens.size:
            start[gens] = True
        return self.from_bool(_kernels.closure(self.mul_table, start, gens))

    def conjugate_mask(self, mask: int, g: int) -> int:
        """Mask of ``H^g = g^-1 H g``."""
        return self.from_bool(self.to_bool(mask)[self.conj_inv_table[g]])

    def conjugates_rows(self, mask: int) -> np.ndarray:
        """Boolean matrix whose row g is the mask of ``H^g``."""
        return self.to_bool(mask)[self.conj_inv_table]

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Element conjugacy classes, each sorted, ordered by smallest member."""
        t = self.conj_inv_table
        seen = np.zeros(self.order, dtype=bool)
        out = []
        for x in range(self.order):
            if seen[x]:
                continue
            cls = np.unique(t[:, x])
            seen[cls] = True
            out.append(tuple(int(c) for c in cls))
        return tuple(out)

    def generating_set(self, mask: int) -> tuple[int, ...]:
        """A small generating set for the subgroup ``mask`` (greedy, by index)."""
        gens: list[int] = []
        cur = 1
        for x in self.indices(mask):
            if not (cur >> x) & 1:
                gens.append(x)
                cur = self.closure_mask(gens, base=cur)
        return tuple(gens)

    @cached_property
    def normal_subgroups(self) -> tuple[int, ...]:
        """Masks of all normal subgroups, sorted by (order, mask)."""
        ncl = set()
        closures = []
        for cls in self.conjugacy_classes:
            m = self.closure_mask(cls)
            if m not in ncl:
                ncl.add(m)
                closures.append((m, self.generating_set(m)))
        found = {1: ()} | {m: g for m, g in closures}
        queue = list(found)
        while queue:
            x = queue.pop()
            for m, g in closures:
                if m & ~x == 0:
                    continue
                y = self.closure_mask(found[x] + g, base=x)
                if y not in found:
                    found[y] = self.generating_set(y)
                    queue.append(y)
        return tuple(sorted(found, key=lambda m: (m.bit_count(), m)))

    def normal_closure_mask(self, mask: int, within: int | None = None) -> int:
        """Smallest subgroup of ``within`` (default G) normal in it containing ``mask``."""
        within = self.full_mask if within is None else within
        wgens = self.generating_set(within)
        cur = mask
        while True:
            seeds = set(self.generating_set(cur))
            for g in wgens:
                for h in list(seeds):
                    seeds.add(self.conjugate_element(h, g))
            nxt = self.closure_mask(sorted(seeds), base=1)
            if nxt == cur:
                return cur
            cur = nxt

    def check_table(self) -> tuple[bool, str]:
        """Exhaustive identity, inverse, closure and associativity check."""
        mul = self.mul_table
        n = self.order
        if mul.shape != (n, n) or mul.min() < 0 or mul.max() >= n:
            return False, "table entries out of range"
        ar = np.arange(n)
        if not ((mul[0] == ar).all() and (mul[:, 0] == ar).all()):
            return False, "index 0 is not a two-sided identity"
        if not ((mul == 0).sum(axis=1) == 1).all():
            return False, "some element lacks a unique right inverse"
        inv = self.inverse
        if not (mul[inv, ar] == 0).all():
            return False, "right inverse is not a left inverse"
        a, b, c = _kernels.associativity(mul)
        if a >= 0:
            return False, f"associativity fails at ({a}, {b}, {c})"
        if len(set(self.elements)) != n:
            return False, "elements are not pairwise distinct"
        return True, "ok"

    # -- constructors ----------------------------------------------------------

    @classmethod
    def from_generators(
        cls, name: str, degree: int, gens: Sequence[Perm], cap: int | None = None
    ) -> "Group":
        cap = order_cap() if cap is None else cap
        ident = tuple(range(degree))
        elements: list[Perm] = [ident]
        index = {ident: 0}
        layer = [ident]
        while layer:
            new = []
            for x in layer:
                for g in gens:
                    y = compose(x, g)
                    if y not in index:
                        index[y] = -1
                        new.append(y)
            new.sort()
            for y in new:
                index[y] = len(elements)
                elements.append(y)
                if len(elements) > cap:
                    raise SizeError(f"closure of {name!r} exceeds the order cap {cap}")
            layer = new
        table = _table_from_perms(elements, index)
        gen_idx = tuple(index[g] for g in gens)
        return cls(name, degree, tuple(elements), table, gen_idx)

    @classmethod
    def from_table(cls, name: str, table: np.ndarray) -> "Group":
        """Build a group from a table; elements are its right regular permutations."""
        table = np.array(table, dtype=np.int64, copy=True)
        n = table.shape[0]
        if n == 0 or table.shape != (n, n):
            raise ArgumentError("table must be square and nonempty")
        if not (table[0] == np.arange(n)).all():
            raise ArgumentError("index 0 must be the identity")
        elements = tuple(tuple(int(v) for v in table[:, i]) for i in range(n))
        g = cls(name, n, elements, table, ())
        object.__setattr__(g, "generators", g.generating_set(g.full_mask))
        return g


def _table_from_perms(elements: list[Perm], index: dict[Perm, int]) -> np.ndarray:
    P = np.array(elements, dtype=np.int64)
    n, d = P.shape
    if d == 0:
        return np.zeros((n, n), dtype=np.int64)
    prod = P[np.arange(n)[None, :, None], P[:, None, :]]  # prod[i, j] = P[i] then P[j]
    # hash rows, then verify exactly; fall back to a dict on any collision
    rng = np.random.default_rng(0x5EED)
    w = rng.integers(1, 2**62, size=d, dtype=np.int64)
    with np.errstate(over="ignore"):
        keys = P @ w
        pkeys = prod.reshape(-1, d) @ w
    order = np.argsort(keys, kind="stable")
    pos = np.searchsorted(keys[order], pkeys)
    pos = np.clip(pos, 0, n - 1)
    table = order[pos].reshape(n, n)
    if not (P[table] == prod).all():
        table = np.array(
            [[index[tuple(int(v) for v in prod[i, j])] for j in range(n)] for i in range(n)],
            dtype=np.int64,
        )
    return np.ascontiguousarray(table, dtype=np.int64)


def parse_group(spec: dict, cap: int | None = None) -> Group:
    """Build a :class:`Group` from a group-spec document."""
    if not isinstance(spec, dict):
        raise ParseError("group spec must be a JSON object")
    try:
        degree = spec["degree"]
        gens = spec.get("generators", [])
    except KeyError as exc:
        raise ParseError(f"group spec missing field {exc}") from None
    if isinstance(degree, bool) or not isinstance(degree, int) or degree < 1:
        raise ParseError(f"degree must be a positive integer, got {degree!r}")
    if not isinstance(gens, list):
        raise ParseError("generators must be a list")
    name = spec.get("name", "G")
    perms = [parse_cycles(g, degree) for g in gens]
    return Group.from_generators(str(name), degree, perms, cap=cap)


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent`` given by its element mask."""

    parent: Group
    mask: int

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other.mask == self.mask

    def __hash__(self):
        return hash((id(self.parent), self.mask))

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> x) & 1)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.mask != other.mask

    @property
    def elements(self) -> list[int]:
        return Group.indices(self.mask)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, of={self.parent.name!r})"


def subgroup_generated(G: Group, seed: Iterable[int]) -> Subgroup:
    seed = [int(s) for s in seed]
    for s in seed:
        if s < 0 or s >= G.order:
            raise ArgumentError(f"element index {s} outside 0..{G.order - 1}")
    return Subgroup(G, G.closure_mask(seed))


def whole(G: Group) -> Subgroup:
    return Subgroup(G, G.full_mask)


def trivial(G: Group) -> Subgroup:
    return Subgroup(G, 1)


def element_index(G: Group, cycles: Sequence[Sequence[int]]) -> int:
    """Index of the element given in 1-based cycle notation."""
    perm = parse_cycles(cycles, G.degree)
    try:
        return G.elements.index(perm)
    except ValueError:
        raise ArgumentError(f"{cycles!r} is not an element of {G.name}") from None

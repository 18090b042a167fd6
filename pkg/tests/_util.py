"""Shared helpers for the test modules."""

from __future__ import annotations

import json
from functools import lru_cache

from fitset.group import Group, element_index, parse_group
from fitset.harness import default_corpus
from fitset.lattice import SubgroupLattice, all_subgroups


@lru_cache(maxsize=None)
def corpus_group(name: str) -> Group:
    for fn in sorted(default_corpus().glob("*.json")):
        doc = json.loads(fn.read_text())
        if doc["group"]["name"] == name:
            return parse_group(doc["group"])
    raise KeyError(name)


def lat_of(name: str) -> SubgroupLattice:
    return all_subgroups(corpus_group(name))


def sub_idx(lat: SubgroupLattice, *gens) -> int:
    """Lattice index of the subgroup generated by cycle-notation elements."""
    G = lat.group
    return lat.index[G.closure_mask([element_index(G, g) for g in gens])]


def orders(lat: SubgroupLattice, idxs) -> list[int]:
    return sorted(lat.orders[i] for i in idxs)


def idx_of_order(lat: SubgroupLattice, n: int) -> list[int]:
    return [i for i, o in enumerate(lat.orders) if o == n]


CORPUS_NAMES = ["S3", "C6", "D8", "Q8", "A4", "S4", "SL(2,3)", "S3xS3", "A5"]
SMALL_NAMES = ["S3", "C6", "D8", "Q8", "A4", "S4", "SL(2,3)"]

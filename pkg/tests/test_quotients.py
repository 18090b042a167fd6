import numpy as np
import pytest

from fitset.errors import ArgumentError
from fitset.group import Group, Subgroup, element_index, subgroup_generated, whole
from fitset.lattice import all_subgroups
from fitset.quotients import as_abstract, chief_series, globalize, localize, quotient, section_group

from _util import CORPUS_NAMES, corpus_group, lat_of


def sub(G, *gens):
    return subgroup_generated(G, [element_index(G, g) for g in gens])


def test_s4_mod_v4():
    S4 = corpus_group("S4")
    Q = quotient(S4, sub(S4, [[1, 2], [3, 4]], [[1, 3], [2, 4]])).quotient_group
    assert Q.order == 6 and not Q.is_abelian
    assert len(all_subgroups(Q)) == 6


def test_trivial_quotients():
    S4 = corpus_group("S4")
    assert quotient(S4, whole(S4)).quotient_group.order == 1
    Q = quotient(S4, sub(S4)).quotient_group
    assert Q.order == 24
    # mod 1 keeps the representatives in element order, so the table is identical
    assert (Q.mul_table == S4.mul_table).all()


def test_non_normal_rejected():
    S4 = corpus_group("S4")
    with pytest.raises(ArgumentError):
        quotient(S4, sub(S4, [[1, 2]]))


@pytest.mark.parametrize("name", ["S4", "SL(2,3)", "S3xS3"])
def test_projection_is_homomorphism(name):
    G = corpus_group(name)
    for m in G.normal_subgroups:
        Q = quotient(G, Subgroup(G, m))
        p = Q.projection
        assert Q.quotient_group.order * Subgroup(G, m).order == G.order
        assert (Q.quotient_group.mul_table[p[:, None], p[None, :]] == p[G.mul_table]).all()
        assert Q.pullback(1) == m
        assert Q.pullback(Q.image(G.full_mask)) == G.full_mask


def test_as_abstract_d8():
    S4 = corpus_group("S4")
    D = as_abstract(sub(S4, [[1, 2, 3, 4]], [[1, 3]]))
    assert D.order == 8 and len(all_subgroups(D)) == 10
    assert as_abstract(sub(S4)).order == 1
    full = as_abstract(whole(S4))
    assert (full.mul_table == S4.mul_table).all()


def test_localize_roundtrip():
    lat = lat_of("S4")
    H = lat.subgroups[lat.top - 1]
    for m in lat.masks:
        if m & ~H.mask == 0:
            assert globalize(H, localize(H, m)) == m


def test_section_group():
    lat = lat_of("S4")
    a4 = [i for i, o in enumerate(lat.orders) if o == 12][0]
    v4 = [i for i in lat.normal_indices() if lat.orders[i] == 4][0]
    assert section_group(lat, a4, v4).order == 3


def test_chief_series_examples():
    cs = chief_series(corpus_group("S4"))
    assert cs.factor_orders == [4, 3, 2]
    assert [H.order for H in cs.chain] == [1, 4, 12, 24]
    c6 = chief_series(corpus_group("C6"))
    assert [H.order for H in c6.chain] == [1, 2, 6]
    triv = chief_series(Group.from_generators("1", 1, []))
    assert triv.factor_orders == []


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_chief_series_invariants(name):
    G = corpus_group(name)
    cs = chief_series(G)
    assert int(np.prod(cs.factor_orders)) == G.order
    for H in cs.chain:
        assert H.mask in G.normal_subgroups
    for i, F in enumerate(cs.factors):
        # chief factors are characteristically simple: abelian ones are elementary
        if cs.factor_is_abelian(i):
            assert F.is_abelian
            assert len(set(F.element_orders[1:].tolist())) == 1

import pytest
from hypothesis import given, settings, strategies as st

from fitset.classes import class_member, class_spec
from fitset.errors import ArgumentError, ConsistencyError, PreconditionError
from fitset.fitting import (
    FittingSet,
    f_radical,
    fitting_closure,
    hall_pullback_set,
    is_semilocal,
    product_with_class,
    radical,
    sigma_of_set,
    slr,
    trace,
    trivial_set,
    verify_axioms,
)
from fitset.quotients import as_abstract, section_group
from fitset.specs import generated_sets

from _util import CORPUS_NAMES, SMALL_NAMES, idx_of_order, lat_of, orders, sub_idx

NIL = class_spec("nilpotent")


def p_closed(lat, p):
    return slr([p], {p: trace(lat, class_spec("soluble_pi", pi=[p]))})


@pytest.fixture(scope="module")
def S3():
    return lat_of("S3")


@pytest.fixture(scope="module")
def S4():
    return lat_of("S4")


def transpositions(S3):
    return idx_of_order(S3, 2)


def test_verify_axioms_examples(S3):
    c2 = transpositions(S3)
    assert verify_axioms(S3, [0, *c2])
    v = verify_axioms(S3, [0, c2[0]])
    assert not v and v.reason == "iii"
    w = v.witness
    lat = S3
    assert lat.conjugate_index(w["member"], w["element"]) == w["conjugate"]
    assert verify_axioms(S3, range(len(S3)))
    with pytest.raises(ArgumentError):
        verify_axioms(S3, [])


def test_verify_axioms_other_failures(S4):
    # a normal member without its normal subgroups
    v4 = [i for i in S4.normal_indices() if S4.orders[i] == 4][0]
    assert verify_axioms(S4, [0, v4]).reason == "i"
    # abelian 2-subgroups of S4: the normal V4 and a non-normal V4 generate a D8
    abelian2 = [i for i in range(len(S4)) if class_member(as_abstract(S4.subgroups[i]), class_spec("abelian_p", p=2))]
    v = verify_axioms(S4, abelian2)
    assert v.reason == "ii" and S4.orders[v.witness["product"]] == 8


def test_fitting_closure_examples(S3, S4):
    F = fitting_closure(S3, [sub_idx(S3, [[1, 2]])])
    assert orders(S3, F.indices()) == [1, 2, 2, 2]
    assert fitting_closure(S3, [0]).indices() == [0]
    F = fitting_closure(S4, [idx_of_order(S4, 12)[0]])
    assert orders(S4, F.indices()) == [1, 2, 2, 2, 4, 12]


def test_trace_examples(S3, S4):
    F = trace(S4, NIL)
    assert len(F) == 24
    assert sorted(set(range(len(S4))) - set(F.indices())) == sorted(idx_of_order(S4, 6) + idx_of_order(S4, 12) + [S4.top])
    assert len(trace(S4, class_spec("all"))) == 30
    assert orders(S3, trace(S3, class_spec("pi_prime_group", pi=[2])).indices()) == [1, 3]
    with pytest.raises(ArgumentError):
        trace(S4, class_spec("abelian_p", p=2))


def test_radical_examples(S3, S4):
    G4 = S4.subgroups[S4.top]
    assert radical(G4, trace(S4, NIL)).order == 4
    for i in range(len(S4)):
        assert radical(S4.subgroups[i], trace(S4, class_spec("all"))) == S4.subgroups[i]
    F = fitting_closure(S3, transpositions(S3))
    assert radical(S3.subgroups[S3.top], F).order == 1


def test_sigma_examples(S3, S4):
    assert sigma_of_set(fitting_closure(S3, transpositions(S3))) == {2}
    assert sigma_of_set(trivial_set(S4)) == set()
    assert sigma_of_set(trace(S4, NIL)) == {2, 3}


def test_product_examples(S3, S4):
    F = fitting_closure(S3, transpositions(S3))
    P = product_with_class(F, class_spec("pi_prime_group", pi=[2]))
    assert orders(S3, P.indices()) == [1, 2, 2, 2, 3]
    assert len(product_with_class(F, class_spec("all"))) == 6
    P = product_with_class(trace(S4, class_spec("p_group", p=2)), class_spec("pi_prime_group", pi=[2]))
    assert len(P) == 25
    assert S4.top not in P and not any(i in P for i in idx_of_order(S4, 6))
    with pytest.raises(ArgumentError):
        product_with_class(F, class_spec("has_hall", pi=[2]))


def test_slr_examples(S3, S4):
    hf = slr([2, 3], {2: trivial_set(S4), 3: trivial_set(S4)})
    assert hf.slr_set.indices() == [0]
    hf = slr([2], {2: trace(S4, class_spec("soluble_pi", pi=[2]))})
    assert len(hf.slr_set) == 25
    assert hf.flags == {"integrated": True, "full": True, "invariable": True}
    hf = slr([2, 3], trace(S3, NIL))
    assert orders(S3, hf.slr_set.indices()) == [1, 2, 2, 2, 3]
    with pytest.raises(ArgumentError):
        slr([], trace(S3, NIL))
    with pytest.raises(ArgumentError):
        slr([2, 3], {2: trace(S3, NIL)})


def test_f_radical_examples(S4):
    G = S4.subgroups[S4.top]
    assert f_radical(G, p_closed(S4, 2)).order == 4
    assert f_radical(G, slr([2, 3], trivial_set(S4))).order == 1
    hf = slr([2, 3], {p: trace(S4, class_spec("soluble_pi", pi=[p])) for p in (2, 3)})
    assert f_radical(G, hf).order == 4


def test_is_semilocal_examples(S3, S4):
    assert is_semilocal(p_closed(S4, 2).slr_set, [2])
    v = is_semilocal(trace(S3, class_spec("p_group", p=2)), [2])
    assert not v and S3.orders[v.witness["subgroup"]] == 3
    assert is_semilocal(trace(S4, class_spec("all")), [5])
    v = is_semilocal(trace(S3, class_spec("all")), [2, 3])
    assert v.detail.slr_set == trace(S3, class_spec("all"))


def test_hall_pullback_examples(S3, S4):
    F = fitting_closure(S3, transpositions(S3))
    assert len(hall_pullback_set(F, [2])) == 6
    assert len(hall_pullback_set(trace(S4, class_spec("all")), [3])) == 30
    # stand-in for an abelian-2 base: Fitting closure of the normal V4
    v4 = [i for i in S4.normal_indices() if S4.orders[i] == 4][0]
    M = hall_pullback_set(fitting_closure(S4, [v4]), [2])
    assert orders(S4, M.indices()) == [1, 2, 2, 2, 3, 3, 3, 3, 4, 12]
    with pytest.raises(PreconditionError):
        hall_pullback_set(trace(lat_of("A5"), NIL), [2])


def test_fittingset_rejects_non_fitting(S3):
    with pytest.raises(ConsistencyError):
        FittingSet(S3, [0, transpositions(S3)[0]])


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_generated_sets_satisfy_axioms(name):
    lat = lat_of(name)
    for F in generated_sets(lat):
        assert verify_axioms(lat, F.members), F.provenance


@pytest.mark.parametrize("name", SMALL_NAMES)
def test_radical_is_largest_normal_member(name):
    lat = lat_of(name)
    for F in generated_sets(lat):
        for h in range(0, len(lat), 2):
            r = F.radicals[h]
            assert r in F and lat.is_normal_in(r, h)
            for n in lat.normal_indices() if h == lat.top else []:
                if n in F:
                    assert lat.contains(r, n)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL_NAMES), st.data())
def test_closure_is_smallest_fitting_set(name, data):
    lat = lat_of(name)
    seed = data.draw(st.lists(st.integers(0, len(lat) - 1), min_size=1, max_size=3))
    F = fitting_closure(lat, seed)
    assert verify_axioms(lat, F.members)
    assert all(s in F for s in seed)
    # closure of the closure changes nothing, and any generated set containing the seed contains F
    assert fitting_closure(lat, F.indices()) == F
    for X in generated_sets(lat):
        if all(s in X for s in seed):
            assert F <= X


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL_NAMES), st.data())
def test_product_contains_base(name, data):
    lat = lat_of(name)
    F = data.draw(st.sampled_from(generated_sets(lat)))
    p = data.draw(st.sampled_from([2, 3, 5]))
    P = product_with_class(F, class_spec("pi_prime_group", pi=[p]))
    assert F <= P
    for h in P.indices():
        assert section_group(lat, h, F.radicals[h]).order % p != 0


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SMALL_NAMES), st.data())
def test_intersection_is_fitting(name, data):
    lat = lat_of(name)
    sets = generated_sets(lat)
    A = data.draw(st.sampled_from(sets))
    B = data.draw(st.sampled_from(sets))
    I = A & B
    assert verify_axioms(lat, I.members)
    assert I <= A and I <= B

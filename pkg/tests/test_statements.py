import pytest

from fitset import statements as S
from fitset.classes import class_spec
from fitset.fitting import slr, trace
from fitset.injectors import injectors_brute
from fitset.specs import catalog_classes, generated_hfunctions, generated_sets, prime_subsets

from _util import SMALL_NAMES, lat_of, orders

NIL = class_spec("nilpotent")


def not_failed(rep):
    assert rep.status != "fail", rep.to_json()
    return rep.status


def test_corollary_6_1_s4():
    lat = lat_of("S4")
    rep = S.corollary_6_1(lat, [2])
    assert rep.status == "pass"
    inj = injectors_brute(trace(lat, class_spec("pi_closed", pi=[2])))
    assert orders(lat, inj.indices_in_lattice) == [12]


def test_corollary_6_2_s4():
    lat = lat_of("S4")
    assert S.corollary_6_2(lat, [2], 1).status == "pass"
    inj = injectors_brute(trace(lat, class_spec("pi_length_le_k", pi=[2], k=1)))
    assert orders(lat, inj.indices_in_lattice) == [12]


def test_corollary_4_6_soluble_only():
    assert S.corollary_4_6(lat_of("S4")).status == "pass"
    assert S.corollary_4_6(lat_of("A5")).status == "hypotheses_unmet"


def test_degenerations():
    for name in ("S3", "S4", "SL(2,3)"):
        lat = lat_of(name)
        for p in (2, 3):
            assert S.sylow_degeneration(lat, p).status == "pass"
        assert S.trace_all_degeneration(lat).status == "pass"
        assert S.disjoint_pi_degeneration(lat, [5]).status == "pass"
        assert S.disjoint_pi_degeneration(lat, [2]).status == "hypotheses_unmet"


def test_lemma_4_2_negative():
    lat = lat_of("S3")
    rep = S.lemma_4_2(trace(lat, class_spec("p_group", p=2)), [2])
    assert rep.status == "pass"


def test_example_4_1_s4():
    rep = S.example_4_1(lat_of("S4"), [2])
    assert rep.status == "pass" and len(rep.conclusions) == 4


def test_prop_5_examples():
    lat = lat_of("S3")
    hf = slr([2, 3], trace(lat, NIL))
    assert S.lemma_4_3(hf).status in ("pass", "hypotheses_unmet")
    assert S.corollary_5_4(trace(lat, NIL)).status == "pass"


@pytest.mark.parametrize("name", SMALL_NAMES)
def test_set_level_statements(name):
    lat = lat_of(name)
    sets = generated_sets(lat)
    pis = prime_subsets(lat.group.order)
    for F in sets:
        assert not_failed(S.lemma_2_1(F)) == "pass"
        not_failed(S.lemma_2_3(F))
        not_failed(S.lemma_2_5(F))
        not_failed(S.corollary_5_4(F))
        for pi in pis:
            not_failed(S.lemma_2_4(F, pi))
            assert not_failed(S.lemma_4_2(F, pi)) == "pass"


@pytest.mark.parametrize("name", ["S3", "D8", "A4", "S4"])
def test_hfunction_statements(name):
    lat = lat_of(name)
    sets = generated_sets(lat)
    for hf in generated_hfunctions(lat):
        not_failed(S.lemma_4_3(hf))
        not_failed(S.prop_4_8(hf))
        for X in sets[:4]:
            not_failed(S.lemma_4_4(hf, X))


@pytest.mark.parametrize("name", SMALL_NAMES)
def test_group_level_statements(name):
    lat = lat_of(name)
    for pi in prime_subsets(lat.group.order):
        for fn in (S.example_4_1, S.corollary_4_5, S.corollary_5_2, S.corollary_5_3, S.corollary_6_1,
                   S.disjoint_pi_degeneration):
            not_failed(fn(lat, pi))
        for k in (1, 2):
            not_failed(S.corollary_6_2(lat, pi, k))
        for X in catalog_classes(lat)[:8]:
            not_failed(S.corollary_5_1(lat, X, pi))
    not_failed(S.corollary_4_6(lat))


def test_calculus_s4():
    lat = lat_of("S4")
    classes = [class_spec("nilpotent"), class_spec("pi_prime_group", pi=[2]), class_spec("p_group", p=3),
               class_spec("soluble_pi", pi=[2])]
    for F in generated_sets(lat)[:5]:
        for C in classes:
            assert not_failed(S.prop_3_2(F, C)) == "pass"
            for D in classes:
                assert not_failed(S.prop_3_3(F, C, D)) == "pass"
                not_failed(S.prop_3_4_classes(F, C, D))
            for K in generated_sets(lat)[:4]:
                not_failed(S.prop_3_4_sets(F, K, C))

import pytest

from fitset.classes import (
    catalog_instances,
    class_member,
    class_radical,
    class_spec,
    is_pi_soluble,
    o_pi,
    parse_class,
    pi_length,
    residual,
)
from fitset.errors import ArgumentError, ConfigError, ParseError
from fitset.group import Subgroup, sigma_primes
from fitset.quotients import as_abstract, quotient_group

from _util import CORPUS_NAMES, corpus_group


def test_membership_examples():
    S4, A5 = corpus_group("S4"), corpus_group("A5")
    assert not class_member(S4, class_spec("nilpotent"))
    assert class_member(S4, class_spec("pi_soluble", pi=[2]))
    assert not class_member(A5, class_spec("pi_soluble", pi=[2]))
    for name in CORPUS_NAMES:
        assert class_member(corpus_group(name), class_spec("all"))


def test_radical_examples():
    S4 = corpus_group("S4")
    assert class_radical(S4, class_spec("nilpotent")).order == 4
    assert class_radical(S4, class_spec("all")).order == 24
    assert class_radical(S4, class_spec("soluble_pi", pi=[2])).order == 4
    with pytest.raises(ArgumentError):
        class_radical(S4, class_spec("abelian_p", p=2))


def test_residual_examples():
    S4 = corpus_group("S4")
    assert residual(S4, class_spec("pi_prime_group", pi=[3])).order == 12
    assert residual(S4, class_spec("all")).order == 1
    assert residual(S4, class_spec("pi_prime_group", pi=[2])).order == 24
    with pytest.raises(ArgumentError):
        residual(S4, class_spec("has_hall", pi=[2]))


def test_unknown_and_malformed():
    with pytest.raises(ConfigError):
        class_spec("supersoluble")
    with pytest.raises(ConfigError):
        class_spec("p_group")
    with pytest.raises(ParseError):
        parse_class({"name": "p_group", "p": 2, "bogus": 1})
    with pytest.raises(ParseError):
        parse_class({"name": "p_group", "p": 4})


def test_spec_roundtrip():
    for C in catalog_instances([2, 3], 5):
        assert parse_class(C.to_spec()) == C
    prod = class_spec("product", args=[class_spec("nilpotent"), class_spec("pi_prime_group", pi=[2])])
    assert prod.fitting and not prod.formation
    assert parse_class(prod.to_spec()) == prod


def test_pi_series():
    S4, A5 = corpus_group("S4"), corpus_group("A5")
    assert is_pi_soluble(S4, [2]) and not is_pi_soluble(A5, [2])
    assert is_pi_soluble(A5, [7])
    assert pi_length(S4, [2]) == 2
    assert pi_length(S4, [3]) == 1
    assert o_pi(S4, [2]).bit_count() == 4


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_catalog_flags_hold(name):
    """Fitting flags imply normal-subgroup and normal-join closure on the
    group's normal subgroups; formation flags imply closure under quotients."""
    G = corpus_group(name)
    normals = G.normal_subgroups
    for C in catalog_instances(sigma_primes(G.order), 7):
        inside = {m: class_member(as_abstract(Subgroup(G, m)), C) for m in normals}
        if C.fitting:
            R = class_radical(G, C).mask
            assert all(m & ~R == 0 for m, ok in inside.items() if ok)
            assert inside[R]
        if C.formation and class_member(G, C):
            assert all(class_member(quotient_group(G, m), C) for m in normals)

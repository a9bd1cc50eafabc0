import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import AlternatingGroup, SymmetricGroup

from tatecoh.groups import (
    A4,
    A5,
    KLEIN_FOUR,
    S4,
    ClosureTooLarge,
    Cyclic,
    Dihedral,
    DirectProduct,
    InvalidPermutation,
    PermGroup,
    alternating_group,
    check_condition_Bprime,
    cyclic_group,
    dihedral_group,
    direct_product,
    group_from_generators,
    identify_catalog_type,
    is_l_normal,
    isomorphic,
    largest_normal_coprime_subgroup,
    parse_catalog_type,
    perm_from_cycles,
    symmetric_group,
)


def to_sympy(G: PermGroup) -> PermutationGroup:
    return PermutationGroup([Permutation(list(g)) for g in G.generators] or [Permutation(G.degree - 1)])


@pytest.mark.parametrize("G, order", [
    (symmetric_group(4), 24), (alternating_group(4), 12), (alternating_group(5), 60),
    (dihedral_group(6), 12), (cyclic_group(7), 7),
])
def test_orders(G, order):
    assert G.order == order == to_sympy(G).order()


@pytest.mark.parametrize("G, expected", [
    (symmetric_group(4), S4), (alternating_group(4), A4), (alternating_group(5), A5),
    (dihedral_group(3), Dihedral(3)), (cyclic_group(5), Cyclic(5)),
    (direct_product(cyclic_group(2), cyclic_group(2)), KLEIN_FOUR),
    (direct_product(cyclic_group(2), alternating_group(4)), DirectProduct(Cyclic(2), A4)),
])
def test_identify(G, expected):
    assert identify_catalog_type(G) == expected


def test_catalog_strings_round_trip():
    for t in (S4, A4, KLEIN_FOUR, Dihedral(3), Cyclic(3), DirectProduct(Cyclic(2), A5)):
        assert parse_catalog_type(str(t)) == t
    assert str(KLEIN_FOUR) == "D2"


def test_perm_from_cycles():
    assert perm_from_cycles(4, [[1, 2, 3]]) == [2, 3, 1, 4]


def test_invalid_permutation():
    with pytest.raises(InvalidPermutation):
        group_from_generators(3, [[1, 1, 2]])


def test_closure_guard():
    with pytest.raises(ClosureTooLarge):
        symmetric_group(8).elements


@pytest.mark.parametrize("G", [symmetric_group(4), alternating_group(5), dihedral_group(6)])
@pytest.mark.parametrize("ell", [2, 3, 5])
def test_sylow_against_sympy(G, ell):
    P = G.sylow(ell)
    assert P.order == to_sympy(G).sylow_subgroup(ell).order()
    assert P.is_subgroup_of(G)


@pytest.mark.parametrize("G", [symmetric_group(4), alternating_group(4), dihedral_group(4)])
def test_center_and_derived_against_sympy(G):
    S = to_sympy(G)
    assert G.center().order == S.center().order()
    assert G.derived_subgroup().order == S.derived_subgroup().order()
    assert len(G.conjugacy_classes()) == len(S.conjugacy_classes())


def test_all_sylows_count():
    assert len(symmetric_group(4).all_sylows(3)) == 4
    assert len(alternating_group(5).all_sylows(5)) == 6


def test_normal_coprime_and_l_normal():
    assert largest_normal_coprime_subgroup(symmetric_group(4), 3).order == 4
    assert is_l_normal(symmetric_group(4), 3)
    assert is_l_normal(alternating_group(5), 5)


def test_quotient():
    S4g = symmetric_group(4)
    V = largest_normal_coprime_subgroup(S4g, 3)
    assert identify_catalog_type(S4g.quotient(V)) == Dihedral(3)


def test_bprime_examples():
    S4g = symmetric_group(4)
    D3 = S4g.subgroup([tuple([1, 2, 0, 3]), tuple([1, 0, 2, 3])])
    assert check_condition_Bprime(S4g, D3, 3)
    assert not check_condition_Bprime(dihedral_group(3), cyclic_group(3), 3)
    Z3 = S4g.subgroup([tuple([1, 2, 0, 3])])
    assert not check_condition_Bprime(S4g, Z3, 3)


def test_isomorphic_unknown_never_matches():
    G = direct_product(symmetric_group(3), cyclic_group(5))
    assert identify_catalog_type(G).tag == "Unknown"
    assert not isomorphic(G, G)


@settings(max_examples=30, deadline=None)
@given(st.permutations(range(5)), st.permutations(range(5)))
def test_subgroup_order_divides(p, q):
    S5 = SymmetricGroup(5)
    G = symmetric_group(5)
    H = G.subgroup([tuple(p), tuple(q)])
    assert G.order % H.order == 0
    assert H.order == PermutationGroup([Permutation(list(p)), Permutation(list(q))]).order()
    assert S5.order() == G.order


def test_alternating_matches_sympy():
    assert alternating_group(5).order == AlternatingGroup(5).order()

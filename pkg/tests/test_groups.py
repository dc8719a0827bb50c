import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from corpus import groups
from primhom.errors import BadParameters, ClosureBoundExceeded, NotAPGroup, NotAssociative, SchemaError
from primhom.groups import (
    Homomorphism, abelian_group, all_subgroups, center, closure_from_generators, conjugacy_classes,
    cyclic_group, element_from_label, frattini_subgroup_pgroup, from_table, generator_isomorphism,
    group_from_spec, group_to_spec, is_redundant, maximal_subgroups, metacyclic_group, nilpotent2_group,
    permutation_group, polycyclic_group, power_map, prime_power, subgroup_closure,
)
from primhom.words import Word


def test_closure_s3_and_trivial():
    assert permutation_group([[1, 0, 2], [1, 2, 0]]).order == 6
    assert permutation_group([[0, 1, 2]]).order == 1


def test_closure_metacyclic_relations_give_order_24():
    # a^3 = b^8 = 1, b a b^-1 = a^2 realized on pairs (i, j)
    def mul(x, y):
        return ((x[0] + pow(2, x[1], 3) * y[0]) % 3, (x[1] + y[1]) % 8)
    G = closure_from_generators([(1, 0), (0, 1)], mul, (0, 0))
    assert G.order == 24
    H = metacyclic_group(3, 8, 2)
    assert generator_isomorphism(G, H) is not None


def test_closure_numbering_is_bfs_from_identity():
    G = cyclic_group(5)
    assert G.identity == 0
    assert G.gen_indices == (1,)
    assert [G.power(1, k) for k in range(5)] == [0, 1, 2, 3, 4]


def test_closure_bound():
    with pytest.raises(ClosureBoundExceeded):
        closure_from_generators([1], lambda x, y: x + y, 0, bound=50)


def test_from_table_rejects_nonassociative():
    # a Latin square with identity 0 that is not a group (order 5 loop)
    L = np.array([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]])
    with pytest.raises((NotAssociative, BadParameters)):
        from_table(L, [1, 2])


@pytest.mark.parametrize("m,k,r,order", [(3, 8, 2, 24), (5, 4, 2, 20), (1, 6, 0, 6)])
def test_metacyclic_orders_and_relations(m, k, r, order):
    G = metacyclic_group(m, k, r)
    assert G.order == order
    a, b = G.gen_indices
    assert G.power(a, m) == 0 and G.power(b, k) == 0
    assert G.conjugate(a, b) == G.power(a, r)


def test_metacyclic_degenerate_is_cyclic():
    G = metacyclic_group(1, 7, 0)
    assert G.order == 7 and G.is_abelian and G.exponent == 7


@pytest.mark.parametrize("m,k,r", [(3, 8, 3), (4, 2, 2), (5, 3, 2)])
def test_metacyclic_bad_parameters(m, k, r):
    with pytest.raises(BadParameters):
        metacyclic_group(m, k, r)


def test_nilpotent2_orders():
    G = nilpotent2_group(2, 4, [[2]])
    assert G.order == 32
    Z = center(G)
    assert len(Z) == 2 * 4          # squares of generators and the commutator
    x, y = G.gen_indices
    c = G.commutator(x, y)
    assert G.element_order(c) == 2
    assert nilpotent2_group(1, 6).order == 6
    assert nilpotent2_group(3, 2).order == 64


def test_nilpotent2_bad_kill():
    with pytest.raises(BadParameters):
        nilpotent2_group(2, 4, [[1, 0]])


def test_nilpotent2_commutators_central():
    G = nilpotent2_group(3, 3)
    Z = set(center(G).tolist())
    for x in range(0, G.order, 7):
        for y in range(0, G.order, 11):
            assert G.commutator(x, y) in Z


def test_is_redundant_examples():
    G = cyclic_group(6)
    assert not is_redundant(G, [2, 3])
    assert is_redundant(G, [2, 4])
    assert is_redundant(G, [5, 0])


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_is_redundant_permutation_invariant(data):
    G = data.draw(st.sampled_from([groups()["S4"], groups()["Dic12"], groups()["Z2^3"]]))
    t = data.draw(st.lists(st.integers(0, G.order - 1), min_size=1, max_size=4))
    perm = data.draw(st.permutations(t))
    assert is_redundant(G, t) == is_redundant(G, perm)


@pytest.mark.parametrize("name", sorted(groups()))
def test_class_equation_and_axioms(name):
    G = groups()[name]
    cc = conjugacy_classes(G)
    assert sum(cc.sizes) == G.order
    assert all(G.order % s == 0 for s in cc.sizes)
    ar = np.arange(G.order)
    assert (G.mult[0] == ar).all() and (G.mult[:, 0] == ar).all()
    assert (G.mult[ar, G.inv] == 0).all()
    assert len(subgroup_closure(G, G.gen_indices)) == G.order
    for x in range(G.order):
        for y in cc.members[cc.class_of[x]]:
            assert G.element_order(int(y)) == G.element_order(x)


@pytest.mark.parametrize("name", ["S3", "Dic12", "Heis3", "Gamma"])
def test_associativity_exhaustive(name):
    M = groups()[name].mult
    n = len(M)
    left = M[M[:, :, None], np.arange(n)[None, None, :]]       # (xy)z
    right = M[np.arange(n)[:, None, None], M[None, :, :]]      # x(yz)
    assert (left == right).all()


def test_power_map_and_orders():
    G = groups()["S4"]
    for g in range(G.order):
        k = G.element_order(g)
        assert power_map(G, g, k) == 0
        assert all(power_map(G, g, j) != 0 for j in range(1, k))
        assert power_map(G, g, -1) == G.inverse(g)


def test_center():
    assert len(center(groups()["D4"])) == 2
    assert len(center(groups()["S3"])) == 1
    assert len(center(groups()["Z4xZ4"])) == 16


def test_prime_power():
    assert prime_power(32) == (2, 5)
    assert prime_power(27) == (3, 3)
    assert prime_power(12) is None
    assert prime_power(1) == (1, 0)


@pytest.mark.parametrize("name", ["Z4", "Z2xZ2", "D4", "Q8", "Heis3", "Gamma", "Z4xZ4"])
def test_frattini_pgroup(name):
    G = groups()[name]
    p = prime_power(G.order)[0]
    F = frattini_subgroup_pgroup(G)
    Fset = set(F.tolist())
    # normal
    for g in range(G.order):
        assert {G.conjugate(int(x), g) for x in F} == Fset
    # quotient elementary abelian: x^p and commutators land in Phi
    for x in range(G.order):
        assert G.power(x, p) in Fset
        for y in range(G.order):
            assert G.commutator(x, y) in Fset
    # agrees with the intersection of maximal subgroups
    M = maximal_subgroups(G)
    assert set(np.flatnonzero(M.all(axis=0)).tolist()) == Fset


def test_frattini_rejects_non_pgroup():
    with pytest.raises(NotAPGroup):
        frattini_subgroup_pgroup(groups()["S3"])


def test_all_subgroups_s4():
    subs = all_subgroups(groups()["S4"])
    assert len(subs) == 30
    orders = sorted(int(m.sum()) for m in subs)
    assert orders.count(24) == 1 and orders.count(12) == 1 and orders.count(8) == 3


def test_maximal_subgroups_cyclic():
    M = maximal_subgroups(cyclic_group(12))
    assert sorted(int(m.sum()) for m in M) == [4, 6]
    assert maximal_subgroups(cyclic_group(1)).shape == (0, 1)


def test_polycyclic_sigma12_relations():
    G = groups()["Sigma12"]
    a, b, c = G.gen_indices
    assert G.power(a, 3) == 0 and G.power(b, 4) == 0
    assert G.conjugate(a, b) == G.power(a, 2)
    assert G.power(c, 2) == G.power(b, 2)
    assert G.conjugate(a, c) == a
    assert G.conjugate(b, c) == G.power(b, 3)


def test_polycyclic_quaternion():
    Q = polycyclic_group([2, 2, 2], powers={0: [2], 1: [2]}, conjugates={(1, 0): [0, 1, 2]})
    assert Q.order == 8
    assert generator_isomorphism(Q, groups()["Q8"], Q.gen_indices[:2], groups()["Q8"].gen_indices) is not None


@pytest.mark.parametrize("name", ["S3", "Dic12", "Gamma", "Sigma12", "Z2^3xZ3", "S3xZ2"])
def test_spec_round_trip(name):
    G = groups()[name]
    spec = json.loads(json.dumps(group_to_spec(G)))
    H = group_from_spec(spec)
    assert (H.mult == G.mult).all()


def test_table_spec_round_trip():
    G = groups()["Q8"]
    spec = group_to_spec(G)
    assert spec["kind"] == "table" and len(spec["mult"]) == 64
    assert (group_from_spec(spec).mult == G.mult).all()


@pytest.mark.parametrize("spec", [{"kind": "cyclic"}, {"kind": "moebius"}, {"kind": "table", "order": 2, "mult": [0]}])
def test_bad_specs(spec):
    with pytest.raises(SchemaError):
        group_from_spec(spec)


def test_homomorphism():
    G = groups()["S3"]
    phi = Homomorphism(G, G.gen_indices)
    assert phi.rank == 2 and phi.surjective
    w = Word((1, 2, -1))
    x, y = G.gen_indices
    assert phi(w) == G.mul(x, y, G.inverse(x))
    assert not Homomorphism(G, [x, x]).surjective
    with pytest.raises(BadParameters):
        Homomorphism(G, [])
    with pytest.raises(BadParameters):
        Homomorphism(G, [99])


def test_element_labels():
    G = metacyclic_group(3, 8, 2)
    assert element_from_label(G, "a") == G.gen_indices[0]
    assert element_from_label(G, 5) == 5
    with pytest.raises(SchemaError):
        element_from_label(G, "zz")


@given(st.lists(st.integers(2, 6), min_size=1, max_size=3))
@settings(max_examples=25, deadline=None)
def test_abelian_orders(moduli):
    G = abelian_group(moduli)
    assert G.order == int(np.prod(moduli))
    assert G.is_abelian
    assert len(conjugacy_classes(G)) == G.order

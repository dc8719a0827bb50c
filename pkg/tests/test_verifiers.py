import itertools

import numpy as np
import pytest

from corpus import groups
from primhom.groups import Homomorphism, cyclic_group, metacyclic_group
from primhom.orbits import has_primitive_in_kernel
from primhom.verifiers import (
    ALPHA, BETA, candidate_tuples, catalog_entry_search, gamma_example_verify, gamma_group, gamma_rho,
    rho_exponent, sphere_catalog, sphere_catalog_search, torus_cover_verify, torus_families,
    type_one_parameters,
)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_torus_counts(p):
    rep = torus_cover_verify(p)
    c = rep["counts"]
    want = (p - 1) * (p * p - 1)
    assert c["family1"] == c["family2"] == c["family3"] == want
    assert c["orbit_condition"] == 3 * want
    assert c["vectors"] == p ** 5


def test_torus_matrices():
    I = np.eye(5, dtype=int)
    assert (ALPHA @ ALPHA == I).all() and (BETA @ BETA == I).all()
    assert (ALPHA @ BETA == BETA @ ALPHA).all()


def test_torus_zero_vector_and_family_shape():
    assert torus_families([0] * 5, 3) == (False, False, False)
    for r1, r2 in itertools.product(range(5), repeat=2):
        f = torus_families([r1, r2, 0, 0, 0], 5)
        assert f[0] == (r1 != r2 and r1 != (-r2) % 5)
        if f[0]:
            assert rho_exponent([r1, r2, 0, 0, 0], 5) != 0


def test_torus_rejects_bad_prime():
    for p in (2, 9):
        with pytest.raises(ValueError):
            torus_cover_verify(p)


def test_gamma_checks():
    rep = gamma_example_verify()
    assert rep["ok"]
    assert all(rep["checks"].values())
    assert rep["rho_row"] not in rep["irrpr_rows"]
    G = gamma_group()
    assert G.order == 32 and len(gamma_rho(G)) == 32


def test_type_one_parameters_contain_known_groups():
    params = set(type_one_parameters(48))
    assert (3, 8, 2) in params and (3, 4, 2) in params and (1, 7, 0) in params
    assert (3, 2, 2) not in params                 # S3: 2 divides the order of r but not k / 2
    for m, k, r in params:
        G = metacyclic_group(m, k, r)
        assert G.order == m * k


def test_catalog_orders_and_no_duplicates():
    cat = sphere_catalog(48)
    assert all(G.order <= 48 for _, G in cat)
    names = [n for n, _ in cat]
    assert len(set(names)) == len(names)
    cyclic = [G.order for _, G in cat if G.is_abelian]
    assert len(cyclic) == len(set(cyclic)) and all(G.exponent == G.order for _, G in cat if G.is_abelian)


def test_candidate_tuples_agree_with_brute_force():
    from primhom.groups import is_redundant, is_surjective

    G = groups()["Dic12"]
    cands, total, red = candidate_tuples(G, 2)
    reps = set(G.classes.reps)
    bf_total = bf_red = 0
    bf = []
    for x in reps:
        for y in range(G.order):
            if is_surjective(G, [x, y]):
                bf_total += 1
                if is_redundant(G, [x, y]):
                    bf_red += 1
                else:
                    bf.append((x, y))
    assert (total, red) == (bf_total, bf_red)
    assert sorted(cands) == sorted(bf)


def test_rank2_search_finds_order24():
    rep = sphere_catalog_search(48, 2)
    assert "Meta(3,8,2)" in rep["counterexamples"]
    G = metacyclic_group(3, 8, 2)
    a, b = G.gen_indices
    assert not has_primitive_in_kernel(Homomorphism(G, [a, b]))[0]


def test_trivial_group_entry():
    e = catalog_entry_search("1", cyclic_group(1), 3)
    assert e.verdict and e.searched == 0


def test_conjugate_tuple_same_verdict():
    G = metacyclic_group(3, 8, 2)
    a, b = G.gen_indices
    for h in range(G.order):
        t = [G.conjugate(a, h), G.conjugate(b, h)]
        assert not has_primitive_in_kernel(Homomorphism(G, t))[0]


def test_rank3_small_sweep():
    rep = sphere_catalog_search(40, 3)
    assert rep["ok"] and rep["all_kernel_primitive"]


def test_search_budget_reported():
    G = metacyclic_group(3, 8, 2)
    e = catalog_entry_search("Meta(3,8,2)", G, 2, budget=3)
    assert e.budget_exceeded > 0 and not e.verdict


def test_rank_must_be_positive():
    with pytest.raises(ValueError):
        sphere_catalog_search(10, 0)

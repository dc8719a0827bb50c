"""One test per acceptance criterion; the summary prints a PASS/FAIL line for each."""

import itertools
import random
import time

import numpy as np
import pytest

from corpus import groups, homs, table_for
from primhom.characters import character_table, dim_fixed_subspace
from primhom.covers import (
    elevation_class, homology, orbit_span_check, primitive_homology_span, quotient_fixed_check,
    upper_multiplicities,
)
from primhom.cyclo import CycloMatrix
from primhom.groups import Homomorphism, abelian_group, cyclic_group, is_redundant, metacyclic_group, nilpotent2_group, prime_power
from primhom.orbits import frattini_basis_check, has_primitive_in_kernel, irrpr_set, primitive_image_set
from primhom.surfaces import sigma12_example_check
from primhom.verifiers import gamma_example_verify, gamma_group, gamma_rho, sphere_catalog_search, torus_cover_verify
from primhom.words import Word

crit = pytest.mark.criterion


class Clock:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.seconds < self.limit, f"took {self.seconds:.1f} s, limit {self.limit} s"


def _full_mult(T, n):
    return [(n - 1) * d + (i == 0) for i, d in enumerate(T.dims)]


@crit(1, "H_1 character is (n-1) regular + trivial on the corpus")
def test_c01_chevalley_weil():
    pairs = homs()
    assert len(pairs) >= 10
    assert all(phi.target.order <= 48 and phi.rank in (2, 3) for _, phi in pairs)
    with Clock(10):
        for _, phi in pairs:
            hs = homology(phi)              # raises on any trace mismatch
            G = phi.target
            assert hs.character == [(phi.rank - 1) * G.order + 1] + [1] * (G.order - 1)


@crit(2, "Z/6 with images (2, 3): not redundant, primitive in the kernel")
def test_c02_z6():
    with Clock(1):
        G = cyclic_group(6)
        phi = Homomorphism(G, [2, 3])
        assert not is_redundant(G, [2, 3])
        found, w = has_primitive_in_kernel(phi)
        assert found and w.letters and phi(w) == 0
        # a primitive word of F_2 has coprime exponent sums
        sums = [sum(1 if x > 0 else -1 for x in w.letters if abs(x) == i) for i in (1, 2)]
        assert np.gcd(*sums) == 1


@crit(3, "order 24 metacyclic, rank 2: identity not a primitive image, Irrpr proper")
def test_c03_order24():
    with Clock(1):
        G = metacyclic_group(3, 8, 2)
        phi = Homomorphism(G, G.gen_indices)
        res = primitive_image_set(phi)
        assert 0 not in res.images and res.visited <= 24 ** 2
        T = character_table(G)
        assert len(irrpr_set(phi, T, res.images)) < len(T)


@crit(4, "order 32 example: rho(g) - I invertible on primitive images, bracket below 33")
def test_c04_gamma():
    with Clock(5):
        rep = gamma_example_verify()
        assert rep["ok"]
        G = gamma_group()
        phi = Homomorphism(G, G.gen_indices)
        rho = gamma_rho(G)
        I = CycloMatrix.identity(2)
        prim = primitive_image_set(phi, track_words=False).images
        assert all(not (rho[g] - I).det().is_zero() for g in prim)
        a, b = Word.gen(1), Word.gen(2)
        g = phi(a ** 2 * a.commutator(b))
        assert g != 0 and rho[g] == I
        T = character_table(G)
        upper = upper_multiplicities(phi, T, irrpr_set(phi, T, prim))
        assert sum(u * d for u, d in zip(upper, T.dims)) < 33 == homology(phi).dim


def _criteria_1_to_4_homs():
    out = [phi for _, phi in homs()]
    out.append(Homomorphism(cyclic_group(6), [2, 3]))
    M = metacyclic_group(3, 8, 2)
    out.append(Homomorphism(M, M.gen_indices))
    Gm = gamma_group()
    out.append(Homomorphism(Gm, Gm.gen_indices))
    return out


@crit(5, "orbit span of each witness elevation is the induced character")
def test_c05_induced_character():
    checked = 0
    for phi in _criteria_1_to_4_homs():
        hs = homology(phi)
        T = table_for(phi)
        for g, w in primitive_image_set(phi).witnesses.items():
            _, chain, _ = elevation_class(hs.cover, w, return_chain=True)
            res = orbit_span_check(hs, T, chain, g)
            assert res.multiplicities == [dim_fixed_subspace(T, i, g) for i in range(len(T))]
            checked += 1
    assert checked > 0


def _partitions(e, largest=None):
    largest = e if largest is None else largest
    if e == 0:
        yield ()
        return
    for k in range(min(e, largest), 0, -1):
        for rest in _partitions(e - k, k):
            yield (k,) + rest


def _factor(N):
    out, q = {}, 2
    while q * q <= N:
        while N % q == 0:
            out[q] = out.get(q, 0) + 1
            N //= q
        q += 1
    if N > 1:
        out[N] = out.get(N, 0) + 1
    return out


def abelian_groups_upto(N):
    """Invariant factor lists of every abelian group of order <= N."""
    out = [[1]]
    for order in range(2, N + 1):
        f = _factor(order)
        for parts in itertools.product(*[_partitions(e) for e in f.values()]):
            d = max(len(p) for p in parts)
            moduli = [1] * d
            for p, part in zip(f, parts):
                for i, k in enumerate(part):
                    moduli[i] *= p ** k
            out.append(moduli)
    return out


@crit(6, "abelian covers: bracket closes at full multiplicity within 32 moves")
def test_c06_abelian_closure():
    cases = 0
    with Clock(60):
        for moduli in abelian_groups_upto(36):
            G = abelian_group(moduli) if moduli != [1] else cyclic_group(1)
            gens = [g for g in G.gen_indices if g != 0] if G.order > 1 else []
            T = character_table(G)
            for n in (2, 3):
                if len(gens) > n:
                    continue
                pad = [G.mul(*gens)] if len(gens) > 1 else (gens or [0])
                phi = Homomorphism(G, (gens + pad * n)[:n])
                assert phi.surjective
                span = primitive_homology_span(phi, T, word_budget=32)
                assert span.determined and span.lower_mult == _full_mult(T, n), moduli
                cases += 1
    assert cases >= 100


@crit(7, "fixed vectors of <g> equal the quotient cover rank for every g")
def test_c07_transfer():
    for name, G in groups().items():
        gens = list(G.gen_indices)
        for n in (2, 3):
            if len(gens) > n:
                continue
            phi = Homomorphism(G, (gens + [gens[0]] * n)[:n])
            hs = homology(phi, check=False)
            for g in range(G.order):
                assert quotient_fixed_check(phi, g, hs).ok, (name, n, g)


@crit(8, "Frattini criterion agrees with the kernel search on p-groups")
def test_c08_burnside():
    pg = {name: G for name, G in groups().items() if (pp := prime_power(G.order)) and pp[0] in (2, 3)}
    pg["N2(3,2)"] = nilpotent2_group(3, 2)
    assert all(G.order <= 64 for G in pg.values())
    rng = random.Random(20240607)
    names = sorted(pg)
    sampled = 0
    tries = 0
    seen = set()
    while sampled < 60:
        tries += 1
        assert tries < 100000
        G = pg[rng.choice(names)]
        n = rng.choice((2, 3))
        phi = Homomorphism(G, [rng.randrange(G.order) for _ in range(n)])
        if not phi.surjective:
            continue
        verdict = frattini_basis_check(phi)
        assert verdict == (not has_primitive_in_kernel(phi)[0])
        seen.add(verdict)
        sampled += 1
    assert seen == {True, False}


@crit(9, "a component contains a redundant tuple iff it reaches the identity")
def test_c09_redundancy():
    for name, phi in homs():
        res = primitive_image_set(phi)
        assert res.component_has_redundant == has_primitive_in_kernel(phi)[0], name


@crit(10, "torus homology cover: exhaustive checks for p = 3, 5")
def test_c10_torus():
    with Clock(5):
        for p in (3, 5):
            rep = torus_cover_verify(p)
            assert rep["ok"] and all(rep["action"].values())
            assert rep["counts"]["vectors"] == p ** 5


@crit(11, "rank 3 sweep of metacyclic sphere groups of order <= 200")
def test_c11_sphere_sweep():
    with Clock(600):
        rep = sphere_catalog_search(200, 3)
    assert rep["all_kernel_primitive"] and rep["ok"], rep["counterexamples"]
    assert not rep["budget_exceeded"]


@crit(12, "twice-punctured torus example: identity not an scc image, Irrscc proper")
def test_c12_sigma12():
    with Clock(60):
        rep = sigma12_example_check()
    assert rep["checks"]["autos_verified"]
    assert rep["checks"]["identity_not_scc_image"]
    assert rep["checks"]["identity_primitive_image"]
    assert rep["checks"]["irrscc_proper"]
    # the defining relations close up at order 24
    assert rep["order"] == 24

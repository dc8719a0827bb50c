"""Self-contained checks of the worked rank-2 examples and the sphere-group sweep."""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import _modp
from .characters import character_table
from .cyclo import CycloMatrix, CycloNumber
from .errors import ExhaustiveCheckFailed, StateBudgetExceeded
from .groups import (
    FiniteGroup, Homomorphism, all_subgroups, is_redundant, maximal_subgroups, metacyclic_group,
    nilpotent2_group, subgroup_closure,
)
from .orbits import _bfs, _Visited, encode, extended_moves, has_primitive_in_kernel, irrpr_set, primitive_image_set, state_budget
from .words import Word

# --------------------------------------------------------------------------
# torus homology cover: (Z/p)^5 with the (Z/2)^2 deck action

# basis a1, a2, b1, b2, delta; matrices act on column coordinate vectors
ALPHA = np.array([
    [1, 0, 0, 0, 1],
    [0, 1, 0, 0, -1],
    [0, 0, 0, 1, 0],
    [0, 0, 1, 0, 0],
    [0, 0, 0, 0, -1],
])
BETA = np.array([
    [0, 1, 0, 0, 0],
    [1, 0, 0, 0, 0],
    [0, 0, 1, 0, -1],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, -1],
])


def rho_exponent(x, p: int) -> int:
    r1, r2, s1, s2, d = (int(v) for v in x)
    return (r1 - r2 + s1 - s2 + d) % p


def torus_families(x, p: int) -> tuple[bool, bool, bool]:
    """Membership in the three closed-form case families (all arithmetic mod p)."""
    r1, r2, s1, s2, d = (int(v) % p for v in x)
    f1 = d == 0 and s1 == s2 and r1 != r2 and (s1 != 0 or r1 != (-r2) % p)
    f2 = d == 0 and r1 == r2 and s1 != s2 and (r1 != 0 or s1 != (-s2) % p)
    f3 = d != 0 and r1 == (r2 - d) % p and s1 == (s2 + d) % p and (d != (-2 * r1) % p or d != (2 * s1) % p)
    return f1, f2, f3


def torus_cover_verify(p: int) -> dict:
    if p < 3 or not _modp.is_prime(p):
        raise ValueError("p must be an odd prime")
    I = np.eye(5, dtype=np.int64)
    A, B = ALPHA % p, BETA % p
    action = {
        "alpha_squared": bool(((A @ A) % p == I).all()),
        "beta_squared": bool(((B @ B) % p == I).all()),
        "commute": bool(((A @ B) % p == (B @ A) % p).all()),
    }
    if not all(action.values()):
        raise ExhaustiveCheckFailed(f"deck matrices do not give a (Z/2)^2 action mod {p}", report=action)
    AB = (A @ B) % p
    X = np.array(list(itertools.product(range(p), repeat=5)), dtype=np.int64)
    aX, bX, abX = (X @ A.T) % p, (X @ B.T) % p, (X @ AB.T) % p
    counts = {"family1": 0, "family2": 0, "family3": 0, "orbit_condition": 0, "vectors": len(X)}
    for k, x in enumerate(X):
        fixed = [(aX[k] == x).all(), (bX[k] == x).all(), (abX[k] == x).all()]
        if not any(fixed):
            cond = [False] * 3
        else:
            rank = len(_modp.rref(np.stack([x, aX[k], bX[k], abX[k]]), p)[1])
            cond = [bool(f) and rank == 2 for f in fixed]
        fam = torus_families(x, p)
        if tuple(cond) != fam:
            raise ExhaustiveCheckFailed(f"classifier disagrees with the orbit condition at x={x.tolist()}",
                                        report={"x": x.tolist(), "condition": cond, "families": fam})
        if any(cond):
            counts["orbit_condition"] += 1
            if rho_exponent(x, p) == 0:
                raise ExhaustiveCheckFailed(f"x={x.tolist()} passes the orbit condition but acts trivially",
                                            report={"x": x.tolist()})
        for i in range(3):
            counts[f"family{i + 1}"] += int(fam[i])
    return {"ok": True, "p": p, "action": action, "counts": counts}


# --------------------------------------------------------------------------
# the 2-step nilpotent group of order 32

def gamma_group() -> FiniteGroup:
    return nilpotent2_group(2, 4, [[2]])


def _cm(rows) -> CycloMatrix:
    return CycloMatrix([[CycloNumber._coerce(v) for v in r] for r in rows])


def gamma_rho(G: FiniteGroup) -> list[CycloMatrix]:
    """Extend rho(alpha) = diag(i, -i), rho(beta) = [[0, 1], [-1, 0]] to every element
    along a BFS tree, then check multiplicativity on all pairs."""
    i = CycloNumber.zeta(4)
    gens = [_cm([[i, 0], [0, -i]]), _cm([[0, 1], [-1, 0]])]
    rho: list[CycloMatrix | None] = [None] * G.order
    rho[0] = CycloMatrix.identity(2)
    queue = [0]
    for x in queue:
        for s, M in zip(G.gen_indices, gens):
            y = int(G.mult[x, s])
            if rho[y] is None:
                rho[y] = rho[x] @ M
                queue.append(y)
    for x in range(G.order):
        for y in range(G.order):
            if rho[x] @ rho[y] != rho[int(G.mult[x, y])]:
                raise ExhaustiveCheckFailed(f"rho is not a homomorphism at ({x}, {y})")
    return rho


def gamma_example_verify() -> dict:
    G = gamma_group()
    phi = Homomorphism(G, G.gen_indices)
    rho = gamma_rho(G)
    I = CycloMatrix.identity(2)
    res = primitive_image_set(phi)
    a, b = Word.gen(1), Word.gen(2)
    w = a ** 2 * a.commutator(b)
    g_w = phi(w)
    g_comm = phi(a.commutator(b))
    dets = {int(g): (rho[g] - I).det() for g in sorted(res.images)}
    T = character_table(G)
    chi = [rho[rep].trace() for rep, _ in T.classes]
    row = T.find_row(chi)
    irr = irrpr_set(phi, T, res.images)
    checks = {
        "order_32": G.order == 32,
        "generator_orders_divide_4": all((rho[s] @ rho[s] @ rho[s] @ rho[s]) == I for s in G.gen_indices),
        "identity_not_primitive_image": 0 not in res.images,
        "no_eigenvalue_one": all(not d.is_zero() for d in dets.values()),
        "commutator_is_minus_identity": rho[g_comm] == I.scale(-1),
        "a2_commutator_nontrivial": g_w != 0,
        "a2_commutator_in_kernel_of_rho": rho[g_w] == I,
        "rho_is_irreducible_row": row is not None,
        "rho_row_not_in_irrpr": row is not None and row not in irr,
    }
    report = {"ok": all(checks.values()), "checks": checks, "primitive_images": sorted(res.images),
              "rho_row": row, "irrpr_rows": sorted(irr), "det_rho_minus_I": {g: str(d) for g, d in dets.items()}}
    if not report["ok"]:
        raise ExhaustiveCheckFailed("gamma example failed: " + ", ".join(k for k, v in checks.items() if not v),
                                    report=report)
    return report


# --------------------------------------------------------------------------
# groups acting freely on spheres: metacyclic type I

def _prime_factors(n: int) -> set[int]:
    out, q = set(), 2
    while q * q <= n:
        while n % q == 0:
            out.add(q)
            n //= q
        q += 1
    if n > 1:
        out.add(n)
    return out


def type_one_parameters(max_order: int):
    """(m, k, r) with m k <= max_order and
    gcd(k (r - 1), m) = 1, r^k = 1 mod m, and every prime dividing the
    multiplicative order d of r mod m also divides k / d.  r is taken
    in 1..m-1 (r = 0 for m = 1)."""
    out = []
    for m in range(1, max_order + 1):
        for k in range(1, max_order // m + 1):
            for r in (range(1, m) if m > 1 else [0]):
                if m > 1 and (math.gcd(r, m) != 1 or pow(r, k, m) != 1):
                    continue
                if math.gcd(k * (r - 1), m) != 1 and m > 1:
                    continue
                d = 1
                if m > 1:
                    while pow(r, d, m) != 1:
                        d += 1
                if any((k // d) % q for q in _prime_factors(d)):
                    continue
                out.append((m, k, r))
    return out


def _dedupe_isomorphic(params):
    """Drop (m, k, r) whose group is r -> r^j relabelling of an earlier one
    (b -> b^j with gcd(j, k) = 1 gives the same group with r^j)."""
    seen, out = set(), []
    for m, k, r in params:
        key = (m, k, min(pow(r, j, m) if m > 1 else 0 for j in range(1, k + 1) if math.gcd(j, k) == 1))
        if key in seen:
            continue
        seen.add(key)
        out.append((m, k, r))
    return out


def sphere_catalog(max_order: int, include_type_two: bool = True) -> list[tuple[str, FiniteGroup]]:
    cat = []
    for m, k, r in _dedupe_isomorphic(type_one_parameters(max_order)):
        cat.append((f"Meta({m},{k},{r})", metacyclic_group(m, k, r)))
    if include_type_two:
        from .surfaces import sigma12_example_group

        G = sigma12_example_group()
        if G.order <= max_order:
            cat.append(("Sigma12Example", G))
    return cat


@dataclass
class CatalogEntry:
    name: str
    order: int
    tuples: int = 0
    redundant: int = 0
    searched: int = 0
    counterexamples: list = field(default_factory=list)
    num_counterexamples: int = 0
    budget_exceeded: int = 0

    @property
    def verdict(self) -> bool:
        return self.num_counterexamples == 0 and self.budget_exceeded == 0

    def to_json(self, limit: int = 5) -> dict:
        return {"name": self.name, "order": self.order, "tuples": self.tuples,
                "redundant": self.redundant, "searched": self.searched,
                "kernel_primitive_always": self.verdict,
                "num_counterexamples": self.num_counterexamples,
                "counterexamples": self.counterexamples[:limit],
                "budget_exceeded": self.budget_exceeded}


def pair_joins(G: FiniteGroup, subs: np.ndarray) -> np.ndarray:
    """J[y, z] = index in ``subs`` of the subgroup generated by y and z."""
    J = np.full((G.order, G.order), -1, dtype=np.int64)
    for k, K in enumerate(subs):          # ascending order, so the first hit is the join
        both = np.outer(K, K) & (J < 0)
        J[both] = k
    return J


def candidate_tuples(G: FiniteGroup, n: int):
    """Generating n-tuples (first entry a class representative) that are not
    redundant, plus the counts of all generating and of redundant ones.

    Generation is tested against the maximal subgroups and redundancy against
    the subgroup generated by the other entries, both by table lookup.
    """
    subs = all_subgroups(G)
    maxi = maximal_subgroups(G, subs)
    order = G.order
    total = redundant = 0
    out = []
    if n == 1:
        for x in G.classes.reps:
            if len(maxi) == 0 or not maxi[:, x].any():
                total += 1
                if x == 0:
                    redundant += 1
                else:
                    out.append((x,))
        return out, total, redundant
    J = pair_joins(G, subs)
    cyc = subs[J[np.arange(order), np.arange(order)]]        # cyc[g] = mask of <g>
    for x in G.classes.reps:
        Mx = maxi[maxi[:, x]]
        if n == 2:
            gen = ~Mx.any(axis=0) if len(Mx) else np.ones(order, dtype=bool)
            red = cyc[:, x] | cyc[x]
            ys = np.flatnonzero(gen)
            total += len(ys)
            redundant += int((gen & red).sum())
            out += [(x, int(y)) for y in np.flatnonzero(gen & ~red)]
        elif n == 3:
            gen = np.ones((order, order), dtype=bool)
            for M in Mx:
                gen &= ~np.outer(M, M)
            Sx = subs[J[x]]                                    # row z: mask of <x, z>
            red = subs[J][:, :, x] | Sx.T | Sx                 # x in <y,z>, y in <x,z>, z in <x,y>
            total += int(gen.sum())
            redundant += int((gen & red).sum())
            ys, zs = np.nonzero(gen & ~red)
            out += [(x, int(y), int(z)) for y, z in zip(ys, zs)]
        else:
            raise ValueError("vectorized enumeration handles rank 1, 2, 3")
    return out, total, redundant


def catalog_entry_search(name: str, G: FiniteGroup, n: int, *, budget: int | None = None) -> CatalogEntry:
    entry = CatalogEntry(name, G.order)
    moves = extended_moves(n)
    cands, entry.tuples, entry.redundant = candidate_tuples(G, n)
    known = _Visited(G.order ** n)           # tuples already shown to reach the identity
    for t in cands:
        code = encode(np.asarray([t]), G.order)
        if known.dense and known.mask[code[0]]:
            continue
        entry.searched += 1
        try:
            levels, seen, _, hit = _bfs(G, t, moves, state_budget(budget), keep_levels=True, stop_at=0)
        except StateBudgetExceeded:
            entry.budget_exceeded += 1
            continue
        if seen[0]:
            if known.dense:
                for lv in levels:
                    known.mask[lv[0]] = True
        else:
            entry.num_counterexamples += 1
            if len(entry.counterexamples) < 50:
                entry.counterexamples.append([int(v) for v in t])
    return entry


def sphere_catalog_search(max_order: int, rank: int, *, budget: int | None = None,
                          groups=None, progress=None) -> dict:
    if rank < 1:
        raise ValueError("rank must be positive")
    catalog = groups if groups is not None else sphere_catalog(max_order)
    entries = []
    t0 = time.time()
    for name, G in catalog:
        e = catalog_entry_search(name, G, rank, budget=budget)
        entries.append(e)
        if progress:
            progress(e)
    all_true = all(e.verdict for e in entries)
    report = {
        "ok": all_true if rank >= 3 else True,
        "rank": rank,
        "max_order": max_order,
        "groups": len(entries),
        "all_kernel_primitive": all_true,
        "counterexamples": {e.name: e.counterexamples[:5] for e in entries if e.num_counterexamples},
        "num_counterexamples": {e.name: e.num_counterexamples for e in entries if e.num_counterexamples},
        "budget_exceeded": {e.name: e.budget_exceeded for e in entries if e.budget_exceeded},
        "tuples": sum(e.tuples for e in entries),
        "searched": sum(e.searched for e in entries),
        "seconds": round(time.time() - t0, 3),
    }
    return report

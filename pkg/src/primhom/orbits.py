"""Breadth-first search over n-tuples of group elements.

A state is the tuple (phi(w_1), ..., phi(w_n)) for a free basis w of F_n.
Extended Nielsen moves replace one basis element by its product with
another (either side, either sign), invert an element, or swap two.  Every
entry of every reachable tuple is the image of a primitive element, and
every primitive element is the first entry of some basis, so the union of
entries over the orbit is exactly the set of primitive images.

Tuples are packed into integers ``sum t_i |G|^i`` and expanded a whole BFS
level at a time with numpy table lookups.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NotAPGroup, StateBudgetExceeded
from .groups import (
    FiniteGroup, Homomorphism, frattini_subgroup_pgroup, prime_power, subgroup_closure,
)
from .words import Automorphism, Word, nielsen_automorphisms

DEFAULT_STATE_BUDGET = 10**8
DENSE_LIMIT = 5 * 10**7


def state_budget(budget: int | None = None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get("PHL_STATE_BUDGET")
    return int(env) if env else DEFAULT_STATE_BUDGET


# --------------------------------------------------------------------------
# moves

def extended_moves(n: int) -> list[tuple[str, int, int]]:
    """(kind, i, j) in search order; kinds R+, R-, L+, L-, I, S (0-based)."""
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                out += [("R+", i, j), ("R-", i, j), ("L+", i, j), ("L-", i, j)]
    out += [("I", i, -1) for i in range(n)]
    out += [("S", i, j) for i in range(n) for j in range(i + 1, n)]
    return out


def apply_move(G: FiniteGroup, T: np.ndarray, move) -> np.ndarray:
    """Apply a move to every row of an (m, n) array of tuples."""
    kind, i, j = move
    out = T.copy()
    m, inv = G.mult, G.inv
    if kind == "R+":
        out[:, i] = m[T[:, i], T[:, j]]
    elif kind == "R-":
        out[:, i] = m[T[:, i], inv[T[:, j]]]
    elif kind == "L+":
        out[:, i] = m[T[:, j], T[:, i]]
    elif kind == "L-":
        out[:, i] = m[inv[T[:, j]], T[:, i]]
    elif kind == "I":
        out[:, i] = inv[T[:, i]]
    else:
        out[:, i], out[:, j] = T[:, j], T[:, i]
    return out


def apply_move_words(ws: Sequence[Word], move) -> list[Word]:
    kind, i, j = move
    ws = list(ws)
    if kind == "R+":
        ws[i] = ws[i] * ws[j]
    elif kind == "R-":
        ws[i] = ws[i] * ws[j].inverse()
    elif kind == "L+":
        ws[i] = ws[j] * ws[i]
    elif kind == "L-":
        ws[i] = ws[j].inverse() * ws[i]
    elif kind == "I":
        ws[i] = ws[i].inverse()
    else:
        ws[i], ws[j] = ws[j], ws[i]
    return ws


def encode(T: np.ndarray, order: int) -> np.ndarray:
    weights = order ** np.arange(T.shape[1], dtype=np.int64)
    return T.astype(np.int64) @ weights


def decode(codes: np.ndarray, order: int, n: int) -> np.ndarray:
    out = np.empty((len(codes), n), dtype=np.int64)
    c = codes.copy()
    for i in range(n):
        out[:, i] = c % order
        c //= order
    return out


class _Visited:
    def __init__(self, size: int):
        self.dense = size <= DENSE_LIMIT
        if self.dense:
            self.mask = np.zeros(size, dtype=bool)
        else:
            self.sorted = np.empty(0, dtype=np.int64)
        self.count = 0

    def filter_new(self, codes: np.ndarray) -> np.ndarray:
        """Indices of first occurrences of unseen codes, in input order; marks them."""
        uniq, first = np.unique(codes, return_index=True)
        if self.dense:
            keep = ~self.mask[uniq]
        else:
            keep = ~np.isin(uniq, self.sorted, assume_unique=True)
        first = np.sort(first[keep])
        new = codes[first]
        if self.dense:
            self.mask[new] = True
        else:
            self.sorted = np.union1d(self.sorted, new)
        self.count += len(new)
        return first


# --------------------------------------------------------------------------
# orbit of the Nielsen moves

@dataclass
class OrbitResult:
    images: frozenset[int]
    witnesses: dict[int, Word]
    visited: int
    component_has_redundant: bool | None
    depth: int
    complete: bool = True           # False when stopped early on reaching the identity
    levels: list = field(default_factory=list, repr=False)

    @property
    def kernel_primitive(self) -> bool:
        return 0 in self.images


def _bfs(G: FiniteGroup, root: Sequence[int], moves, budget: int, *, keep_levels: bool,
         stop_at: int | None = None):
    """Level-synchronous BFS.  Returns (levels, image mask, visited, hit).

    Each level is (codes, tuples, parent index into previous level, move id).
    """
    n = len(root)
    order = G.order
    visited = _Visited(order ** n)
    T0 = np.asarray([root], dtype=np.int64)
    visited.filter_new(encode(T0, order))
    seen = np.zeros(order, dtype=bool)
    seen[T0[0]] = True
    levels = [(encode(T0, order), T0, np.array([-1]), np.array([-1]))]
    frontier = T0
    hit = stop_at is not None and seen[stop_at]
    while len(frontier) and not hit:
        cand = np.stack([apply_move(G, frontier, mv) for mv in moves], axis=1)  # (m, k, n)
        m, k = cand.shape[:2]
        cand = cand.reshape(m * k, n)
        codes = encode(cand, order)
        first = visited.filter_new(codes)
        if visited.count > budget:
            raise StateBudgetExceeded(f"visited more than {budget} tuples", visited=visited.count)
        if not len(first):
            break
        new = cand[first]
        seen[np.unique(new)] = True
        parents, mids = np.divmod(first, k)
        if keep_levels:
            levels.append((codes[first], new, parents, mids))
        else:
            levels = [levels[0], (codes[first], new, parents, mids)]
        frontier = new
        if stop_at is not None and seen[stop_at]:
            hit = True
    return levels, seen, visited.count, hit


def _trace_words(levels, moves, lvl: int, idx: int, n: int) -> list[Word]:
    path = []
    while lvl > 0:
        _, _, parents, mids = levels[lvl]
        path.append(moves[mids[idx]])
        idx = parents[idx]
        lvl -= 1
    ws = [Word.gen(i + 1) for i in range(n)]
    for mv in reversed(path):
        ws = apply_move_words(ws, mv)
    return ws


def _witnesses(G, levels, moves, n, targets) -> dict[int, Word]:
    out = {}
    remaining = set(int(t) for t in targets)
    for lvl, (_, T, _, _) in enumerate(levels):
        if not remaining:
            break
        for g in sorted(remaining & set(np.unique(T).tolist())):
            rows, cols = np.nonzero(T == g)
            ws = _trace_words(levels, moves, lvl, rows[0], n)
            out[g] = ws[cols[0]]
            remaining.discard(g)
    for g, w in out.items():
        if w.evaluate(G, levels[0][1][0]) != g:
            raise AssertionError(f"witness {w} does not evaluate to {g}")
    return out


def _component_has_redundant(G: FiniteGroup, tuples: np.ndarray) -> bool:
    """Does any row have an entry inside the subgroup generated by the others?"""
    n = tuples.shape[1]
    if (tuples == 0).any():
        return True
    if n == 1:
        return False
    for i in range(n):
        others = np.sort(np.delete(tuples, i, axis=1), axis=1)
        uniq, inverse = np.unique(others, axis=0, return_inverse=True)
        masks = np.zeros((len(uniq), G.order), dtype=bool)
        for r, row in enumerate(uniq):
            masks[r, subgroup_closure(G, row)] = True
        if masks[inverse.ravel(), tuples[:, i]].any():
            return True
    return False


def _assert_closed(G: FiniteGroup, images: np.ndarray, gens: Sequence[int]):
    mask = np.zeros(G.order, dtype=bool)
    mask[images] = True
    if not mask[G.inv[images]].all():
        raise AssertionError("primitive image set is not closed under inversion")
    for h in set(int(x) for x in gens):
        conj = G.mult[G.mult[h, images], G.inv[h]]
        if not mask[conj].all():
            raise AssertionError("primitive image set is not closed under conjugation")


def primitive_image_set(phi: Homomorphism, track_words: bool = True, *, budget: int | None = None,
                        check_redundant: bool = True, stop_at_identity: bool = False) -> OrbitResult:
    G, n = phi.target, phi.rank
    moves = extended_moves(n)
    levels, seen, count, hit = _bfs(G, phi.images, moves, state_budget(budget),
                                    keep_levels=track_words,
                                    stop_at=0 if stop_at_identity else None)
    images = np.flatnonzero(seen)
    if not stop_at_identity:
        _assert_closed(G, images, phi.images)
    witnesses = _witnesses(G, levels, moves, n, images) if track_words else {}
    redundant = None
    if seen[0]:
        redundant = True
    elif check_redundant:
        redundant = _component_has_redundant(G, np.concatenate([lv[1] for lv in levels])) \
            if track_words else _redundant_rescan(phi, moves, budget)
    return OrbitResult(frozenset(images.tolist()), witnesses, count, redundant,
                       len(levels) - 1, complete=not hit, levels=levels if track_words else [])


def _redundant_rescan(phi, moves, budget):
    levels, _, _, _ = _bfs(phi.target, phi.images, moves, state_budget(budget), keep_levels=True)
    return _component_has_redundant(phi.target, np.concatenate([lv[1] for lv in levels]))


def has_primitive_in_kernel(phi: Homomorphism, *, budget: int | None = None):
    """(True, witness word) or (False, None).  Stops at the first identity entry."""
    G, n = phi.target, phi.rank
    moves = extended_moves(n)
    levels, seen, _, hit = _bfs(G, phi.images, moves, state_budget(budget),
                                keep_levels=True, stop_at=0)
    if not seen[0]:
        return False, None
    w = _witnesses(G, levels, moves, n, [0])[0]
    if not w.letters or w.evaluate(G, phi.images) != 0:
        raise AssertionError("kernel witness failed verification")
    return True, w


def irrpr_set(phi: Homomorphism, T, images=None) -> set[int]:
    from .characters import dim_fixed_subspace

    if images is None:
        images = primitive_image_set(phi, track_words=False, check_redundant=False).images
    reps = {}
    for g in images:
        reps.setdefault(int(T.class_of[g]), g)
    return {i for i in range(len(T)) if any(dim_fixed_subspace(T, i, g) > 0 for g in reps.values())}


def frattini_basis_check(phi: Homomorphism) -> bool:
    """Do the images form a basis of the F_p-vector space G/Phi(G)?"""
    G = phi.target
    pp = prime_power(G.order)
    if pp is None:
        raise NotAPGroup(f"order {G.order} is not a prime power")
    if G.order == 1:
        return False
    p, _ = pp
    phi_sub = frattini_subgroup_pgroup(G)
    dim = 0
    size = G.order // len(phi_sub)
    while size > 1:
        size //= p
        dim += 1
    if phi.rank != dim:
        return False
    return len(subgroup_closure(G, list(phi.images) + phi_sub.tolist())) == G.order


# --------------------------------------------------------------------------
# general automorphism orbits

def evaluate_on_tuples(G: FiniteGroup, w: Word, T: np.ndarray) -> np.ndarray:
    acc = np.zeros(len(T), dtype=np.int64)
    for x in w.letters:
        col = T[:, abs(x) - 1]
        acc = G.mult[acc, col if x > 0 else G.inv[col]]
    return acc


def automorphism_orbit_images(phi: Homomorphism, autos: Sequence[Automorphism], seeds: Sequence[Word],
                              *, budget: int | None = None) -> frozenset[int]:
    """phi-images of alpha(seed) over the group generated by ``autos``.

    The state after applying alpha is the tuple of phi(alpha(a_i)); each
    substitution acts on states by evaluating its words on the current tuple.
    """
    G, n = phi.target, phi.rank
    for a in autos:
        if a.rank != n:
            raise ValueError(f"automorphism {a.name} has rank {a.rank}, expected {n}")
    budget = state_budget(budget)
    order = G.order
    visited = _Visited(order ** n)
    frontier = np.asarray([phi.images], dtype=np.int64)
    visited.filter_new(encode(frontier, order))
    seen = np.zeros(order, dtype=bool)
    while len(frontier):
        for s in seeds:
            seen[evaluate_on_tuples(G, s, frontier)] = True
        if not autos:
            break
        cand = np.concatenate([
            np.stack([evaluate_on_tuples(G, w, frontier) for w in a.images], axis=1) for a in autos])
        first = visited.filter_new(encode(cand, order))
        if visited.count > budget:
            raise StateBudgetExceeded(f"visited more than {budget} tuples", visited=visited.count)
        frontier = cand[first]
    return frozenset(np.flatnonzero(seen).tolist())


def nielsen_orbit_images(phi: Homomorphism, **kw) -> frozenset[int]:
    """Primitive images via the general engine (cross-check)."""
    return automorphism_orbit_images(phi, nielsen_automorphisms(phi.rank), [Word.gen(1)], **kw)

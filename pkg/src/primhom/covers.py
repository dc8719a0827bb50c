"""Covers of the rose and their first homology as a G-representation.

The rose X has one vertex and n loops; phi: F_n -> G defines the regular
cover Y with vertex set G and an edge v -> v phi(a_i) for every (v, i).
Deck transformations act by left translation.  Intermediate covers
Y/<g> have the right cosets <g>x as vertices.

H_1 is computed from a BFS spanning tree: each non-tree edge closes one
basis cycle, and the coordinates of a closed edge chain are just its
coefficients on the non-tree edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import flint
import numpy as np

from . import _modp
from .characters import CharacterTable, dim_fixed_subspace, induced_trivial_character
from .cyclo import CycloNumber
from .errors import ChevalleyWeilViolation, EmptyWord, InvariantViolation, StateBudgetExceeded
from .groups import FiniteGroup, Homomorphism
from .orbits import _Visited, apply_move, encode, extended_moves, irrpr_set, primitive_image_set, state_budget
from .words import Word

MOD_P = 2147483629          # prime < 2**31 for the fast span-membership filter


@dataclass(eq=False)
class CoverGraph:
    phi: Homomorphism
    subgroup: int | None
    vertex_rep: np.ndarray      # vertex -> representative element of its coset
    vertex_of: np.ndarray       # element -> vertex
    head: np.ndarray            # (V, n): head of edge (v, i)
    base_vertex: int = 0

    @property
    def n(self) -> int:
        return self.phi.rank

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_rep)

    @property
    def num_edges(self) -> int:
        return self.num_vertices * self.n

    @property
    def regular(self) -> bool:
        return self.num_vertices == self.phi.target.order

    @cached_property
    def tail_of_in(self) -> np.ndarray:
        """(V, n): the vertex u with head(u, i) = v."""
        out = np.empty_like(self.head)
        V = np.arange(self.num_vertices)
        for i in range(self.n):
            out[self.head[:, i], i] = V
        return out

    def edge(self, v: int, i: int) -> int:
        return v * self.n + i

    def edge_ends(self):
        tails = np.repeat(np.arange(self.num_vertices), self.n)
        return tails, self.head.ravel()

    @cached_property
    def spanning_forest(self):
        """BFS tree from the base vertex; returns (tree edge mask, parent vertex,
        parent edge, parent sign, number of components)."""
        V, n = self.num_vertices, self.n
        parent = np.full(V, -1)
        pedge = np.full(V, -1)
        psign = np.zeros(V, dtype=np.int64)
        tree = np.zeros(V * n, dtype=bool)
        seen = np.zeros(V, dtype=bool)
        comps = 0
        for root in [self.base_vertex] + list(range(V)):
            if seen[root]:
                continue
            comps += 1
            seen[root] = True
            q = deque([root])
            while q:
                v = q.popleft()
                steps = [(int(self.head[v, i]), self.edge(v, i), 1) for i in range(n)]
                steps += [(int(self.tail_of_in[v, i]), self.edge(int(self.tail_of_in[v, i]), i), -1)
                          for i in range(n)]
                for u, e, s in steps:
                    if not seen[u]:
                        seen[u] = True
                        parent[u], pedge[u], psign[u] = v, e, s
                        tree[e] = True
                        q.append(u)
        return tree, parent, pedge, psign, comps

    @property
    def h1_rank(self) -> int:
        return self.num_edges - self.num_vertices + self.spanning_forest[4]

    def boundary(self, chain: np.ndarray) -> np.ndarray:
        tails, heads = self.edge_ends()
        out = np.zeros(self.num_vertices, dtype=np.int64)
        np.add.at(out, heads, chain)
        np.add.at(out, tails, -chain)
        return out

    def walk(self, w: Word, start: int) -> tuple[np.ndarray, int]:
        """Edge chain of the path reading w from ``start``, and its end vertex."""
        chain = np.zeros(self.num_edges, dtype=np.int64)
        v = start
        for x in w.letters:
            i = abs(x) - 1
            if x > 0:
                chain[self.edge(v, i)] += 1
                v = int(self.head[v, i])
            else:
                u = int(self.tail_of_in[v, i])
                chain[self.edge(u, i)] -= 1
                v = u
        return chain, v


def build_cover(phi: Homomorphism, subgroup: int | None = None) -> CoverGraph:
    G, n = phi.target, phi.rank
    if subgroup is None or subgroup == 0:
        coset_id = np.arange(G.order)
        sub = None
    else:
        sub = int(subgroup)
        H = G.cyclic_subgroup(sub)
        coset_id = np.full(G.order, -1)
        k = 0
        for x in range(G.order):
            if coset_id[x] < 0:
                coset_id[G.mult[H, x]] = k
                k += 1
    num = int(coset_id.max()) + 1
    rep = np.full(num, -1)
    for x in range(G.order - 1, -1, -1):
        rep[coset_id[x]] = x
    raw_head = np.stack([coset_id[G.mult[rep, g]] for g in phi.images], axis=1)
    raw_in = np.empty_like(raw_head)
    for i in range(n):
        raw_in[raw_head[:, i], i] = np.arange(num)
    # renumber by BFS from the identity coset: out-edges by generator, then in-edges
    order = []
    seen = np.zeros(num, dtype=bool)
    for root in [int(coset_id[0])] + list(range(num)):
        if seen[root]:
            continue
        seen[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            order.append(v)
            for u in list(raw_head[v]) + list(raw_in[v]):
                if not seen[u]:
                    seen[u] = True
                    q.append(int(u))
    new_id = np.empty(num, dtype=np.int64)
    new_id[order] = np.arange(num)
    head = new_id[raw_head[order]]
    vertex_rep = rep[order]
    return CoverGraph(phi, sub, vertex_rep, new_id[coset_id], head, 0)


# --------------------------------------------------------------------------

@dataclass(eq=False)
class HomologySpace:
    cover: CoverGraph
    tree: np.ndarray            # mask over edges
    basis_edges: np.ndarray     # non-tree edges, one per basis cycle
    cycles: np.ndarray          # (dim, E) integer edge chains of the basis cycles
    character: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis_edges)

    @property
    def group(self) -> FiniteGroup:
        return self.cover.phi.target

    def coords(self, chain: np.ndarray) -> np.ndarray:
        return chain[..., self.basis_edges]

    @cached_property
    def edge_perm(self) -> np.ndarray:
        """edge_perm[h, e] = the edge h.e under left translation by h."""
        cov = self.cover
        G = self.group
        vperm = cov.vertex_of[G.mult[:, cov.vertex_rep]]       # [h, v] -> vertex of h.rep(v)
        n = cov.n
        return (vperm[:, :, None] * n + np.arange(n)[None, None, :]).reshape(G.order, -1)

    @cached_property
    def edge_perm_inv(self) -> np.ndarray:
        return self.edge_perm[self.group.inv]

    def translate(self, h, chains: np.ndarray) -> np.ndarray:
        """Left translation L_h on edge chains; h may be an array (one per row)."""
        if np.ndim(h) == 0:
            return chains[..., self.edge_perm_inv[h]]
        rows = np.arange(len(chains))[:, None]
        return chains[rows, self.edge_perm_inv[h]]

    def deck_matrix(self, h: int) -> np.ndarray:
        """Matrix of L_h on cycle coordinates: column j is the image of basis cycle j."""
        return self.coords(self.translate(h, self.cycles)).T

    @cached_property
    def deck_matrices(self) -> np.ndarray:
        return np.stack([self.deck_matrix(h) for h in range(self.group.order)])

    def traces(self) -> list[int]:
        return [int(np.trace(self.deck_matrix(h))) for h in range(self.group.order)]

    def check_homomorphism(self):
        G = self.group
        M = self.deck_matrices
        for s in G.gen_indices:
            prod = np.einsum("ij,hjk->hik", M[s], M)
            if not (prod == M[G.mult[s]]).all():
                raise ChevalleyWeilViolation(f"deck action is not multiplicative at generator {s}")


def homology_action(cover: CoverGraph, check: bool = True) -> HomologySpace:
    tree, parent, pedge, psign, _ = cover.spanning_forest
    V, E = cover.num_vertices, cover.num_edges
    # chain of the tree path from the root of each component to v
    path = np.zeros((V, E), dtype=np.int64)
    tree_order = np.argsort(_bfs_depth(parent))
    for v in tree_order:
        if parent[v] >= 0:
            path[v] = path[parent[v]]
            path[v, pedge[v]] += psign[v]
    basis = np.flatnonzero(~tree)
    tails, heads = cover.edge_ends()
    cycles = path[tails[basis]] - path[heads[basis]]
    cycles[np.arange(len(basis)), basis] += 1
    hs = HomologySpace(cover, tree, basis, cycles)
    if check:
        if (np.array([cover.boundary(c) for c in cycles]) != 0).any():
            raise ChevalleyWeilViolation("basis cycle has nonzero boundary")
        if cover.regular:
            chevalley_weil_check(hs)
    return hs


def _bfs_depth(parent: np.ndarray) -> np.ndarray:
    depth = np.zeros(len(parent), dtype=np.int64)
    for v in range(len(parent)):
        d, u = 0, v
        while parent[u] >= 0:
            u = parent[u]
            d += 1
        depth[v] = d
    return depth


def chevalley_weil_check(hs: HomologySpace) -> list[int]:
    """H_1 = C[G]^(n-1) + C as characters: trace (n-1)|G|+1 at e, 1 elsewhere."""
    G = hs.group
    n = hs.cover.n
    if not hs.cover.phi.surjective:
        raise ChevalleyWeilViolation("Chevalley-Weil check needs a surjective homomorphism")
    tr = hs.traces()
    want = [(n - 1) * G.order + 1] + [1] * (G.order - 1)
    if tr != want:
        bad = next(h for h in range(G.order) if tr[h] != want[h])
        raise ChevalleyWeilViolation(f"trace at element {bad} is {tr[bad]}, expected {want[bad]}")
    hs.check_homomorphism()
    hs.character = tr
    return tr


def homology(phi: Homomorphism, check: bool = True) -> HomologySpace:
    return homology_action(build_cover(phi), check=check)


# --------------------------------------------------------------------------
# elevations

def elevation_class(cover: CoverGraph, w: Word, start: int = 0, *, return_chain: bool = False):
    """Cycle coordinates of the closed lift of w^k at ``start`` (k minimal)."""
    if not w.letters:
        raise EmptyWord("elevation of the empty word")
    hs = _homology_cache(cover)
    total = np.zeros(cover.num_edges, dtype=np.int64)
    v = start
    k = 0
    while True:
        chain, v = cover.walk(w, v)
        total += chain
        k += 1
        if v == start:
            break
    vec = hs.coords(total)
    return (vec, total, k) if return_chain else vec


def _homology_cache(cover: CoverGraph) -> HomologySpace:
    hs = cover.__dict__.get("_homology")
    if hs is None:
        hs = homology_action(cover, check=False)
        cover.__dict__["_homology"] = hs
    return hs


def elevation_chain(hs: HomologySpace, chain: np.ndarray, g: int) -> np.ndarray:
    """sum_{j < ord g} L_{g^j} chain: the closed lift of w^k from the base, given
    the base path chain of w and g = phi(w)."""
    G = hs.group
    out = chain.copy()
    x = g
    while x != 0:
        out += hs.translate(x, chain)
        x = int(G.mult[x, g])
    return out


# --------------------------------------------------------------------------
# orbit spans

def rank_exact(rows) -> int:
    rows = np.asarray(rows)
    if rows.size == 0:
        return 0
    return flint.fmpz_mat([[int(x) for x in r] for r in rows]).rank()


@dataclass
class OrbitCheck:
    image: int
    orbit_size: int
    character: list[Fraction]
    multiplicities: list[int]


def orbit_span_check(hs: HomologySpace, T: CharacterTable, elev_chain: np.ndarray, g: int) -> OrbitCheck:
    """The G-translates of an elevation span a copy of Ind_<g>^G(trivial).

    Checks that <g> stabilizes the elevation, that the |G|/ord(g) distinct
    translates are linearly independent, that the resulting permutation
    character equals the induced character exactly, and that its
    multiplicities agree with the fixed-space dimensions (Frobenius
    reciprocity).
    """
    G = hs.group
    if not (hs.translate(g, elev_chain) == elev_chain).all():
        raise InvariantViolation(f"elevation is not stabilized by its image {g}")
    orbit = hs.translate(np.arange(G.order), np.broadcast_to(elev_chain, (G.order, len(elev_chain))))
    vecs = hs.coords(orbit)
    uniq, idx = np.unique(vecs, axis=0, return_inverse=True)
    idx = idx.ravel()
    k = G.element_order(g)
    if len(uniq) != G.order // k:
        raise InvariantViolation(f"orbit has {len(uniq)} elevations, expected {G.order // k}")
    if rank_exact(uniq) != len(uniq):
        raise InvariantViolation("translates of an elevation are linearly dependent")
    # permutation character: number of translates fixed by each class representative
    chi = []
    for rep, _ in T.classes:
        moved = idx[G.mult[rep, np.arange(G.order)]]
        chi.append(Fraction(int((moved == idx).sum()) * len(uniq), G.order))
    induced = induced_trivial_character(G, g)
    if [CycloNumber.rational(c) for c in chi] != induced:
        raise InvariantViolation(f"orbit character {chi} differs from the induced character")
    mult = T.multiplicities(chi)
    fixed = [dim_fixed_subspace(T, i, g) for i in range(len(T))]
    if mult != fixed:
        raise InvariantViolation("Frobenius reciprocity fails for an orbit span")
    return OrbitCheck(g, len(uniq), chi, mult)


class _SpanAccumulator:
    """Growing G-invariant subspace of H_1, with an exact basis.

    New vectors are screened mod a large prime; a vector that is nonzero
    mod p after reduction is certainly outside the rational span, and its
    whole G-orbit is then added and the exact basis recomputed with flint.
    A vector wrongly screened out can only make the lower bound smaller,
    never wrong.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.exact = flint.fmpq_mat(0, dim)
        self.rank = 0
        self.modp = np.zeros((0, dim), dtype=np.int64)
        self.pivots: list[int] = []
        self.seen: set[bytes] = set()

    def is_new(self, v: np.ndarray) -> bool:
        key = v.tobytes()
        if key in self.seen:
            return False
        self.seen.add(key)
        x = v % MOD_P
        for row, c in zip(self.modp, self.pivots):
            if x[c]:
                x = (x - x[c] * row) % MOD_P
        return bool(x.any())

    def add(self, rows: np.ndarray):
        rows = np.unique(rows, axis=0)
        stacked = [[int(x) for x in r] for r in rows]
        if self.rank:
            stacked = [[self.exact[i, j] for j in range(self.dim)] for i in range(self.rank)] + stacked
        R, r = flint.fmpq_mat(stacked).rref()
        self.exact = flint.fmpq_mat([[R[i, j] for j in range(self.dim)] for i in range(r)]) \
            if r else flint.fmpq_mat(0, self.dim)
        self.rank = r
        Rp, piv = _modp.rref(np.vstack([self.modp, rows % MOD_P]) if len(self.modp) else rows % MOD_P, MOD_P)
        self.modp, self.pivots = Rp[:len(piv)], piv

    def basis_pivots(self) -> list[int]:
        piv = []
        for i in range(self.rank):
            piv.append(next(j for j in range(self.dim) if self.exact[i, j] != 0))
        return piv


def subspace_character(hs: HomologySpace, T: CharacterTable, basis: flint.fmpq_mat, rank: int) -> list[Fraction]:
    """Character of a G-invariant subspace given by an RREF basis (rows)."""
    if rank == 0:
        return [Fraction(0)] * len(T.classes)
    piv = [next(j for j in range(basis.ncols()) if basis[i, j] != 0) for i in range(rank)]
    out = []
    for rep, _ in T.classes:
        M = flint.fmpq_mat([[int(x) for x in row] for row in hs.deck_matrix(rep)])
        img = M * basis.transpose()                   # column i = image of basis row i
        tr = sum((img[piv[i], i] for i in range(rank)), flint.fmpq(0))
        out.append(Fraction(int(tr.p), int(tr.q)))
    return out


@dataclass
class SubrepSpan:
    generators: np.ndarray          # integer cycle vectors spanning the accumulated subspace
    rank: int
    lower_mult: list[int]
    upper_mult: list[int]
    dims: list[int]
    irrpr_rows: list[int]
    dim: int
    budget: int
    depth: int                      # BFS depth actually reached
    truncated: bool                 # stopped by the word budget with tuples left
    orbits_checked: int
    words_used: int
    cw_check: bool = True

    @property
    def determined(self) -> bool:
        return self.lower_mult == self.upper_mult

    def report(self) -> dict:
        return {"cw_check": self.cw_check, "dim": self.dim, "irrpr_rows": self.irrpr_rows,
                "lower_mult": self.lower_mult, "upper_mult": self.upper_mult,
                "determined": self.determined, "budget": self.budget, "rank": self.rank,
                "depth": self.depth, "truncated": self.truncated,
                "orbits_checked": self.orbits_checked, "words_used": self.words_used}


def upper_multiplicities(phi: Homomorphism, T: CharacterTable, irr: set[int]) -> list[int]:
    n = phi.rank
    return [((n - 1) * d if i in irr else 0) + (1 if i == 0 else 0) for i, d in enumerate(T.dims)]


def chain_moves(hs: HomologySpace, G: FiniteGroup, T: np.ndarray, C: np.ndarray, move):
    """Apply a Nielsen move to tuples T (m, n) and their base-path chains C (m, n, E)."""
    kind, i, j = move
    m, inv = G.mult, G.inv
    C2 = C.copy()
    if kind == "R+":      # w_i w_j
        C2[:, i] = C[:, i] + hs.translate(T[:, i], C[:, j])
    elif kind == "R-":    # w_i w_j^-1
        C2[:, i] = C[:, i] - hs.translate(m[T[:, i], inv[T[:, j]]], C[:, j])
    elif kind == "L+":    # w_j w_i
        C2[:, i] = C[:, j] + hs.translate(T[:, j], C[:, i])
    elif kind == "L-":    # w_j^-1 w_i
        tj = inv[T[:, j]]
        C2[:, i] = hs.translate(tj, C[:, i] - C[:, j])
    elif kind == "I":
        C2[:, i] = -hs.translate(inv[T[:, i]], C[:, i])
    else:
        C2[:, i], C2[:, j] = C[:, j], C[:, i]
    return apply_move(G, T, move), C2


def primitive_homology_span(phi: Homomorphism, T: CharacterTable, word_budget: int = 16, *,
                            budget: int | None = None, check_orbits: bool = True,
                            hs: HomologySpace | None = None) -> SubrepSpan:
    """Bracket the span of elevation classes of primitive loops.

    Runs the Nielsen BFS from the standard basis for at most ``word_budget``
    levels, carrying for each basis word its edge chain from the base
    vertex.  Every entry of every visited tuple is a primitive word; its
    elevation and all G-translates are added to the span.  Stops as soon as
    the span reaches the upper bound.
    """
    G, n = phi.target, phi.rank
    if hs is None:
        hs = homology(phi)
    irr = irrpr_set(phi, T)
    upper = upper_multiplicities(phi, T, irr)
    target_rank = sum(u * d for u, d in zip(upper, T.dims))
    acc = _SpanAccumulator(hs.dim)
    gens = []
    moves = extended_moves(n)
    order = G.order
    visited = _Visited(order ** n)
    cap = state_budget(budget)

    frontier = np.asarray([phi.images], dtype=np.int64)
    cover = hs.cover
    E = cover.num_edges
    chains = np.zeros((1, n, E), dtype=np.int64)
    for i in range(n):
        chains[0, i] = cover.walk(Word.gen(i + 1), cover.base_vertex)[0]
    visited.filter_new(encode(frontier, order))
    depth = 0
    orbits = 0
    words = 0
    truncated = False
    while True:
        # collect elevations of every entry at this level
        flatT = frontier.reshape(-1)
        flatC = chains.reshape(-1, E)
        elevs = np.stack([elevation_chain(hs, c, int(g)) for c, g in zip(flatC, flatT)])
        words += len(flatT)
        if np.abs(elevs).max(initial=0) > 2**50:
            raise OverflowError("edge chains too large for int64; lower the word budget")
        coords = hs.coords(elevs)
        for v, e, g in zip(coords, elevs, flatT):
            if acc.rank == target_rank:
                break
            if acc.is_new(v):
                orbit = hs.coords(hs.translate(np.arange(order), np.broadcast_to(e, (order, E))))
                if check_orbits:
                    orbit_span_check(hs, T, e, int(g))
                    orbits += 1
                acc.add(orbit)
                gens.append(v)
        if acc.rank == target_rank:
            break
        if depth >= word_budget:
            truncated = True
            break
        cand_T, cand_C = [], []
        for mv in moves:
            t2, c2 = chain_moves(hs, G, frontier, chains, mv)
            cand_T.append(t2)
            cand_C.append(c2)
        m = len(frontier)
        cand_T = np.stack(cand_T, axis=1).reshape(m * len(moves), n)
        cand_C = np.stack(cand_C, axis=1).reshape(m * len(moves), n, E)
        first = visited.filter_new(encode(cand_T, order))
        if visited.count > cap:
            raise StateBudgetExceeded(f"visited more than {cap} tuples", visited=visited.count)
        if not len(first):
            break
        frontier, chains = cand_T[first], cand_C[first]
        depth += 1

    chi = subspace_character(hs, T, acc.exact, acc.rank)
    lower = T.multiplicities(chi)
    if any(l > u for l, u in zip(lower, upper)):
        raise InvariantViolation(f"span multiplicities {lower} exceed the bound {upper}")
    if sum(l * d for l, d in zip(lower, T.dims)) != acc.rank:
        raise InvariantViolation("span rank disagrees with its multiplicities")
    return SubrepSpan(np.array(gens).reshape(-1, hs.dim), acc.rank, lower, upper, T.dims, sorted(irr),
                      hs.dim, word_budget, depth, truncated, orbits, words)


def isotypic_rank_projector(hs: HomologySpace, T: CharacterTable, rows: np.ndarray, row: int) -> int:
    """Multiplicity of irreducible ``row`` in span(rows), via the exact projector
    (dim/|G|) sum_g conj(chi(g)) rho(g).  Slow; used as a cross-check."""
    from .cyclo import CycloMatrix

    G = hs.group
    d = T.dims[row]
    D = hs.dim
    rows = np.asarray(rows)
    out_rows = []
    for v in rows:
        acc = [CycloNumber.rational(0)] * D
        for h in range(G.order):
            c = T.value(row, h).conjugate()
            if c.is_zero():
                continue
            img = hs.deck_matrix(h) @ v
            acc = [a + c * int(x) for a, x in zip(acc, img)]
        out_rows.append([a * Fraction(d, G.order) for a in acc])
    r = CycloMatrix(out_rows).rank() if out_rows else 0
    if r % d:
        raise InvariantViolation("projected rank is not a multiple of the degree")
    return r // d


# --------------------------------------------------------------------------

@dataclass
class QuotientCheck:
    element: int
    fixed_dim: int
    quotient_rank: int
    quotient_vertices: int

    @property
    def ok(self) -> bool:
        return self.fixed_dim == self.quotient_rank


def quotient_fixed_check(phi: Homomorphism, g: int, hs: HomologySpace | None = None) -> QuotientCheck:
    """dim H_1(Y)^<g> against rank H_1(Y/<g>), computed independently."""
    if hs is None:
        hs = homology(phi, check=False)
    M = hs.deck_matrix(g) - np.eye(hs.dim, dtype=np.int64)
    fixed = hs.dim - rank_exact(M)
    q = build_cover(phi, subgroup=g)
    res = QuotientCheck(int(g), fixed, q.h1_rank, q.num_vertices)
    if not res.ok:
        raise InvariantViolation(f"fixed dimension {fixed} != quotient rank {q.h1_rank} at {g}", report=res)
    return res

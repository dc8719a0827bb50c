"""Finite groups as multiplication tables.

Elements are the integers ``0 .. order-1`` with the identity at 0.  Every
constructor funnels through :func:`closure_from_generators`, which numbers
elements in breadth-first discovery order from the identity (right
multiplication by the seeds, seeds in the given order).  Downstream code
treats elements as opaque indices into ``mult``.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Sequence

import numpy as np

from .errors import BadParameters, ClosureBoundExceeded, NotAPGroup, NotAssociative

MAX_ORDER = 5000          # table is order**2 entries
CLOSURE_BOUND = 10**6
EXHAUSTIVE_ASSOC_ORDER = 200
ASSOC_SAMPLES = 10**5


@dataclass(frozen=True)
class ConjugacyClasses:
    reps: tuple[int, ...]          # smallest element index in each class
    sizes: tuple[int, ...]
    class_of: np.ndarray           # element -> class index
    members: tuple[np.ndarray, ...]

    def __len__(self):
        return len(self.reps)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mult: np.ndarray
    gen_indices: tuple[int, ...]
    labels: tuple[str, ...] | None = None
    name: str = ""
    spec: dict | None = field(default=None, repr=False)

    def __post_init__(self):
        mult = np.ascontiguousarray(self.mult, dtype=np.int32)
        mult.setflags(write=False)
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "gen_indices", tuple(int(g) for g in self.gen_indices))

    def __repr__(self):
        return f"FiniteGroup({self.name or 'unnamed'}, order={self.order})"

    @property
    def order(self) -> int:
        return self.mult.shape[0]

    identity = 0

    @cached_property
    def inv(self) -> np.ndarray:
        rows, cols = np.nonzero(self.mult == 0)
        inv = np.empty(self.order, dtype=np.int32)
        inv[rows] = cols
        inv.setflags(write=False)
        return inv

    def mul(self, *xs: int) -> int:
        acc = 0
        for x in xs:
            acc = int(self.mult[acc, x])
        return acc

    def inverse(self, x: int) -> int:
        return int(self.inv[x])

    def commutator(self, x: int, y: int) -> int:
        """x y x^-1 y^-1"""
        return self.mul(x, y, self.inverse(x), self.inverse(y))

    def conjugate(self, x: int, by: int) -> int:
        """by x by^-1"""
        return self.mul(by, x, self.inverse(by))

    def power(self, g: int, k: int) -> int:
        return power_map(self, g, k)

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels is not None else str(g)

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        ar = np.arange(n)
        cur = ar.copy()
        k = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            cur = self.mult[cur, ar]
            k += 1
        orders.setflags(write=False)
        return orders

    def element_order(self, g: int) -> int:
        return int(self.element_orders[g])

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in np.unique(self.element_orders)))

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mult == self.mult.T).all())

    @cached_property
    def classes(self) -> ConjugacyClasses:
        return conjugacy_classes(self)

    @cached_property
    def table_hash(self) -> str:
        h = hashlib.sha256()
        h.update(self.mult.astype("<i4").tobytes())
        h.update(np.asarray(self.gen_indices, dtype="<i4").tobytes())
        return h.hexdigest()

    def cyclic_subgroup(self, g: int) -> np.ndarray:
        out = [0]
        x = g
        while x != 0:
            out.append(x)
            x = int(self.mult[x, g])
        return np.array(out, dtype=np.int64)


# --------------------------------------------------------------------------
# construction

def closure_from_generators(
    seeds: Sequence[Hashable],
    multiply: Callable[[Hashable, Hashable], Hashable],
    identity: Hashable,
    *,
    label: Callable[[Hashable], str] = str,
    bound: int = CLOSURE_BOUND,
    max_order: int = MAX_ORDER,
    name: str = "",
    spec: dict | None = None,
    check: bool = True,
) -> FiniteGroup:
    """Close ``seeds`` under ``multiply`` and tabulate the result.

    Elements must be hashable.  Only ``order * len(seeds)`` calls to
    ``multiply`` are made; the rest of the table is filled in from the
    right-multiplication tables along the breadth-first spanning tree.
    """
    seeds = list(seeds)
    elems = [identity]
    index = {identity: 0}
    right = [[] for _ in seeds]
    parent = [-1]
    pgen = [-1]
    i = 0
    while i < len(elems):
        x = elems[i]
        for s_idx, s in enumerate(seeds):
            y = multiply(x, s)
            j = index.get(y)
            if j is None:
                j = len(elems)
                if j >= bound:
                    raise ClosureBoundExceeded(f"closure exceeded {bound} elements")
                index[y] = j
                elems.append(y)
                parent.append(i)
                pgen.append(s_idx)
            right[s_idx].append(j)
        i += 1

    order = len(elems)
    if order > max_order:
        raise ClosureBoundExceeded(f"group of order {order} exceeds table cap {max_order}")
    gens = [index[multiply(identity, s)] for s in seeds]

    R = [np.asarray(r, dtype=np.int32) for r in right]
    mult = np.empty((order, order), dtype=np.int32)
    mult[:, 0] = np.arange(order)
    for y in range(1, order):
        mult[:, y] = R[pgen[y]][mult[:, parent[y]]]

    G = FiniteGroup(mult, tuple(gens), tuple(label(e) for e in elems), name=name, spec=spec)
    if check:
        _check_group_axioms(G)
    return G


def from_table(mult, gen_indices=None, *, labels=None, name="", spec=None) -> FiniteGroup:
    """Wrap an explicit table (identity must be 0), validating every axiom."""
    mult = np.asarray(mult, dtype=np.int64)
    n = mult.shape[0]
    if mult.shape != (n, n) or n == 0:
        raise BadParameters("table must be square and nonempty")
    ar = np.arange(n)
    if not ((mult[0] == ar).all() and (mult[:, 0] == ar).all()):
        raise BadParameters("index 0 is not a two-sided identity")
    if ((mult < 0) | (mult >= n)).any():
        raise BadParameters("table entries out of range")
    for row in mult:
        if len(np.unique(row)) != n:
            raise BadParameters("table is not a Latin square")
    if gen_indices is None:
        gen_indices = range(n)
    G = FiniteGroup(mult, tuple(gen_indices), labels, name=name, spec=spec)
    _check_group_axioms(G)
    return G


def _check_group_axioms(G: FiniteGroup):
    n = G.order
    m = G.mult.astype(np.int64)
    if n <= EXHAUSTIVE_ASSOC_ORDER:
        # (xy)z == x(yz) for all triples, one x-slab at a time
        for x in range(n):
            lhs = m[m[x]]      # [y, z] -> (xy)z
            rhs = m[x][m]      # [y, z] -> x(yz)
            if not (lhs == rhs).all():
                raise NotAssociative(f"associativity fails with x={x}")
    else:
        rng = np.random.default_rng(0)
        x, y, z = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
        if not (m[m[x, y], z] == m[x, m[y, z]]).all():
            raise NotAssociative("associativity fails on a sampled triple")
    if not ((m == 0).sum(axis=1) == 1).all():
        raise NotAssociative("some element has no unique inverse")
    if len(subgroup_closure(G, G.gen_indices)) != n:
        raise BadParameters("gen_indices do not generate the group")


def permutation_group(generators: Sequence[Sequence[int]], name="") -> FiniteGroup:
    """Group generated by permutations of {0..d-1} given as image lists.

    The product ``p*q`` applies p first, then q.
    """
    gens = [tuple(int(i) for i in g) for g in generators]
    if not gens:
        raise BadParameters("need at least one generator")
    d = len(gens[0])
    if any(sorted(g) != list(range(d)) for g in gens):
        raise BadParameters("generators must be permutations of the same degree")
    ident = tuple(range(d))
    spec = {"kind": "permutation", "generators": [list(g) for g in gens]}
    return closure_from_generators(
        gens, lambda p, q: tuple(q[i] for i in p), ident,
        label=_cycle_string, name=name or f"Perm(deg {d})", spec=spec)


def _cycle_string(p):
    seen, parts = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = p[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def metacyclic_group(m: int, k: int, r: int) -> FiniteGroup:
    """<a, b | a^m, b^k, b a b^-1 = a^r> as pairs (i, j) = a^i b^j."""
    if m < 1 or k < 1:
        raise BadParameters("m and k must be positive")
    if math.gcd(r, m) != 1 or pow(r, k, m) != 1 % m:
        raise BadParameters(f"need gcd(r, m) = 1 and r^k = 1 mod m (m={m}, k={k}, r={r})")
    rpow = [pow(r, j, m) for j in range(k)]

    def mul(x, y):
        return ((x[0] + rpow[x[1]] * y[0]) % m, (x[1] + y[1]) % k)

    spec = {"kind": "metacyclic", "m": m, "k": k, "r": r % m if m > 1 else 0}
    return closure_from_generators(
        [(1 % m, 0), (0, 1 % k)], mul, (0, 0),
        label=lambda e: _monomial(("a", "b"), e),
        name=f"Meta({m},{k},{r})", spec=spec)


def _monomial(names, exps):
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
    return "".join(parts) or "1"


def cyclic_group(m: int) -> FiniteGroup:
    return abelian_group([m])


def abelian_group(moduli: Sequence[int]) -> FiniteGroup:
    """Z/m1 x ... x Z/mr, generated by the standard basis vectors."""
    moduli = [int(m) for m in moduli]
    if any(m < 1 for m in moduli):
        raise BadParameters("moduli must be positive")
    r = len(moduli)
    seeds = [tuple(1 % moduli[i] if i == j else 0 for i in range(r)) for j in range(r)]

    def mul(x, y):
        return tuple((a + b) % mm for a, b, mm in zip(x, y, moduli))

    return closure_from_generators(
        seeds, mul, tuple([0] * r),
        label=lambda e: "(" + ",".join(map(str, e)) + ")",
        name="Z/" + " x Z/".join(map(str, moduli)),
        spec={"kind": "abelian", "moduli": moduli})


def nilpotent2_group(rank: int, modulus: int, kill: Sequence[Sequence[int]] | None = None) -> FiniteGroup:
    """Pairs (v, w), v in (Z/m)^n, w in wedge^2 (Z/m)^n modulo ``kill``.

    The product is (v, w)(v', w') = (v + v', w + w' + c(v, v')) with the
    bilinear cocycle c(v, v') = sum_{i<j} v_i v'_j e_i^e_j, so that the
    commutator of basis vectors i < j is exactly e_i^e_j.  Coordinates of
    wedge^2 are ordered (0,1), (0,2), ..., (1,2), ...; ``kill`` lists vectors
    in those coordinates generating the central subgroup to quotient by.
    """
    n, m = int(rank), int(modulus)
    if n < 1 or m < 2:
        raise BadParameters("need rank >= 1 and modulus >= 2")
    pairs = list(itertools.combinations(range(n), 2))
    N = len(pairs)
    kill = [tuple(int(c) % m for c in v) for v in (kill or [])]
    if any(len(v) != N for v in kill):
        raise BadParameters(f"kill vectors must have length {N} (wedge^2 coordinates)")

    # enumerate the killed subgroup K of (Z/m)^N; canonical rep = lexicographic min of the coset
    K = {tuple([0] * N)}
    frontier = list(K)
    while frontier:
        nxt = []
        for x in frontier:
            for v in kill:
                y = tuple((a + b) % m for a, b in zip(x, v))
                if y not in K:
                    K.add(y)
                    nxt.append(y)
        frontier = nxt
    K = list(K)
    cache: dict = {}

    def canon(w):
        c = cache.get(w)
        if c is None:
            c = min(tuple((a + b) % m for a, b in zip(w, k)) for k in K)
            cache[w] = c
        return c

    def mul(x, y):
        v, w = x
        v2, w2 = y
        w3 = tuple((w[p] + w2[p] + v[i] * v2[j]) % m for p, (i, j) in enumerate(pairs))
        return (tuple((a + b) % m for a, b in zip(v, v2)), canon(w3))

    zero_w = tuple([0] * N)
    seeds = [(tuple(1 if i == j else 0 for i in range(n)), zero_w) for j in range(n)]
    spec = {"kind": "nilpotent2", "rank": n, "modulus": m, "kill": [list(v) for v in kill]}
    return closure_from_generators(
        seeds, mul, (tuple([0] * n), zero_w),
        label=lambda e: f"{list(e[0])}|{list(e[1])}",
        name=f"N2({n},{m})" + (f"/K{len(K)}" if len(K) > 1 else ""), spec=spec)


def polycyclic_group(
    relative_orders: Sequence[int],
    powers: dict[int, Sequence[int]] | None = None,
    conjugates: dict[tuple[int, int], Sequence[int]] | None = None,
    names: Sequence[str] | None = None,
    name: str = "",
) -> FiniteGroup:
    """Group given by a power-commutator style rewriting system.

    Generators are 0..k-1 in collection order.  ``powers[g]`` is the word
    equal to g**relative_orders[g] (default: empty); ``conjugates[(y, x)]``
    for y > x is the word equal to the product ``y x``, and should start
    with x.  Words are lists of generator indices (positive letters only).
    Elements are exponent vectors; an inconsistent system is caught by the
    associativity check.
    """
    orders = [int(o) for o in relative_orders]
    k = len(orders)
    powers = {int(g): list(w) for g, w in (powers or {}).items()}
    conjugates = {(int(y), int(x)): list(w) for (y, x), w in (conjugates or {}).items()}
    names = list(names) if names else [chr(ord("a") + i) for i in range(k)]

    def collect(word):
        word = list(word)
        for _ in range(100000):
            changed = False
            for p in range(len(word) - 1):
                y, x = word[p], word[p + 1]
                if y > x:
                    word[p:p + 2] = conjugates.get((y, x), [x, y])
                    changed = True
                    break
            if changed:
                continue
            for p in range(len(word)):
                g = word[p]
                if word[p:p + orders[g]] == [g] * orders[g]:
                    word[p:p + orders[g]] = powers.get(g, [])
                    changed = True
                    break
            if not changed:
                exps = [0] * k
                for g in word:
                    exps[g] += 1
                return tuple(exps)
        raise BadParameters("collection did not terminate")

    def mul(x, y):
        word = [g for g in range(k) for _ in range(x[g])]
        word += [g for g in range(k) for _ in range(y[g])]
        return collect(word)

    seeds = [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)]
    spec = {"kind": "polycyclic", "orders": orders,
            "powers": {str(g): w for g, w in powers.items()},
            "conjugates": [[y, x, w] for (y, x), w in conjugates.items()],
            "names": names}
    return closure_from_generators(
        seeds, mul, tuple([0] * k),
        label=lambda e: _monomial(names, e), name=name or "Pc", spec=spec)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    seeds = [(g, 0) for g in G.gen_indices] + [(0, h) for h in H.gen_indices]
    spec = {"kind": "product", "factors": [G.spec, H.spec]} if G.spec and H.spec else None
    return closure_from_generators(
        seeds, lambda x, y: (int(G.mult[x[0], y[0]]), int(H.mult[x[1], y[1]])), (0, 0),
        label=lambda e: f"({G.label(e[0])},{H.label(e[1])})",
        name=f"{G.name} x {H.name}", spec=spec)


def generator_isomorphism(G: FiniteGroup, H: FiniteGroup, gens_G=None, gens_H=None):
    """The isomorphism sending gens_G[i] -> gens_H[i], or None if there is none."""
    gens_G = list(G.gen_indices if gens_G is None else gens_G)
    gens_H = list(H.gen_indices if gens_H is None else gens_H)
    if G.order != H.order or len(gens_G) != len(gens_H):
        return None
    f = np.full(G.order, -1, dtype=np.int64)
    f[0] = 0
    queue = [0]
    for x in queue:
        for s, t in zip(gens_G, gens_H):
            y = int(G.mult[x, s])
            fy = int(H.mult[f[x], t])
            if f[y] < 0:
                f[y] = fy
                queue.append(y)
            elif f[y] != fy:
                return None
    if (f < 0).any() or len(np.unique(f)) != G.order:
        return None
    if not (f[G.mult] == H.mult[f[:, None], f[None, :]]).all():
        return None
    return f


# --------------------------------------------------------------------------
# structural queries

def conjugacy_classes(G: FiniteGroup) -> ConjugacyClasses:
    n = G.order
    class_of = np.full(n, -1, dtype=np.int64)
    ar = np.arange(n)
    reps, sizes, members = [], [], []
    for x in range(n):
        if class_of[x] >= 0:
            continue
        conj = np.unique(G.mult[G.mult[ar, x], G.inv])
        class_of[conj] = len(reps)
        reps.append(x)
        sizes.append(len(conj))
        members.append(conj)
    class_of.setflags(write=False)
    return ConjugacyClasses(tuple(reps), tuple(sizes), class_of, tuple(members))


def subgroup_closure(G: FiniteGroup, S) -> np.ndarray:
    """Sorted element indices of the subgroup generated by S."""
    gens = np.unique(np.asarray(list(S), dtype=np.int64))
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    if gens.size == 0:
        return np.array([0], dtype=np.int64)
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        nxt = np.unique(G.mult[np.ix_(frontier, gens)])
        new = nxt[~mask[nxt]]
        mask[new] = True
        frontier = new
    return np.flatnonzero(mask)


def normal_closure(G: FiniteGroup, S) -> np.ndarray:
    S = np.unique(np.asarray(list(S), dtype=np.int64))
    if S.size == 0:
        return np.array([0], dtype=np.int64)
    ar = np.arange(G.order)
    conj = G.mult[G.mult[ar[:, None], S[None, :]], G.inv[ar][:, None]]
    return subgroup_closure(G, np.unique(conj))


def center(G: FiniteGroup) -> np.ndarray:
    return np.flatnonzero((G.mult == G.mult.T).all(axis=1))


def power_map(G: FiniteGroup, g: int, k: int) -> int:
    k %= G.element_order(g)
    acc, base = 0, int(g)
    while k:
        if k & 1:
            acc = int(G.mult[acc, base])
        base = int(G.mult[base, base])
        k >>= 1
    return acc


def prime_power(n: int):
    """(p, e) with n = p**e and p prime, or None.  n = 1 gives (1, 0)."""
    if n == 1:
        return (1, 0)
    p = next(q for q in itertools.count(2) if n % q == 0)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return (p, e) if n == 1 else None


def frattini_subgroup_pgroup(G: FiniteGroup) -> np.ndarray:
    """Phi(G) = G^p [G, G] for a p-group: normal closure of generator p-th
    powers and generator commutators."""
    pp = prime_power(G.order)
    if pp is None:
        raise NotAPGroup(f"order {G.order} is not a prime power")
    p = pp[0]
    if G.order == 1:
        return np.array([0], dtype=np.int64)
    gens = G.gen_indices
    seeds = [G.power(g, p) for g in gens]
    seeds += [G.commutator(x, y) for x in gens for y in gens]
    return normal_closure(G, seeds)


def is_redundant(G: FiniteGroup, t: Sequence[int]) -> bool:
    """Some entry lies in the subgroup generated by the other entries."""
    t = [int(x) for x in t]
    for i, g in enumerate(t):
        if g == 0:
            return True
        others = t[:i] + t[i + 1:]
        if g in set(subgroup_closure(G, others).tolist()):
            return True
    return False


def is_surjective(G: FiniteGroup, images: Sequence[int]) -> bool:
    return len(subgroup_closure(G, images)) == G.order


# --------------------------------------------------------------------------
# JSON group specs

def group_from_spec(spec: dict) -> FiniteGroup:
    from .errors import SchemaError

    try:
        kind = spec["kind"]
        if kind == "metacyclic":
            return metacyclic_group(spec["m"], spec["k"], spec["r"])
        if kind == "nilpotent2":
            return nilpotent2_group(spec["rank"], spec["modulus"], spec.get("kill"))
        if kind == "permutation":
            return permutation_group(spec["generators"])
        if kind == "abelian":
            return abelian_group(spec["moduli"])
        if kind == "cyclic":
            return cyclic_group(spec["m"])
        if kind == "polycyclic":
            conj = {(y, x): w for y, x, w in spec.get("conjugates", [])}
            return polycyclic_group(spec["orders"], {int(g): w for g, w in spec.get("powers", {}).items()},
                                    conj, spec.get("names"))
        if kind == "product":
            a, b = spec["factors"]
            return direct_product(group_from_spec(a), group_from_spec(b))
        if kind == "table":
            n = spec["order"]
            flat = spec["mult"]
            if len(flat) != n * n:
                raise SchemaError("table length is not order**2")
            return from_table(np.asarray(flat).reshape(n, n), spec.get("gens"),
                              labels=spec.get("labels"), spec=None)
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed group spec: {exc!r}") from exc
    raise SchemaError(f"unknown group kind {spec.get('kind')!r}")


def group_to_spec(G: FiniteGroup) -> dict:
    if G.spec is not None:
        return dict(G.spec)
    return {"kind": "table", "order": G.order, "mult": G.mult.ravel().tolist(),
            "gens": list(G.gen_indices)}


# --------------------------------------------------------------------------
# homomorphisms from free groups

@dataclass(frozen=True, eq=False)
class Homomorphism:
    """phi: F_n -> target given by the images of the free basis a_1..a_n."""

    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if not imgs:
            raise BadParameters("rank must be at least 1")
        if any(not 0 <= x < self.target.order for x in imgs):
            raise BadParameters("image index outside the group")
        object.__setattr__(self, "images", imgs)

    @property
    def rank(self) -> int:
        return len(self.images)

    @cached_property
    def surjective(self) -> bool:
        return is_surjective(self.target, self.images)

    def __call__(self, word) -> int:
        return word.evaluate(self.target, self.images)

    def __repr__(self):
        imgs = ", ".join(self.target.label(g) for g in self.images)
        return f"Homomorphism({self.target!r}; {imgs})"


def standard_hom(G: FiniteGroup) -> Homomorphism:
    """Free basis sent to the marked generators."""
    return Homomorphism(G, G.gen_indices)


def element_from_label(G: FiniteGroup, x) -> int:
    if isinstance(x, (int, np.integer)):
        return int(x)
    if G.labels is not None and x in G.labels:
        return G.labels.index(x)
    from .errors import SchemaError

    raise SchemaError(f"unknown element label {x!r}")


def all_subgroups(G: FiniteGroup) -> np.ndarray:
    """Boolean masks (k, |G|) of every subgroup, sorted by order.

    Every subgroup is a join of cyclic subgroups, so joining cyclic
    subgroups onto known subgroups until nothing new appears finds them all.
    """
    cyclic = {}
    for g in range(G.order):
        m = np.zeros(G.order, dtype=bool)
        m[G.cyclic_subgroup(g)] = True
        cyclic.setdefault(m.tobytes(), m)
    cyc = list(cyclic.values())
    found = dict(cyclic)
    frontier = list(cyc)
    while frontier:
        new = []
        for H in frontier:
            for C in cyc:
                if (C <= H).all():
                    continue
                J = np.zeros(G.order, dtype=bool)
                J[subgroup_closure(G, np.flatnonzero(H | C))] = True
                key = J.tobytes()
                if key not in found:
                    found[key] = J
                    new.append(J)
        frontier = new
    subs = sorted(found.values(), key=lambda m: (int(m.sum()), m.tobytes()))
    return np.array(subs)


def maximal_subgroups(G: FiniteGroup, subs: np.ndarray | None = None) -> np.ndarray:
    if subs is None:
        subs = all_subgroups(G)
    proper = [m for m in subs if m.sum() < G.order]
    out = [m for m in proper if not any(m.sum() < K.sum() and (m <= K).all() for K in proper)]
    return np.array(out, dtype=bool).reshape(-1, G.order)

"""Exact character tables.

The table is computed with the class-algebra method: the class
multiplication coefficients define commuting matrices whose common
eigenvectors are the central characters.  These are found over F_p with
p = 1 mod exp(G) and p > 2 sqrt|G|; each character value is then lifted to
Q(zeta_e) by recovering the eigenvalue multiplicities of rho(g) from the
mod-p values on the powers of g.  The result is checked against both
orthogonality relations in exact arithmetic before it is returned.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np

from . import _modp
from .cyclo import ONE, ZERO, CycloNumber, _power_table
from .errors import (
    InternalNonInteger, OrthogonalityError, PrimeSearchFailed, SchemaError,
)
from .groups import FiniteGroup, group_from_spec, group_to_spec

PRIME_SEARCH_LIMIT = 10**7


@dataclass(eq=False)
class CharacterTable:
    group: FiniteGroup
    classes: list[tuple[int, int]]          # (representative, size)
    class_of: np.ndarray
    chars: list[list[CycloNumber]]          # row per irreducible, column per class

    @property
    def dims(self) -> list[int]:
        return [int(row[0].as_rational()) for row in self.chars]

    def __len__(self):
        return len(self.chars)

    def __eq__(self, other):
        return (isinstance(other, CharacterTable)
                and self.group.table_hash == other.group.table_hash
                and self.classes == other.classes
                and self.chars == other.chars)

    def same_up_to_row_order(self, other: "CharacterTable") -> bool:
        if self.classes != other.classes:
            return False
        key = lambda row: tuple(v.promote(self.conductor_of(row, other)).sort_key() for v in row)
        return sorted(map(key, self.chars)) == sorted(map(key, other.chars))

    def conductor_of(self, row, other) -> int:
        return math.lcm(self.group.exponent, other.group.exponent)

    @cached_property
    def inverse_class(self) -> list[int]:
        G = self.group
        return [int(self.class_of[G.inv[r]]) for r, _ in self.classes]

    def value(self, row: int, g: int) -> CycloNumber:
        return self.chars[row][int(self.class_of[g])]

    def inner(self, f, h) -> CycloNumber:
        """<f, h> = 1/|G| sum_g f(g) conj(h(g)) for class functions given per class."""
        acc = ZERO
        for (_, size), a, b in zip(self.classes, f, h):
            acc = acc + CycloNumber._coerce(a) * CycloNumber._coerce(b).conjugate() * size
        return acc * Fraction(1, self.group.order)

    @cached_property
    def _conj_coeffs(self) -> tuple[int, list[list[list[Fraction]]]]:
        """size * conj(chi_i(c)) as coefficient vectors in Q(zeta_N), N = exp(G)."""
        N = self.group.exponent
        return N, [[list((v.conjugate() * size).promote(N).c) for v, (_, size) in zip(row, self.classes)]
                   for row in self.chars]

    def _rational_inner(self, f, row: int) -> CycloNumber:
        N, cc = self._conj_coeffs
        acc = [Fraction(0)] * len(cc[row][0])
        for a, vec in zip(f, cc[row]):
            if a:
                acc = [x + a * y for x, y in zip(acc, vec)]
        return CycloNumber(N, acc) * Fraction(1, self.group.order)

    def multiplicities(self, f) -> list[int]:
        """Decompose a (virtual) character into irreducibles; values must be integers."""
        vals = [CycloNumber._coerce(a) for a in f]
        rational = all(v.is_rational() for v in vals)
        if rational:
            vals = [v.as_rational() for v in vals]
        out = []
        for i, row in enumerate(self.chars):
            m = self._rational_inner(vals, i) if rational else self.inner(f, row)
            if not m.is_integer():
                raise InternalNonInteger(f"non-integral multiplicity {m}")
            out.append(int(m.as_rational()))
        return out

    def find_row(self, values) -> int | None:
        values = [CycloNumber._coerce(v) for v in values]
        for i, row in enumerate(self.chars):
            if row == values:
                return i
        return None

    # orthogonality --------------------------------------------------------
    def integer_coefficients(self) -> tuple[int, np.ndarray]:
        """(N, X) with X[i, c] the coordinates of chi_i(c) in the power basis
        of Z[zeta_N], N = exp(G).  Fails unless every value is an algebraic
        integer of conductor dividing N."""
        N = self.group.exponent
        rows = []
        for row in self.chars:
            vals = []
            for v in row:
                if N % v.N:
                    raise OrthogonalityError(f"value of conductor {v.N} does not divide exp(G) = {N}")
                c = v.promote(N).c
                if any(x.denominator != 1 for x in c):
                    raise OrthogonalityError(f"value {v} is not an algebraic integer")
                vals.append([int(x) for x in c])
            rows.append(vals)
        k = len(self.chars)
        return N, np.array(rows, dtype=object).reshape(k, len(self.classes), -1)

    def check_orthogonality(self):
        """Both orthogonality relations, exactly, over Z[zeta_N]."""
        G = self.group
        k = len(self.classes)
        if len(self.chars) != k:
            raise OrthogonalityError(f"{len(self.chars)} rows for {k} classes")
        N, X = self.integer_coefficients()
        P = np.array(_power_table(N), dtype=object)                 # zeta^t in the power basis
        d = X.shape[2]
        conj_basis = P[[(-s) % N for s in range(d)]]                # (d, d): zeta^-s
        big = max((abs(int(x)) for x in X.ravel()), default=0) ** 2 * G.order * d * d * max(1, int(np.abs(P.astype(float)).max()))
        dtype = np.int64 if big < 2**62 else object
        X = X.astype(dtype)
        Xc = np.einsum("ics,st->ict", X, conj_basis.astype(dtype))
        Q = P[np.add.outer(np.arange(d), np.arange(d)) % N].astype(dtype)   # (d, d, d): zeta^(s+t)
        sizes = np.array([s for _, s in self.classes], dtype=dtype)

        rows = np.einsum("ics,jct,c->ijst", X, Xc, sizes)
        rows = np.einsum("ijst,stu->iju", rows, Q)
        want = np.zeros_like(rows)
        want[np.arange(k), np.arange(k), 0] = G.order
        bad = np.argwhere((rows != want).any(axis=2))
        if len(bad):
            i, j = bad[0]
            raise OrthogonalityError(f"rows {i},{j}: inner product is not {G.order if i == j else 0}")

        cols = np.einsum("ias,ibt->abst", X, Xc)
        cols = np.einsum("abst,stu->abu", cols, Q)
        want = np.zeros_like(cols)
        want[np.arange(k), np.arange(k), 0] = [G.order // s for _, s in self.classes]
        bad = np.argwhere((cols != want).any(axis=2))
        if len(bad):
            a, b = bad[0]
            raise OrthogonalityError(f"columns {a},{b}: sum is not {G.order // self.classes[a][1] if a == b else 0}")
        if sum(d * d for d in self.dims) != G.order:
            raise OrthogonalityError("sum of squared degrees differs from |G|")

    def check_orthogonality_slow(self):
        """The same relations in CycloNumber arithmetic (cross-check)."""
        G = self.group
        k = len(self.classes)
        conj = [[v.conjugate() for v in row] for row in self.chars]
        for i in range(k):
            for j in range(i, k):
                s = ZERO
                for c, (_, size) in enumerate(self.classes):
                    s = s + self.chars[i][c] * conj[j][c] * size
                if s != (G.order if i == j else 0):
                    raise OrthogonalityError(f"rows {i},{j}: sum {s}")
        for a in range(k):
            for b in range(a, k):
                s = ZERO
                for i in range(k):
                    s = s + self.chars[i][a] * conj[i][b]
                if s != (Fraction(G.order, self.classes[a][1]) if a == b else 0):
                    raise OrthogonalityError(f"columns {a},{b}: sum {s}")


# --------------------------------------------------------------------------
# computation

def _class_data(G: FiniteGroup):
    cc = G.classes
    return [(r, s) for r, s in zip(cc.reps, cc.sizes)], cc.class_of


def dixon_prime(order: int, exponent: int) -> int:
    lo = 2 * math.isqrt(order) + 1
    p = exponent + 1
    while p <= lo:
        p += exponent
    while p < PRIME_SEARCH_LIMIT:
        if _modp.is_prime(p):
            return p
        p += exponent
    raise PrimeSearchFailed(f"no prime = 1 mod {exponent} below {PRIME_SEARCH_LIMIT}")


def class_coefficients(G: FiniteGroup, classes, class_of) -> np.ndarray:
    """a[j, r, s] = #{x in C_j : x^-1 z_s in C_r} for fixed z_s in C_s."""
    k = len(classes)
    a = np.zeros((k, k, k), dtype=np.int64)
    xs = np.arange(G.order)
    cx = class_of[xs]
    for s, (z, _) in enumerate(classes):
        y = G.mult[G.inv[xs], z]
        np.add.at(a[:, :, s], (cx, class_of[y]), 1)
    return a


def _common_eigenvectors(mats: list[np.ndarray], p: int) -> list[np.ndarray]:
    k = mats[0].shape[0]
    spaces = [np.eye(k, dtype=np.int64)]     # columns span each space
    for M in mats:
        if all(S.shape[1] == 1 for S in spaces):
            break
        new = []
        for S in spaces:
            m = S.shape[1]
            if m == 1:
                new.append(S)
                continue
            # column-echelon basis so that S[piv] = I, then M S = S A
            R, piv = _modp.rref(S.T, p)
            S = R[:m].T
            A = (M @ S % p)[piv] % p
            for lam in _modp.roots(_modp.charpoly(A, p), p):
                E = _modp.nullspace((A - lam * np.eye(m, dtype=np.int64)) % p, p)
                new.append(S @ E % p)
        if sum(S.shape[1] for S in new) != k:
            raise PrimeSearchFailed("class matrices not diagonalizable mod p")
        spaces = new
    if any(S.shape[1] != 1 for S in spaces):
        raise PrimeSearchFailed("could not separate all characters")
    return [S[:, 0] for S in spaces]


def character_table(G: FiniteGroup, check: bool = True) -> CharacterTable:
    classes, class_of = _class_data(G)
    k = len(classes)
    n = G.order
    e = G.exponent
    p = dixon_prime(n, e)
    a = class_coefficients(G, classes, class_of)
    mats = [a[j] % p for j in range(1, k)] or [np.zeros((1, 1), dtype=np.int64)]
    omegas = _common_eigenvectors(mats, p)

    sizes = [s for _, s in classes]
    inv_cls = [int(class_of[G.inv[r]]) for r, _ in classes]
    z = pow(_modp.primitive_root(p), (p - 1) // e, p)
    zinv = pow(z, p - 2, p)
    e_inv = pow(e, p - 2, p)
    # class of g^l for each class rep and each l < e
    pow_cls = np.empty((k, e), dtype=np.int64)
    for c, (r, _) in enumerate(classes):
        x = 0
        for l in range(e):
            pow_cls[c, l] = class_of[x]
            x = int(G.mult[x, r])

    rows = []
    for w in omegas:
        w = w * pow(int(w[0]), p - 2, p) % p
        S = sum(int(w[s]) * int(w[inv_cls[s]]) * pow(sizes[s], p - 2, p) for s in range(k)) % p
        dsq = n * pow(S, p - 2, p) % p
        cands = [d for d in range(1, math.isqrt(n) + 1) if d * d % p == dsq]
        if len(cands) != 1:
            raise PrimeSearchFailed(f"degree not determined mod {p}")
        d = cands[0]
        theta = [int(w[s]) * d * pow(sizes[s], p - 2, p) % p for s in range(k)]
        row = []
        for c in range(k):
            mults = []
            for t in range(e):
                acc = 0
                zt = pow(zinv, t, p)
                zz = 1
                for l in range(e):
                    acc += theta[pow_cls[c, l]] * zz
                    zz = zz * zt % p
                m = acc * e_inv % p
                if m > d:
                    raise InternalNonInteger(f"eigenvalue multiplicity {m} exceeds degree {d}")
                mults.append(m)
            row.append(CycloNumber.from_exponents(e, mults))
        rows.append(row)

    rows.sort(key=lambda row: (int(row[0].as_rational()), not all(v.is_one() for v in row),
                               tuple(v.sort_key() for v in row)))
    T = CharacterTable(G, classes, class_of, rows)
    if check:
        T.check_orthogonality()
    return T


# --------------------------------------------------------------------------
# fixed spaces and induced characters

def dim_fixed_subspace(T: CharacterTable, row: int, g: int) -> int:
    """dim of the <g>-fixed subspace of the row's irreducible: average of chi over <g>."""
    cache = T.__dict__.setdefault("_fixed_cache", {})
    key = (row, int(T.class_of[g]))
    if key in cache:
        return cache[key]
    G = T.group
    o = G.element_order(g)
    acc = ZERO
    x = 0
    for _ in range(o):
        acc = acc + T.value(row, x)
        x = int(G.mult[x, g])
    acc = acc * Fraction(1, o)
    if not acc.is_integer() or acc.as_rational() < 0:
        raise InternalNonInteger(f"fixed-space dimension {acc} for row {row}, element {g}")
    cache[key] = int(acc.as_rational())
    return cache[key]


def induced_trivial_character(G: FiniteGroup, g: int, classes=None) -> list[CycloNumber]:
    """Character of Ind_<g>^G(trivial), one value per conjugacy class.

    Uses chi(x) = |C_G(x)| |x^G cap H| / |H| with H = <g>.
    """
    cc = G.classes
    H = G.cyclic_subgroup(g)
    in_class = np.bincount(cc.class_of[H], minlength=len(cc))
    out = []
    for c, size in enumerate(cc.sizes):
        out.append(CycloNumber.rational(Fraction(G.order * int(in_class[c]), size * len(H))))
    return out


# --------------------------------------------------------------------------
# JSON I/O

TABLE_SCHEMA = {
    "type": "object",
    "required": ["group", "classes", "chars"],
    "properties": {
        "group": {"type": "object", "required": ["kind"]},
        "classes": {"type": "array", "items": {
            "type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}},
        "chars": {"type": "array", "items": {"type": "array", "items": {
            "oneOf": [
                {"type": "integer"},
                {"type": "string"},
                {"type": "object", "required": ["N", "c"],
                 "properties": {"N": {"type": "integer", "minimum": 1},
                                "c": {"type": "array", "items": {"type": "string"}}}},
            ]}}},
    },
}


def table_to_json(T: CharacterTable) -> dict:
    return {"group": group_to_spec(T.group),
            "classes": [[int(r), int(s)] for r, s in T.classes],
            "chars": [[v.to_json() for v in row] for row in T.chars]}


def save_table(T: CharacterTable, path) -> None:
    Path(path).write_text(json.dumps(table_to_json(T), indent=1))


def table_from_json(obj: dict, G: FiniteGroup | None = None) -> CharacterTable:
    import jsonschema

    try:
        jsonschema.validate(obj, TABLE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(str(exc.message)) from exc
    if G is None:
        G = group_from_spec(obj["group"])
    classes, class_of = _class_data(G)
    got = [tuple(c) for c in obj["classes"]]
    if got != classes:
        raise SchemaError("class list does not match the group's conjugacy classes")
    try:
        chars = [[CycloNumber.from_json(v) for v in row] for row in obj["chars"]]
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad character value: {exc}") from exc
    if any(len(row) != len(classes) for row in chars):
        raise SchemaError("row length differs from number of classes")
    if any(not row[0].is_integer() or row[0].as_rational() <= 0 for row in chars):
        raise OrthogonalityError("value at the identity must be a positive integer")
    T = CharacterTable(G, classes, class_of, chars)
    T.check_orthogonality()
    return T


def load_table(path, G: FiniteGroup | None = None) -> CharacterTable:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {exc}") from exc
    return table_from_json(obj, G)

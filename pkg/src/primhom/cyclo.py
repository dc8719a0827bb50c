"""Exact arithmetic in cyclotomic fields Q(zeta_N) and small exact linear algebra.

A :class:`CycloNumber` stores rational coordinates in the power basis
1, z, ..., z^(phi(N)-1) of Q(zeta_N) = Q[z]/Phi_N(z).  Mixed-conductor
arithmetic promotes both operands to the lcm conductor.

Setting ``PRIMHOM_FLOAT_SHADOW=1`` makes every binary operation cross-check
its exact result against complex floating point.  It is a debugging aid only;
nothing in a correctness path reads the float values.
"""

from __future__ import annotations

import cmath
import math
import numbers
import os
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import flint

from .errors import DivisionByZero

SHADOW = os.environ.get("PRIMHOM_FLOAT_SHADOW", "") not in ("", "0")


# --------------------------------------------------------------------------
# cyclotomic polynomials and power tables

def _poly_divmod_int(num: list[int], den: list[int]) -> list[int]:
    """Exact quotient of integer polynomials (coefficients low -> high), den monic."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num[: len(den) - 1]), "non-exact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple[int, ...]:
    """Coefficients of Phi_N, lowest degree first."""
    num = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            num = _poly_divmod_int(num, list(cyclotomic_poly(d)))
    return tuple(num)


def euler_phi(N: int) -> int:
    return len(cyclotomic_poly(N)) - 1


@lru_cache(maxsize=None)
def _power_table(N: int) -> tuple[tuple[int, ...], ...]:
    """Row e = coordinates of z^e (0 <= e < N) in the power basis mod Phi_N."""
    phi = cyclotomic_poly(N)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1) if deg else []
    if deg == 0:
        raise ValueError("conductor must be positive")
    for _ in range(N):
        rows.append(tuple(cur))
        # multiply by z and reduce the overflow coefficient with Phi_N (monic)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    return tuple(rows)


@lru_cache(maxsize=None)
def _ramanujan(N: int) -> tuple[Fraction, ...]:
    """Normalized trace Tr(z^e) / phi(N) for e < phi(N); conductor independent."""
    out = []
    for e in range(euler_phi(N)):
        g = math.gcd(N, e)
        m = N // g
        out.append(Fraction(_mobius(m), euler_phi(m)))
    return tuple(out)


def _mobius(n: int) -> int:
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


# --------------------------------------------------------------------------

class CycloNumber:
    """An element of Q(zeta_N), immutable."""

    __slots__ = ("N", "c")

    def __init__(self, N: int, coeffs: Iterable):
        N = int(N)
        coeffs = tuple(Fraction(x) for x in coeffs)
        if N < 1:
            raise ValueError("conductor must be positive")
        if len(coeffs) != euler_phi(N):
            raise ValueError(f"need {euler_phi(N)} coefficients for conductor {N}")
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "c", coeffs)

    def __setattr__(self, *_):
        raise AttributeError("CycloNumber is immutable")

    # constructors ---------------------------------------------------------
    @classmethod
    def rational(cls, q, N: int = 1) -> "CycloNumber":
        return cls(N, [Fraction(q)] + [Fraction(0)] * (euler_phi(N) - 1))

    @classmethod
    def zeta(cls, N: int, k: int = 1) -> "CycloNumber":
        return cls(N, _power_table(N)[k % N])

    @classmethod
    def from_exponents(cls, N: int, mults: Sequence[int]) -> "CycloNumber":
        """sum_k mults[k] * zeta_N^k."""
        table = _power_table(N)
        acc = [0] * euler_phi(N)
        for k, m in enumerate(mults):
            if m:
                for i, t in enumerate(table[k % N]):
                    acc[i] += m * t
        return cls(N, acc)

    # conversions ----------------------------------------------------------
    def promote(self, M: int) -> "CycloNumber":
        """Same number written in Q(zeta_M); requires N | M."""
        if M == self.N:
            return self
        if M % self.N:
            raise ValueError(f"conductor {self.N} does not divide {M}")
        step = M // self.N
        table = _power_table(M)
        acc = [Fraction(0)] * euler_phi(M)
        for j, cj in enumerate(self.c):
            if cj:
                for i, t in enumerate(table[j * step]):
                    if t:
                        acc[i] += cj * t
        return CycloNumber(M, acc)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.N)
        return sum(float(cj) * z**j for j, cj in enumerate(self.c))

    def to_json(self) -> dict:
        return {"N": self.N, "c": [f"{x.numerator}/{x.denominator}" for x in self.c]}

    @classmethod
    def from_json(cls, obj) -> "CycloNumber":
        if isinstance(obj, (int, str)):
            return cls.rational(Fraction(obj))
        return cls(obj["N"], [Fraction(s) for s in obj["c"]])

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def is_one(self) -> bool:
        return self.is_rational() and self.c[0] == 1

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def is_integer(self) -> bool:
        return self.is_rational() and self.c[0].denominator == 1

    # arithmetic -----------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "CycloNumber":
        if isinstance(x, CycloNumber):
            return x
        if isinstance(x, numbers.Rational):
            return CycloNumber.rational(Fraction(int(x.numerator), int(x.denominator)))
        return NotImplemented

    def _pair(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return None, None
        M = math.lcm(self.N, other.N)
        return self.promote(M), other.promote(M)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return _shadowed(CycloNumber(a.N, [x + y for x, y in zip(a.c, b.c)]),
                         lambda: a.to_complex() + b.to_complex())

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.N, [-x for x in self.c])

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return CycloNumber(a.N, [x - y for x, y in zip(a.c, b.c)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Rational):
            other = Fraction(int(other.numerator), int(other.denominator))
            return CycloNumber(self.N, [x * other for x in self.c])
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        table = _power_table(a.N)
        acc = [Fraction(0)] * len(a.c)
        for i, ai in enumerate(a.c):
            if not ai:
                continue
            for j, bj in enumerate(b.c):
                if bj:
                    coef = ai * bj
                    for k, t in enumerate(table[(i + j) % a.N]):
                        if t:
                            acc[k] += coef * t
        return _shadowed(CycloNumber(a.N, acc), lambda: a.to_complex() * b.to_complex())

    __rmul__ = __mul__

    def galois(self, k: int) -> "CycloNumber":
        """Image under zeta_N -> zeta_N^k (gcd(k, N) = 1)."""
        if math.gcd(k, self.N) != 1:
            raise ValueError("Galois exponent must be a unit")
        table = _power_table(self.N)
        acc = [Fraction(0)] * len(self.c)
        for j, cj in enumerate(self.c):
            if cj:
                for i, t in enumerate(table[(j * k) % self.N]):
                    if t:
                        acc[i] += cj * t
        return CycloNumber(self.N, acc)

    def conjugate(self) -> "CycloNumber":
        return self.galois(-1 % self.N) if self.N > 2 else self

    def norm(self) -> Fraction:
        acc = CycloNumber.rational(1, self.N)
        for k in range(1, self.N + 1):
            if math.gcd(k, self.N) == 1:
                acc = acc * self.galois(k)
        return acc.as_rational()

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in Q(zeta_N)")
        if self.is_rational():
            return CycloNumber.rational(1 / self.c[0], self.N)
        # solve a * x = 1 with the multiplication-by-a matrix (columns a zeta^j)
        N, d = self.N, len(self.c)
        phi = cyclotomic_poly(N)
        cols, cur = [], list(self.c)
        for _ in range(d):
            cols.append(cur)
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                cur = [x - top * q for x, q in zip(cur, phi[:-1])]
        M = flint.fmpq_mat(d, d, [flint.fmpq(cols[j][i].numerator, cols[j][i].denominator)
                                  for i in range(d) for j in range(d)])
        rhs = flint.fmpq_mat(d, 1, [1] + [0] * (d - 1))
        x = M.solve(rhs)
        return CycloNumber(N, [Fraction(int(x[i, 0].p), int(x[i, 0].q)) for i in range(d)])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        acc, base = CycloNumber.rational(1, self.N), self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a.c == b.c

    def __hash__(self):
        # normalized trace is the same in every field containing the number
        return hash(sum((x * r for x, r in zip(self.c, _ramanujan(self.N))), Fraction(0)))

    def sort_key(self):
        return (self.N, tuple(self.c))

    def __repr__(self):
        if self.is_rational():
            return str(self.c[0])
        terms = []
        for j, x in enumerate(self.c):
            if x:
                mon = "1" if j == 0 else (f"z{self.N}" if j == 1 else f"z{self.N}^{j}")
                terms.append(f"{x}*{mon}" if j else str(x))
        return " + ".join(terms)


def _shadowed(result: CycloNumber, exact_float):
    if SHADOW:
        got, want = result.to_complex(), exact_float()
        if abs(got - want) > 1e-6 * max(1.0, abs(want)):
            raise AssertionError(f"float shadow mismatch: {got} vs {want}")
    return result


ZERO = CycloNumber.rational(0)
ONE = CycloNumber.rational(1)


def common_conductor(values: Iterable[CycloNumber]) -> int:
    return math.lcm(1, *(v.N for v in values))


# --------------------------------------------------------------------------
# matrices

class CycloMatrix:
    """Dense rectangular matrix of CycloNumbers (rows of lists)."""

    def __init__(self, rows: Sequence[Sequence]):
        rows = [[CycloNumber._coerce(x) for x in r] for r in rows]
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0

    @classmethod
    def identity(cls, n: int) -> "CycloMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "CycloMatrix":
        return cls([[ZERO] * c for _ in range(r)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, CycloMatrix) and self.rows == other.rows

    def __add__(self, other):
        return CycloMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return CycloMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, s) -> "CycloMatrix":
        return CycloMatrix([[s * a for a in r] for r in self.rows])

    def __matmul__(self, other: "CycloMatrix") -> "CycloMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            row = []
            for col in cols:
                acc = ZERO
                for a, b in zip(r, col):
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return CycloMatrix(out)

    def transpose(self) -> "CycloMatrix":
        return CycloMatrix([list(c) for c in zip(*self.rows)])

    def trace(self) -> CycloNumber:
        return sum((self.rows[i][i] for i in range(min(self.nrows, self.ncols))), ZERO)

    def det(self) -> CycloNumber:
        if self.nrows != self.ncols:
            raise ValueError("det of non-square matrix")
        R, pivots, swaps, prod = _eliminate(self.rows)
        if len(pivots) < self.nrows:
            return ZERO
        return prod * (-1 if swaps % 2 else 1)

    def rank(self) -> int:
        return rank_and_nullspace(self)[0]

    def __repr__(self):
        return "CycloMatrix(" + repr(self.rows) + ")"


def _eliminate(rows):
    """Row-reduce to RREF.  Returns (rows, pivot columns, #swaps, product of pivots)."""
    if not rows:
        return [], [], 0, ONE
    N = common_conductor(x for r in rows for x in r)
    R = [[x.promote(N) for x in r] for r in rows]
    nr, nc = len(R), len(R[0])
    pivots, swaps, prod = [], 0, CycloNumber.rational(1, N)
    pr = 0
    for col in range(nc):
        if pr == nr:
            break
        sel = next((i for i in range(pr, nr) if not R[i][col].is_zero()), None)
        if sel is None:
            continue
        if sel != pr:
            R[pr], R[sel] = R[sel], R[pr]
            swaps += 1
        piv = R[pr][col]
        prod = prod * piv
        inv = piv.inverse()
        R[pr] = [x * inv for x in R[pr]]
        for i in range(nr):
            if i != pr and not R[i][col].is_zero():
                f = R[i][col]
                R[i] = [a - f * b for a, b in zip(R[i], R[pr])]
        pivots.append(col)
        pr += 1
    return R, pivots, swaps, prod


def rank_and_nullspace(M: CycloMatrix):
    """Exact rank and a right-nullspace basis (vectors v with M v = 0).

    Pivoting takes the first nonzero entry in column order, so the output is
    deterministic.
    """
    if M.nrows == 0:
        return 0, [[ONE if i == j else ZERO for i in range(M.ncols)] for j in range(M.ncols)]
    R, pivots, _, _ = _eliminate(M.rows)
    free = [c for c in range(M.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * M.ncols
        v[f] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][f]
        basis.append(v)
    return len(pivots), basis

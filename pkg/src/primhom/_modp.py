"""Linear algebra over F_p for the character-table computation (p < 2**31)."""

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def primitive_root(p: int) -> int:
    phi = p - 1
    factors, n, q = [], phi, 2
    while q * q <= n:
        if n % q == 0:
            factors.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        factors.append(n)
    for g in range(2, p):
        if all(pow(g, phi // f, p) != 1 for f in factors):
            return g
    raise ValueError(f"no primitive root mod {p}")


def rref(A: np.ndarray, p: int):
    """Reduced row echelon form mod p; returns (R, pivot columns)."""
    R = np.array(A, dtype=np.int64) % p
    nr, nc = R.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = (R[r] * pow(int(R[r, c]), p - 2, p)) % p
        col = R[:, c].copy()
        col[r] = 0
        R = (R - np.outer(col, R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning {x : A x = 0} mod p, as a (ncols x k) array."""
    R, pivots = rref(A, p)
    nc = A.shape[1]
    free = [c for c in range(nc) if c not in pivots]
    N = np.zeros((nc, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        N[f, k] = 1
        for r, pc in enumerate(pivots):
            N[pc, k] = (-R[r, f]) % p
    return N


def charpoly(A: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial det(xI - A) mod p, coefficients low -> high.

    Reduces to upper Hessenberg form by similarity, then uses the standard
    three-term recurrence.
    """
    H = [[int(x) % p for x in row] for row in np.asarray(A)]
    n = len(H)
    for c in range(n - 2):
        piv = next((i for i in range(c + 1, n) if H[i][c]), None)
        if piv is None:
            continue
        if piv != c + 1:
            H[piv], H[c + 1] = H[c + 1], H[piv]
            for row in H:
                row[piv], row[c + 1] = row[c + 1], row[piv]
        inv = pow(H[c + 1][c], p - 2, p)
        for i in range(c + 2, n):
            f = H[i][c] * inv % p
            if f:
                H[i] = [(a - f * b) % p for a, b in zip(H[i], H[c + 1])]
                for row in H:
                    row[c + 1] = (row[c + 1] + f * row[i]) % p
    # polys[k] = charpoly of leading k x k block
    polys = [[1]]
    for k in range(1, n + 1):
        # (x - h_kk) * P_{k-1}
        prev = polys[k - 1]
        cur = [0] + prev
        hkk = H[k - 1][k - 1]
        for i, c in enumerate(prev):
            cur[i] = (cur[i] - hkk * c) % p
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * H[i][i - 1] % p
            coef = prod * H[i - 1][k - 1] % p
            if coef:
                for j, c in enumerate(polys[i - 1]):
                    cur[j] = (cur[j] - coef * c) % p
        polys.append(cur)
    return polys[n]


def roots(poly: list[int], p: int) -> list[int]:
    """All roots in F_p, by evaluation at every point."""
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(poly):
        acc = (acc * xs + c) % p
    return np.flatnonzero(acc == 0).tolist()

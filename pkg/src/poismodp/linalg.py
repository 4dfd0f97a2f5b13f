"""Dense exact linear algebra mod p on numpy int64 matrices.

Entries are kept reduced in [0, p).  Everything here is deterministic:
pivots are chosen first-nonzero top-down, nullspace vectors follow the
free columns in ascending order.
"""

from __future__ import annotations

import numpy as np

from .errors import ZeroInput
from .fieldpoly import UniPoly, ff_inv


def as_matrix(rows, p: int) -> np.ndarray:
    a = np.array(rows, dtype=np.int64) % p
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (matrix, pivot columns)."""
    m = a % p
    m = m.astype(np.int64, copy=True)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        pivot_row = r + int(nz[0])
        if pivot_row != r:
            m[[r, pivot_row]] = m[[pivot_row, r]]
        inv = ff_inv(int(m[r, c]), p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            m[mask] = (m[mask] - np.outer(col[mask], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of the right nullspace of a, one vector per free column."""
    rows, cols = a.shape
    if cols == 0:
        return []
    if rows == 0:
        return [_unit(cols, j) for j in range(cols)]
    m, pivots = rref(a, p)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-int(m[r, fc])) % p
        basis.append(v)
    return basis


def _unit(length: int, j: int) -> np.ndarray:
    v = np.zeros(length, dtype=np.int64)
    v[j] = 1
    return v


def solve(a: np.ndarray, b: np.ndarray, p: int):
    """One solution of a x = b mod p, or None if inconsistent."""
    rows, cols = a.shape
    aug = np.concatenate([a % p, (b % p).reshape(rows, 1)], axis=1)
    m, pivots = rref(aug, p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = m[r, cols]
    return x


def in_row_space(a: np.ndarray, v: np.ndarray, p: int) -> bool:
    if a.size == 0:
        return not np.any(v % p)
    base = rank(a, p)
    return rank(np.vstack([a, v]), p) == base


def mat_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # int64 is exact here: entries < p <= 13 and inner dimensions stay
    # far below 2**63 / p**2.
    return (a % p) @ (b % p) % p


def mat_pow(a: np.ndarray, k: int, p: int) -> np.ndarray:
    n = a.shape[0]
    result = np.eye(n, dtype=np.int64)
    base = a % p
    while k:
        if k & 1:
            result = mat_mul(result, base, p)
        k >>= 1
        if k:
            base = mat_mul(base, base, p)
    return result


def is_nilpotent(a: np.ndarray, p: int) -> bool:
    n = a.shape[0]
    return not np.any(mat_pow(a, n, p))


def minimal_polynomial(a: np.ndarray, p: int) -> UniPoly:
    """Monic minimal polynomial of a square matrix over F_p."""
    n = a.shape[0]
    if n == 0:
        raise ZeroInput("empty matrix has no minimal polynomial")
    powers = [np.eye(n, dtype=np.int64).reshape(-1)]
    cur = np.eye(n, dtype=np.int64)
    for _ in range(n):
        cur = mat_mul(cur, a, p)
        powers.append(cur.reshape(-1))
    for k in range(1, n + 1):
        # look for monic dependence: a^k = sum_{i<k} c_i a^i
        lhs = np.stack(powers[:k], axis=1)
        sol = solve(lhs, powers[k], p)
        if sol is not None:
            coeffs = [(-int(c)) % p for c in sol] + [1]
            return UniPoly(p, coeffs)
    raise AssertionError("minimal polynomial of degree <= n must exist")

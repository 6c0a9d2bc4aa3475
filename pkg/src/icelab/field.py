"""Dense linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries reduced into ``range(p)``.
Everything here is exact; there is no floating point anywhere.
"""

from __future__ import annotations

import itertools
from typing import Iterator

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def as_matrix(rows, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    a = np.array(rows, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    return a % p


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` over F_p.

    Returns the reduced matrix (same shape, zero rows at the bottom) and the
    list of pivot columns.
    """
    r = np.array(a, dtype=np.int64) % p
    m, n = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = pow(int(r[row, col]), -1, p)
        r[row] = (r[row] * inv) % p
        factors = r[:, col].copy()
        factors[row] = 0
        if factors.any():
            r = (r - np.outer(factors, r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel ``{x : a @ x = 0}`` as the rows of a matrix.

    The basis is the canonical one read off the RREF: one vector per free
    column, in increasing column order.
    """
    m, n = a.shape
    if n == 0:
        return zeros(0, 0)
    if m == 0:
        return identity(n)
    r, pivots = rref(a, p)
    free = [c for c in range(n) if c not in pivots]
    basis = zeros(len(free), n)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, f]) % p
    return basis


def row_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    if a.shape[0] == 0:
        return zeros(0, a.shape[1])
    r, pivots = rref(a, p)
    return r[: len(pivots)]


def column_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Columns forming a canonical basis of the column space of ``a``."""
    return row_basis(a.T, p).T.copy()


def complement_basis(sub: np.ndarray, n: int, p: int) -> np.ndarray:
    """Standard basis vectors (as columns) spanning a complement of ``span(sub)``.

    ``sub`` holds column vectors of length ``n``.  The complement is chosen
    greedily among the unit vectors, so it is deterministic.
    """
    if sub.shape[1] == 0:
        return identity(n)
    _, pivots = rref(sub.T, p)
    free = [c for c in range(n) if c not in pivots]
    out = zeros(n, len(free))
    for k, f in enumerate(free):
        out[f, k] = 1
    return out


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    r, pivots = rref(np.hstack([a % p, identity(n)]), p)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return r[:, n:].copy()


def is_invertible(a: np.ndarray, p: int) -> bool:
    n = a.shape[0]
    return a.shape == (n, n) and rank(a, p) == n


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``a @ x = b`` (``b`` may have several columns), or None."""
    m, n = a.shape
    b2 = b.reshape(m, 1) if b.ndim == 1 else b
    k = b2.shape[1]
    if n == 0:
        if (b2 % p).any():
            return None
        return zeros(0, k) if b.ndim == 2 else np.zeros(0, dtype=np.int64)
    r, pivots = rref(np.hstack([a % p, b2 % p]), p)
    if any(pc >= n for pc in pivots):
        return None
    x = zeros(n, k)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, n:]
    return x.reshape(n) if b.ndim == 1 else x


def in_span(cols: np.ndarray, v: np.ndarray, p: int) -> bool:
    return solve(cols, v, p) is not None


def intersect_columns(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Column basis of ``span(a) ∩ span(b)``."""
    n = a.shape[0]
    if a.shape[1] == 0 or b.shape[1] == 0:
        return zeros(n, 0)
    ker = nullspace(np.hstack([a, -b % p]), p)
    if ker.shape[0] == 0:
        return zeros(n, 0)
    vecs = (a @ ker[:, : a.shape[1]].T) % p
    return column_basis(vecs, p)


def is_nilpotent(a: np.ndarray, p: int) -> bool:
    n = a.shape[0]
    if n == 0:
        return True
    m = a % p
    acc = m.copy()
    for _ in range(n - 1):
        acc = (acc @ m) % p
    return not acc.any()


def iter_vectors(n: int, p: int) -> Iterator[tuple[int, ...]]:
    """All vectors of F_p^n in lexicographic order (zero vector first)."""
    return itertools.product(range(p), repeat=n)


def iter_subspaces(n: int, max_dim: int, p: int) -> Iterator[np.ndarray]:
    """Every subspace of F_p^n of dimension ≤ ``max_dim``, once each.

    Each subspace is yielded as its RREF basis (rows), so the enumeration
    is duplicate-free.  The zero subspace comes first.
    """
    for d in range(0, min(n, max_dim) + 1):
        for pivots in itertools.combinations(range(n), d):
            # free entries: row i, columns after pivot i that are not pivots
            slots = [
                (i, c)
                for i, pc in enumerate(pivots)
                for c in range(pc + 1, n)
                if c not in pivots
            ]
            for values in itertools.product(range(p), repeat=len(slots)):
                basis = zeros(d, n)
                for i, pc in enumerate(pivots):
                    basis[i, pc] = 1
                for (i, c), v in zip(slots, values):
                    basis[i, c] = v
                yield basis


def block_diag(blocks: list[np.ndarray]) -> np.ndarray:
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = zeros(r, c)
    i = j = 0
    for b in blocks:
        out[i : i + b.shape[0], j : j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out

"""
Exact linear algebra over prime fields GF(p) on numpy integer arrays.

Vectors are rows and every function returns arrays reduced into [0, p).
Products fall back to Python integers (object dtype) when p is too large
for int64 accumulation.
"""

from __future__ import annotations

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

_INT64_LIMIT = 2**63 - 1


def mod_p(A, p: int) -> np.ndarray:
    return np.asarray(np.asarray(A, dtype=np.int64) % p, dtype=np.int64)


def _needs_object(p: int, inner: int) -> bool:
    return (p - 1) ** 2 * max(inner, 1) >= _INT64_LIMIT


def matmul_mod(A, B, p: int) -> np.ndarray:
    """Matrix product reduced mod p; broadcasts like ``np.matmul``."""
    A = np.asarray(A)
    B = np.asarray(B)
    inner = A.shape[-1] if A.ndim else 1
    if _needs_object(p, inner):
        prod = np.matmul(A.astype(object), B.astype(object)) % p
        return np.asarray(prod, dtype=np.int64)
    return np.matmul(A.astype(np.int64), B.astype(np.int64)) % p


def inv_scalar(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse in GF(p)")
    return pow(a, p - 2, p)


def as_rows(A, n: Optional[int] = None) -> np.ndarray:
    """Coerce to a 2-D int64 array; an empty input becomes shape (0, n)."""
    arr = np.asarray(A, dtype=np.int64)
    if arr.size == 0:
        width = n if n is not None else (arr.shape[-1] if arr.ndim >= 2 else 0)
        return np.zeros((0, width), dtype=np.int64)
    if arr.ndim == 1:
        return arr.reshape(1, -1)
    return arr


def rref(A, p: int, n: Optional[int] = None) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over GF(p).

    Returns the nonzero rows and their pivot columns. The result is the
    unique canonical basis of the row space.
    """
    M = as_rows(A, n).copy() % p
    m, cols = M.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == m:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = (M[r] * inv_scalar(M[r, c], p)) % p
        col = M[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            M[rows] = (M[rows] - np.outer(col[rows], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r].copy(), pivots


def row_space(A, p: int, n: Optional[int] = None) -> np.ndarray:
    return rref(A, p, n)[0]


def rank(A, p: int) -> int:
    return len(rref(A, p)[1])


def right_kernel(A, p: int, n: Optional[int] = None) -> np.ndarray:
    """Basis (as rows) of {y : A @ y = 0}."""
    A = as_rows(A, n)
    cols = A.shape[1]
    R, piv = rref(A, p, cols)
    free = [j for j in range(cols) if j not in set(piv)]
    K = np.zeros((len(free), cols), dtype=np.int64)
    if not free:
        return K
    K[np.arange(len(free)), free] = 1
    if piv:
        K[:, piv] = (-R[:, free].T) % p
    return K


def left_kernel(A, p: int, m: Optional[int] = None) -> np.ndarray:
    """Basis (as rows) of {x : x @ A = 0}; ``m`` is the row count when A is empty."""
    A = np.asarray(A, dtype=np.int64)
    if A.ndim == 2 and A.shape[1] == 0:
        return np.eye(A.shape[0], dtype=np.int64)
    if A.size == 0:
        size = m if m is not None else (A.shape[0] if A.ndim == 2 else 0)
        return np.eye(size, dtype=np.int64)
    return right_kernel(A.T, p)


def solve_rows(A, B, p: int) -> Optional[np.ndarray]:
    """Solve X @ A = B over GF(p); None when some row of B is not in rowspace(A)."""
    A = as_rows(A)
    B = as_rows(B, A.shape[1])
    m = A.shape[0]
    if B.shape[0] == 0:
        return np.zeros((0, m), dtype=np.int64)
    if m == 0:
        return np.zeros((B.shape[0], 0), dtype=np.int64) if not B.any() else None
    aug = np.concatenate([A.T, B.T], axis=1)
    R, piv = rref(aug, p)
    if piv and piv[-1] >= m:
        return None
    X = np.zeros((m, B.shape[0]), dtype=np.int64)
    for i, pc in enumerate(piv):
        X[pc] = R[i, m:]
    return X.T % p


def coordinates(basis, vectors, p: int) -> np.ndarray:
    """Coordinates of ``vectors`` in the independent rows ``basis``; raises if outside the span."""
    X = solve_rows(basis, vectors, p)
    if X is None:
        raise ValueError("vector outside the span of the given basis")
    return X


def reduce_rows(V, basis, pivots: Sequence[int], p: int) -> np.ndarray:
    """Reduce rows of V modulo an RREF basis; the result vanishes on the pivots."""
    V = as_rows(V)
    basis = as_rows(basis, V.shape[1])
    if not len(pivots):
        return V % p
    return (V - matmul_mod(V[:, list(pivots)], basis, p)) % p


def contains(basis, v, p: int) -> bool:
    basis = as_rows(basis)
    v = as_rows(v, basis.shape[1])
    if v.shape[0] == 0:
        return True
    return rank(np.concatenate([basis, v]), p) == rank(basis, p)


def intersect(U, V, p: int, n: Optional[int] = None) -> np.ndarray:
    """RREF basis of rowspace(U) ∩ rowspace(V)."""
    U = row_space(U, p, n)
    width = U.shape[1]
    V = row_space(V, p, width)
    if U.shape[0] == 0 or V.shape[0] == 0:
        return np.zeros((0, width), dtype=np.int64)
    K = left_kernel(np.concatenate([U, (-V) % p]), p)
    if K.shape[0] == 0:
        return np.zeros((0, width), dtype=np.int64)
    return row_space(matmul_mod(K[:, : U.shape[0]], U, p), p, width)


def inverse(A, p: int) -> Optional[np.ndarray]:
    A = as_rows(A)
    n = A.shape[0]
    if A.shape != (n, n):
        return None
    R, piv = rref(np.concatenate([A % p, np.eye(n, dtype=np.int64)], axis=1), p)
    if len(piv) < n or piv[n - 1] >= n:
        return None
    return R[:, n:] % p


def matpow_mod(A, e: int, modulus: int) -> np.ndarray:
    """A**e reduced mod an arbitrary modulus (used for p-power lifts)."""
    A = np.asarray(A, dtype=np.int64) % modulus
    result = np.eye(A.shape[0], dtype=np.int64)
    base = A
    while e:
        if e & 1:
            result = matmul_mod(result, base, modulus)
        e >>= 1
        if e:
            base = matmul_mod(base, base, modulus)
    return result

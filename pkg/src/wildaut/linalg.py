"""Gaussian elimination over F_p (numpy-backed)."""

from __future__ import annotations

import numpy as np


class NoSolution(Exception):
    """Raised by :func:`fp_linear_solve` in solve mode for an inconsistent system."""


def rref(M, p: int):
    """Reduced row echelon form of M mod p; returns (R, pivot_columns)."""
    A = np.array(M, dtype=np.int64) % p
    if A.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def kernel(M, p: int) -> list[list[int]]:
    """Basis of {v : M v = 0}, in reduced echelon form (deterministic)."""
    A = np.array(M, dtype=np.int64)
    cols = A.shape[1]
    R, pivots = rref(A, p) if A.shape[0] else (np.zeros((0, cols), dtype=np.int64), [])
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [0] * cols
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = int(-R[i, fcol] % p)
        basis.append(v)
    if not basis:
        return []
    # echelon form of the kernel basis itself
    K, _ = rref(basis, p)
    return [[int(x) for x in row] for row in K]


def solve(M, rhs, p: int) -> list[int]:
    """One solution of M x = rhs over F_p; raises NoSolution if none exists."""
    A = np.array(M, dtype=np.int64) % p
    b = np.array(rhs, dtype=np.int64).reshape(-1, 1) % p
    aug = np.hstack([A, b])
    R, pivots = rref(aug, p)
    cols = A.shape[1]
    if cols in pivots:
        raise NoSolution("inconsistent linear system")
    x = [0] * cols
    for i, pc in enumerate(pivots):
        x[pc] = int(R[i, cols])
    return x


def rank(M, p: int) -> int:
    A = np.array(M, dtype=np.int64)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def fp_linear_solve(M, p: int, mode: str = "kernel", rhs=None):
    """Kernel basis (mode='kernel') or a particular solution (mode='solve').

    In solve mode an inconsistent system returns None.
    """
    if mode == "kernel":
        return kernel(M, p)
    if mode == "solve":
        try:
            return solve(M, rhs, p)
        except NoSolution:
            return None
    raise ValueError(f"unknown mode {mode!r}")

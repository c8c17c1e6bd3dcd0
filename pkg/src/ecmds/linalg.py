"""Exact linear algebra over F_q on numpy arrays of element codes."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .gf import FieldCtx


def as_matrix(M) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    return A


def rref(F: FieldCtx, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns (zero rows kept at the bottom)."""
    A = as_matrix(M).copy()
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = F.mul_arr(A[r], F.inv(int(A[r, c])))
        factors = A[:, c].copy()
        factors[r] = 0
        mask = factors != 0
        if mask.any():
            A[mask] = F.sub_arr(A[mask], F.mul_arr(factors[mask, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: FieldCtx, M) -> int:
    return len(rref(F, M)[1])


def row_basis(F: FieldCtx, M) -> np.ndarray:
    R, piv = rref(F, M)
    return R[: len(piv)]


def nullspace(F: FieldCtx, M, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of the right kernel {v : M v = 0}."""
    A = as_matrix(M)
    if A.size == 0:
        n = ncols if ncols is not None else A.shape[1]
        return np.eye(n, dtype=np.int64)
    R, piv = rref(F, A)
    n = A.shape[1]
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(piv):
            basis[i, pc] = F.neg(int(R[r, fc]))
    return basis


def same_row_space(F: FieldCtx, A, B) -> bool:
    RA, RB = row_basis(F, A), row_basis(F, B)
    return RA.shape == RB.shape and bool(np.array_equal(RA, RB))


def det(F: FieldCtx, M) -> int:
    A = as_matrix(M).copy()
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    d = 1
    for c in range(n):
        nz = np.nonzero(A[c:, c])[0]
        if nz.size == 0:
            return 0
        p = c + int(nz[0])
        if p != c:
            A[[c, p]] = A[[p, c]]
            d = F.neg(d)
        piv = int(A[c, c])
        d = F.mul(d, piv)
        A[c] = F.mul_arr(A[c], F.inv(piv))
        below = A[c + 1 :, c].copy()
        if below.size:
            A[c + 1 :] = F.sub_arr(A[c + 1 :], F.mul_arr(below[:, None], A[c][None, :]))
    return d


def minor_nonsingular(F: FieldCtx, M, rows: Sequence[int], cols: Sequence[int]) -> bool:
    A = as_matrix(M)
    return det(F, A[np.ix_(list(rows), list(cols))]) != 0


def batch_nonsingular(F: FieldCtx, mats: np.ndarray) -> np.ndarray:
    """Nonsingularity of a stack of square matrices, shape (B, k, k)."""
    A = np.array(mats, dtype=np.int64, copy=True)
    B, k, _ = A.shape
    ok = np.ones(B, dtype=bool)
    idx = np.arange(B)
    for c in range(k):
        col = A[:, c:, c] != 0
        has = col.any(axis=1)
        ok &= has
        p = c + np.argmax(col, axis=1)
        rows_c = A[idx, c].copy()
        A[idx, c] = A[idx, p]
        A[idx, p] = rows_c
        piv = A[:, c, c]
        piv = np.where(piv == 0, 1, piv)
        A[:, c, :] = F.mul_arr(A[:, c, :], F.inv_arr(piv)[:, None])
        if c + 1 < k:
            factor = A[:, c + 1 :, c]
            A[:, c + 1 :, :] = F.sub_arr(
                A[:, c + 1 :, :], F.mul_arr(factor[:, :, None], A[:, c : c + 1, :])
            )
    return ok

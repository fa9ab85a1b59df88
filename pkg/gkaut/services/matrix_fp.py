"""
Dense linear algebra over F_p.

Matrices are plain integer numpy arrays with entries in [0, p). Single
matrices go through galois' GF(p) arrays (row_reduce, rank, inverse); the
batched routines work on stacks of matrices with integer numpy arithmetic
so a whole chunk of a sweep is eliminated in one pass.
"""

import logging
from functools import lru_cache

import galois
import numpy as np

from gkaut.core.errors import DimensionMismatch, SingularMatrix

logger = logging.getLogger(__name__)


def as_fp(p: int, M) -> np.ndarray:
    return np.mod(np.asarray(M, dtype=np.int64), p)


def _gf(p: int, M):
    return galois.GF(p)(as_fp(p, M))


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    table = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        table[x] = pow(x, -1, p)
    return table


# ── Single matrices ────────────────────────────────────────────────────────

def rref(p: int, M) -> tuple[np.ndarray, list[int]]:
    R = _gf(p, M).row_reduce()
    pivots = [int(np.argmax(row != 0)) for row in R if np.any(row)]
    return np.asarray(R.view(np.ndarray), dtype=np.int64), pivots


def rank(p: int, M) -> int:
    M = as_fp(p, M)
    if M.size == 0:
        return 0
    return int(np.linalg.matrix_rank(_gf(p, M)))


def invert(p: int, M) -> np.ndarray:
    M = as_fp(p, M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"Cannot invert a {M.shape} matrix")
    try:
        inverse = np.linalg.inv(_gf(p, M))
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix(f"Singular {M.shape[0]}x{M.shape[0]} matrix over F_{p}") from exc
    return np.asarray(inverse.view(np.ndarray), dtype=np.int64)


def kernel(p: int, M) -> np.ndarray:
    """Basis of {x : M x = 0} as the rows of a (dim, cols) array."""
    M = as_fp(p, M)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref(p, M)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for pr, pc in enumerate(pivots):
            basis[row, pc] = (-R[pr, f]) % p
    return basis


def matmul(p: int, *mats) -> np.ndarray:
    result = as_fp(p, mats[0])
    for M in mats[1:]:
        result = (result @ as_fp(p, M)) % p
    return result


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def block_diag(*blocks) -> np.ndarray:
    size = sum(b.shape[0] for b in blocks)
    out = np.zeros((size, size), dtype=np.int64)
    at = 0
    for b in blocks:
        k = b.shape[0]
        out[at:at + k, at:at + k] = b
        at += k
    return out


def matrix_key(M: np.ndarray) -> bytes:
    return np.ascontiguousarray(M, dtype=np.int64).tobytes()


# ── Batched ────────────────────────────────────────────────────────────────

def batch_full_rank(p: int, mats: np.ndarray) -> np.ndarray:
    """Boolean mask over a (B, n, n) stack: True where the matrix is invertible."""
    A = np.mod(np.array(mats, dtype=np.int64, copy=True), p)
    count, n, _ = A.shape
    ok = np.ones(count, dtype=bool)
    rows = np.arange(count)
    inv = inverse_table(p)
    for col in range(n):
        nonzero = A[:, col:, col] != 0
        ok &= nonzero.any(axis=1)
        pivot = col + nonzero.argmax(axis=1)
        top = A[rows, col].copy()
        A[rows, col] = A[rows, pivot]
        A[rows, pivot] = top
        scale = inv[A[rows, col, col]]
        A[:, col] = (A[:, col] * scale[:, None]) % p
        factors = A[:, col + 1:, col]
        A[:, col + 1:] = (A[:, col + 1:] - factors[:, :, None] * A[:, col][:, None, :]) % p
    return ok


def batch_matmul(p: int, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    return np.matmul(left, right) % p

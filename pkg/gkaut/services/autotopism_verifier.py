"""
Membership-based verification of autotopisms.

``verify_autotopism`` takes matrices in the X·C·Y sense: every basis member
c_j must map to a member X·c_j·Y of C, and the induced map on (u, v)
coordinates must be invertible. Stored autotopisms satisfy
X ∘ R_{u,v} = R_{w,t} ∘ Y, so they are checked as (X, Y^{-1}).
"""

import logging

import numpy as np

from gkaut.core.config import BATCH_SIZE
from gkaut.models.autotopism import MonomialBatch, Verification
from gkaut.models.semifield import SpreadSet
from gkaut.services import linmap, matrix_fp
from gkaut.services.autotopism_builder import invert_batch
from gkaut.services.parallel import chunk_ranges, run_chunks
from gkaut.services.spread_set import membership_batch

logger = logging.getLogger(__name__)


def verify_autotopism(C: SpreadSet, X, Y) -> Verification:
    p, n = C.p, C.n
    X = matrix_fp.as_fp(p, X)
    Y = matrix_fp.as_fp(p, Y)
    images = np.matmul(np.matmul(X[None], C.basis) % p, Y[None]) % p
    coords, ok = membership_batch(C, images)
    invertible = matrix_fp.rank(p, coords) == C.dimension
    return Verification(
        ok=bool(ok.all() and invertible),
        members_ok=ok,
        witness=coords,
        witness_invertible=bool(invertible),
    )


# ── Monomial batches ───────────────────────────────────────────────────────

def _monomial_blocks(batch: MonomialBatch, first: np.ndarray, second: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    tower = batch.params.tower
    m = tower.m
    left = np.zeros((len(batch), m, m), dtype=np.int64)
    right = np.zeros((len(batch), m, m), dtype=np.int64)
    for i in np.unique(batch.i):
        rows = np.flatnonzero(batch.i == i)
        left[rows] = linmap.monomial_matrices(tower, tower.g_pow(first[rows]), int(i))
        right[rows] = linmap.monomial_matrices(tower, tower.g_pow(second[rows]), int(i))
    return left, right


def pair_matrices(batch: MonomialBatch) -> tuple[np.ndarray, np.ndarray]:
    """Matrix forms (B, n, n) of the stored X and Y."""
    m = batch.params.tower.m
    n = 2 * m
    a1, d1 = _monomial_blocks(batch, batch.x1, batch.x2)
    y1, y2 = _monomial_blocks(batch, batch.y1, batch.y2)
    X = np.zeros((len(batch), n, n), dtype=np.int64)
    X[:, :m, :m] = a1
    X[:, m:, m:] = d1
    Y = np.zeros_like(X)
    diagonal = batch.form == 0
    Y[diagonal, :m, :m] = y1[diagonal]
    Y[diagonal, m:, m:] = y2[diagonal]
    # antidiagonal Y(x, y) = (b_2 y^σ, c_2 x^σ)
    Y[~diagonal, :m, m:] = y1[~diagonal]
    Y[~diagonal, m:, :m] = y2[~diagonal]
    return X, Y


def _verify_chunk(C: SpreadSet, batch: MonomialBatch) -> np.ndarray:
    p, dim = C.p, C.dimension
    X, Y = pair_matrices(batch)
    _, Y_inv = pair_matrices(invert_batch(batch))
    eye = np.eye(C.n, dtype=np.int64)
    inverse_ok = np.all(matrix_fp.batch_matmul(p, Y, Y_inv) == eye, axis=(1, 2))
    images = np.matmul(X[:, None], C.basis[None]) % p
    images = np.matmul(images, Y_inv[:, None]) % p
    coords, ok = membership_batch(C, images.reshape(-1, C.n, C.n))
    members_ok = ok.reshape(len(batch), dim).all(axis=1)
    witness_ok = matrix_fp.batch_full_rank(p, coords.reshape(len(batch), dim, dim))
    return inverse_ok & members_ok & witness_ok


def verify_batch(C: SpreadSet, batch: MonomialBatch, threads: int = 1, chunk: int = BATCH_SIZE // 4) -> np.ndarray:
    """Boolean mask: stored pair (X, Y) maps C onto itself as c ↦ X c Y^{-1}."""
    if len(batch) == 0:
        return np.zeros(0, dtype=bool)
    ranges = chunk_ranges(len(batch), chunk)
    results = run_chunks(lambda r: _verify_chunk(C, batch.take(slice(*r))), ranges, threads)
    ok = np.concatenate(results)
    logger.debug("Verified %d elements, %d failed", len(ok), int(np.count_nonzero(~ok)))
    return ok

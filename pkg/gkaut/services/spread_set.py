"""
Spread set C = {R_{u,v}} with an exact membership solver, and the (S3) sweep.

Usage:
    C = build_spread_set(params)
    membership(C, spread_matrix(params, u, v))   # -> (u, v)
    check_s3(params, S3Policy.FULL, spread=C)    # every nonzero member invertible

Members are flattened row-major to n²-vectors. The basis rows are linearly
independent, so a matrix M is in C iff its entries on the 2m pivot columns
determine coordinates that reproduce all of M.
"""

import logging
import time

import numpy as np

from gkaut.core.config import BATCH_SIZE, S3_DEFAULT_SAMPLES, S3_FULL_LIMIT
from gkaut.core.errors import DimensionMismatch
from gkaut.models.semifield import GKParams, S3Policy, SpreadSet, Variant
from gkaut.schemas.semifield import S3Report, SingularMember, VariantReport
from gkaut.services import matrix_fp
from gkaut.services.field_tower import subfield_elements, to_coords
from gkaut.services.parallel import chunk_ranges, digits, run_chunks
from gkaut.services.semifield import gk_multiply, spread_matrix, vector_to_pair

logger = logging.getLogger(__name__)


def build_spread_set(params: GKParams, variant: Variant = Variant.SPREAD) -> SpreadSet:
    tower = params.tower
    m, n, p = tower.m, tower.n, tower.p
    zero = tower.zero()
    basis = np.stack(
        [spread_matrix(params, t, zero, variant) for t in tower.basis()]
        + [spread_matrix(params, zero, t, variant) for t in tower.basis()]
    )
    flat = basis.reshape(2 * m, n * n)
    _, pivots = matrix_fp.rref(p, flat)
    if len(pivots) != 2 * m:
        raise DimensionMismatch(f"Spread set spans dimension {len(pivots)}, expected {2 * m}")
    pivot_inverse = matrix_fp.invert(p, flat[:, pivots])
    annihilator = matrix_fp.kernel(p, flat)
    logger.info(
        "Spread set for %s (%s): dimension %d, annihilator rank %d",
        params.label or tower.label, variant.value, len(pivots), annihilator.shape[0],
    )
    return SpreadSet(
        params=params,
        variant=variant,
        basis=basis,
        flat=flat,
        pivots=tuple(pivots),
        pivot_inverse=pivot_inverse,
        annihilator=annihilator,
    )


# ── Membership ─────────────────────────────────────────────────────────────

def member_from_coords(C: SpreadSet, coords) -> np.ndarray:
    """Members Σ coords_j c_j for coordinate rows (B, 2m) or a single (2m,)."""
    coords = np.asarray(coords, dtype=np.int64)
    flat = (coords @ C.flat) % C.p
    return flat.reshape(coords.shape[:-1] + (C.n, C.n))


def membership_batch(C: SpreadSet, mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Coordinates (B, 2m) and a mask of which matrices lie in C."""
    mats = np.asarray(mats, dtype=np.int64) % C.p
    flat = mats.reshape(mats.shape[0], C.n * C.n)
    coords = (flat[:, list(C.pivots)] @ C.pivot_inverse) % C.p
    ok = np.all((coords @ C.flat) % C.p == flat, axis=1)
    return coords, ok


def coords_to_uv(C: SpreadSet, coords):
    return vector_to_pair(C.params.tower, coords)


def membership(C: SpreadSet, M) -> tuple | None:
    """(u, v) with M = R_{u,v}, or None."""
    M = matrix_fp.as_fp(C.p, M)
    if M.shape != (C.n, C.n):
        raise DimensionMismatch(f"Expected {C.n}x{C.n}, got {M.shape}")
    coords, ok = membership_batch(C, M[None])
    if not ok[0]:
        return None
    return coords_to_uv(C, coords[0])


# ── Axiom (S3) ─────────────────────────────────────────────────────────────

def _singular_in(C: SpreadSet, coords: np.ndarray) -> np.ndarray:
    mats = member_from_coords(C, coords)
    return coords[~matrix_fp.batch_full_rank(C.p, mats)]


def _to_singular_members(C: SpreadSet, rows: np.ndarray) -> list[SingularMember]:
    m = C.params.tower.m
    ordered = sorted(tuple(int(x) for x in row) for row in rows)
    return [SingularMember(u=list(row[:m]), v=list(row[m:])) for row in ordered]


def check_s3(
    params: GKParams,
    policy: S3Policy | None = None,
    *,
    samples: int = S3_DEFAULT_SAMPLES,
    seed: int = 0,
    threads: int = 1,
    spread: SpreadSet | None = None,
    timings: bool = False,
) -> S3Report:
    C = spread or build_spread_set(params)
    tower = params.tower
    dim = 2 * tower.m
    total = tower.p**dim - 1
    if policy is None:
        policy = S3Policy.FULL if total + 1 <= S3_FULL_LIMIT else S3Policy.SAMPLED
    started = time.perf_counter()

    if policy == S3Policy.FULL:
        def sweep(bounds: tuple[int, int]) -> np.ndarray:
            lo, hi = bounds
            return _singular_in(C, digits(np.arange(lo, hi), tower.p, dim))

        found = run_chunks(sweep, chunk_ranges(total + 1, BATCH_SIZE, start=1), threads)
        checked = total
    else:
        rng = np.random.default_rng(seed)
        probes = [np.eye(dim, dtype=np.int64)]
        member = rng.integers(0, tower.p, size=dim)
        if not member.any():
            member[0] = 1
        u, v = coords_to_uv(C, member)
        scalars = subfield_elements(tower, tower.e, units_only=True)
        probes.append(np.concatenate((to_coords(tower, scalars * u), to_coords(tower, scalars * v)), axis=1))
        random_rows = rng.integers(0, tower.p, size=(samples, dim))
        probes.append(random_rows[random_rows.any(axis=1)])
        coords = np.concatenate(probes)
        chunks = [coords[lo:hi] for lo, hi in chunk_ranges(len(coords))]
        found = run_chunks(lambda chunk: _singular_in(C, chunk), chunks, threads)
        checked = len(coords)

    singular_rows = np.concatenate(found) if found else np.zeros((0, dim), dtype=np.int64)
    singular = _to_singular_members(C, singular_rows)
    elapsed = time.perf_counter() - started
    logger.info("S3 %s: checked %d members, %d singular (%.1fs)", policy.value, checked, len(singular), elapsed)
    return S3Report(
        policy=policy,
        members_total=total,
        checked=checked,
        singular_count=len(singular),
        singular=singular[:100],
        seed=seed if policy == S3Policy.SAMPLED else None,
        wall_time_s=round(elapsed, 3) if timings else None,
    )


# ── Variant comparison ─────────────────────────────────────────────────────

def commutativity_failures(params: GKParams, variant: Variant, samples: int, seed: int) -> int:
    tower = params.tower
    rng = np.random.default_rng(seed)
    x, y, u, v = (tower.GF(rng.integers(0, tower.order, size=samples)) for _ in range(4))
    left = gk_multiply(params, x, y, u, v, variant)
    right = gk_multiply(params, u, v, x, y, variant)
    return int(np.count_nonzero((left[0] != right[0]) | (left[1] != right[1])))


def compare_variants(params: GKParams, *, samples: int = 1000, seed: int = 0) -> VariantReport:
    """Commutativity and sampled (S3) for both written forms of the multiplication."""
    rows = {}
    for variant in Variant:
        spread = build_spread_set(params, variant)
        s3 = check_s3(params, S3Policy.SAMPLED, samples=samples, seed=seed, spread=spread)
        rows[variant.value] = {
            "commutativity_failures": commutativity_failures(params, variant, samples, seed),
            "singular_members": s3.singular_count,
            "checked": s3.checked,
        }
    authoritative = Variant.SPREAD.value
    if rows[authoritative]["commutativity_failures"] or rows[authoritative]["singular_members"]:
        logger.warning("Spread-set multiplication fails its own checks: %s", rows[authoritative])
    return VariantReport(samples=samples, seed=seed, variants=rows, authoritative=authoritative)

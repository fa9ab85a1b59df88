"""
Exhaustive search for monomial autotopisms of a fixed (i, form).

Usage:
    found, report = ansatz_exhaustive_oracle(params, 0, MapForm.DIAGONAL, spread=C)

Sweeps every (a_2, d_2) (diagonal) or (b_2, c_2) (antidiagonal) in (M^×)²,
extracts the candidate a_1 and d_1 from the power-equation fibers, filters
on the coefficient equations of X ∘ R_{u,v} = R_{w,t} ∘ Y written in
discrete logs mod p^m - 1, and hands every survivor to the matrix
verifier. The verifier decides; the filters only prune.

Diagonal, σ = p^i (all congruences mod p^m - 1, lX = log X):

    (q-1) la1 = (q²-1) la2
    (σ-1) lB  = q ld2 + ld1 - la1 - r la2
    (σ-1) lB  = ld2 + q ld1 - la1 - rq la2
    (σ-1) lA  = (r-1) ld1 - (r²-1) la2
    (σ-1) lA  = r ld2 + la1 - ld1 - q la2
    ld1       = ld2 + r la1 - qr la2

Antidiagonal:

    (q-1) la1 = (q-1) lB + (q²-1) lc2
    la1 + σ lB + lA + r lc2       = q lb2 + ld1
    la1 + σ lB + q lA + rq lc2    = lb2 + q ld1
    (σ+r) lA + (r²-1) lc2         = (r-1) ld1
    ld1 + σ lA + lB + q lc2       = r lb2 + la1
    ld1 + r lB + qr lc2           = lA + lb2 + r la1
"""

import logging

import numpy as np

from gkaut.core.config import ORACLE_MAX_FIELD_ORDER
from gkaut.core.errors import ScaleTooLarge
from gkaut.models.autotopism import FORM_CODES, MonomialBatch
from gkaut.models.linmap import MapForm
from gkaut.models.semifield import GKParams, SpreadSet
from gkaut.schemas.autotopism import OracleReport
from gkaut.services import autotopism_builder as builder
from gkaut.services.autotopism_verifier import verify_batch
from gkaut.services.field_tower import dlog, power_fibers
from gkaut.services.parallel import chunk_ranges, run_chunks
from gkaut.services.spread_set import build_spread_set

logger = logging.getLogger(__name__)

# a_2 (or b_2) values per sweep chunk
SWEEP_CHUNK = 8


def _constants(params: GKParams, i: int) -> dict[str, int]:
    tower = params.tower
    N = tower.units
    return {
        "N": N,
        "q": tower.q % N,
        "r": tower.r % N,
        "s": pow(tower.p, i, N),
        "lA": int(dlog(tower, params.A_elem)),
        "lB": int(dlog(tower, params.B_elem)),
        "E_step": N // (tower.p**tower.e - 1),
        "E_size": tower.p**tower.e - 1,
    }


def _diagonal_chunk(k: dict[str, int], a2_values: np.ndarray) -> np.ndarray:
    N, q, r, s, lA, lB = k["N"], k["q"], k["r"], k["s"], k["lA"], k["lB"]
    E = k["E_step"] * np.arange(k["E_size"], dtype=np.int64)
    la2, ld2, ja, jd = np.meshgrid(a2_values, np.arange(N, dtype=np.int64), E, E, indexing="ij")
    la2, ld2, ja, jd = (x.ravel() for x in (la2, ld2, ja, jd))
    la1 = ((q + 1) * la2 + ja) % N
    ld1 = (r * la2 + ld2 + jd) % N

    ok = ((q - 1) * la1 - (q * q - 1) % N * la2) % N == 0
    ok &= ((s - 1) * lB - (q * ld2 + ld1 - la1 - r * la2)) % N == 0
    ok &= ((s - 1) * lB - (ld2 + q * ld1 - la1 - (r * q % N) * la2)) % N == 0
    ok &= ((s - 1) * lA - ((r - 1) * ld1 - (r * r - 1) % N * la2)) % N == 0
    ok &= ((s - 1) * lA - (r * ld2 + la1 - ld1 - q * la2)) % N == 0
    ok &= (ld1 - (ld2 + r * la1 - (q * r % N) * la2)) % N == 0
    return np.stack([la1[ok], ld1[ok], la2[ok], ld2[ok]], axis=1)


def _antidiagonal_chunk(k: dict[str, int], b2_values: np.ndarray) -> np.ndarray:
    N, q, r, s, lA, lB = k["N"], k["q"], k["r"], k["s"], k["lA"], k["lB"]
    E = k["E_step"] * np.arange(k["E_size"], dtype=np.int64)
    lb2, lc2, ja = np.meshgrid(b2_values, np.arange(N, dtype=np.int64), E, indexing="ij")
    lb2, lc2, ja = (x.ravel() for x in (lb2, lc2, ja))
    la1 = (lB + (q + 1) * lc2 + ja) % N

    rhs = ((s + r) * lA + (r * r - 1) % N * lc2) % N
    solvable, base, step = power_fibers(N, rhs, r - 1)
    count = N // step
    lb2, lc2, la1, base = (np.repeat(x[solvable], count) for x in (lb2, lc2, la1, base))
    ld1 = (base + step * np.tile(np.arange(count, dtype=np.int64), int(solvable.sum()))) % N

    ok = ((q - 1) * la1 - ((q - 1) * lB + (q * q - 1) % N * lc2)) % N == 0
    ok &= (la1 + s * lB + lA + r * lc2 - (q * lb2 + ld1)) % N == 0
    ok &= (la1 + s * lB + q * lA + (r * q % N) * lc2 - (lb2 + q * ld1)) % N == 0
    ok &= (ld1 + s * lA + lB + q * lc2 - (r * lb2 + la1)) % N == 0
    ok &= (ld1 + r * lB + (q * r % N) * lc2 - (lA + lb2 + r * la1)) % N == 0
    return np.stack([la1[ok], ld1[ok], lb2[ok], lc2[ok]], axis=1)


def ansatz_exhaustive_oracle(
    params: GKParams,
    i: int,
    form: MapForm,
    *,
    spread: SpreadSet | None = None,
    threads: int = 1,
) -> tuple[MonomialBatch, OracleReport]:
    tower = params.tower
    if tower.order > ORACLE_MAX_FIELD_ORDER:
        raise ScaleTooLarge(f"Ansatz sweep needs p^m ≤ {ORACLE_MAX_FIELD_ORDER}, got {tower.order}")
    i %= tower.m
    C = spread or build_spread_set(params)
    k = _constants(params, i)
    N = k["N"]

    sweep = _diagonal_chunk if form == MapForm.DIAGONAL else _antidiagonal_chunk
    ranges = chunk_ranges(N, SWEEP_CHUNK)
    parts = run_chunks(lambda bounds: sweep(k, np.arange(*bounds, dtype=np.int64)), ranges, threads)
    rows = np.concatenate(parts) if parts else np.zeros((0, 4), dtype=np.int64)
    candidates = N * N * k["E_size"] ** (2 if form == MapForm.DIAGONAL else 1)

    size = len(rows)
    table = np.column_stack([
        np.full(size, i, dtype=np.int64),
        np.full(size, FORM_CODES[form], dtype=np.int64),
        rows,
    ]) if size else np.zeros((0, 6), dtype=np.int64)
    survivors, _ = builder.unique_sorted(builder.from_table(params, table))
    ok = verify_batch(C, survivors, threads=threads)
    found = survivors.take(ok)

    admissible = [a for a in builder.admissible_indices(params, form) if a.i == i]
    if admissible:
        constructed, _ = builder.unique_sorted(builder.family_batch(params, admissible[0]))
    else:
        constructed = builder.from_table(params, np.zeros((0, 6), dtype=np.int64))
    set_equal = np.array_equal(found.table, constructed.table)
    missing = int(np.count_nonzero(~builder.contains(found, constructed))) if len(constructed) else 0
    extra = int(np.count_nonzero(~builder.contains(constructed, found))) if len(found) else 0

    logger.info(
        "Ansatz sweep i=%d %s: %d survivors, %d verified, %d constructed, set_equal=%s",
        i, form.value, len(survivors), len(found), len(constructed), set_equal,
    )
    report = OracleReport(
        i=i,
        form=form,
        candidates=candidates,
        equation_survivors=len(survivors),
        verified=len(found),
        constructed=len(constructed),
        set_equal=bool(set_equal),
        missing=missing,
        extra=extra,
        admissible=bool(admissible),
    )
    return found, report

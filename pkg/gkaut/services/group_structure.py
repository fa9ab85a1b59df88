"""
Structure of an enumerated autotopism group.

Usage:
    inv = enumerate_group(params, spread=C)
    report = structure_report(inv, C)

Works on the log-domain inventory: N0 is the set of index-0 elements (both
forms), D0 its diagonal part. G/N0 embeds in Z/mZ through the Frobenius
index, N0/D0 has order at most 2 and D0 is a direct product of scalar
groups, which gives the chain G ⊵ N0 ⊵ D0 ⊵ 1 directly.
"""

import logging
from collections import Counter

import galois
import numpy as np

from gkaut.core.config import (
    PRODUCT_VERIFY_SAMPLES,
    STRUCTURE_PAIR_SAMPLES,
    VERIFY_SAMPLE_SIZE,
)
from gkaut.models.autotopism import GroupInventory, MonomialBatch
from gkaut.models.semifield import SpreadSet
from gkaut.schemas.autotopism import AxiomCheck, StructureReport
from gkaut.services import autotopism_builder as builder
from gkaut.services import linmap, matrix_fp, nuclei
from gkaut.services.autotopism_verifier import pair_matrices, verify_batch
from gkaut.services.field_tower import dlog
from gkaut.services.group_enumerator import minimal_positive_index
from gkaut.services.semifield import theorem_prediction

logger = logging.getLogger(__name__)

SEMILINEAR_FULL_LIMIT = 10**5


# ── Abelian invariants ─────────────────────────────────────────────────────

def _combine_primary(exponents: dict[int, list[int]]) -> list[int]:
    """Invariant factors (ascending, each dividing the next) from ℓ-primary exponents."""
    width = max((len(v) for v in exponents.values()), default=0)
    factors = []
    for j in range(width):
        value = 1
        for ell, exps in exponents.items():
            ordered = sorted(exps, reverse=True)
            if j < len(ordered):
                value *= ell ** ordered[j]
        factors.append(value)
    return sorted(f for f in factors if f > 1)


def invariant_factors_of_cyclic_product(orders: list[int]) -> list[int]:
    exponents: dict[int, list[int]] = {}
    for n in orders:
        if n <= 1:
            continue
        # galois.factors may list a prime more than once
        merged: Counter[int] = Counter()
        for ell, k in zip(*galois.factors(n)):
            merged[int(ell)] += int(k)
        for ell, k in merged.items():
            exponents.setdefault(ell, []).append(k)
    return _combine_primary(exponents)


def abelian_invariants(element_orders: np.ndarray) -> list[int]:
    """
    Invariant factors of a finite abelian group from the orders of all its elements.

    For each prime ℓ, |{g : g^{ℓ^k} = 1}| = ℓ^{s_k}; s_k - s_{k-1} counts the
    cyclic ℓ-factors of order at least ℓ^k.
    """
    element_orders = np.asarray(element_orders, dtype=np.int64)
    size = len(element_orders)
    if size <= 1:
        return []
    primes, _ = galois.factors(size)
    exponents: dict[int, list[int]] = {}
    for ell in sorted({int(x) for x in primes}):
        at_least = []
        previous = 0
        k = 1
        while True:
            count = int(np.count_nonzero(ell**k % element_orders == 0))
            s_k = round(np.log(count) / np.log(ell))
            if ell**s_k != count:
                raise ValueError(f"{count} elements of {ell}-power order is not a power of {ell}")
            if s_k == previous:
                break
            at_least.append(s_k - previous)
            previous = s_k
            k += 1
        exps = []
        for idx, r_k in enumerate(at_least):
            following = at_least[idx + 1] if idx + 1 < len(at_least) else 0
            exps.extend([idx + 1] * (r_k - following))
        exponents[ell] = exps
    return _combine_primary(exponents)


# ── Element orders ─────────────────────────────────────────────────────────

def element_orders(batch: MonomialBatch) -> np.ndarray:
    """h^t lands in the index-0 diagonal part for t = m/gcd(i,m), doubled when the form survives."""
    m = batch.params.tower.m
    steps = m // np.gcd(batch.i, m)
    steps = np.where((batch.form == 1) & (steps % 2 == 1), 2 * steps, steps)
    orders = np.zeros(len(batch), dtype=np.int64)
    for t in np.unique(steps):
        rows = np.flatnonzero(steps == t)
        powered = builder.power_batch(batch.take(rows), int(t))
        orders[rows] = int(t) * builder.element_orders_index_zero(powered)
    return orders


# ── Checks ─────────────────────────────────────────────────────────────────

def _semilinear_failures(batch: MonomialBatch) -> int:
    """Elements whose X or Y blocks are not monomials of the common degree i."""
    tower = batch.params.tower
    m = tower.m
    X, Y = pair_matrices(batch)
    failures = np.zeros(len(batch), dtype=bool)
    anti = batch.form == 1
    blocks = {
        "x11": (X[:, :m, :m], np.ones(len(batch), dtype=bool)),
        "x12": (X[:, :m, m:], np.zeros(len(batch), dtype=bool)),
        "x21": (X[:, m:, :m], np.zeros(len(batch), dtype=bool)),
        "x22": (X[:, m:, m:], np.ones(len(batch), dtype=bool)),
        "y11": (Y[:, :m, :m], ~anti),
        "y12": (Y[:, :m, m:], anti),
        "y21": (Y[:, m:, :m], anti),
        "y22": (Y[:, m:, m:], ~anti),
    }
    rows = np.arange(len(batch))
    for name, (mats, present) in blocks.items():
        coeffs = linmap.batch_from_matrix(tower, mats)
        nonzero = coeffs != 0
        monomial_at_i = (nonzero.sum(axis=1) == 1) & nonzero[rows, batch.i]
        expected = np.where(present, monomial_at_i, ~nonzero.any(axis=1))
        failures |= ~expected
    return int(np.count_nonzero(failures))


def nucleus_pairs(inv: GroupInventory, C: SpreadSet) -> MonomialBatch:
    """Right-nucleus X as (X, I) and middle-nucleus Y as (I, Y^{-1}), in log form."""
    tower = inv.params.tower
    m = tower.m
    rows = []
    for X in nuclei.nucleus_units(C, nuclei.RIGHT):
        top = linmap.batch_from_matrix(tower, X[None, :m, :m])[0]
        bottom = linmap.batch_from_matrix(tower, X[None, m:, m:])[0]
        rows.append([0, 0, int(dlog(tower, tower.GF(int(top[0])))), int(dlog(tower, tower.GF(int(bottom[0])))), 0, 0])
    for Y in nuclei.nucleus_units(C, nuclei.MIDDLE):
        Y_inv = matrix_fp.invert(C.p, Y)
        top = linmap.batch_from_matrix(tower, Y_inv[None, :m, :m])[0]
        bottom = linmap.batch_from_matrix(tower, Y_inv[None, m:, m:])[0]
        rows.append([0, 0, 0, 0, int(dlog(tower, tower.GF(int(top[0])))), int(dlog(tower, tower.GF(int(bottom[0]))))])
    return builder.from_table(inv.params, np.array(rows, dtype=np.int64))


def structure_report(
    inv: GroupInventory,
    spread: SpreadSet,
    *,
    seed: int = 0,
    samples: int = STRUCTURE_PAIR_SAMPLES,
    product_samples: int = PRODUCT_VERIFY_SAMPLES,
    threads: int = 1,
) -> StructureReport:
    params = inv.params
    tower = params.tower
    G = inv.elements
    order = len(G)
    rng = np.random.default_rng(seed)
    findings: list[str] = []

    # group axioms
    identity_present = bool(builder.contains(G, builder.identity_batch(params))[0])
    inverses_missing = int(np.count_nonzero(~builder.contains(G, builder.invert_batch(G))))
    a_idx = rng.integers(0, order, size=samples)
    b_idx = rng.integers(0, order, size=samples)
    left, right = G.take(a_idx), G.take(b_idx)
    ab = builder.compose_batch(left, right)
    products_missing = int(np.count_nonzero(~builder.contains(G, ab)))
    to_verify = ab.take(slice(0, product_samples))
    product_ok = verify_batch(spread, to_verify, threads=threads)
    axioms = AxiomCheck(
        identity_present=identity_present,
        inverses_checked=order,
        inverses_missing=inverses_missing,
        products_checked=samples,
        products_missing=products_missing,
        products_verified=len(to_verify),
        products_failed=int(np.count_nonzero(~product_ok)),
    )

    # commutation on the sampled pairs
    ba = builder.compose_batch(right, left)
    differ = np.flatnonzero(np.any(ab.table != ba.table, axis=1))
    abelian = len(differ) == 0
    witness = None
    if not abelian:
        k = int(differ[0])
        witness = [left.table[k].tolist(), right.table[k].tolist()]

    orders = element_orders(G)
    histogram = dict(sorted(Counter(int(o) for o in orders).items()))

    # N0 and the quotient by the Frobenius index
    in_n0 = G.i == 0
    n0 = G.take(in_n0)
    g_idx = rng.integers(0, order, size=min(samples, 10**4))
    n_idx = rng.integers(0, len(n0), size=len(g_idx))
    g = G.take(g_idx)
    conj = builder.compose_batch(builder.compose_batch(g, n0.take(n_idx)), builder.invert_batch(g))
    n0_normal = bool(np.all(conj.i == 0) and builder.contains(n0, conj).all())

    indices = sorted({int(i) for i in G.i})
    quotient_order = order // max(len(n0), 1)
    i0 = indices[1] if len(indices) > 1 else None
    if i0 is None:
        quotient_cyclic = quotient_order == 1
        multiples = indices == [0]
    else:
        h = G.take(np.flatnonzero(G.i == i0)[:1])
        seen = [int(builder.power_batch(h, j).i[0]) for j in range(quotient_order + 1)]
        quotient_cyclic = len(set(seen[:-1])) == quotient_order and seen[-1] == 0
        multiples = indices == builder.multiples_of(i0, tower.m)
    diagonal_i0 = minimal_positive_index(inv)
    if i0 != diagonal_i0:
        findings.append(f"smallest positive index in the group {i0} differs from the diagonal i0 {diagonal_i0}")

    # D0 invariants against Z_{p^m-1} × Z_{p^e-1}
    d0 = G.take(in_n0 & (G.form == 0))
    d0_invariants = abelian_invariants(builder.element_orders_index_zero(d0))
    theorem_invariants = invariant_factors_of_cyclic_product([tower.units, tower.p**tower.e - 1])
    if d0_invariants != theorem_invariants:
        findings.append(
            f"index-0 diagonal subgroup has invariants {d0_invariants}, "
            f"the closed form gives {theorem_invariants}"
        )
    prediction = theorem_prediction(params)
    if prediction["case"] == 1 and not abelian:
        findings.append("closed form predicts an abelian group (case 1) but commuting fails")

    # semilinearity / ΓL shape
    if order <= SEMILINEAR_FULL_LIMIT:
        probe = G
    else:
        probe = G.take(np.sort(rng.choice(order, size=VERIFY_SAMPLE_SIZE, replace=False)))
    semilinear_failures = _semilinear_failures(probe)

    pairs = nucleus_pairs(inv, spread)
    nucleus_missing = int(np.count_nonzero(~builder.contains(G, pairs)))

    chain = [order, len(n0), len(d0), 1]
    solvable = quotient_cyclic and len(n0) in (len(d0), 2 * len(d0)) and n0_normal

    for finding in findings:
        logger.warning("Finding: %s", finding)
    logger.info(
        "Structure of %s: order %d, abelian=%s, |N0|=%d, quotient %d cyclic=%s, D0 %s",
        params.label or tower.label, order, abelian, len(n0), quotient_order, quotient_cyclic, d0_invariants,
    )
    return StructureReport(
        order=order,
        abelian=abelian,
        commutation_pairs_checked=samples,
        noncommuting_witness=witness,
        order_histogram=histogram,
        axioms=axioms,
        index_zero_order=len(n0),
        index_zero_normal=n0_normal,
        quotient_order=quotient_order,
        quotient_cyclic=quotient_cyclic,
        i0=i0,
        indices=indices,
        indices_are_multiples_of_i0=multiples,
        diagonal_index_zero_order=len(d0),
        diagonal_index_zero_invariants=d0_invariants,
        theorem_invariants=theorem_invariants,
        invariants_match_theorem=d0_invariants == theorem_invariants,
        semilinear_checked=len(probe),
        semilinear_failures=semilinear_failures,
        nucleus_pairs_checked=len(pairs),
        nucleus_pairs_missing=nucleus_missing,
        solvable_chain=chain,
        solvable=solvable,
        findings=findings,
    )


def structure_violations(report: StructureReport) -> list[str]:
    violations = []
    axioms = report.axioms
    if not axioms.identity_present:
        violations.append("identity is not in the inventory")
    if axioms.inverses_missing:
        violations.append(f"{axioms.inverses_missing} inverses missing")
    if axioms.products_missing:
        violations.append(f"{axioms.products_missing} sampled products missing")
    if axioms.products_failed:
        violations.append(f"{axioms.products_failed} sampled products fail verification")
    if report.semilinear_failures:
        violations.append(f"{report.semilinear_failures} elements are not monomial of a common degree")
    if report.nucleus_pairs_missing:
        violations.append(f"{report.nucleus_pairs_missing} nucleus pairs missing from the inventory")
    if not report.index_zero_normal:
        violations.append("index-0 subgroup is not normal")
    return violations

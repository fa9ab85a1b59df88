"""
Admissible Frobenius indices and the two monomial autotopism families.

Usage:
    for adm in admissible_indices(params, MapForm.DIAGONAL):
        family = family_batch(params, adm)        # (p^m-1)(p^e-1) elements

With σ = p^i, c = AB and the witness α of α^{r-1} = A^{σ∓1}:

    diagonal      a_2 = d_2 γ^r ε / α,  a_1 = a_2^{q+1} γ,  d_1 = d_2 a_2^r γ^r
                  γ^{r+1} ε² = α^{q+1} / B^{σ-1}
    antidiagonal  a_1 = B c_2^{q+1} / γ,  d_1 = c_2^{r+1} α A ε,  b_2 = c_2 α ε γ^r
                  γ^{r+1} ε² = B^{σ+1} / α^{q+1}

with γ ∈ E^×, ε ∈ D^×. The right-hand sides equal δ^{∓1} for
δ = B^{σ∓1} α^{-(q+1)}, so an index is admissible exactly when some root α
puts δ in D^×.
"""

import logging
from math import gcd

import numpy as np

from gkaut.core.errors import ConventionMismatch, NonAdmissible, ScaleTooLarge, ZeroParameter
from gkaut.models.autotopism import (
    FORM_CODES,
    FORMS_BY_CODE,
    AdmissibleIndex,
    Autotopism,
    Construction,
    MonomialBatch,
)
from gkaut.models.linmap import MapForm, SemilinearPair
from gkaut.models.semifield import GKParams
from gkaut.services import linmap
from gkaut.services.field_tower import (
    dlog,
    in_subfield,
    is_kth_power,
    norm_to_half,
    roots_of_power_equation,
)

logger = logging.getLogger(__name__)


def _sign(form: MapForm) -> int:
    return -1 if form == MapForm.DIAGONAL else 1


def _log(params: GKParams, a) -> int:
    return int(dlog(params.tower, a))


# ── Admissibility ──────────────────────────────────────────────────────────

def admissible_indices(params: GKParams, form: MapForm) -> list[AdmissibleIndex]:
    tower = params.tower
    A, B = params.A_elem, params.B_elem
    found: list[AdmissibleIndex] = []
    for i in range(tower.m):
        exponent = tower.p**i + _sign(form)
        target = A**exponent
        if not is_kth_power(tower, target, tower.r - 1):
            continue
        for alpha in roots_of_power_equation(tower, target, tower.r - 1):
            delta = B**exponent * alpha ** -(tower.q + 1)
            if in_subfield(tower, delta, tower.d):
                found.append(AdmissibleIndex(i, form, _log(params, alpha), _log(params, delta)))
                break
    logger.info(
        "Admissible %s indices for %s: %s",
        form.value, params.label or tower.label, [a.i for a in found],
    )
    return found


def delta_obstruction(params: GKParams, form: MapForm, i: int) -> dict:
    """Both admissibility conditions at index i, plus the closed-form δ test."""
    tower = params.tower
    A, B = params.A_elem, params.B_elem
    exponent = tower.p**i + _sign(form)
    alpha_ok = is_kth_power(tower, A**exponent, tower.r - 1)
    delta_ok = any(a.i == i for a in admissible_indices(params, form)) if alpha_ok else False
    nu = norm_to_half(tower, B) ** tower.q * params.c_elem ** -(tower.q + 1)
    closed_form = bool(nu**exponent == tower.one())
    return {
        "i": i,
        "form": form.value,
        "alpha_condition": alpha_ok,
        "delta_condition": delta_ok,
        "closed_form_delta_condition": closed_form,
    }


def factor_delta(params: GKParams, target_log: int) -> np.ndarray:
    """All (log γ, log ε) with γ ∈ E^×, ε ∈ D^× and γ^{r+1} ε² = g^target_log."""
    tower = params.tower
    N = tower.units
    gammas = (N // (tower.p**tower.e - 1)) * np.arange(tower.p**tower.e - 1, dtype=np.int64)
    epsilons = (N // (tower.p**tower.d - 1)) * np.arange(tower.p**tower.d - 1, dtype=np.int64)
    G, Eps = np.meshgrid(gammas, epsilons, indexing="ij")
    r1 = (tower.r + 1) % N
    hit = (r1 * G + 2 * Eps - target_log) % N == 0
    return np.stack([G[hit], Eps[hit]], axis=1)


def delta_target_log(params: GKParams, form: MapForm, i: int, alpha_log: int) -> int:
    tower = params.tower
    N = tower.units
    sigma = pow(tower.p, i, N)
    b = _log(params, params.B_elem)
    if form == MapForm.DIAGONAL:
        return ((tower.q + 1) * alpha_log - (sigma - 1) * b) % N
    return ((sigma + 1) * b - (tower.q + 1) * alpha_log) % N


# ── Single constructions (field arithmetic) ────────────────────────────────

def _check_common(params: GKParams, form: MapForm, i: int, alpha, free, gamma, eps) -> int:
    tower = params.tower
    for name, value in (("alpha", alpha), ("free parameter", free), ("gamma", gamma), ("epsilon", eps)):
        if int(value) == 0:
            raise ZeroParameter(f"{name} must be nonzero")
    if not in_subfield(tower, gamma, tower.e):
        raise NonAdmissible(f"gamma = {int(gamma)} is not in E")
    if not in_subfield(tower, eps, tower.d):
        raise NonAdmissible(f"epsilon = {int(eps)} is not in D")
    exponent = tower.p ** (i % tower.m) + _sign(form)
    if alpha ** (tower.r - 1) != params.A_elem**exponent:
        raise NonAdmissible(f"alpha^(r-1) != A^(p^{i}{'-' if form == MapForm.DIAGONAL else '+'}1)")
    delta = params.B_elem**exponent * alpha ** -(tower.q + 1)
    if not in_subfield(tower, delta, tower.d):
        raise NonAdmissible(f"delta = {int(delta)} is not in D for i = {i}")
    required = delta**-1 if form == MapForm.DIAGONAL else delta
    if gamma ** (tower.r + 1) * eps**2 != required:
        raise NonAdmissible(f"gamma^(r+1) eps^2 does not match delta for i = {i}")
    return _log(params, delta)


def construct_diagonal(params: GKParams, i: int, alpha, d2, gamma, eps) -> Autotopism:
    tower = params.tower
    delta_log = _check_common(params, MapForm.DIAGONAL, i, alpha, d2, gamma, eps)
    a2 = d2 * gamma**tower.r * eps * alpha**-1
    a1 = a2 ** (tower.q + 1) * gamma
    d1 = d2 * a2**tower.r * gamma**tower.r
    return Autotopism(
        params=params,
        i=i % tower.m,
        form=MapForm.DIAGONAL,
        x_logs=(_log(params, a1), _log(params, d1)),
        y_logs=(_log(params, a2), _log(params, d2)),
        construction=Construction(
            _log(params, d2), _log(params, gamma), _log(params, eps), _log(params, alpha), delta_log,
        ),
    )


def construct_antidiagonal(params: GKParams, i: int, alpha, c2, gamma, eps) -> Autotopism:
    tower = params.tower
    delta_log = _check_common(params, MapForm.ANTIDIAGONAL, i, alpha, c2, gamma, eps)
    a1 = params.B_elem * c2 ** (tower.q + 1) * gamma**-1
    d1 = c2 ** (tower.r + 1) * alpha * params.A_elem * eps
    b2 = c2 * alpha * eps * gamma**tower.r
    return Autotopism(
        params=params,
        i=i % tower.m,
        form=MapForm.ANTIDIAGONAL,
        x_logs=(_log(params, a1), _log(params, d1)),
        y_logs=(_log(params, b2), _log(params, c2)),
        construction=Construction(
            _log(params, c2), _log(params, gamma), _log(params, eps), _log(params, alpha), delta_log,
        ),
    )


# ── Whole families (log arithmetic) ────────────────────────────────────────

def family_batch(params: GKParams, adm: AdmissibleIndex) -> MonomialBatch:
    """Every element of the (i, form) family, duplicates included."""
    tower = params.tower
    N = tower.units
    q, r = tower.q % N, tower.r % N
    pairs = factor_delta(params, delta_target_log(params, adm.form, adm.i, adm.alpha))
    if len(pairs) == 0:
        raise NonAdmissible(f"No (gamma, eps) factorization for i = {adm.i} ({adm.form.value})")
    free = np.arange(N, dtype=np.int64)
    gamma = np.repeat(pairs[:, 0], N)
    eps = np.repeat(pairs[:, 1], N)
    free = np.tile(free, len(pairs))
    alpha = adm.alpha
    if adm.form == MapForm.DIAGONAL:
        d2 = free
        a2 = (d2 + r * gamma + eps - alpha) % N
        a1 = ((q + 1) * a2 + gamma) % N
        d1 = (d2 + r * a2 + r * gamma) % N
        y1, y2 = a2, d2
    else:
        c2 = free
        A_log = _log(params, params.A_elem)
        B_log = _log(params, params.B_elem)
        a1 = (B_log + (q + 1) * c2 - gamma) % N
        d1 = ((r + 1) * c2 + alpha + A_log + eps) % N
        y1 = (c2 + alpha + eps + r * gamma) % N
        y2 = c2
    size = len(free)
    return MonomialBatch(
        params,
        np.full(size, adm.i, dtype=np.int64),
        np.full(size, FORM_CODES[adm.form], dtype=np.int64),
        a1, d1, y1, y2,
    )


def concat(batches: list[MonomialBatch], params: GKParams) -> MonomialBatch:
    if not batches:
        empty = np.zeros(0, dtype=np.int64)
        return MonomialBatch(params, empty, empty, empty, empty, empty, empty)
    return MonomialBatch(
        params,
        *(np.concatenate([getattr(b, name) for b in batches]) for name in ("i", "form", "x1", "x2", "y1", "y2")),
    )


def from_table(params: GKParams, table: np.ndarray) -> MonomialBatch:
    table = np.asarray(table, dtype=np.int64).reshape(-1, 6)
    return MonomialBatch(params, *(table[:, j].copy() for j in range(6)))


def unique_sorted(batch: MonomialBatch) -> tuple[MonomialBatch, int]:
    """Dedup by canonical key (i, form, scalar logs), sorted; returns the duplicate count."""
    if len(batch) == 0:
        return batch, 0
    table = np.unique(batch.table, axis=0)
    return from_table(batch.params, table), len(batch) - len(table)


def key_codes(batch: MonomialBatch) -> np.ndarray:
    tower = batch.params.tower
    N = tower.units
    if 2 * tower.m * N**4 >= 2**63:
        raise ScaleTooLarge(f"Key encoding overflows for p^m = {tower.order}")
    code = batch.i * 2 + batch.form
    for column in (batch.x1, batch.x2, batch.y1, batch.y2):
        code = code * N + column
    return code


def contains(haystack: MonomialBatch, needles: MonomialBatch) -> np.ndarray:
    return np.isin(key_codes(needles), key_codes(haystack))


# ── Group law ──────────────────────────────────────────────────────────────

def _frob_factors(params: GKParams, i: np.ndarray) -> np.ndarray:
    tower = params.tower
    table = np.array([pow(tower.p, j, tower.units) for j in range(tower.m)], dtype=np.int64)
    return table[np.mod(i, tower.m)]


def compose_batch(a: MonomialBatch, b: MonomialBatch) -> MonomialBatch:
    """Elementwise a ∘ b."""
    N = a.params.tower.units
    s = _frob_factors(a.params, a.i)
    fb1 = (s * b.y1) % N
    fb2 = (s * b.y2) % N
    a_anti = a.form == 1
    first = np.where(a_anti, fb2, fb1)
    second = np.where(a_anti, fb1, fb2)
    return MonomialBatch(
        a.params,
        (a.i + b.i) % a.params.tower.m,
        a.form ^ b.form,
        (a.x1 + s * b.x1) % N,
        (a.x2 + s * b.x2) % N,
        (a.y1 + first) % N,
        (a.y2 + second) % N,
    )


def invert_batch(a: MonomialBatch) -> MonomialBatch:
    tower = a.params.tower
    N = tower.units
    back = (tower.m - a.i) % tower.m
    s = _frob_factors(a.params, back)
    anti = a.form == 1
    y1 = np.where(anti, a.y2, a.y1)
    y2 = np.where(anti, a.y1, a.y2)
    return MonomialBatch(
        a.params, back, a.form.copy(),
        (-s * a.x1) % N, (-s * a.x2) % N, (-s * y1) % N, (-s * y2) % N,
    )


def identity_batch(params: GKParams, count: int = 1) -> MonomialBatch:
    zeros = np.zeros(count, dtype=np.int64)
    return MonomialBatch(params, zeros, zeros, zeros, zeros, zeros, zeros)


def power_batch(a: MonomialBatch, k: int) -> MonomialBatch:
    result = identity_batch(a.params, len(a))
    for _ in range(k):
        result = compose_batch(result, a)
    return result


def element_orders_index_zero(batch: MonomialBatch) -> np.ndarray:
    """Orders of i = 0 elements: componentwise multiplication, so lcm of the scalar orders."""
    N = batch.params.tower.units
    g = np.gcd.reduce(np.stack([batch.x1, batch.x2, batch.y1, batch.y2, np.full(len(batch), N)]), axis=0)
    return N // g


# ── Single elements ────────────────────────────────────────────────────────

def to_batch(items: list[Autotopism]) -> MonomialBatch:
    params = items[0].params
    return from_table(params, np.array([a.key for a in items], dtype=np.int64))


def from_batch(batch: MonomialBatch, index: int, verified: bool = False) -> Autotopism:
    row = batch.table[index]
    return Autotopism(
        params=batch.params,
        i=int(row[0]),
        form=FORMS_BY_CODE[int(row[1])],
        x_logs=(int(row[2]), int(row[3])),
        y_logs=(int(row[4]), int(row[5])),
        verified=verified,
    )


def compose_autotopisms(a: Autotopism, b: Autotopism, spread=None) -> Autotopism:
    """a ∘ b; with a spread set given, the product is verified (ConventionMismatch otherwise)."""
    product = from_batch(compose_batch(to_batch([a]), to_batch([b])), 0)
    if spread is None:
        return product
    from gkaut.services.autotopism_verifier import verify_batch

    if not verify_batch(spread, to_batch([product]))[0]:
        raise ConventionMismatch(f"Product of {a.key} and {b.key} does not preserve C")
    return Autotopism(product.params, product.i, product.form, product.x_logs, product.y_logs, verified=True)


def invert_autotopism(a: Autotopism) -> Autotopism:
    return from_batch(invert_batch(to_batch([a])), 0, verified=a.verified)


def to_pairs(a: Autotopism) -> tuple[SemilinearPair, SemilinearPair]:
    tower = a.params.tower
    zero = linmap.zero(tower)
    x1, x2 = (linmap.monomial(tower, tower.g_pow(v), a.i) for v in a.x_logs)
    y1, y2 = (linmap.monomial(tower, tower.g_pow(v), a.i) for v in a.y_logs)
    X = linmap.pair(x1, zero, zero, x2)
    if a.form == MapForm.DIAGONAL:
        Y = linmap.pair(y1, zero, zero, y2)
    else:
        Y = linmap.pair(zero, y1, y2, zero)
    return X, Y


def family_size(params: GKParams) -> int:
    tower = params.tower
    return tower.units * (tower.p**tower.e - 1)


def multiples_of(i0: int, m: int) -> list[int]:
    step = gcd(i0, m) if i0 else m
    return list(range(0, m, step))

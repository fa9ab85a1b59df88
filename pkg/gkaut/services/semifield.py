"""
The commutative presemifield on M × M and generic presemifield helpers.

    (x, y) ∘ (u, v) = ( x^q u + x u^q + B (y^q v + y v^q),
                        x^r v + A x v^r + A y^r u + y u^r )

with B a non-square and AB ∈ F_Q^×. ``Variant.PRINTED`` keeps the other
written form of the second coordinate, x^r v + y u^r + A (y v^r + y^r u),
which is only used to report that it is not commutative.
"""

import logging

import numpy as np

from gkaut.core.errors import (
    ABNotInFQ,
    BNotNonSquare,
    ParamsError,
    PropertyViolation,
    SingularMatrix,
    SingularTranslation,
    TowerInvalid,
)
from gkaut.models.semifield import GKParams, Presemifield, Variant
from gkaut.models.tower import FieldTower
from gkaut.schemas.semifield import KaplanskyReport, LemmaReport
from gkaut.services import matrix_fp
from gkaut.services.field_tower import (
    element_ints,
    fixed_field_sizes,
    from_coords,
    gcd_lemma_grid,
    in_subfield,
    is_kth_power,
    minus_one_is_q_minus_one_power,
    norm_to_half,
    subfield_elements,
    to_coords,
)
from gkaut.services.linmap import binomial_bijectivity_sweep

logger = logging.getLogger(__name__)


# ── Parameters ─────────────────────────────────────────────────────────────

def validate_gk_params(tower: FieldTower, A, B, label: str = "") -> GKParams:
    if not isinstance(tower, FieldTower) or (tower.m // tower.e) % 2 == 0 or tower.e != 2 * tower.d:
        raise TowerInvalid(f"Tower {tower!r} does not satisfy m/e odd, e = 2d")
    if int(B) == 0 or is_kth_power(tower, B, 2):
        raise BNotNonSquare(f"B = {int(B)} is not a non-square in M^×")
    c = A * B
    if int(c) == 0 or not in_subfield(tower, c, tower.m // 2):
        raise ABNotInFQ(f"AB = {int(c)} is not in F_{tower.Q}^×")
    if is_kth_power(tower, A, 2):
        raise PropertyViolation(f"A = {int(A)} is a square although B is not and AB ∈ F_Q^×")
    return GKParams(tower=tower, A=int(A), B=int(B), label=label)


def half_field_units(tower: FieldTower):
    return subfield_elements(tower, tower.m // 2, units_only=True)


def balance_norm(tower: FieldTower, B, c):
    """N(B)^q · c^{-(q+1)}; its (σ∓1)-th powers decide the δ-conditions."""
    return norm_to_half(tower, B) ** tower.q * c ** -(tower.q + 1)


def auto_A(tower: FieldTower, B, *, balanced: bool = False):
    """A = c·B^{-1} for the smallest c ∈ F_Q^× (by generator exponent) that validates."""
    minus_one = -tower.one()
    for c in half_field_units(tower):
        if balanced:
            nu = balance_norm(tower, B, c)
            if nu != tower.one() and nu != minus_one:
                continue
        A = c * B**-1
        try:
            validate_gk_params(tower, A, B)
        except (ABNotInFQ, PropertyViolation):
            continue
        return A
    kind = "balanced " if balanced else ""
    raise ParamsError(f"No {kind}c ∈ F_Q^× yields valid parameters for B = {int(B)}")


def make_params(tower: FieldTower, b_exp: int, a_spec: str | int = "auto", label: str = "") -> GKParams:
    """B = g^b_exp; A given as a generator exponent, 'auto' or 'balanced'."""
    B = tower.g_pow(b_exp)
    if a_spec == "auto":
        A = auto_A(tower, B)
    elif a_spec == "balanced":
        A = auto_A(tower, B, balanced=True)
    else:
        A = tower.g_pow(int(a_spec))
    return validate_gk_params(tower, A, B, label=label)


def is_case_two(params: GKParams) -> bool:
    tower = params.tower
    return is_kth_power(tower, params.A_elem**2, tower.r - 1)


def theorem_prediction(params: GKParams) -> dict:
    """Order and shape predicted by the closed-form classification."""
    tower = params.tower
    family = tower.units * (tower.p**tower.e - 1)
    if not is_case_two(params):
        return {"case": 1, "index": None, "order": family}
    index = next(
        i for i in range(1, tower.m + 1)
        if is_kth_power(tower, params.A_elem ** (tower.p**i - 1), tower.r - 1)
    )
    return {"case": 2, "index": index, "order": 2 * family * (tower.m // index)}


# ── Multiplication ─────────────────────────────────────────────────────────

def gk_multiply(params: GKParams, x, y, u, v, variant: Variant = Variant.SPREAD):
    tower = params.tower
    q, r = tower.q, tower.r
    A, B = params.A_elem, params.B_elem
    first = x**q * u + x * u**q + B * (y**q * v + y * v**q)
    if variant == Variant.SPREAD:
        second = x**r * v + A * x * v**r + A * y**r * u + y * u**r
    else:
        second = x**r * v + y * u**r + A * (y * v**r + y**r * u)
    return first, second


def _basis_pairs(tower: FieldTower):
    basis = tower.basis()
    zeros = tower.GF.Zeros(tower.m)
    xs = tower.GF(np.concatenate((element_ints(basis), element_ints(zeros))))
    ys = tower.GF(np.concatenate((element_ints(zeros), element_ints(basis))))
    return xs, ys


def spread_matrix(params: GKParams, u, v, variant: Variant = Variant.SPREAD) -> np.ndarray:
    """Matrix of R_{u,v}: (x, y) ↦ (x, y) ∘ (u, v)."""
    tower = params.tower
    xs, ys = _basis_pairs(tower)
    first, second = gk_multiply(params, xs, ys, u, v, variant)
    return np.concatenate((to_coords(tower, first).T, to_coords(tower, second).T), axis=0)


def pair_to_vector(tower: FieldTower, x, y) -> np.ndarray:
    return np.concatenate((to_coords(tower, x), to_coords(tower, y)), axis=-1)


def vector_to_pair(tower: FieldTower, vec):
    vec = np.asarray(vec, dtype=np.int64)
    return from_coords(tower, vec[..., :tower.m]), from_coords(tower, vec[..., tower.m:])


# ── Presemifields as structure tensors ─────────────────────────────────────

def gk_presemifield(params: GKParams, variant: Variant = Variant.SPREAD) -> Presemifield:
    tower = params.tower
    xs, ys = _basis_pairs(tower)
    structure = np.zeros((tower.n, tower.n, tower.n), dtype=np.int64)
    for i in range(tower.n):
        first, second = gk_multiply(params, xs[i], ys[i], xs, ys, variant)
        structure[i] = pair_to_vector(tower, first, second).T
    label = params.label or f"GK{tower.label}"
    return Presemifield(p=tower.p, n=tower.n, structure=structure, label=label)


def presemifield_multiply(S: Presemifield, x, y) -> np.ndarray:
    """x∘y for vectors (n,) or batches (B, n)."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.ndim == 1:
        return np.einsum("i,iab,b->a", x, S.structure, y) % S.p
    return np.einsum("zi,iab,zb->za", x, S.structure, y) % S.p


def left_multiplication(S: Presemifield, x) -> np.ndarray:
    return np.einsum("i,iab->ab", np.asarray(x, dtype=np.int64), S.structure) % S.p


def kaplansky_transform(S: Presemifield, e) -> Presemifield:
    """Semifield with (x∘e) ∗ (e∘y) = x∘y; its identity is e∘e."""
    e = matrix_fp.as_fp(S.p, e)
    if not e.any():
        raise SingularTranslation("Kaplansky element must be nonzero")
    left_e = left_multiplication(S, e)
    right_e = np.stack([S.structure[i] @ e for i in range(S.n)], axis=1) % S.p
    try:
        left_inv = matrix_fp.invert(S.p, left_e)
        right_inv = matrix_fp.invert(S.p, right_e)
    except SingularMatrix as exc:
        raise SingularTranslation(f"Translation by {e.tolist()} is singular") from exc
    structure = np.stack(
        [matrix_fp.matmul(S.p, left_multiplication(S, right_inv[:, i]), left_inv) for i in range(S.n)]
    )
    identity = presemifield_multiply(S, e, e)
    logger.info("Kaplansky transform of %s at e=%s", S.label, e.tolist())
    return Presemifield(p=S.p, n=S.n, structure=structure, label=f"{S.label}*", identity=identity)


def kaplansky(params: GKParams, e_pair) -> Presemifield:
    x, y = e_pair
    return kaplansky_transform(gk_presemifield(params), pair_to_vector(params.tower, x, y))


# ── Reports ────────────────────────────────────────────────────────────────

def kaplansky_check(params: GKParams, *, samples: int = 100, seed: int = 0) -> KaplanskyReport:
    """Two-sided identity and bilinearity of the Kaplansky semifield at e = (1, 0)."""
    tower = params.tower
    S = gk_presemifield(params)
    e = pair_to_vector(tower, tower.one(), tower.zero())
    T = kaplansky_transform(S, e)
    rng = np.random.default_rng(seed)
    z = rng.integers(0, tower.p, size=(samples, tower.n))
    w = rng.integers(0, tower.p, size=(samples, tower.n))
    ident = np.broadcast_to(T.identity, z.shape)
    left = presemifield_multiply(T, ident, z)
    right = presemifield_multiply(T, z, ident)
    additive = (presemifield_multiply(T, z, (w + z) % tower.p)
                - presemifield_multiply(T, z, w) - presemifield_multiply(T, z, z)) % tower.p
    expected = pair_to_vector(tower, *gk_multiply(params, tower.one(), tower.zero(), tower.one(), tower.zero()))
    return KaplanskyReport(
        e=e.tolist(),
        identity=T.identity.tolist(),
        samples=samples,
        left_identity_failures=int(np.count_nonzero(np.any(left != z, axis=1))),
        right_identity_failures=int(np.count_nonzero(np.any(right != z, axis=1))),
        bilinearity_failures=int(np.count_nonzero(np.any(additive != 0, axis=1))),
        expected_identity_matches=bool(np.array_equal(T.identity, expected)),
    )


def lemma_report(params: GKParams, *, max_m: int = 12) -> LemmaReport:
    tower = params.tower
    sweep = binomial_bijectivity_sweep(tower, params.A_elem)
    return LemmaReport(
        gcd_cases=gcd_lemma_grid(max_m=max_m, primes=(3, 5, 7)),
        minus_one_is_q_minus_one_power=minus_one_is_q_minus_one_power(tower),
        fixed_field_sizes=fixed_field_sizes(tower),
        expected_fixed_field_size=tower.p**tower.e,
        q_binomial_failures=sweep["q_binomial"],
        r_binomial_failures=sweep["r_binomial"],
    )

"""
Linearized polynomials and their F_p matrix forms.

Usage:
    f = monomial(tower, a, 3)              # x ↦ a x^{p^3}
    M = to_matrix(f)                       # m×m over F_p, acts on columns
    assert from_matrix(tower, M) == f

Exponents live in Z/mZ. Matrices act on coordinate column vectors in the
power basis of the tower; maps on M×M use the concatenated basis
(x-coordinates first).
"""

import logging
from functools import lru_cache

import numpy as np

from gkaut.core.errors import DimensionMismatch, SNotDivisor
from gkaut.models.linmap import LinPoly, MapForm, SemilinearPair
from gkaut.models.tower import FieldTower
from gkaut.services import matrix_fp
from gkaut.services.field_tower import element_ints, from_coords, to_coords

logger = logging.getLogger(__name__)


# ── Constructors ───────────────────────────────────────────────────────────

def from_values(tower: FieldTower, values) -> LinPoly:
    return LinPoly(tower, tuple(int(v) for v in element_ints(values)))


def zero(tower: FieldTower) -> LinPoly:
    return LinPoly(tower, (0,) * tower.m)


def monomial(tower: FieldTower, a, i: int) -> LinPoly:
    coeffs = [0] * tower.m
    coeffs[i % tower.m] = int(element_ints(a))
    return LinPoly(tower, tuple(coeffs))


def identity(tower: FieldTower) -> LinPoly:
    return monomial(tower, tower.one(), 0)


def q_binomial_map(tower: FieldTower, u) -> LinPoly:
    """x ↦ x u^q + x^q u."""
    values = tower.GF.Zeros(tower.m)
    values[0] += u**tower.q
    values[tower.k % tower.m] += u
    return from_values(tower, values)


def r_binomial_map(tower: FieldTower, v, A) -> LinPoly:
    """x ↦ x^r v + A x v^r."""
    values = tower.GF.Zeros(tower.m)
    values[(tower.k + tower.m // 2) % tower.m] += v
    values[0] += A * v**tower.r
    return from_values(tower, values)


# ── Algebra ────────────────────────────────────────────────────────────────

def evaluate(f: LinPoly, x):
    tower = f.tower
    result = tower.GF.Zeros(np.shape(x))
    for i in f.support:
        result = result + f.values[i] * x ** (tower.p**i)
    return result


def add(f: LinPoly, g: LinPoly) -> LinPoly:
    return from_values(f.tower, f.values + g.values)


def compose(f: LinPoly, g: LinPoly) -> LinPoly:
    """f ∘ g, reduced mod x^{p^m} - x."""
    tower = f.tower
    m = tower.m
    a, b = f.values, g.values
    out = tower.GF.Zeros(m)
    shift = np.arange(m)
    for i in f.support:
        b_frob = b ** (tower.p**i)
        out = out + a[i] * b_frob[(shift - i) % m]
    return from_values(tower, out)


def semilinear_over(f: LinPoly, s: int) -> int | None:
    """The j with f(λx) = λ^{p^j} f(x) for λ ∈ F_{p^s}, or None."""
    if s <= 0 or f.tower.m % s:
        raise SNotDivisor(f"s = {s} does not divide m = {f.tower.m}")
    residues = {i % s for i in f.support}
    if not residues:
        return 0
    return residues.pop() if len(residues) == 1 else None


def monomial_degree(f: LinPoly) -> int | None:
    support = f.support
    return support[0] if len(support) == 1 else None


# ── Matrix forms ───────────────────────────────────────────────────────────

def to_matrix(f: LinPoly) -> np.ndarray:
    images = evaluate(f, f.tower.basis())
    return to_coords(f.tower, images).T.copy()


@lru_cache(maxsize=None)
def _moore_inverse(tower: FieldTower):
    basis = tower.basis()
    moore = tower.GF.Zeros((tower.m, tower.m))
    for i in range(tower.m):
        moore[:, i] = basis ** (tower.p**i)
    return np.linalg.inv(moore)


def from_matrix(tower: FieldTower, M) -> LinPoly:
    M = matrix_fp.as_fp(tower.p, M)
    if M.shape != (tower.m, tower.m):
        raise DimensionMismatch(f"Expected {tower.m}x{tower.m}, got {M.shape}")
    images = from_coords(tower, M.T)
    return from_values(tower, _moore_inverse(tower) @ images)


def batch_from_matrix(tower: FieldTower, mats) -> np.ndarray:
    """Coefficient integers (B, m) of the linearized polynomials of a (B, m, m) stack."""
    mats = matrix_fp.as_fp(tower.p, mats)
    images = from_coords(tower, np.swapaxes(mats, 1, 2))
    return element_ints(images @ _moore_inverse(tower).T)


def invert(f: LinPoly) -> LinPoly:
    return from_matrix(f.tower, matrix_fp.invert(f.tower.p, to_matrix(f)))


def monomial_matrices(tower: FieldTower, scalars, i: int) -> np.ndarray:
    """Stack of matrices of x ↦ a x^{p^i} for every a in ``scalars``, shape (B, m, m)."""
    frob_basis = tower.basis() ** (tower.p ** (i % tower.m))
    images = scalars[:, None] * frob_basis[None, :]
    return np.swapaxes(to_coords(tower, images), 1, 2)


# ── Pairs on M×M ───────────────────────────────────────────────────────────

def pair(f1: LinPoly, f2: LinPoly, f3: LinPoly, f4: LinPoly) -> SemilinearPair:
    return SemilinearPair(f1, f2, f3, f4, tag=monomial_tag_of(f1, f2, f3, f4))


def monomial_tag_of(f1, f2, f3, f4) -> tuple[int, MapForm] | None:
    degrees = []
    for f in (f1, f2, f3, f4):
        if f.is_zero():
            degrees.append(None)
            continue
        degree = monomial_degree(f)
        if degree is None:
            return None
        degrees.append(degree)
    if degrees[1] is None and degrees[2] is None and None not in (degrees[0], degrees[3]):
        form = MapForm.DIAGONAL
        used = {degrees[0], degrees[3]}
    elif degrees[0] is None and degrees[3] is None and None not in (degrees[1], degrees[2]):
        form = MapForm.ANTIDIAGONAL
        used = {degrees[1], degrees[2]}
    else:
        return None
    if len(used) != 1:
        return None
    return used.pop(), form


def pair_evaluate(P: SemilinearPair, x, y):
    return (
        evaluate(P.f1, x) + evaluate(P.f2, y),
        evaluate(P.f3, x) + evaluate(P.f4, y),
    )


def pair_compose(P: SemilinearPair, R: SemilinearPair) -> SemilinearPair:
    """P ∘ R as 2×2 arrays of maps."""
    return pair(
        add(compose(P.f1, R.f1), compose(P.f2, R.f3)),
        add(compose(P.f1, R.f2), compose(P.f2, R.f4)),
        add(compose(P.f3, R.f1), compose(P.f4, R.f3)),
        add(compose(P.f3, R.f2), compose(P.f4, R.f4)),
    )


def to_matrix2(P: SemilinearPair) -> np.ndarray:
    return np.block([
        [to_matrix(P.f1), to_matrix(P.f2)],
        [to_matrix(P.f3), to_matrix(P.f4)],
    ])


def pair_from_matrix(tower: FieldTower, M) -> SemilinearPair:
    M = matrix_fp.as_fp(tower.p, M)
    m = tower.m
    if M.shape != (2 * m, 2 * m):
        raise DimensionMismatch(f"Expected {2 * m}x{2 * m}, got {M.shape}")
    return pair(
        from_matrix(tower, M[:m, :m]),
        from_matrix(tower, M[:m, m:]),
        from_matrix(tower, M[m:, :m]),
        from_matrix(tower, M[m:, m:]),
    )


# ── Bijectivity sweeps ─────────────────────────────────────────────────────

def binomial_bijectivity_sweep(tower: FieldTower, A) -> dict[str, list[int]]:
    """Nonzero u (resp. v) whose q- (resp. r-) binomial map is singular, as generator exponents."""
    failures: dict[str, list[int]] = {"q_binomial": [], "r_binomial": []}
    units = tower.g_pow(np.arange(tower.units, dtype=np.int64))
    for j, u in enumerate(units):
        if matrix_fp.rank(tower.p, to_matrix(q_binomial_map(tower, u))) != tower.m:
            failures["q_binomial"].append(j)
        if matrix_fp.rank(tower.p, to_matrix(r_binomial_map(tower, u, A))) != tower.m:
            failures["r_binomial"].append(j)
    logger.info(
        "Binomial sweep over %d units: %d q-failures, %d r-failures",
        tower.units, len(failures["q_binomial"]), len(failures["r_binomial"]),
    )
    return failures

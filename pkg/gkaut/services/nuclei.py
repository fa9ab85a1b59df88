"""
Right and middle nuclei of a spread set by exact linear algebra.

Usage:
    C = build_spread_set(params)
    right = right_nucleus(C)      # {X : X·C ⊆ C}, a field of order p^d
    middle = middle_nucleus(C)    # {Y : C·Y ⊆ C}, a field of order p^{2d}

With K the annihilator of C (rows z with z·vec(c) = 0 for all c ∈ C) and
row-major vectorisation, vec(X c) = (I ⊗ cᵀ) vec(X) and vec(c Y) = (c ⊗ I)
vec(Y). Stacking K·(I ⊗ c_jᵀ) (resp. K·(c_j ⊗ I)) over the 2m basis
members and taking the kernel gives the nucleus as an F_p-space.
"""

import logging

import numpy as np

from gkaut.core.config import NUCLEUS_MAX_SIZE
from gkaut.core.errors import ScaleTooLarge
from gkaut.models.semifield import GKParams, SpreadSet
from gkaut.schemas.nucleus import NucleusReport
from gkaut.services import linmap, matrix_fp
from gkaut.services.field_tower import subfield_elements
from gkaut.services.parallel import digits
from gkaut.services.spread_set import membership_batch

logger = logging.getLogger(__name__)

RIGHT = "right"
MIDDLE = "middle"


def solution_space(C: SpreadSet, side: str) -> np.ndarray:
    """Basis of the nucleus as rows of n×n matrices, shape (dim, n, n)."""
    n = C.n
    eye = np.eye(n, dtype=np.int64)
    blocks = []
    for c in C.basis:
        lift = np.kron(eye, c.T) if side == RIGHT else np.kron(c, eye)
        blocks.append((C.annihilator @ lift) % C.p)
    system = np.concatenate(blocks)
    return matrix_fp.kernel(C.p, system).reshape(-1, n, n)


def nucleus_elements(C: SpreadSet, side: str) -> np.ndarray:
    """Every element of the nucleus (zero first), shape (p^dim, n, n)."""
    basis = solution_space(C, side)
    size = C.p ** basis.shape[0]
    if size > NUCLEUS_MAX_SIZE:
        raise ScaleTooLarge(f"{side} nucleus has {size} elements")
    combos = digits(np.arange(size), C.p, basis.shape[0])
    return np.einsum("zk,kab->zab", combos, basis) % C.p


def nucleus_units(C: SpreadSet, side: str) -> np.ndarray:
    return nucleus_elements(C, side)[1:]


def _keys(mats: np.ndarray) -> set[bytes]:
    return {matrix_fp.matrix_key(M) for M in mats}


def _multiplicative_order(p: int, M: np.ndarray, bound: int) -> int:
    eye = np.eye(M.shape[0], dtype=np.int64)
    power = M.copy()
    for k in range(1, bound + 1):
        if np.array_equal(power, eye):
            return k
        power = (power @ M) % p
    return 0


def nucleus_predicted(params: GKParams, side: str, literal: bool = False) -> np.ndarray:
    """
    Scalar maps the nucleus should consist of, zero included.

    right:   (x, y) ↦ (a x, a y),          a ∈ D
    middle:  (x, y) ↦ (a x, a^{p^d} y),    a ∈ E
    ``literal`` gives (a x, a y) for a ∈ E on the middle side.
    """
    tower = params.tower
    s = tower.d if side == RIGHT else tower.e
    scalars = subfield_elements(tower, s)
    second = scalars if (side == RIGHT or literal) else scalars ** (tower.p**tower.d)
    left = linmap.monomial_matrices(tower, scalars, 0)
    right = linmap.monomial_matrices(tower, second, 0)
    mats = np.zeros((len(scalars), tower.n, tower.n), dtype=np.int64)
    mats[:, :tower.m, :tower.m] = left
    mats[:, tower.m:, tower.m:] = right
    return mats


def _report(C: SpreadSet, side: str) -> NucleusReport:
    p = C.p
    basis = solution_space(C, side)
    elements = nucleus_elements(C, side)
    units = elements[1:]
    keys = _keys(elements)

    products = np.matmul(units[:, None], units[None, :]) % p
    flat_products = products.reshape(-1, C.n, C.n)
    closed_mul = all(matrix_fp.matrix_key(M) in keys for M in flat_products)
    commutative = bool(np.array_equal(products, np.swapaxes(products, 0, 1)))
    sums = (elements[:, None] + elements[None, :]) % p
    closed_add = all(matrix_fp.matrix_key(M) in keys for M in sums.reshape(-1, C.n, C.n))
    invertible = bool(matrix_fp.batch_full_rank(p, units).all()) if len(units) else True

    orders = [_multiplicative_order(p, U, len(units)) for U in units]
    best = int(np.argmax(orders)) if orders else 0
    generator = units[best] if len(units) else np.eye(C.n, dtype=np.int64)

    predicted = nucleus_predicted(C.params, side)
    literal = nucleus_predicted(C.params, side, literal=True)
    form = "(a x, a y), a in D" if side == RIGHT else "(a x, a^(p^d) y), a in E"
    report = NucleusReport(
        side=side,
        dimension=int(basis.shape[0]),
        unit_count=len(units),
        field_size=len(elements),
        field_degree=int(basis.shape[0]),
        generator=generator.tolist(),
        generator_order=orders[best] if orders else 1,
        closed_under_addition=closed_add,
        closed_under_multiplication=closed_mul,
        commutative=commutative,
        all_units_invertible=invertible,
        predicted_form=form,
        match=_keys(predicted) == keys,
        literal_match=_keys(literal) == keys,
    )
    logger.info(
        "%s nucleus: F_%d (dimension %d), match=%s literal_match=%s",
        side, report.field_size, report.dimension, report.match, report.literal_match,
    )
    if not report.match:
        logger.warning("%s nucleus differs from the predicted scalar family", side)
    return report


def right_nucleus(C: SpreadSet) -> NucleusReport:
    return _report(C, RIGHT)


def middle_nucleus(C: SpreadSet) -> NucleusReport:
    return _report(C, MIDDLE)


def right_in_middle(C: SpreadSet) -> bool:
    return _keys(nucleus_elements(C, RIGHT)) <= _keys(nucleus_elements(C, MIDDLE))


def sandwich_holds(C: SpreadSet, right: NucleusReport, middle: NucleusReport) -> bool:
    """X·c_j·Y ∈ C for the nucleus generators and every basis member."""
    X = np.asarray(right.generator, dtype=np.int64)
    Y = np.asarray(middle.generator, dtype=np.int64)
    mats = np.matmul(np.matmul(X[None], C.basis) % C.p, Y[None]) % C.p
    _, ok = membership_batch(C, mats)
    return bool(ok.all())

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkaut.core.errors import DimensionMismatch, SNotDivisor
from gkaut.models.linmap import MapForm
from gkaut.services import linmap, matrix_fp
from gkaut.services.field_tower import to_coords


def _random_poly(tower, rng):
    return linmap.from_values(tower, tower.GF(rng.integers(0, tower.order, size=tower.m)))


def _random_points(tower, rng, size=50):
    return tower.GF(rng.integers(0, tower.order, size=size))


# ── Evaluation and composition ─────────────────────────────────────────────

def test_identity_evaluates_to_its_argument(tower3, rng):
    x = _random_points(tower3, rng)
    assert np.array_equal(linmap.evaluate(linmap.identity(tower3), x), x)


def test_evaluation_is_linear_in_the_coefficients(tower3, rng):
    f, g = _random_poly(tower3, rng), _random_poly(tower3, rng)
    x = _random_points(tower3, rng)
    assert np.array_equal(linmap.evaluate(linmap.add(f, g), x), linmap.evaluate(f, x) + linmap.evaluate(g, x))


def test_q_binomial_map_matches_direct_formula(tower3, rng):
    u = tower3.g_pow(17)
    x = _random_points(tower3, rng, 100)
    f = linmap.q_binomial_map(tower3, u)
    assert np.array_equal(linmap.evaluate(f, x), x * u**tower3.q + x**tower3.q * u)


def test_r_binomial_map_matches_direct_formula(gk3, rng):
    tower = gk3.tower
    v = tower.g_pow(5)
    x = _random_points(tower, rng, 100)
    f = linmap.r_binomial_map(tower, v, gk3.A_elem)
    assert np.array_equal(linmap.evaluate(f, x), x**tower.r * v + gk3.A_elem * x * v**tower.r)


def test_compose_with_identity(tower3, rng):
    f = _random_poly(tower3, rng)
    assert linmap.compose(linmap.identity(tower3), f) == f
    assert linmap.compose(f, linmap.identity(tower3)) == f


@pytest.mark.parametrize("i, j", [(1, 2), (4, 5), (0, 3), (5, 5)])
def test_frobenius_monomials_compose(tower3, i, j):
    one = tower3.one()
    composed = linmap.compose(linmap.monomial(tower3, one, i), linmap.monomial(tower3, one, j))
    assert composed == linmap.monomial(tower3, one, (i + j) % tower3.m)


ELEMENTS_3 = st.integers(0, 3**6 - 1)
VALUES_3 = st.lists(ELEMENTS_3, min_size=6, max_size=6)


@settings(max_examples=50, deadline=None)
@given(f_values=VALUES_3, g_values=VALUES_3, points=st.lists(ELEMENTS_3, min_size=1, max_size=10))
def test_compose_agrees_with_evaluation(tower3, f_values, g_values, points):
    f = linmap.from_values(tower3, tower3.GF(f_values))
    g = linmap.from_values(tower3, tower3.GF(g_values))
    x = tower3.GF(points)
    assert np.array_equal(
        linmap.evaluate(linmap.compose(f, g), x),
        linmap.evaluate(f, linmap.evaluate(g, x)),
    )


# ── Matrix forms ───────────────────────────────────────────────────────────

def test_matrix_acts_like_evaluation(tower3, rng):
    f = _random_poly(tower3, rng)
    x = _random_points(tower3, rng, 20)
    M = linmap.to_matrix(f)
    expected = to_coords(tower3, linmap.evaluate(f, x))
    assert np.array_equal((to_coords(tower3, x) @ M.T) % tower3.p, expected)


def test_matrix_of_zero_and_prime_scalars(tower3):
    assert not linmap.to_matrix(linmap.zero(tower3)).any()
    two = linmap.monomial(tower3, tower3.GF(2), 0)
    assert np.array_equal(linmap.to_matrix(two), 2 * np.eye(tower3.m, dtype=np.int64))


def test_matrix_of_composition_is_the_product(tower3, rng):
    f, g = _random_poly(tower3, rng), _random_poly(tower3, rng)
    assert np.array_equal(
        linmap.to_matrix(linmap.compose(f, g)),
        matrix_fp.matmul(tower3.p, linmap.to_matrix(f), linmap.to_matrix(g)),
    )


def test_from_matrix_inverts_to_matrix(tower3, rng):
    for _ in range(5):
        f = _random_poly(tower3, rng)
        assert linmap.from_matrix(tower3, linmap.to_matrix(f)) == f


def test_from_matrix_rejects_wrong_shape(tower3):
    with pytest.raises(DimensionMismatch):
        linmap.from_matrix(tower3, np.eye(4, dtype=np.int64))


def test_batch_from_matrix_matches_single(tower3, rng):
    polys = [_random_poly(tower3, rng) for _ in range(4)]
    mats = np.stack([linmap.to_matrix(f) for f in polys])
    coeffs = linmap.batch_from_matrix(tower3, mats)
    assert [tuple(int(c) for c in row) for row in coeffs] == [f.coeffs for f in polys]


def test_invert_gives_a_two_sided_inverse(tower3):
    f = linmap.q_binomial_map(tower3, tower3.g)
    f_inv = linmap.invert(f)
    assert linmap.compose(f, f_inv) == linmap.identity(tower3)
    assert linmap.compose(f_inv, f) == linmap.identity(tower3)


def test_monomial_matrices_stack(tower3):
    scalars = tower3.g_pow(np.array([0, 3, 100]))
    mats = linmap.monomial_matrices(tower3, scalars, 2)
    for a, M in zip(scalars, mats):
        assert np.array_equal(M, linmap.to_matrix(linmap.monomial(tower3, a, 2)))


# ── Semilinearity and tags ─────────────────────────────────────────────────

def test_semilinear_over(tower3):
    mono = linmap.monomial(tower3, tower3.g, 3)
    assert linmap.semilinear_over(mono, 1) == 0
    assert linmap.semilinear_over(mono, 2) == 1
    assert linmap.semilinear_over(mono, 3) == 0
    binomial = linmap.q_binomial_map(tower3, tower3.g)
    assert linmap.semilinear_over(binomial, 2) == 0
    assert linmap.semilinear_over(binomial, 3) is None
    with pytest.raises(SNotDivisor):
        linmap.semilinear_over(mono, 4)


def test_pair_tags(tower3):
    zero = linmap.zero(tower3)
    a, b = tower3.g, tower3.g_pow(9)
    diag = linmap.pair(linmap.monomial(tower3, a, 2), zero, zero, linmap.monomial(tower3, b, 2))
    anti = linmap.pair(zero, linmap.monomial(tower3, a, 4), linmap.monomial(tower3, b, 4), zero)
    mixed = linmap.pair(linmap.monomial(tower3, a, 2), zero, zero, linmap.monomial(tower3, b, 3))
    assert diag.tag == (2, MapForm.DIAGONAL)
    assert anti.tag == (4, MapForm.ANTIDIAGONAL)
    assert mixed.tag is None


def test_pair_matrix_round_trip_and_composition(tower3, rng):
    P = linmap.pair(*(_random_poly(tower3, rng) for _ in range(4)))
    R = linmap.pair(*(_random_poly(tower3, rng) for _ in range(4)))
    assert linmap.pair_from_matrix(tower3, linmap.to_matrix2(P)) == P
    assert np.array_equal(
        linmap.to_matrix2(linmap.pair_compose(P, R)),
        matrix_fp.matmul(tower3.p, linmap.to_matrix2(P), linmap.to_matrix2(R)),
    )
    x, y = _random_points(tower3, rng, 10), _random_points(tower3, rng, 10)
    first, second = linmap.pair_evaluate(P, *linmap.pair_evaluate(R, x, y))
    composed = linmap.pair_evaluate(linmap.pair_compose(P, R), x, y)
    assert np.array_equal(first, composed[0])
    assert np.array_equal(second, composed[1])

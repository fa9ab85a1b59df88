import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkaut.core.errors import ABNotInFQ, BNotNonSquare, SingularTranslation
from gkaut.models.semifield import Variant
from gkaut.services.field_tower import dlog
from gkaut.services.semifield import (
    gk_multiply,
    gk_presemifield,
    is_case_two,
    kaplansky,
    kaplansky_check,
    lemma_report,
    make_params,
    pair_to_vector,
    presemifield_multiply,
    theorem_prediction,
    validate_gk_params,
    vector_to_pair,
)
from gkaut.services.spread_set import commutativity_failures


def _random(tower, rng, size=200):
    return tower.GF(rng.integers(0, tower.order, size=size))


# ── Parameters ─────────────────────────────────────────────────────────────

def test_fixture_parameters(gk3, balanced):
    tower = gk3.tower
    assert int(dlog(tower, gk3.B_elem)) == 1
    # auto picks c = 1, so A = B^{-1}
    assert int(dlog(tower, gk3.A_elem)) == tower.units - 1
    assert int(gk3.c_elem) == 1
    assert int(dlog(tower, balanced.c_elem)) == 280
    assert int(dlog(tower, balanced.A_elem)) == 279


def test_square_b_is_rejected(tower3):
    with pytest.raises(BNotNonSquare):
        make_params(tower3, 2)


def test_ab_outside_half_field_is_rejected(tower3):
    with pytest.raises(ABNotInFQ):
        make_params(tower3, 1, 2)


def test_validate_accepts_explicit_pair(tower3):
    B = tower3.g
    A = tower3.g_pow(28 * 3) * B**-1
    params = validate_gk_params(tower3, A, B, label="explicit")
    assert params.label == "explicit"


def test_theorem_prediction(gk3, gk5):
    assert is_case_two(gk3)
    assert theorem_prediction(gk3) == {"case": 2, "index": 1, "order": 69_888}
    assert not is_case_two(gk5)
    assert theorem_prediction(gk5) == {"case": 1, "index": None, "order": 374_976}


# ── Multiplication ─────────────────────────────────────────────────────────

@pytest.mark.parametrize("fixture_name", ["gk3", "gk5", "balanced"])
def test_spread_multiplication_is_commutative(fixture_name, request):
    params = request.getfixturevalue(fixture_name)
    assert commutativity_failures(params, Variant.SPREAD, 500, seed=1) == 0


def test_printed_multiplication_is_not_commutative(gk3):
    assert commutativity_failures(gk3, Variant.PRINTED, 500, seed=1) > 0


def test_multiplication_is_biadditive(gk3, rng):
    tower = gk3.tower
    x, y, u, v, w, z = (_random(tower, rng) for _ in range(6))
    left = gk_multiply(gk3, x + w, y + z, u, v)
    split = [a + b for a, b in zip(gk_multiply(gk3, x, y, u, v), gk_multiply(gk3, w, z, u, v))]
    assert np.array_equal(left[0], split[0])
    assert np.array_equal(left[1], split[1])


ELEMENTS_3 = st.integers(0, 3**6 - 1)


@settings(max_examples=50, deadline=None)
@given(st.lists(ELEMENTS_3, min_size=4, max_size=4))
def test_spread_product_is_symmetric_in_its_factors(gk3, coords):
    x, y, u, v = (gk3.tower.GF([c]) for c in coords)
    left = gk_multiply(gk3, x, y, u, v)
    right = gk_multiply(gk3, u, v, x, y)
    assert np.array_equal(left[0], right[0])
    assert np.array_equal(left[1], right[1])


@settings(max_examples=50, deadline=None)
@given(st.lists(ELEMENTS_3, min_size=6, max_size=6))
def test_multiplication_is_additive_in_the_right_factor(gk3, coords):
    x, y, u, v, w, z = (gk3.tower.GF([c]) for c in coords)
    left = gk_multiply(gk3, x, y, u + w, v + z)
    split = [a + b for a, b in zip(gk_multiply(gk3, x, y, u, v), gk_multiply(gk3, x, y, w, z))]
    assert np.array_equal(left[0], split[0])
    assert np.array_equal(left[1], split[1])


def test_structure_tensor_matches_field_formula(gk3, rng):
    tower = gk3.tower
    S = gk_presemifield(gk3)
    x, y, u, v = (_random(tower, rng, 20) for _ in range(4))
    product = gk_multiply(gk3, x, y, u, v)
    got = presemifield_multiply(S, pair_to_vector(tower, x, y), pair_to_vector(tower, u, v))
    assert np.array_equal(got, pair_to_vector(tower, *product))
    first, second = vector_to_pair(tower, got)
    assert np.array_equal(first, product[0]) and np.array_equal(second, product[1])


# ── Kaplansky ──────────────────────────────────────────────────────────────

def test_kaplansky_semifield_has_two_sided_identity(gk3):
    report = kaplansky_check(gk3, samples=200, seed=3)
    assert report.left_identity_failures == 0
    assert report.right_identity_failures == 0
    assert report.bilinearity_failures == 0
    assert report.expected_identity_matches


def test_kaplansky_rejects_zero(gk3):
    zero = gk3.tower.zero()
    with pytest.raises(SingularTranslation):
        kaplansky(gk3, (zero, zero))


# ── Lemma suite ────────────────────────────────────────────────────────────

@pytest.mark.slow
def test_lemma_report_has_no_violations(gk3):
    report = lemma_report(gk3, max_m=10)
    assert report.ok
    assert report.q_binomial_failures == []
    assert report.r_binomial_failures == []
    assert report.expected_fixed_field_size == 9

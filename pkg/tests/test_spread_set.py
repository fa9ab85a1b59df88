import numpy as np
import pytest

from gkaut.core.errors import DimensionMismatch
from gkaut.models.semifield import GKParams, S3Policy, Variant
from gkaut.services import matrix_fp
from gkaut.services.semifield import gk_multiply, pair_to_vector, spread_matrix
from gkaut.services.spread_set import check_s3, compare_variants, member_from_coords, membership


def test_spread_matrix_is_right_multiplication(gk3, rng):
    tower = gk3.tower
    u, v = tower.g_pow(11), tower.g_pow(500)
    R = spread_matrix(gk3, u, v)
    x = tower.GF(rng.integers(0, tower.order, size=30))
    y = tower.GF(rng.integers(0, tower.order, size=30))
    expected = pair_to_vector(tower, *gk_multiply(gk3, x, y, u, v))
    assert np.array_equal((pair_to_vector(tower, x, y) @ R.T) % tower.p, expected)


def test_spread_set_dimension(spread3, spread5):
    assert spread3.dimension == 12
    assert spread3.basis.shape == (12, 12, 12)
    assert spread5.dimension == 12
    assert spread3.annihilator.shape == (144 - 12, 144)


def test_membership_recovers_coordinates(gk3, spread3, rng):
    tower = gk3.tower
    for u_exp, v_exp in rng.integers(0, tower.units, size=(10, 2)):
        u, v = tower.g_pow(u_exp), tower.g_pow(v_exp)
        found = membership(spread3, spread_matrix(gk3, u, v))
        assert (int(found[0]), int(found[1])) == (int(u), int(v))


def test_membership_rejects_non_members(spread3, rng):
    M = rng.integers(0, 3, size=(12, 12))
    assert membership(spread3, M) is None


def test_membership_rejects_wrong_shape(spread3):
    with pytest.raises(DimensionMismatch):
        membership(spread3, np.eye(6, dtype=np.int64))


def test_members_from_coordinates_are_linear(spread3, rng):
    a = rng.integers(0, 3, size=12)
    b = rng.integers(0, 3, size=12)
    total = member_from_coords(spread3, (a + b) % 3)
    assert np.array_equal(total, (member_from_coords(spread3, a) + member_from_coords(spread3, b)) % 3)


@pytest.mark.parametrize("fixture_name", ["gk3", "gk5", "balanced"])
def test_sampled_s3_finds_no_singular_member(fixture_name, request):
    params = request.getfixturevalue(fixture_name)
    report = check_s3(params, S3Policy.SAMPLED, samples=2000, seed=7)
    assert report.singular_count == 0
    assert report.seed == 7
    assert report.wall_time_s is None


def test_sampled_s3_is_reproducible(gk3, spread3):
    first = check_s3(gk3, S3Policy.SAMPLED, samples=500, seed=11, spread=spread3)
    second = check_s3(gk3, S3Policy.SAMPLED, samples=500, seed=11, spread=spread3, threads=3)
    assert first == second


@pytest.mark.slow
def test_full_s3_sweep(gk3, spread3):
    report = check_s3(gk3, S3Policy.FULL, spread=spread3, threads=4)
    assert report.policy == S3Policy.FULL
    assert report.checked == 3**12 - 1
    assert report.singular_count == 0


@pytest.fixture(scope="module")
def square_b3(tower3):
    # B = g^2 is a square; A = g^-2 keeps AB = 1 in F_Q
    return GKParams(tower=tower3, A=int(tower3.g_pow(-2)), B=int(tower3.g_pow(2)), label="square-B")


def test_square_b_has_singular_members(square_b3):
    tower = square_b3.tower
    R = spread_matrix(square_b3, tower.zero(), tower.one())
    assert matrix_fp.rank(tower.p, R) < 2 * tower.m


def test_sampled_s3_reports_square_b(square_b3):
    report = check_s3(square_b3, S3Policy.SAMPLED, samples=200, seed=0)
    assert report.singular_count >= square_b3.tower.m
    assert report.singular
    witness = report.singular[0]
    assert not any(witness.u)
    assert any(witness.v)


@pytest.mark.slow
def test_full_s3_reports_square_b(square_b3):
    report = check_s3(square_b3, S3Policy.FULL, threads=4)
    assert report.singular_count >= square_b3.tower.units
    assert len(report.singular) == 100


def test_variant_comparison(gk3):
    report = compare_variants(gk3, samples=300, seed=0)
    assert report.authoritative == Variant.SPREAD.value
    assert report.variants["spread"]["commutativity_failures"] == 0
    assert report.variants["spread"]["singular_members"] == 0
    assert report.variants["printed"]["commutativity_failures"] > 0

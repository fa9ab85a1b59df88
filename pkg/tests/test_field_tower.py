import numpy as np
import pytest

from gkaut.core.errors import (
    DivisionByZero,
    InvalidTowerParameter,
    MNotEven,
    NotPrime,
    QuotientNotOdd,
    ReducibleModulus,
    SNotDivisor,
    ZeroInput,
)
from gkaut.services.field_tower import (
    dlog,
    element_ints,
    fixed_field_sizes,
    frobenius,
    from_coeffs,
    gcd_lemma_check,
    gcd_lemma_grid,
    in_subfield,
    inv,
    is_kth_power,
    make_tower,
    minus_one_is_q_minus_one_power,
    power,
    power_fibers,
    roots_of_power_equation,
    subfield_elements,
    to_coeffs,
)


def _random_elements(tower, rng, size=100):
    return tower.GF(rng.integers(0, tower.order, size=size))


def _units(tower):
    return tower.g_pow(np.arange(tower.units))


# ── Construction ───────────────────────────────────────────────────────────

def test_make_tower_derived_constants(tower3):
    assert (tower3.q, tower3.Q, tower3.r) == (9, 27, 243)
    assert (tower3.e, tower3.d) == (2, 1)
    assert tower3.n == 12
    assert tower3.units == 728
    assert int(tower3.g.multiplicative_order()) == 728


def test_make_tower_is_deterministic(tower3):
    again = make_tower(3, 6, 2)
    assert again.modulus == tower3.modulus
    assert again.generator == tower3.generator
    assert again.modulus[-1] == 1


def test_explicit_modulus_is_kept(tower3):
    tower = make_tower(3, 6, 2, modulus=tower3.modulus)
    assert tower.modulus == tower3.modulus


@pytest.mark.parametrize(
    "p, m, k, error",
    [
        (4, 6, 2, NotPrime),
        (2, 6, 2, NotPrime),
        (3, 5, 2, MNotEven),
        (3, 2, 1, QuotientNotOdd),
        (3, 6, 3, QuotientNotOdd),
        (3, 6, 0, InvalidTowerParameter),
        (3, 6, 6, InvalidTowerParameter),
    ],
)
def test_make_tower_rejects(p, m, k, error):
    with pytest.raises(error):
        make_tower(p, m, k)


def test_make_tower_rejects_reducible_modulus():
    with pytest.raises(ReducibleModulus):
        make_tower(3, 6, 2, modulus=[0, 0, 0, 0, 0, 0, 1])


def test_coefficient_representation(tower3):
    t = from_coeffs(tower3, [0, 1, 0, 0, 0, 0])
    assert to_coeffs(tower3, t) == [0, 1, 0, 0, 0, 0]
    assert to_coeffs(tower3, tower3.g) == list(tower3.generator)


# ── Arithmetic ─────────────────────────────────────────────────────────────

def test_inverse_and_power(tower3):
    one = tower3.one()
    assert inv(one) == one
    assert tower3.g * power(tower3.g, tower3.units - 1) == one
    assert power(tower3.g, tower3.units) == one
    assert power(tower3.g, 0) == one


def test_zero_has_no_inverse(tower3):
    with pytest.raises(DivisionByZero):
        inv(tower3.zero())
    with pytest.raises(DivisionByZero):
        power(tower3.zero(), -1)


def test_frobenius_is_a_field_automorphism(tower3, rng):
    a = _random_elements(tower3, rng)
    b = _random_elements(tower3, rng)
    for i in range(tower3.m):
        assert np.array_equal(frobenius(tower3, a + b, i), frobenius(tower3, a, i) + frobenius(tower3, b, i))
        assert np.array_equal(frobenius(tower3, a * b, i), frobenius(tower3, a, i) * frobenius(tower3, b, i))
    assert np.array_equal(frobenius(tower3, a, 0), a)
    assert np.array_equal(frobenius(tower3, a, tower3.m), a)
    assert np.array_equal(power(a, tower3.p), frobenius(tower3, a, 1))


# ── Subfields and power classes ────────────────────────────────────────────

@pytest.mark.parametrize("s, size", [(1, 3), (2, 9), (3, 27), (6, 729)])
def test_subfield_sizes(tower3, s, size):
    assert int(np.count_nonzero(in_subfield(tower3, tower3.GF.elements, s))) == size
    assert len(subfield_elements(tower3, s)) == size


def test_subfield_lattice(tower3):
    D = subfield_elements(tower3, tower3.d)
    assert np.all(in_subfield(tower3, D, tower3.e))
    assert in_subfield(tower3, tower3.one(), tower3.d)
    assert not in_subfield(tower3, tower3.g, tower3.d)


def test_in_subfield_requires_divisor(tower3):
    with pytest.raises(SNotDivisor):
        in_subfield(tower3, tower3.g, 4)


def test_is_kth_power(tower3):
    assert is_kth_power(tower3, tower3.g**2, 2)
    assert not is_kth_power(tower3, tower3.g, 2)
    units = _units(tower3)
    # gcd(r - 1, p^m - 1) = 2, so (r-1)-st powers are the squares
    assert np.array_equal(is_kth_power(tower3, units, tower3.r - 1), is_kth_power(tower3, units, 2))


def test_is_kth_power_rejects_zero(tower3):
    with pytest.raises(ZeroInput):
        is_kth_power(tower3, tower3.zero(), 2)


def test_dlog_of_generator_powers(tower3):
    exps = np.array([0, 1, 5, 727])
    assert np.array_equal(dlog(tower3, tower3.g_pow(exps)), exps)
    with pytest.raises(ZeroInput):
        dlog(tower3, tower3.zero())


def test_dlog_of_scalars_and_grids(tower3):
    assert int(dlog(tower3, tower3.g)) == 1
    assert int(dlog(tower3, tower3.one())) == 0
    assert dlog(tower3, tower3.g).shape == ()
    grid = np.array([[3, 4], [700, 0]])
    assert np.array_equal(dlog(tower3, tower3.g_pow(grid)), grid)


def test_roots_of_unity_are_the_quadratic_subfield(tower3):
    roots = roots_of_power_equation(tower3, tower3.one(), tower3.q - 1)
    assert len(roots) == 8
    assert np.all(in_subfield(tower3, roots, tower3.e))


@pytest.mark.parametrize("t", [2, 8, 242, 4, 13])
def test_roots_match_brute_force(tower3, rng, t):
    units = _units(tower3)
    for c in tower3.g_pow(rng.integers(0, tower3.units, size=5)):
        roots = roots_of_power_equation(tower3, c, t)
        brute = units[units**t == c]
        assert sorted(element_ints(roots).tolist()) == sorted(element_ints(brute).tolist())
        assert len(roots) in (0, np.gcd(t, tower3.units))


def test_power_fibers_solve_the_congruence(rng):
    units, t = 728, 242
    logs = rng.integers(0, units, size=200)
    solvable, base, step = power_fibers(units, logs, t)
    assert np.array_equal(solvable, logs % 2 == 0)
    for j in range(units // step):
        assert np.all(((base + j * step) * t - logs)[solvable] % units == 0)


# ── Lemma checks ───────────────────────────────────────────────────────────

@pytest.mark.parametrize(
    "i, m, p, expected",
    [(2, 6, 3, (8, 2)), (2, 4, 3, (8, 10)), (6, 6, 3, (728, 2)), (3, 6, 5, (124, 126))],
)
def test_gcd_lemma_check(i, m, p, expected):
    assert gcd_lemma_check(i, m, p) == expected


def test_gcd_lemma_grid():
    # one case per 1 ≤ i ≤ m ≤ 8, per prime
    assert gcd_lemma_grid(max_m=8, primes=(3, 5)) == 2 * 36


@pytest.mark.parametrize("fixture_name", ["tower3", "tower5"])
def test_minus_one_is_not_a_q_minus_one_power(fixture_name, request):
    assert not minus_one_is_q_minus_one_power(request.getfixturevalue(fixture_name))


def test_fixed_fields_all_have_size_p_to_e(tower3):
    assert fixed_field_sizes(tower3) == {"q": 9, "q2": 9, "r2": 9}

"""
Field tower construction and power-class arithmetic.

Usage:
    from gkaut.services.field_tower import make_tower, is_kth_power
    tower = make_tower(3, 6, 2)          # q=9, Q=27, r=243, e=2, d=1
    is_kth_power(tower, tower.g, 2)      # False, g is primitive

The modulus defaults to the lexicographically smallest monic irreducible
(coefficients compared low degree first) and the generator to the smallest
primitive element under the same ordering, so every run of the same
(p, m, k) sees the same basis and the same discrete logs.
"""

import itertools
import logging
from math import gcd

import galois
import numpy as np

from gkaut.core.config import MAX_FIELD_ORDER
from gkaut.core.errors import (
    DivisionByZero,
    InvalidTowerParameter,
    MNotEven,
    NotPrime,
    PropertyViolation,
    QuotientNotOdd,
    ReducibleModulus,
    ScaleTooLarge,
    SNotDivisor,
    TowerInvariantError,
    ZeroInput,
)
from gkaut.models.tower import FieldTower

logger = logging.getLogger(__name__)


# ── Construction ───────────────────────────────────────────────────────────

def _modulus_poly(GFp: type, coeffs: tuple[int, ...]) -> galois.Poly:
    # galois wants the highest degree first
    return galois.Poly(list(reversed(coeffs)), field=GFp)


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    GFp = galois.GF(p)
    for low in itertools.product(range(p), repeat=m):
        if low[0] == 0:
            continue
        coeffs = (*low, 1)
        if _modulus_poly(GFp, coeffs).is_irreducible():
            return coeffs
    raise ReducibleModulus(f"No monic irreducible of degree {m} over F_{p}")


def _element_int(p: int, coeffs) -> int:
    return sum(int(c) * p**i for i, c in enumerate(coeffs))


def smallest_primitive(GF: type, p: int, m: int) -> tuple[int, ...]:
    units = p**m - 1
    for low in itertools.product(range(p), repeat=m):
        value = _element_int(p, low)
        if value == 0:
            continue
        if int(GF(value).multiplicative_order()) == units:
            return tuple(low)
    raise TowerInvariantError(f"No primitive element found in F_{p}^{m}")


def make_tower(
    p: int,
    m: int,
    k: int,
    modulus: tuple[int, ...] | list[int] | None = None,
) -> FieldTower:
    if p < 3 or not galois.is_prime(p):
        raise NotPrime(f"p = {p} must be an odd prime")
    if m < 2 or m % 2:
        raise MNotEven(f"m = {m} must be even")
    if not 1 <= k <= m - 1:
        raise InvalidTowerParameter(f"k = {k} must lie in [1, {m - 1}]")
    e = gcd(k, m)
    if (m // e) % 2 == 0:
        raise QuotientNotOdd(f"m/gcd(k,m) = {m // e} is even for (p,m,k)=({p},{m},{k})")
    if p**m > MAX_FIELD_ORDER:
        raise ScaleTooLarge(f"p^m = {p**m} exceeds the desk-scale cap {MAX_FIELD_ORDER}")

    GFp = galois.GF(p)
    if modulus is None:
        coeffs = smallest_irreducible(p, m)
    else:
        coeffs = tuple(int(c) % p for c in modulus)
        if len(coeffs) != m + 1 or coeffs[-1] != 1:
            raise ReducibleModulus(f"Modulus must be monic of degree {m}: {list(modulus)}")
        if not _modulus_poly(GFp, coeffs).is_irreducible():
            raise ReducibleModulus(f"Modulus {list(coeffs)} is reducible over F_{p}")

    poly = _modulus_poly(GFp, coeffs)
    provisional = galois.GF(p**m, irreducible_poly=poly)
    generator = smallest_primitive(provisional, p, m)
    GF = galois.GF(p**m, irreducible_poly=poly, primitive_element=_element_int(p, generator))

    tower = FieldTower(p=p, m=m, k=k, modulus=coeffs, generator=generator, GF=GF, GFp=GFp)
    if tower.e != 2 * tower.d:
        raise TowerInvariantError(f"e = {tower.e} is not 2d = {2 * tower.d}")
    if int(tower.g.multiplicative_order()) != tower.units:
        raise TowerInvariantError("Generator is not primitive")

    logger.info(
        "Tower %s: q=%d Q=%d r=%d e=%d d=%d modulus=%s",
        tower.label, tower.q, tower.Q, tower.r, tower.e, tower.d, list(coeffs),
    )
    return tower


# ── Representation ─────────────────────────────────────────────────────────

def element_ints(a) -> np.ndarray:
    return np.asarray(a.view(np.ndarray), dtype=np.int64)


def to_coords(tower: FieldTower, a) -> np.ndarray:
    """F_p coordinates (..., m), low degree first."""
    ints = element_ints(a)
    powers = tower.p ** np.arange(tower.m, dtype=np.int64)
    return (ints[..., None] // powers) % tower.p


def from_coords(tower: FieldTower, coords) -> "galois.FieldArray":
    coords = np.asarray(coords, dtype=np.int64) % tower.p
    powers = tower.p ** np.arange(tower.m, dtype=np.int64)
    return tower.GF(coords @ powers)


def to_coeffs(tower: FieldTower, a) -> list[int]:
    return [int(c) for c in to_coords(tower, a)]


def from_coeffs(tower: FieldTower, coeffs) -> "galois.FieldArray":
    return from_coords(tower, coeffs)


# ── Arithmetic ─────────────────────────────────────────────────────────────
# add, sub, mul and neg are the FieldArray operators; inv and power map
# galois' ZeroDivisionError onto the package error.

def inv(a):
    if np.any(element_ints(a) == 0):
        raise DivisionByZero("Inverse of 0")
    return a**-1


def power(a, n: int):
    if n < 0 and np.any(element_ints(a) == 0):
        raise DivisionByZero("Negative power of 0")
    return a**n


def frobenius(tower: FieldTower, a, i: int):
    return a ** (tower.p ** (i % tower.m))


def in_subfield(tower: FieldTower, a, s: int):
    if s <= 0 or tower.m % s:
        raise SNotDivisor(f"s = {s} does not divide m = {tower.m}")
    result = (a ** (tower.p**s)) == a
    return bool(result) if np.ndim(result) == 0 else result


def subfield_elements(tower: FieldTower, s: int, *, units_only: bool = False):
    """All elements of F_{p^s} ⊂ M ordered by generator exponent (0 first)."""
    if s <= 0 or tower.m % s:
        raise SNotDivisor(f"s = {s} does not divide m = {tower.m}")
    size = tower.p**s - 1
    units = tower.g_pow(np.arange(size, dtype=np.int64) * (tower.units // size))
    if units_only:
        return units
    return tower.GF(np.concatenate(([0], element_ints(units))))


# ── Discrete logs and power classes ────────────────────────────────────────

def dlog(tower: FieldTower, a) -> np.ndarray:
    """Exponents j with g^j = a; raises ZeroInput on 0."""
    if np.any(element_ints(a) == 0):
        raise ZeroInput("Discrete log of 0")
    # log() rejects 0-d arrays
    flat = np.atleast_1d(a)
    return np.asarray(flat.log(), dtype=np.int64).reshape(np.shape(a))


def is_kth_power(tower: FieldTower, a, t: int):
    if t < 1:
        raise ZeroInput(f"t = {t} must be positive")
    if np.any(element_ints(a) == 0):
        raise ZeroInput("Power-class test of 0")
    result = (a ** (tower.units // gcd(t, tower.units))) == tower.one()
    return bool(result) if np.ndim(result) == 0 else result


def power_fibers(units: int, logs: np.ndarray, t: int) -> tuple[np.ndarray, np.ndarray, int]:
    """
    Solve t·y ≡ L (mod units) for every L in ``logs``.

    Returns (solvable mask, particular solution, kernel step); the full fiber
    of a solvable L is {base + j·step : 0 ≤ j < gcd(t, units)}.
    """
    logs = np.mod(np.asarray(logs, dtype=np.int64), units)
    g = gcd(t, units)
    step = units // g
    solvable = logs % g == 0
    if step == 1:
        return solvable, np.zeros_like(logs), step
    t_inv = pow((t // g) % step, -1, step)
    base = ((logs // g) % step) * t_inv % step
    return solvable, base, step


def roots_of_power_equation(tower: FieldTower, c, t: int):
    """All x ∈ M with x^t = c, ordered by generator exponent."""
    if t < 1:
        raise ZeroInput(f"t = {t} must be positive")
    log_c = int(dlog(tower, c))
    solvable, base, step = power_fibers(tower.units, np.array([log_c]), t)
    if not solvable[0]:
        return tower.GF([])
    count = gcd(t, tower.units)
    exps = np.sort((int(base[0]) + step * np.arange(count, dtype=np.int64)) % tower.units)
    return tower.g_pow(exps)


def norm_to_half(tower: FieldTower, a):
    """Norm M → F_Q, a^{(p^m-1)/(Q-1)}."""
    return a ** (tower.units // (tower.Q - 1))


# ── Lemma checks ───────────────────────────────────────────────────────────

def gcd_lemma_check(i: int, m: int, p: int) -> tuple[int, int]:
    minus = gcd(p**i - 1, p**m - 1)
    plus = gcd(p**i + 1, p**m - 1)
    s = gcd(i, m)
    expected_minus = p**s - 1
    if (m // s) % 2 == 0:
        expected_plus = p**s + 1
    else:
        expected_plus = 2 if p > 2 else 1
    if (minus, plus) != (expected_minus, expected_plus):
        raise PropertyViolation(
            f"gcd identities fail at (i,m,p)=({i},{m},{p}): "
            f"got ({minus},{plus}), closed form ({expected_minus},{expected_plus})"
        )
    return minus, plus


def gcd_lemma_grid(max_m: int = 12, primes: tuple[int, ...] = (2, 3, 5, 7)) -> int:
    """Run gcd_lemma_check over 1 ≤ i ≤ m ≤ max_m; returns the number of cases."""
    checked = 0
    for p in primes:
        for m in range(1, max_m + 1):
            for i in range(1, m + 1):
                gcd_lemma_check(i, m, p)
                checked += 1
    logger.info("gcd identities hold on %d cases (m ≤ %d)", checked, max_m)
    return checked


def minus_one_is_q_minus_one_power(tower: FieldTower) -> bool:
    return is_kth_power(tower, -tower.one(), tower.q - 1)


def fixed_field_sizes(tower: FieldTower) -> dict[str, int]:
    """Number of fixed points of x ↦ x^q, x^{q²}, x^{r²} on M."""
    elements = tower.GF.elements
    return {
        "q": int(np.count_nonzero(elements**tower.q == elements)),
        "q2": int(np.count_nonzero(elements ** (tower.q**2) == elements)),
        "r2": int(np.count_nonzero(elements ** (tower.r**2) == elements)),
    }

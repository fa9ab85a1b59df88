import numpy as np
import pytest

from gkaut.core.fixtures import load_fixture
from gkaut.models.autotopism import VerifyPolicy
from gkaut.services.field_tower import make_tower
from gkaut.services.group_enumerator import enumerate_group
from gkaut.services.spread_set import build_spread_set


@pytest.fixture
def rng():
    return np.random.default_rng(0)


# ── Towers ─────────────────────────────────────────────────────────────────

@pytest.fixture(scope="session")
def tower3():
    return make_tower(3, 6, 2)


@pytest.fixture(scope="session")
def tower5():
    return make_tower(5, 6, 2)


# ── Parameters ─────────────────────────────────────────────────────────────

@pytest.fixture(scope="session")
def gk3():
    return load_fixture("gk-3-6-2")


@pytest.fixture(scope="session")
def gk5():
    return load_fixture("gk-5-6-2")


@pytest.fixture(scope="session")
def balanced():
    return load_fixture("gk-3-6-2-balanced")


# ── Spread sets ────────────────────────────────────────────────────────────

@pytest.fixture(scope="session")
def spread3(gk3):
    return build_spread_set(gk3)


@pytest.fixture(scope="session")
def spread5(gk5):
    return build_spread_set(gk5)


@pytest.fixture(scope="session")
def spread_balanced(balanced):
    return build_spread_set(balanced)


# ── Inventories ────────────────────────────────────────────────────────────

@pytest.fixture(scope="session")
def inventory3(gk3, spread3):
    return enumerate_group(gk3, VerifyPolicy.FULL, spread=spread3)


@pytest.fixture(scope="session")
def inventory_balanced(balanced, spread_balanced):
    return enumerate_group(balanced, VerifyPolicy.SAMPLED, samples=500, spread=spread_balanced)

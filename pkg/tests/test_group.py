import json

import numpy as np
import pytest

from gkaut.core.fixtures import load_fixture
from gkaut.models.autotopism import GroupInventory, VerifyPolicy
from gkaut.models.linmap import MapForm
from gkaut.services import autotopism_builder as builder
from gkaut.services.group_enumerator import (
    enumerate_group,
    export_inventory,
    inventory_report,
    inventory_violations,
    minimal_positive_index,
)
from gkaut.services.group_structure import (
    abelian_invariants,
    element_orders,
    invariant_factors_of_cyclic_product,
    structure_report,
    structure_violations,
)
from gkaut.services.spread_set import build_spread_set


# ── Abelian invariants ─────────────────────────────────────────────────────

@pytest.mark.parametrize(
    "orders, expected",
    [
        ([728, 8], [8, 728]),
        ([8, 728], [8, 728]),
        ([4, 6], [2, 12]),
        ([12, 18], [6, 36]),
        ([15624, 24], [24, 15624]),
        ([4], [4]),
        ([1, 5], [5]),
        ([1], []),
    ],
)
def test_invariants_of_cyclic_products(orders, expected):
    assert invariant_factors_of_cyclic_product(orders) == expected


@pytest.mark.parametrize(
    "orders, expected",
    [
        ([1, 2, 2, 2, 4, 4, 4, 4], [2, 4]),
        ([1, 6, 3, 2, 3, 6], [6]),
        ([1, 2, 2, 2], [2, 2]),
        ([1], []),
    ],
)
def test_abelian_invariants_from_element_orders(orders, expected):
    assert abelian_invariants(np.array(orders)) == expected


# ── Enumeration ────────────────────────────────────────────────────────────

def test_inventory_at_gk_3_6_2(inventory3):
    assert inventory3.order == 11_648
    assert inventory3.duplicates == 0
    assert inventory3.family_counts == {(0, MapForm.DIAGONAL): 5_824, (3, MapForm.DIAGONAL): 5_824}
    assert inventory3.policy == VerifyPolicy.FULL.value
    assert inventory3.checked.all() and inventory3.verified.all()
    assert minimal_positive_index(inventory3) == 3


def test_inventory_is_sorted_and_unique(inventory3):
    table = inventory3.elements.table
    assert len(np.unique(table, axis=0)) == len(table)
    assert np.array_equal(np.unique(table[:, :2], axis=0), [[0, 0], [3, 0]])


def test_inventory_report_records_findings(inventory3):
    report = inventory_report(inventory3)
    assert report.order == 11_648
    assert report.predicted.case == 2
    assert report.predicted.order == 69_888
    assert not report.matches_theorem
    assert report.findings
    assert report.failures == []
    assert inventory_violations(report) == []


def test_enumeration_does_not_depend_on_thread_count(gk3, spread3, inventory3):
    again = enumerate_group(gk3, VerifyPolicy.SAMPLED, samples=50, threads=4, spread=spread3)
    assert np.array_equal(again.elements.table, inventory3.elements.table)
    # sampled policy always covers the free-parameter-one elements
    assert int(again.checked.sum()) >= 2 * 8


def test_export_inventory(inventory3, tmp_path):
    path = tmp_path / "inventory.jsonl"
    lines = export_inventory(inventory3, path)
    assert lines == 11_648
    with path.open() as fh:
        first = json.loads(fh.readline())
    assert first["i"] == 0
    assert first["form"] == "diagonal"
    assert first["verified"] is True
    assert "X" not in first


def test_export_with_matrices(gk3, tmp_path):
    family, _ = builder.unique_sorted(
        builder.family_batch(gk3, builder.admissible_indices(gk3, MapForm.DIAGONAL)[0])
    )
    inventory = GroupInventory(
        params=gk3,
        elements=family.take(slice(0, 3)),
        admissible=[],
        duplicates=0,
        family_counts={},
        verified=np.zeros(3, dtype=bool),
        checked=np.zeros(3, dtype=bool),
        policy=VerifyPolicy.SAMPLED.value,
        seed=0,
    )
    path = tmp_path / "small.jsonl"
    export_inventory(inventory, path, matrices=True)
    rows = [json.loads(line) for line in path.read_text().splitlines()]
    assert len(rows) == 3
    assert len(rows[0]["X"]) == 12 and len(rows[0]["Y"][0]) == 12
    assert "verified" not in rows[0]


# ── Structure ──────────────────────────────────────────────────────────────

def test_element_orders_of_identity_and_frobenius_part(inventory3):
    orders = element_orders(inventory3.elements)
    assert orders[0] == 1
    # every order divides |G|
    assert np.all(11_648 % orders == 0)
    assert set(np.unique(orders[inventory3.elements.i == 3] % 2).tolist()) == {0}


@pytest.mark.slow
def test_structure_at_gk_3_6_2(inventory3, spread3):
    report = structure_report(inventory3, spread3, seed=0, samples=20_000, product_samples=2_000)
    assert not report.abelian
    assert report.noncommuting_witness is not None
    assert report.index_zero_order == 5_824
    assert report.index_zero_normal
    assert report.quotient_order == 2 and report.quotient_cyclic
    assert report.indices == [0, 3]
    assert report.indices_are_multiples_of_i0
    assert report.diagonal_index_zero_invariants == [2, 4, 728]
    assert report.theorem_invariants == [8, 728]
    assert not report.invariants_match_theorem
    assert report.semilinear_failures == 0
    assert report.nucleus_pairs_checked == 2 + 8
    assert report.nucleus_pairs_missing == 0
    assert report.solvable_chain == [11_648, 5_824, 5_824, 1]
    assert report.solvable
    assert sum(report.order_histogram.values()) == 11_648
    assert structure_violations(report) == []


@pytest.mark.slow
def test_structure_of_the_balanced_fixture(inventory_balanced, spread_balanced):
    assert inventory_balanced.order == 69_888
    assert len(inventory_balanced.family_counts) == 12
    assert inventory_violations(inventory_report(inventory_balanced)) == []

    report = structure_report(inventory_balanced, spread_balanced, seed=1, samples=20_000, product_samples=2_000)
    assert not report.abelian
    assert report.index_zero_order == 11_648
    assert report.diagonal_index_zero_order == 5_824
    assert report.quotient_order == 6 and report.quotient_cyclic
    assert report.i0 == 1
    assert report.indices == [0, 1, 2, 3, 4, 5]
    assert report.indices_are_multiples_of_i0
    assert report.solvable_chain == [69_888, 11_648, 5_824, 1]
    assert structure_violations(report) == []


@pytest.mark.longrun
def test_inventory_at_gk_5_6_2():
    params = load_fixture("gk-5-6-2")
    spread = build_spread_set(params)
    inventory = enumerate_group(params, spread=spread, threads=4)
    assert inventory.policy == VerifyPolicy.SAMPLED.value
    assert inventory.order == 749_952
    report = inventory_report(inventory)
    assert report.predicted.order == 374_976
    assert inventory_violations(report) == []

    structure = structure_report(inventory, spread, threads=4)
    assert structure.diagonal_index_zero_invariants == [2, 12, 15_624]
    assert structure.theorem_invariants == [24, 15_624]
    assert not structure.abelian
    assert structure_violations(structure) == []

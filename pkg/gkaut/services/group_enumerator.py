"""
Enumerate the monomial autotopism group and verify it against the spread set.

Usage:
    inv = enumerate_group(params, VerifyPolicy.FULL, spread=C, threads=4)
    report = inventory_report(inv)

Elements are merged sorted by (i, form, canonical scalar key); every family
is sorted on its own and families are concatenated in (i, form) order, so
the inventory is identical whatever the thread count.
"""

import logging
from pathlib import Path

import numpy as np

from gkaut.core.config import VERIFY_FULL_MAX_FIELD_ORDER, VERIFY_SAMPLE_SIZE
from gkaut.models.autotopism import FORM_CODES, FORMS_BY_CODE, GroupInventory, VerifyPolicy
from gkaut.models.linmap import MapForm
from gkaut.models.semifield import GKParams, SpreadSet
from gkaut.schemas.autotopism import (
    AdmissibleIndexSchema,
    AutotopismLine,
    FamilyCount,
    InventoryReport,
    TheoremPrediction,
)
from gkaut.services import autotopism_builder as builder
from gkaut.services.autotopism_verifier import pair_matrices, verify_batch
from gkaut.services.parallel import chunk_ranges
from gkaut.services.semifield import theorem_prediction
from gkaut.services.spread_set import build_spread_set

logger = logging.getLogger(__name__)


def default_policy(params: GKParams) -> VerifyPolicy:
    if params.tower.order <= VERIFY_FULL_MAX_FIELD_ORDER:
        return VerifyPolicy.FULL
    return VerifyPolicy.SAMPLED


def _sample_mask(family, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Random elements plus every element whose free parameter (d_2 or c_2) is 1."""
    mask = family.y2 == 0
    if samples >= len(family):
        mask[:] = True
    else:
        mask[rng.choice(len(family), size=samples, replace=False)] = True
    return mask


def enumerate_group(
    params: GKParams,
    policy: VerifyPolicy | None = None,
    *,
    seed: int = 0,
    samples: int = VERIFY_SAMPLE_SIZE,
    threads: int = 1,
    spread: SpreadSet | None = None,
    verify: bool = True,
) -> GroupInventory:
    policy = policy or default_policy(params)
    C = spread or build_spread_set(params)
    rng = np.random.default_rng(seed)
    expected = builder.family_size(params)

    admissible = [
        adm for form in MapForm for adm in builder.admissible_indices(params, form)
    ]
    admissible.sort(key=lambda a: (a.i, FORM_CODES[a.form]))

    families, counts, checked, verified = [], {}, [], []
    overcount = {}
    for adm in admissible:
        raw = builder.family_batch(params, adm)
        family, dup = builder.unique_sorted(raw)
        overcount[(adm.i, adm.form)] = dup
        counts[(adm.i, adm.form)] = len(family)
        if len(family) != expected:
            logger.warning(
                "Family i=%d %s has %d elements, expected %d",
                adm.i, adm.form.value, len(family), expected,
            )
        if policy == VerifyPolicy.FULL:
            mask = np.ones(len(family), dtype=bool)
        else:
            mask = _sample_mask(family, samples, rng)
        ok = np.zeros(len(family), dtype=bool)
        if verify:
            ok[mask] = verify_batch(C, family.take(mask), threads=threads)
        else:
            mask[:] = False
        logger.info(
            "Family i=%d %s: %d elements, verified %d/%d",
            adm.i, adm.form.value, len(family), int(ok.sum()), int(mask.sum()),
        )
        families.append(family)
        checked.append(mask)
        verified.append(ok)

    elements = builder.concat(families, params)
    merged, duplicates = builder.unique_sorted(elements)
    inventory = GroupInventory(
        params=params,
        elements=merged if duplicates else elements,
        admissible=admissible,
        duplicates=duplicates,
        family_counts=counts,
        verified=np.concatenate(verified) if verified else np.zeros(0, dtype=bool),
        checked=np.concatenate(checked) if checked else np.zeros(0, dtype=bool),
        policy=policy.value,
        seed=seed,
        extra={"parameter_overcount": overcount},
    )
    if duplicates:
        # families overlap: per-element flags no longer line up with the merged rows
        inventory.verified = np.zeros(len(merged), dtype=bool)
        inventory.checked = np.zeros(len(merged), dtype=bool)
        logger.warning("%d elements appear in more than one family", duplicates)
    logger.info(
        "Enumerated %d autotopisms for %s (%s verification)",
        inventory.order, params.label or params.tower.label, policy.value,
    )
    return inventory


def minimal_positive_index(inv: GroupInventory) -> int | None:
    positive = sorted({a.i for a in inv.admissible if a.i > 0 and a.form == MapForm.DIAGONAL})
    return positive[0] if positive else None


def inventory_report(inv: GroupInventory) -> InventoryReport:
    params = inv.params
    expected = builder.family_size(params)
    prediction = theorem_prediction(params)
    failed_rows = inv.elements.table[inv.checked & ~inv.verified][:100]

    findings = []
    if inv.order != prediction["order"]:
        findings.append(
            f"enumerated order {inv.order} differs from the closed-form order {prediction['order']} "
            f"(case {prediction['case']})"
        )
    i0 = minimal_positive_index(inv)
    if prediction["index"] is not None and i0 != prediction["index"]:
        findings.append(f"minimal positive admissible index {i0} differs from the closed-form index {prediction['index']}")
    for finding in findings:
        logger.warning("Finding: %s", finding)
    for form in MapForm:
        indices = [a.i for a in inv.admissible if a.form == form]
        findings.append(f"admissible {form.value} indices: {indices}")

    return InventoryReport(
        order=inv.order,
        admissible=[AdmissibleIndexSchema.from_model(a) for a in inv.admissible],
        families=[
            FamilyCount(
                i=i, form=form, count=count, expected=expected,
                parameter_overcount=inv.extra["parameter_overcount"].get((i, form), 0),
            )
            for (i, form), count in inv.family_counts.items()
        ],
        duplicates=inv.duplicates,
        policy=VerifyPolicy(inv.policy),
        checked=int(inv.checked.sum()),
        verified=int(inv.verified.sum()),
        failures=failed_rows.tolist(),
        i0=i0,
        predicted=TheoremPrediction(**prediction),
        matches_theorem=inv.order == prediction["order"],
        findings=findings,
    )


def inventory_violations(report: InventoryReport) -> list[str]:
    """Invariant violations that make the command exit 1."""
    violations = []
    if report.failures or report.verified != report.checked:
        violations.append(f"{report.checked - report.verified} elements failed verification")
    if report.duplicates:
        violations.append(f"{report.duplicates} duplicate elements across families")
    for family in report.families:
        if family.count != family.expected:
            violations.append(f"family i={family.i} {family.form.value} has {family.count} elements, expected {family.expected}")
    return violations


def export_inventory(inv: GroupInventory, path: Path, *, matrices: bool = False) -> int:
    """Write the inventory as JSON lines, one element per line; returns the line count."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table = inv.elements.table
    with path.open("w") as fh:
        for lo, hi in chunk_ranges(len(table)):
            block = inv.elements.take(slice(lo, hi))
            X = Y = None
            if matrices:
                X, Y = pair_matrices(block)
            for j, row in enumerate(table[lo:hi]):
                line = AutotopismLine(
                    i=int(row[0]),
                    form=FORMS_BY_CODE[int(row[1])],
                    x_logs=[int(row[2]), int(row[3])],
                    y_logs=[int(row[4]), int(row[5])],
                    verified=bool(inv.verified[lo + j]) if inv.checked[lo + j] else None,
                    X=X[j].tolist() if matrices else None,
                    Y=Y[j].tolist() if matrices else None,
                )
                fh.write(line.model_dump_json(exclude_none=True) + "\n")
    logger.info("Wrote %d inventory lines to %s", len(table), path)
    return len(table)

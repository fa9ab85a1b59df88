from pydantic import BaseModel

from gkaut.models.autotopism import AdmissibleIndex, VerifyPolicy
from gkaut.models.linmap import MapForm


# ── Admissibility ──────────────────────────────────────────────────────────

class AdmissibleIndexSchema(BaseModel):
    i: int
    form: MapForm
    alpha_log: int
    delta_log: int

    @classmethod
    def from_model(cls, adm: AdmissibleIndex) -> "AdmissibleIndexSchema":
        return cls(i=adm.i, form=adm.form, alpha_log=adm.alpha, delta_log=adm.delta)


class DeltaObstruction(BaseModel):
    i: int
    form: MapForm
    alpha_condition: bool
    delta_condition: bool
    closed_form_delta_condition: bool


class TheoremPrediction(BaseModel):
    case: int
    index: int | None = None
    order: int


# ── Inventory ──────────────────────────────────────────────────────────────

class FamilyCount(BaseModel):
    i: int
    form: MapForm
    count: int
    expected: int
    parameter_overcount: int


class InventoryReport(BaseModel):
    order: int
    admissible: list[AdmissibleIndexSchema]
    families: list[FamilyCount]
    duplicates: int
    policy: VerifyPolicy
    checked: int
    verified: int
    # keys (i, form, log a_1, log d_1, log y_1, log y_2) of failed elements, at most 100
    failures: list[list[int]]
    i0: int | None = None
    predicted: TheoremPrediction
    matches_theorem: bool
    findings: list[str] = []


class AutotopismLine(BaseModel):
    """One inventory element per JSON line."""

    i: int
    form: MapForm
    x_logs: list[int]
    y_logs: list[int]
    verified: bool | None = None
    X: list[list[int]] | None = None
    Y: list[list[int]] | None = None


class SingleVerification(BaseModel):
    i: int
    form: MapForm
    x_logs: list[int]
    y_logs: list[int]
    members_ok: list[bool]
    witness_invertible: bool
    ok: bool
    expected: bool


# ── Structure ──────────────────────────────────────────────────────────────

class AxiomCheck(BaseModel):
    identity_present: bool
    inverses_checked: int
    inverses_missing: int
    products_checked: int
    products_missing: int
    products_verified: int
    products_failed: int


class StructureReport(BaseModel):
    order: int
    abelian: bool
    commutation_pairs_checked: int
    noncommuting_witness: list[list[int]] | None = None
    order_histogram: dict[int, int]
    axioms: AxiomCheck
    index_zero_order: int
    index_zero_normal: bool
    quotient_order: int
    quotient_cyclic: bool
    i0: int | None = None
    indices: list[int]
    indices_are_multiples_of_i0: bool
    diagonal_index_zero_order: int
    diagonal_index_zero_invariants: list[int]
    theorem_invariants: list[int]
    invariants_match_theorem: bool
    semilinear_checked: int
    semilinear_failures: int
    nucleus_pairs_checked: int
    nucleus_pairs_missing: int
    solvable_chain: list[int]
    solvable: bool
    findings: list[str] = []


# ── Oracle ─────────────────────────────────────────────────────────────────

class OracleReport(BaseModel):
    i: int
    form: MapForm
    candidates: int
    equation_survivors: int
    verified: int
    constructed: int
    set_equal: bool
    missing: int
    extra: int
    admissible: bool

from typing import Any

from pydantic import BaseModel

from gkaut.models.semifield import S3Policy
from gkaut.schemas.tower import ParamsSummary


# ── Axiom (S3) ─────────────────────────────────────────────────────────────

class SingularMember(BaseModel):
    # F_p coordinates of u and v, low degree first
    u: list[int]
    v: list[int]


class S3Report(BaseModel):
    policy: S3Policy
    members_total: int
    checked: int
    singular_count: int
    singular: list[SingularMember]
    seed: int | None = None
    wall_time_s: float | None = None


# ── Multiplication variants ────────────────────────────────────────────────

class VariantReport(BaseModel):
    samples: int
    seed: int
    # variant -> {commutativity_failures, singular_members, checked}
    variants: dict[str, dict[str, int]]
    authoritative: str


# ── Kaplansky ──────────────────────────────────────────────────────────────

class KaplanskyReport(BaseModel):
    e: list[int]
    identity: list[int]
    samples: int
    left_identity_failures: int
    right_identity_failures: int
    bilinearity_failures: int
    expected_identity_matches: bool


# ── Lemma suites ───────────────────────────────────────────────────────────

class LemmaReport(BaseModel):
    gcd_cases: int
    minus_one_is_q_minus_one_power: bool
    fixed_field_sizes: dict[str, int]
    expected_fixed_field_size: int
    # generator exponents of the units whose binomial map is singular
    q_binomial_failures: list[int]
    r_binomial_failures: list[int]

    @property
    def ok(self) -> bool:
        sizes_ok = all(v == self.expected_fixed_field_size for v in self.fixed_field_sizes.values())
        return (
            sizes_ok
            and not self.minus_one_is_q_minus_one_power
            and not self.q_binomial_failures
            and not self.r_binomial_failures
        )


# ── Export ─────────────────────────────────────────────────────────────────

class SpreadSetExport(BaseModel):
    schema_version: int
    params: ParamsSummary
    variant: str
    n: int
    p: int
    dimension: int
    # R_{t^j,0} then R_{0,t^j}, each n×n row-major
    basis: list[list[list[int]]]
    meta: dict[str, Any] = {}

"""
Autotopism domain types.

Every autotopism found here is monomial: X = diag(a_1 x^σ, d_1 x^σ) and Y is
diag(a_2 x^σ, d_2 x^σ) or antidiag(b_2 x^σ, c_2 x^σ), σ = p^i. Stored pairs
satisfy X ∘ R_{u,v} = R_{w,t} ∘ Y, so (X, Y^{-1}) maps C onto itself by
c ↦ X c Y^{-1}. Stored pairs compose componentwise.

Scalars are kept as discrete logs to the tower generator: composition,
inversion and element orders are then integer arithmetic mod p^m - 1.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from gkaut.models.linmap import MapForm
from gkaut.models.semifield import GKParams

FORM_CODES = {MapForm.DIAGONAL: 0, MapForm.ANTIDIAGONAL: 1}
FORMS_BY_CODE = {code: form for form, code in FORM_CODES.items()}


# ═══════════════════════════════════════════════════════════════════════════
# Enums
# ═══════════════════════════════════════════════════════════════════════════

class VerifyPolicy(str, enum.Enum):
    FULL = "full"
    # N random elements per (i, form) family plus every element with free parameter 1
    SAMPLED = "sampled"


# ═══════════════════════════════════════════════════════════════════════════
# Autotopisms
# ═══════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True, eq=False)
class Verification:
    """Outcome of checking X·c_j·Y ∈ C on the 2m basis members."""

    ok: bool
    members_ok: np.ndarray  # (2m,) bool
    witness: np.ndarray  # (2m, 2m) coordinates of X·c_j·Y
    witness_invertible: bool


@dataclass(frozen=True)
class AdmissibleIndex:
    i: int
    form: MapForm
    alpha: int  # generator exponents
    delta: int


@dataclass(frozen=True)
class Construction:
    """Parameters an element was built from, as generator exponents."""

    free: int  # d_2 or c_2
    gamma: int
    eps: int
    alpha: int
    delta: int


@dataclass(frozen=True)
class Autotopism:
    params: GKParams
    i: int
    form: MapForm
    x_logs: tuple[int, int]  # a_1, d_1
    y_logs: tuple[int, int]  # (a_2, d_2) diagonal, (b_2, c_2) antidiagonal
    construction: Construction | None = None
    verified: bool = False

    @property
    def key(self) -> tuple[int, ...]:
        return (self.i, FORM_CODES[self.form], *self.x_logs, *self.y_logs)


@dataclass(frozen=True, eq=False)
class MonomialBatch:
    """Column store of many autotopisms over the same parameters."""

    params: GKParams
    i: np.ndarray
    form: np.ndarray  # 0 diagonal, 1 antidiagonal
    x1: np.ndarray
    x2: np.ndarray
    y1: np.ndarray
    y2: np.ndarray

    def __len__(self) -> int:
        return int(self.i.shape[0])

    @property
    def table(self) -> np.ndarray:
        return np.stack([self.i, self.form, self.x1, self.x2, self.y1, self.y2], axis=1)

    def take(self, index) -> "MonomialBatch":
        return MonomialBatch(
            self.params, self.i[index], self.form[index],
            self.x1[index], self.x2[index], self.y1[index], self.y2[index],
        )


@dataclass(eq=False)
class GroupInventory:
    params: GKParams
    elements: MonomialBatch
    admissible: list[AdmissibleIndex]
    duplicates: int
    family_counts: dict[tuple[int, MapForm], int]
    verified: np.ndarray  # bool mask over elements: True where checked and passed
    checked: np.ndarray  # bool mask: True where a check ran
    policy: str
    seed: int
    extra: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.elements)

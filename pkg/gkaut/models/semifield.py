import enum
from dataclasses import dataclass, field

import numpy as np

from gkaut.models.tower import FieldTower


# ═══════════════════════════════════════════════════════════════════════════
# Enums
# ═══════════════════════════════════════════════════════════════════════════

class Variant(str, enum.Enum):
    # second coordinate x^r v + A x v^r + A y^r u + y u^r (commutative)
    SPREAD = "spread"
    # second coordinate x^r v + y u^r + A (y v^r + y^r u)
    PRINTED = "printed"


class S3Policy(str, enum.Enum):
    FULL = "full"
    SAMPLED = "sampled"


# ═══════════════════════════════════════════════════════════════════════════
# Presemifields
# ═══════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class GKParams:
    tower: FieldTower
    A: int  # galois integer representation
    B: int
    label: str = ""

    @property
    def A_elem(self):
        return self.tower.GF(self.A)

    @property
    def B_elem(self):
        return self.tower.GF(self.B)

    @property
    def c_elem(self):
        """AB ∈ F_Q^×."""
        return self.A_elem * self.B_elem


@dataclass(frozen=True, eq=False)
class Presemifield:
    """Bilinear multiplication on F_p^n: x∘y = Σ_i x_i · structure[i] · y."""

    p: int
    n: int
    structure: np.ndarray  # (n, n, n), structure[i] = left multiplication by e_i
    label: str
    identity: np.ndarray | None = None


@dataclass(frozen=True, eq=False)
class SpreadSet:
    params: GKParams
    variant: Variant
    basis: np.ndarray  # (2m, n, n): R_{t^j,0} then R_{0,t^j}
    flat: np.ndarray  # (2m, n²)
    pivots: tuple[int, ...]
    pivot_inverse: np.ndarray  # (2m, 2m)
    annihilator: np.ndarray = field(repr=False)  # rows z with flat @ z = 0

    @property
    def p(self) -> int:
        return self.params.tower.p

    @property
    def n(self) -> int:
        return self.params.tower.n

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

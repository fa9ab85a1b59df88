import enum
from dataclasses import dataclass

import numpy as np

from gkaut.models.tower import FieldTower


# ═══════════════════════════════════════════════════════════════════════════
# Enums
# ═══════════════════════════════════════════════════════════════════════════

class MapForm(str, enum.Enum):
    DIAGONAL = "diagonal"
    ANTIDIAGONAL = "antidiagonal"


# ═══════════════════════════════════════════════════════════════════════════
# Maps
# ═══════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class LinPoly:
    """x ↦ Σ a_i x^{p^i}; coefficients stored as galois integer representations."""

    tower: FieldTower
    coeffs: tuple[int, ...]

    @property
    def values(self):
        return self.tower.GF(np.array(self.coeffs, dtype=np.int64))

    @property
    def support(self) -> list[int]:
        return [i for i, a in enumerate(self.coeffs) if a]

    def is_zero(self) -> bool:
        return not any(self.coeffs)


@dataclass(frozen=True)
class SemilinearPair:
    """(x, y) ↦ (f1(x) + f2(y), f3(x) + f4(y))."""

    f1: LinPoly
    f2: LinPoly
    f3: LinPoly
    f4: LinPoly
    tag: tuple[int, MapForm] | None = None

    @property
    def tower(self) -> FieldTower:
        return self.f1.tower

    @property
    def entries(self) -> tuple[LinPoly, LinPoly, LinPoly, LinPoly]:
        return self.f1, self.f2, self.f3, self.f4

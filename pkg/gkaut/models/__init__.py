from gkaut.models.autotopism import (
    AdmissibleIndex, Autotopism, Construction, GroupInventory, MonomialBatch,
    Verification, VerifyPolicy,
)
from gkaut.models.linmap import LinPoly, MapForm, SemilinearPair
from gkaut.models.semifield import GKParams, Presemifield, S3Policy, SpreadSet, Variant
from gkaut.models.tower import FieldTower

__all__ = [
    "AdmissibleIndex", "Autotopism", "Construction", "FieldTower", "GKParams",
    "GroupInventory", "LinPoly", "MapForm", "MonomialBatch", "Presemifield",
    "S3Policy", "SemilinearPair", "SpreadSet", "Variant", "Verification", "VerifyPolicy",
]

from pydantic import BaseModel, ConfigDict, field_validator

from gkaut.models.semifield import GKParams
from gkaut.models.tower import FieldTower
from gkaut.services.field_tower import dlog, to_coeffs


class TowerSchema(BaseModel):
    p: int
    m: int
    k: int
    modulus: list[int]
    generator: list[int]
    q: int
    Q: int
    r: int
    e: int
    d: int

    @classmethod
    def from_tower(cls, tower: FieldTower) -> "TowerSchema":
        return cls(
            p=tower.p, m=tower.m, k=tower.k,
            modulus=list(tower.modulus), generator=list(tower.generator),
            q=tower.q, Q=tower.Q, r=tower.r, e=tower.e, d=tower.d,
        )


class ParamsSummary(BaseModel):
    label: str
    tower: TowerSchema
    # generator exponents
    A_log: int
    B_log: int
    c_log: int
    # base-p coefficient arrays, low degree first
    A: list[int]
    B: list[int]

    @classmethod
    def from_params(cls, params: GKParams) -> "ParamsSummary":
        tower = params.tower
        return cls(
            label=params.label,
            tower=TowerSchema.from_tower(tower),
            A_log=int(dlog(tower, params.A_elem)),
            B_log=int(dlog(tower, params.B_elem)),
            c_log=int(dlog(tower, params.c_elem)),
            A=to_coeffs(tower, params.A_elem),
            B=to_coeffs(tower, params.B_elem),
        )


class ParamsFile(BaseModel):
    """Input parameter file; A and B as generator exponents, A may be 'auto' or 'balanced'."""

    model_config = ConfigDict(extra="forbid")

    p: int
    m: int
    k: int
    B: int = 1
    A: int | str = "auto"
    modulus: list[int] | None = None
    label: str = ""

    @field_validator("A")
    @classmethod
    def check_a_spec(cls, v: int | str) -> int | str:
        if isinstance(v, str) and v not in ("auto", "balanced"):
            raise ValueError("A must be a generator exponent, 'auto' or 'balanced'")
        return v

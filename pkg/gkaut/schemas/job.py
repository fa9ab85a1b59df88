from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

from gkaut.core.config import REPORT_SCHEMA
from gkaut.schemas.autotopism import (
    AdmissibleIndexSchema,
    DeltaObstruction,
    InventoryReport,
    OracleReport,
    SingleVerification,
    StructureReport,
    TheoremPrediction,
)
from gkaut.schemas.nucleus import NucleusReport
from gkaut.schemas.semifield import KaplanskyReport, LemmaReport, S3Report, VariantReport
from gkaut.schemas.tower import ParamsFile, ParamsSummary


# ── Job ────────────────────────────────────────────────────────────────────

class JobConfig(BaseModel):
    command: str
    subcommand: str | None = None
    fixture: str | None = None
    params_file: Path | None = None
    p: int | None = None
    m: int | None = None
    k: int | None = None
    B: int | None = None
    A: int | str = "auto"
    seed: int = 0
    threads: int = 1
    out: Path | None = None
    timings: bool = False
    s3_policy: str | None = None
    verify_policy: str | None = None
    samples: int | None = None


# ── Reports ────────────────────────────────────────────────────────────────

class ReportBase(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_: int = Field(default=REPORT_SCHEMA, alias="schema")
    command: str
    params: ParamsSummary | None = None
    seed: int | None = None
    ok: bool = True
    violations: list[str] = []
    wall_time_s: float | None = None


class ValidateReport(ReportBase):
    case: int
    theorem: TheoremPrediction
    admissible: list[AdmissibleIndexSchema]
    delta: list[DeltaObstruction]


class CheckReport(ReportBase):
    s3: S3Report
    commutativity_failures: int
    variants: VariantReport
    kaplansky: KaplanskyReport
    lemmas: LemmaReport | None = None


class NucleiReport(ReportBase):
    right: NucleusReport
    middle: NucleusReport
    right_in_middle: bool
    sandwich: bool


class EnumerateReport(ReportBase):
    inventory: InventoryReport
    export_path: str | None = None


class VerifyReport(ReportBase):
    verification: SingleVerification


class StructureCommandReport(ReportBase):
    inventory: InventoryReport
    structure: StructureReport


class OracleCommandReport(ReportBase):
    oracle: list[OracleReport]


class ExportReport(ReportBase):
    path: str
    dimension: int


class FixturesReport(ReportBase):
    fixtures: dict[str, ParamsFile]


def dump_report(report: ReportBase) -> str:
    return report.model_dump_json(indent=2, by_alias=True, exclude_none=True)

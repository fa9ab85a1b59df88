import argparse
import logging
from pathlib import Path

from gkaut.api.commands.common import (
    Timer, add_params_arguments, add_run_arguments, finish, resolve_params,
)
from gkaut.core.config import REPORT_SCHEMA, settings
from gkaut.models.semifield import Variant
from gkaut.schemas.job import ExportReport, JobConfig
from gkaut.schemas.semifield import SpreadSetExport
from gkaut.schemas.tower import ParamsSummary
from gkaut.services.spread_set import build_spread_set

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("export", help="write the spread-set basis as JSON")
    add_params_arguments(parser)
    add_run_arguments(parser)
    parser.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.SPREAD.value)
    parser.add_argument("--spread-out", dest="spread_out", type=Path, help="spread-set file (default: $GKAUT_OUTPUT_DIR/spread-<label>.json)")
    parser.set_defaults(handler=run)


def run(cfg: JobConfig, args: argparse.Namespace) -> ExportReport:
    timer = Timer()
    params = resolve_params(cfg)
    spread = build_spread_set(params, Variant(args.variant))
    summary = ParamsSummary.from_params(params)
    export = SpreadSetExport(
        schema_version=REPORT_SCHEMA,
        params=summary,
        variant=spread.variant.value,
        n=spread.n,
        p=spread.p,
        dimension=spread.dimension,
        basis=spread.basis.tolist(),
    )
    path = args.spread_out or settings.OUTPUT_DIR / f"spread-{params.label}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(export.model_dump_json(indent=2) + "\n")
    logger.info("Spread set (%d basis matrices) written to %s", spread.dimension, path)

    report = ExportReport(
        command="export",
        params=summary,
        path=str(path),
        dimension=spread.dimension,
        wall_time_s=timer.elapsed(cfg),
    )
    violations = [] if spread.dimension == 2 * params.tower.m else ["spread set has the wrong dimension"]
    return finish(report, violations)

import argparse
import logging

from gkaut.api.commands.common import (
    Timer, add_params_arguments, add_run_arguments, finish, resolve_params,
)
from gkaut.models.linmap import MapForm
from gkaut.schemas.autotopism import AdmissibleIndexSchema, DeltaObstruction, TheoremPrediction
from gkaut.schemas.job import JobConfig, ValidateReport
from gkaut.schemas.tower import ParamsSummary
from gkaut.services.autotopism_builder import admissible_indices, delta_obstruction
from gkaut.services.semifield import theorem_prediction

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("validate", help="validate parameters and print derived constants")
    add_params_arguments(parser)
    add_run_arguments(parser)
    parser.set_defaults(handler=run)


def run(cfg: JobConfig, args: argparse.Namespace) -> ValidateReport:
    timer = Timer()
    params = resolve_params(cfg)
    prediction = theorem_prediction(params)
    logger.info("Parameters %s valid, case %d", params.label, prediction["case"])
    admissible = [a for form in MapForm for a in admissible_indices(params, form)]
    delta = [
        DeltaObstruction(**delta_obstruction(params, form, i))
        for form in MapForm
        for i in range(params.tower.m)
    ]
    report = ValidateReport(
        command="validate",
        params=ParamsSummary.from_params(params),
        case=prediction["case"],
        theorem=TheoremPrediction(**prediction),
        admissible=[AdmissibleIndexSchema.from_model(a) for a in admissible],
        delta=delta,
        wall_time_s=timer.elapsed(cfg),
    )
    return finish(report, [])

import argparse

from gkaut.api.commands.common import (
    Timer, add_params_arguments, add_run_arguments, finish, resolve_params,
)
from gkaut.schemas.job import JobConfig, NucleiReport
from gkaut.schemas.tower import ParamsSummary
from gkaut.services import nuclei
from gkaut.services.spread_set import build_spread_set


def register(subparsers) -> None:
    parser = subparsers.add_parser("nuclei", help="right and middle nuclei by linear algebra")
    add_params_arguments(parser)
    add_run_arguments(parser)
    parser.set_defaults(handler=run)


def run(cfg: JobConfig, args: argparse.Namespace) -> NucleiReport:
    timer = Timer()
    params = resolve_params(cfg)
    spread = build_spread_set(params)
    right = nuclei.right_nucleus(spread)
    middle = nuclei.middle_nucleus(spread)
    contained = nuclei.right_in_middle(spread)
    sandwich = nuclei.sandwich_holds(spread, right, middle)

    violations = []
    for side in (right, middle):
        if not side.is_field:
            violations.append(f"{side.side} nucleus fails the field checks")
        if not side.match:
            violations.append(f"{side.side} nucleus differs from {side.predicted_form}")
    if not sandwich:
        violations.append("nucleus generators do not act on the spread set")

    report = NucleiReport(
        command="nuclei",
        params=ParamsSummary.from_params(params),
        right=right,
        middle=middle,
        right_in_middle=contained,
        sandwich=sandwich,
        wall_time_s=timer.elapsed(cfg),
    )
    return finish(report, violations)

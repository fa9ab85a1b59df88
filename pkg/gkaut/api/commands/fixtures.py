import argparse

from gkaut.api.commands.common import Timer, add_run_arguments, finish
from gkaut.core.fixtures import FIXTURES
from gkaut.schemas.job import FixturesReport, JobConfig


def register(subparsers) -> None:
    parser = subparsers.add_parser("fixtures", help="list the shipped parameter sets")
    add_run_arguments(parser)
    parser.set_defaults(handler=run)


def run(cfg: JobConfig, args: argparse.Namespace) -> FixturesReport:
    timer = Timer()
    report = FixturesReport(command="fixtures", fixtures=dict(FIXTURES), wall_time_s=timer.elapsed(cfg))
    return finish(report, [])

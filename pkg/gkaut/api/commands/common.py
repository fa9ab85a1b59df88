"""
Shared argument groups and report plumbing for the subcommands.

Every command module exposes ``register(subparsers)`` and a handler that
takes a ``JobConfig`` plus the parsed namespace and returns a report; the
entry point turns ``report.ok`` into the exit code.
"""

import argparse
import logging
import re
import time
from pathlib import Path

from gkaut.core.config import DEFAULT_SEED, DEFAULT_THREADS, settings
from gkaut.core.errors import ParamsError
from gkaut.core.fixtures import FIXTURES, load_fixture, load_params_file, params_from_file_model
from gkaut.models.semifield import GKParams
from gkaut.schemas.job import JobConfig, ReportBase, dump_report
from gkaut.schemas.tower import ParamsFile

logger = logging.getLogger(__name__)

_EXPONENT = re.compile(r"^(?:g\^)?(-?\d+)$")


def parse_exponent(value: str) -> int:
    """'g^5' or '5' -> 5."""
    match = _EXPONENT.match(value.strip())
    if not match:
        raise argparse.ArgumentTypeError(f"expected g^j or an integer, got '{value}'")
    return int(match.group(1))


def parse_a_spec(value: str) -> int | str:
    if value in ("auto", "balanced"):
        return value
    return parse_exponent(value)


# ── Argument groups ────────────────────────────────────────────────────────

def add_params_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("parameters")
    group.add_argument("--fixture", choices=sorted(FIXTURES), help="shipped parameter set")
    group.add_argument("--params", dest="params_file", type=Path, help="JSON parameter file")
    group.add_argument("--p", type=int)
    group.add_argument("--m", type=int)
    group.add_argument("--k", type=int)
    group.add_argument("--B", type=parse_exponent, help="B as g^j (default g^1)")
    group.add_argument("--A", type=parse_a_spec, default="auto", help="auto | balanced | g^j")


def add_run_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("run")
    group.add_argument("--seed", type=int, default=DEFAULT_SEED)
    group.add_argument("--threads", type=int, default=DEFAULT_THREADS)
    group.add_argument("--out", type=Path, help="report path (default: $GKAUT_OUTPUT_DIR/<command>-<label>.json)")
    group.add_argument("--timings", action="store_true", help="include wall time in the report")
    group.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING")


def job_config(args: argparse.Namespace) -> JobConfig:
    fields = JobConfig.model_fields
    values = {name: getattr(args, name) for name in fields if getattr(args, name, None) is not None}
    values["command"] = args.command
    values["subcommand"] = getattr(args, "subcommand", None)
    return JobConfig(**values)


# ── Parameters ─────────────────────────────────────────────────────────────

def resolve_params(cfg: JobConfig) -> GKParams:
    if cfg.fixture:
        return load_fixture(cfg.fixture)
    if cfg.params_file:
        return load_params_file(cfg.params_file)
    if cfg.p is None or cfg.m is None or cfg.k is None:
        raise ParamsError("Give --fixture, --params FILE or all of --p --m --k")
    spec = ParamsFile(p=cfg.p, m=cfg.m, k=cfg.k, B=1 if cfg.B is None else cfg.B, A=cfg.A)
    return params_from_file_model(spec)


# ── Reports ────────────────────────────────────────────────────────────────

class Timer:
    def __init__(self) -> None:
        self.started = time.perf_counter()

    def elapsed(self, cfg: JobConfig) -> float | None:
        return round(time.perf_counter() - self.started, 3) if cfg.timings else None


def finish(report: ReportBase, violations: list[str]) -> ReportBase:
    report.violations = violations
    report.ok = not violations
    for violation in violations:
        logger.error("Violation: %s", violation)
    return report


def write_report(report: ReportBase, cfg: JobConfig, label: str) -> Path:
    name = cfg.command if not cfg.subcommand else f"{cfg.command}-{cfg.subcommand}"
    path = cfg.out or settings.OUTPUT_DIR / f"{name}-{label}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    text = dump_report(report)
    path.write_text(text + "\n")
    print(text)
    logger.info("Report written to %s", path)
    return path

import argparse
import logging

from gkaut.api.commands.common import (
    Timer, add_params_arguments, add_run_arguments, finish, resolve_params,
)
from gkaut.core.config import S3_DEFAULT_SAMPLES
from gkaut.models.semifield import S3Policy, Variant
from gkaut.schemas.job import CheckReport, JobConfig
from gkaut.schemas.tower import ParamsSummary
from gkaut.services.semifield import kaplansky_check, lemma_report
from gkaut.services.spread_set import build_spread_set, check_s3, commutativity_failures, compare_variants

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("check", help="presemifield axioms, variants, Kaplansky, lemma suites")
    add_params_arguments(parser)
    add_run_arguments(parser)
    parser.add_argument("--s3", dest="s3_policy", choices=["auto", "full", "sampled"], default="auto")
    parser.add_argument("--samples", type=int, default=S3_DEFAULT_SAMPLES)
    parser.add_argument("--lemmas", action="store_true", help="run the bijectivity and gcd sweeps")
    parser.set_defaults(handler=run)


def run(cfg: JobConfig, args: argparse.Namespace) -> CheckReport:
    timer = Timer()
    params = resolve_params(cfg)
    spread = build_spread_set(params)
    policy = None if cfg.s3_policy in (None, "auto") else S3Policy(cfg.s3_policy)
    samples = cfg.samples or S3_DEFAULT_SAMPLES

    s3 = check_s3(
        params, policy, samples=samples, seed=cfg.seed,
        threads=cfg.threads, spread=spread, timings=cfg.timings,
    )
    commuting = commutativity_failures(params, Variant.SPREAD, min(samples, 1000), cfg.seed)
    variants = compare_variants(params, samples=min(samples, 1000), seed=cfg.seed)
    kaplansky = kaplansky_check(params, seed=cfg.seed)
    lemmas = lemma_report(params) if args.lemmas else None

    violations = []
    if s3.singular_count:
        violations.append(f"{s3.singular_count} singular spread-set members")
    if commuting:
        violations.append(f"multiplication not commutative on {commuting} samples")
    if kaplansky.left_identity_failures or kaplansky.right_identity_failures or kaplansky.bilinearity_failures:
        violations.append("Kaplansky semifield fails its identity or bilinearity checks")
    if lemmas is not None and not lemmas.ok:
        violations.append("lemma suite reports a violation")

    report = CheckReport(
        command="check",
        params=ParamsSummary.from_params(params),
        seed=cfg.seed,
        s3=s3,
        commutativity_failures=commuting,
        variants=variants,
        kaplansky=kaplansky,
        lemmas=lemmas,
        wall_time_s=timer.elapsed(cfg),
    )
    return finish(report, violations)

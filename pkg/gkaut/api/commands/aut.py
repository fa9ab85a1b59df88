"""
Autotopism subcommands: enumerate, verify, structure, oracle.
"""

import argparse
import logging
from pathlib import Path

from gkaut.api.commands.common import (
    Timer, add_params_arguments, add_run_arguments, finish, parse_exponent, resolve_params,
)
from gkaut.core.config import STRUCTURE_PAIR_SAMPLES, VERIFY_SAMPLE_SIZE
from gkaut.core.errors import NonAdmissible
from gkaut.models.autotopism import Autotopism, VerifyPolicy
from gkaut.models.linmap import MapForm
from gkaut.schemas.autotopism import SingleVerification
from gkaut.schemas.job import (
    EnumerateReport, JobConfig, OracleCommandReport, StructureCommandReport, VerifyReport,
)
from gkaut.schemas.tower import ParamsSummary
from gkaut.services import autotopism_builder as builder
from gkaut.services import linmap, matrix_fp
from gkaut.services.ansatz_oracle import ansatz_exhaustive_oracle
from gkaut.services.autotopism_verifier import verify_autotopism
from gkaut.services.group_enumerator import (
    enumerate_group, export_inventory, inventory_report, inventory_violations,
)
from gkaut.services.group_structure import structure_report, structure_violations
from gkaut.services.spread_set import build_spread_set

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("aut", help="autotopism group")
    commands = parser.add_subparsers(dest="subcommand", required=True)

    enum_parser = commands.add_parser("enumerate", help="enumerate and verify the group")
    _add_verify_arguments(enum_parser)
    enum_parser.add_argument("--export", type=Path, help="write the inventory as JSON lines")
    enum_parser.add_argument("--matrices", action="store_true", help="include X, Y matrices in the export")
    enum_parser.set_defaults(handler=run_enumerate)

    verify_parser = commands.add_parser("verify", help="construct and verify one element")
    add_params_arguments(verify_parser)
    add_run_arguments(verify_parser)
    verify_parser.add_argument("--i", type=int, default=0)
    verify_parser.add_argument("--form", choices=[f.value for f in MapForm], default=MapForm.DIAGONAL.value)
    verify_parser.add_argument("--free", type=parse_exponent, default=0, help="d_2 or c_2 as g^j")
    verify_parser.add_argument("--gamma", type=parse_exponent, help="γ as g^j (default: first valid)")
    verify_parser.add_argument("--eps", type=parse_exponent, help="ε as g^j (default: matching γ)")
    verify_parser.add_argument("--perturb", action="store_true", help="multiply a_1 by g (must fail)")
    verify_parser.set_defaults(handler=run_verify)

    structure_parser = commands.add_parser("structure", help="group structure report")
    _add_verify_arguments(structure_parser)
    structure_parser.add_argument("--pairs", type=int, default=STRUCTURE_PAIR_SAMPLES)
    structure_parser.set_defaults(handler=run_structure)

    oracle_parser = commands.add_parser("oracle", help="exhaustive monomial sweep for fixed (i, form)")
    add_params_arguments(oracle_parser)
    add_run_arguments(oracle_parser)
    oracle_parser.add_argument("--i", type=int, help="Frobenius index (default: all)")
    oracle_parser.add_argument("--form", choices=[f.value for f in MapForm], help="default: both")
    oracle_parser.set_defaults(handler=run_oracle)


def _add_verify_arguments(parser: argparse.ArgumentParser) -> None:
    add_params_arguments(parser)
    add_run_arguments(parser)
    parser.add_argument("--verify", dest="verify_policy", choices=["auto", "full", "sampled"], default="auto")
    parser.add_argument("--samples", type=int, default=VERIFY_SAMPLE_SIZE, help="sampled elements per family")


def _policy(cfg: JobConfig) -> VerifyPolicy | None:
    return None if cfg.verify_policy in (None, "auto") else VerifyPolicy(cfg.verify_policy)


# ── enumerate ──────────────────────────────────────────────────────────────

def run_enumerate(cfg: JobConfig, args: argparse.Namespace) -> EnumerateReport:
    timer = Timer()
    params = resolve_params(cfg)
    inventory = enumerate_group(
        params, _policy(cfg), seed=cfg.seed, samples=cfg.samples or VERIFY_SAMPLE_SIZE,
        threads=cfg.threads,
    )
    summary = inventory_report(inventory)
    export_path = None
    if args.export:
        export_inventory(inventory, args.export, matrices=args.matrices)
        export_path = str(args.export)
    report = EnumerateReport(
        command="aut enumerate",
        params=ParamsSummary.from_params(params),
        seed=cfg.seed,
        inventory=summary,
        export_path=export_path,
        wall_time_s=timer.elapsed(cfg),
    )
    return finish(report, inventory_violations(summary))


# ── verify ─────────────────────────────────────────────────────────────────

def run_verify(cfg: JobConfig, args: argparse.Namespace) -> VerifyReport:
    timer = Timer()
    params = resolve_params(cfg)
    tower = params.tower
    form = MapForm(args.form)
    i = args.i % tower.m
    admissible = [a for a in builder.admissible_indices(params, form) if a.i == i]
    if not admissible:
        raise NonAdmissible(f"i = {i} is not admissible for the {form.value} form")
    adm = admissible[0]

    if args.gamma is None or args.eps is None:
        pairs = builder.factor_delta(params, builder.delta_target_log(params, form, i, adm.alpha))
        if args.gamma is not None:
            pairs = pairs[pairs[:, 0] % tower.units == args.gamma % tower.units]
        if len(pairs) == 0:
            raise NonAdmissible(f"No ε matches γ = g^{args.gamma}")
        gamma_log, eps_log = (int(x) for x in pairs[0])
    else:
        gamma_log, eps_log = args.gamma, args.eps

    construct = builder.construct_diagonal if form == MapForm.DIAGONAL else builder.construct_antidiagonal
    element = construct(
        params, i, tower.g_pow(adm.alpha), tower.g_pow(args.free),
        tower.g_pow(gamma_log), tower.g_pow(eps_log),
    )
    if args.perturb:
        a1, d1 = element.x_logs
        element = Autotopism(params, element.i, element.form, ((a1 + 1) % tower.units, d1), element.y_logs)

    spread = build_spread_set(params)
    X, Y = (linmap.to_matrix2(P) for P in builder.to_pairs(element))
    result = verify_autotopism(spread, X, matrix_fp.invert(tower.p, Y))
    expected = not args.perturb
    logger.info("Element %s verifies: %s (expected %s)", element.key, result.ok, expected)

    report = VerifyReport(
        command="aut verify",
        params=ParamsSummary.from_params(params),
        verification=SingleVerification(
            i=element.i,
            form=element.form,
            x_logs=list(element.x_logs),
            y_logs=list(element.y_logs),
            members_ok=[bool(x) for x in result.members_ok],
            witness_invertible=result.witness_invertible,
            ok=result.ok,
            expected=expected,
        ),
        wall_time_s=timer.elapsed(cfg),
    )
    violations = [] if result.ok == expected else [f"verification returned {result.ok}, expected {expected}"]
    return finish(report, violations)


# ── structure ──────────────────────────────────────────────────────────────

def run_structure(cfg: JobConfig, args: argparse.Namespace) -> StructureCommandReport:
    timer = Timer()
    params = resolve_params(cfg)
    spread = build_spread_set(params)
    inventory = enumerate_group(
        params, _policy(cfg), seed=cfg.seed, samples=cfg.samples or VERIFY_SAMPLE_SIZE,
        threads=cfg.threads, spread=spread,
    )
    summary = inventory_report(inventory)
    structure = structure_report(inventory, spread, seed=cfg.seed, samples=args.pairs, threads=cfg.threads)
    report = StructureCommandReport(
        command="aut structure",
        params=ParamsSummary.from_params(params),
        seed=cfg.seed,
        inventory=summary,
        structure=structure,
        wall_time_s=timer.elapsed(cfg),
    )
    return finish(report, inventory_violations(summary) + structure_violations(structure))


# ── oracle ─────────────────────────────────────────────────────────────────

def run_oracle(cfg: JobConfig, args: argparse.Namespace) -> OracleCommandReport:
    timer = Timer()
    params = resolve_params(cfg)
    spread = build_spread_set(params)
    indices = [args.i % params.tower.m] if args.i is not None else list(range(params.tower.m))
    forms = [MapForm(args.form)] if args.form else list(MapForm)
    results = []
    for form in forms:
        for i in indices:
            _, result = ansatz_exhaustive_oracle(params, i, form, spread=spread, threads=cfg.threads)
            results.append(result)
    violations = [
        f"i={r.i} {r.form.value}: sweep found {r.verified}, constructed {r.constructed}"
        for r in results if not r.set_equal
    ]
    report = OracleCommandReport(
        command="aut oracle",
        params=ParamsSummary.from_params(params),
        oracle=results,
        wall_time_s=timer.elapsed(cfg),
    )
    return finish(report, violations)

"""
Named parameter sets shipped with the package.

B = g^1 for the smallest primitive g; A = c·B^{-1} with c ∈ F_Q^× chosen by
``auto_A`` (smallest valid c, which is c = 1 at these towers) or, for the
balanced variant, the smallest c with N(B)^q c^{-(q+1)} = ±1.
"""

import json
import logging
from pathlib import Path

from pydantic import ValidationError

from gkaut.core.errors import ParamsError, UnknownFixture
from gkaut.models.semifield import GKParams
from gkaut.schemas.tower import ParamsFile
from gkaut.services.field_tower import make_tower
from gkaut.services.semifield import make_params

logger = logging.getLogger(__name__)

FIXTURES: dict[str, ParamsFile] = {
    "gk-3-6-2": ParamsFile(p=3, m=6, k=2, B=1, A="auto", label="gk-3-6-2"),
    "gk-5-6-2": ParamsFile(p=5, m=6, k=2, B=1, A="auto", label="gk-5-6-2"),
    "gk-3-6-2-balanced": ParamsFile(p=3, m=6, k=2, B=1, A="balanced", label="gk-3-6-2-balanced"),
}


def params_from_file_model(spec: ParamsFile) -> GKParams:
    tower = make_tower(spec.p, spec.m, spec.k, spec.modulus)
    label = spec.label or f"GK({spec.p},{spec.m},{spec.k})"
    return make_params(tower, spec.B, spec.A, label=label)


def load_fixture(name: str) -> GKParams:
    spec = FIXTURES.get(name)
    if spec is None:
        raise UnknownFixture(f"Unknown fixture '{name}'; available: {', '.join(sorted(FIXTURES))}")
    logger.info("Loading fixture %s", name)
    return params_from_file_model(spec)


def load_params_file(path: Path) -> GKParams:
    try:
        spec = ParamsFile.model_validate(json.loads(Path(path).read_text()))
    except (OSError, json.JSONDecodeError, ValidationError) as exc:
        raise ParamsError(f"Cannot read params file {path}: {exc}") from exc
    return params_from_file_model(spec)

"""Seed script: writes the shipped fixtures as parameter files under GKAUT_OUTPUT_DIR/params."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from gkaut.core.config import settings
from gkaut.core.fixtures import FIXTURES, load_fixture
from gkaut.schemas.tower import ParamsSummary


def seed() -> None:
    target = settings.OUTPUT_DIR / "params"
    target.mkdir(parents=True, exist_ok=True)
    for name, spec in FIXTURES.items():
        path = target / f"{name}.json"
        if path.exists():
            print(f"Params file '{name}' already exists: {path}")
            continue
        summary = ParamsSummary.from_params(load_fixture(name))
        # A stored as a resolved exponent
        resolved = spec.model_copy(update={"A": summary.A_log})
        path.write_text(resolved.model_dump_json(indent=2) + "\n")
        print(f"Params file created: {path} (A = g^{summary.A_log}, c = g^{summary.c_log})")


if __name__ == "__main__":
    seed()

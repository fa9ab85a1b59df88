import argparse

from gkaut.api.commands import aut, check, export, fixtures, nuclei, validate


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkaut",
        description="GK presemifields: axioms, nuclei and autotopism groups",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Parameters
    validate.register(subparsers)
    fixtures.register(subparsers)

    # Presemifield
    check.register(subparsers)
    nuclei.register(subparsers)
    export.register(subparsers)

    # Autotopisms
    aut.register(subparsers)
    return parser

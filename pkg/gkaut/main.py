import logging
import sys

from pydantic import ValidationError

from gkaut.api.commands.common import job_config, write_report
from gkaut.api.router import build_parser
from gkaut.core.config import settings
from gkaut.core.errors import EXIT_INVALID, EXIT_OK, EXIT_VIOLATION, GKAutError

logger = logging.getLogger(__name__)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=(args.log_level or settings.LOG_LEVEL).upper(),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        force=True,
    )

    try:
        cfg = job_config(args)
        report = args.handler(cfg, args)
    except GKAutError as exc:
        logger.error("%s", exc.detail)
        return exc.exit_code
    except ValidationError as exc:
        logger.error("Invalid parameters: %s", exc)
        return EXIT_INVALID

    label = report.params.label if report.params is not None else "all"
    write_report(report, cfg, label)
    if not report.ok:
        logger.error("%s finished with %d violation(s)", cfg.command, len(report.violations))
        return EXIT_VIOLATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""
Command-line application factory and entry point
"""
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from worldsys import __version__
from worldsys.cli import fit, reproduce, simulate, stats
from worldsys.data import settings
from worldsys.utils.file_handler import cleanup_all
from worldsys.utils.responses import (
    EXIT_UNEXPECTED,
    EXIT_USAGE,
    EXIT_VALIDATION,
    WorldSysError,
)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logger = logging.getLogger(__name__)


def configure_logging(level: str = settings.LOG_LEVEL) -> None:
    """Send logs to stderr in the shared format"""
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def common_options() -> argparse.ArgumentParser:
    """Flags accepted by every verb"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data", default=None,
                        help=f"dataset CSV (default: {settings.default_dataset_path()})")
    common.add_argument("--out", default=None, help="output file or directory")
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="output format where the verb supports both")
    common.add_argument("--m", type=float, default=settings.DEFAULT_M,
                        help="subsistence threshold in 1990 dollars (default: 440)")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    common.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    return common


def create_app() -> argparse.ArgumentParser:
    """Build the parser with every verb registered"""
    parser = argparse.ArgumentParser(
        prog="worldsys",
        description="Fit, simulate and test world population and GDP growth models",
    )
    parser.add_argument("--version", action="version", version=f"worldsys {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    common = common_options()

    fit.register(subparsers, common)
    simulate.register(subparsers, common)
    stats.register(subparsers, common)
    reproduce.register(subparsers, common)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = create_app()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0

    level = "DEBUG" if args.verbose else "WARNING" if args.quiet else settings.LOG_LEVEL
    configure_logging(level)
    logger.info(f"=== worldsys {__version__}: {args.command} ===")
    try:
        return args.func(args)
    except WorldSysError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"error: invalid input: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as e:
        logger.exception(f"Unexpected failure in {args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_UNEXPECTED
    finally:
        cleanup_all()
        logger.info(f"=== worldsys {args.command} done ===")


if __name__ == "__main__":
    sys.exit(main())

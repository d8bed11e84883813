"""Main entry point for the speed-analyzer CLI."""

import logging
import sys
from typing import Optional, Sequence

import click

from .console.cli import cli
from .console.output_formatter import OutputFormatter
from .exceptions import EXIT_FAILURE


def setup_logging(verbose: bool = False) -> None:
    """Setup logging configuration.

    Args:
        verbose: Whether to enable verbose logging.
    """
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr)
        ],
        force=True,
    )


def handle_error(error: Exception, verbose: bool = False) -> int:
    """Log an unexpected error and show it to the user.

    Returns:
        Exit code (always 1).
    """
    logger = logging.getLogger(__name__)
    logger.error(f"Command failed: {error}", exc_info=True)
    print(OutputFormatter(verbose=verbose).format_error(error, verbose=verbose), file=sys.stderr)
    return EXIT_FAILURE


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the CLI application.

    Returns:
        Exit code: 0 success, 1 failure, 2 usage, parse or config error.
    """
    args = list(sys.argv[1:] if argv is None else argv)
    setup_logging("-v" in args or "--verbose" in args)
    try:
        result = cli.main(args=args, prog_name="speed-analyzer", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        print("\nOperation cancelled by user", file=sys.stderr)
        return EXIT_FAILURE
    except Exception as e:
        return handle_error(e, "-v" in args or "--verbose" in args)
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(main())

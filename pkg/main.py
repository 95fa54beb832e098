#!/usr/bin/env python3
"""
braidbook - braids, Burau matrices and branched double covers
Command line entry point: parses arguments, sets up logging, loads the
configuration file and hands over to the CLI dispatcher.
"""

import logging
import os
import sys
from typing import List, Optional

# Add the script directory to Python path for imports
SCRIPT_DIR = os.path.dirname(os.path.abspath(__file__))
if SCRIPT_DIR not in sys.path:
    sys.path.insert(0, SCRIPT_DIR)

from core.cli_mode import BraidCLI, CliConfig, create_parser
from core.config import ConfigManager

logger = logging.getLogger("braidbook")


def configure_logging(verbosity: int) -> None:
    """Diagnostics go to stderr; -v for progress, -vv for debug output."""
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    parser = create_parser()
    args = parser.parse_args(argv)
    configure_logging(getattr(args, 'verbose', 0) or 0)

    config_manager = ConfigManager(getattr(args, 'config', None))
    config = CliConfig.from_args(args, config_manager.config)
    logger.debug("running %s with %s", config.command, config)
    return BraidCLI(config).run()


if __name__ == "__main__":
    sys.exit(main())

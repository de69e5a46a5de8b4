"""
CLI dispatch.
"""
from typing import List, Optional

from src.cli.commands import COMMANDS, run_command
from src.cli.parser import build_parser
from src.utils.logger import get_logger


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse `argv` and run the selected command.

    Returns:
        Process exit code (argparse usage errors give 2)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else 0

    try:
        return run_command(COMMANDS[args.command], args)
    except KeyboardInterrupt:
        get_logger().warning("Interrupted")
        return 130

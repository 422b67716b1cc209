import sys
from typing import Sequence

import click

from src.api.router import cli
from src.config.logging_config import logger


def parse_and_dispatch(argv: Sequence[str]) -> int:
    """Run one command line and return its exit code (0 ok, 1 runtime error, 2 usage error)."""
    try:
        rv = cli.main(args=list(argv), prog_name="block-imh", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    return rv if isinstance(rv, int) else 0


def main() -> None:
    logger.debug("Starting block IMH command line...")
    sys.exit(parse_and_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()

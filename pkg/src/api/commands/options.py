"""Shared click options, error mapping and output handling for the commands."""
from __future__ import annotations
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Optional

import click
from pydantic import ValidationError

from src.config.logging_config import logger
from src.config.settings import settings
from src.domain.errors import ConfigurationError, ImhError
from src.domain.permutations import PermutationScheme

SCHEME_CHOICES = [scheme.value for scheme in PermutationScheme]


def _split_covariates(ctx, param, value: str) -> list[str]:
    return [c.strip() for c in value.split(",")] if value else []


def common_options(fn: Callable) -> Callable:
    """Flags shared by every sampling and benchmark command."""
    options = [
        click.option("--model", type=click.Choice(["toy", "probit"]), default="toy", show_default=True),
        click.option("--r", "r", type=int, default=None, help="Chains per block (default: p)."),
        click.option("--perm-scheme", type=click.Choice(SCHEME_CHOICES), default="random", show_default=True),
        click.option("--seed", type=int, default=settings.DEFAULT_SEED, show_default=True),
        click.option("--burn-in-blocks", type=int, default=0, show_default=True),
        click.option("--output", type=click.Path(dir_okay=False, writable=True), default=None,
                     help="Write CSV here instead of standard output."),
        click.option("--data", type=click.Path(), default=settings.PIMA_DATA_PATH,
                     help="Probit CSV (header row, 0/1 response)."),
        click.option("--covariates", default="glu,bp,ped", show_default=True, callback=_split_covariates,
                     help="Comma-separated covariate columns."),
        click.option("--response", default="type", show_default=True),
        click.option("--intercept/--no-intercept", default=False, show_default=True),
        click.option("--standardize/--no-standardize", default=False, show_default=True),
        click.option("--h", "h", default="identity", show_default=True, help="Test function."),
        click.option("--workers", type=int, default=settings.DEFAULT_WORKERS, show_default=True),
        click.option("--normalized-densities", is_flag=True, default=False,
                     help="Densities carry their constants; use plain importance sampling."),
        click.option("--dump-config", is_flag=True, default=False,
                     help="Echo the resolved configuration as a comment line atop the CSV."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _describe(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        where = ".".join(str(x) for x in item.get("loc", ()) if x != "__root__")
        parts.append(f"{where}: {item['msg']}" if where else item["msg"])
    return "; ".join(parts)


@contextmanager
def cli_errors():
    """Flag problems exit with 2 (usage), runtime failures with 1."""
    try:
        yield
    except ValidationError as e:
        raise click.UsageError(_describe(e)) from e
    except ConfigurationError as e:
        raise click.UsageError(str(e)) from e
    except ImhError as e:
        logger.error(f"{type(e).__name__}: {e}")
        raise click.ClickException(str(e)) from e
    except ValueError as e:
        logger.error(str(e))
        raise click.ClickException(str(e)) from e


def emit(text: str, output: Optional[str]) -> None:
    if output is None:
        click.echo(text, nl=False)
    else:
        Path(output).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {output}")

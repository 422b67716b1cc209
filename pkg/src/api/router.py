import click

from src.config.logging_config import set_log_level
from src.config.settings import settings
from .commands import benchmarks, probit, sampling


# create main command group
@click.group()
@click.option("--log-level", default=settings.LOG_LEVEL, show_default=True,
              type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
def cli(log_level: str) -> None:
    """Block independent Metropolis-Hastings sampler and variance-reduction benchmarks."""
    set_log_level(log_level)


# register individual commands
cli.add_command(sampling.sample)
cli.add_command(benchmarks.bench_perms)
cli.add_command(benchmarks.bench_estimators)
cli.add_command(benchmarks.bench_is)
cli.add_command(benchmarks.bench_probit)
cli.add_command(probit.probit_mle)

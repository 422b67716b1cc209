import click

from src.api.commands.options import cli_errors, common_options, emit
from src.api.dependencies import get_harness, get_reports_service
from src.api.schemas.experiments import BenchRequestSchema
from src.config.settings import settings
from src.domain.permutations import PermutationScheme

#region helpers

replications_option = click.option(
    "--replications", type=int, default=settings.DEFAULT_REPLICATIONS, show_default=True,
    help="Independent replications (10000 for publication-grade tables).",
)


def _write(table, request, dump_config, output):
    reports = get_reports_service(request.model_dump(exclude={"workers"}) if dump_config else None)
    emit(reports.variance_table_csv(table), output)

#endregion

#region commands

@click.command("bench-perms")
@click.option("--p", "p", type=int, multiple=True, default=[16], show_default=True, help="Block size (repeatable).")
@click.option("--blocks", type=int, default=1, show_default=True)
@click.option("--scale-c", type=float, default=3.0, show_default=True)
@replications_option
@common_options
def bench_perms(p, blocks, scale_c, output, dump_config, **flags):
    """tau2 variance reduction for each of the five permutation schemes."""
    with cli_errors():
        request = BenchRequestSchema(p=list(p), blocks=[blocks], scale_c=[scale_c], **flags)
        schemes = list(PermutationScheme)
        if any((request.r or size) % 2 for size in request.p):
            raise click.UsageError("bench-perms includes half-reversed, which needs an even number of chains")
        table = get_harness(request.workers).permutation_sweep(request.to_config(), schemes, request.p)
        _write(table, request, dump_config, output)


@click.command("bench-estimators")
@click.option("--p", "p", type=int, default=16, show_default=True)
@click.option("--blocks", type=int, default=1, show_default=True)
@click.option("--scale-c", type=float, default=3.0, show_default=True)
@replications_option
@common_options
def bench_estimators(p, blocks, scale_c, output, dump_config, **flags):
    """Variance of tau1..tau4 and their reductions relative to tau1."""
    with cli_errors():
        request = BenchRequestSchema(p=[p], blocks=[blocks], scale_c=[scale_c], **flags)
        table = get_harness(request.workers).estimator_sweep(request.to_config())
        _write(table, request, dump_config, output)


@click.command("bench-is")
@click.option("--p", "p", type=int, default=16, show_default=True)
@click.option("--blocks", type=int, multiple=True, default=[1, 10, 100], show_default=True,
              help="Number of blocks (repeatable).")
@click.option("--scale-c", type=float, default=3.0, show_default=True)
@replications_option
@common_options
def bench_is(p, blocks, scale_c, output, dump_config, **flags):
    """Block estimators against importance sampling on the same proposals."""
    with cli_errors():
        request = BenchRequestSchema(p=[p], blocks=list(blocks), scale_c=[scale_c], **flags)
        table = get_harness(request.workers).is_comparison(request.to_config(), request.blocks)
        _write(table, request, dump_config, output)


@click.command("bench-probit")
@click.option("--p", "p", type=int, default=16, show_default=True)
@click.option("--blocks", type=int, default=1, show_default=True)
@click.option("--scale-c", type=float, multiple=True, default=[1.0, 3.0, 10.0], show_default=True,
              help="Proposal covariance scale (repeatable).")
@replications_option
@common_options
def bench_probit(p, blocks, scale_c, output, dump_config, **flags):
    """Per-coefficient variance reductions on the probit posterior for each scale c."""
    with cli_errors():
        flags["model"] = "probit"
        request = BenchRequestSchema(p=[p], blocks=[blocks], scale_c=list(scale_c), **flags)
        table = get_harness(request.workers).probit_experiment(request.to_config(), request.scale_c)
        _write(table, request, dump_config, output)

#endregion

import click

from src.api.commands.options import _split_covariates, cli_errors, emit
from src.api.dependencies import get_probit_data, get_probit_fit, get_reports_service
from src.config.settings import settings


@click.command("probit-mle")
@click.option("--data", type=click.Path(), default=settings.PIMA_DATA_PATH, help="Probit CSV.")
@click.option("--covariates", default="glu,bp,ped", show_default=True, callback=_split_covariates)
@click.option("--response", default="type", show_default=True)
@click.option("--intercept/--no-intercept", default=False, show_default=True)
@click.option("--standardize/--no-standardize", default=False, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False, writable=True), default=None)
@click.option("--dump-config", is_flag=True, default=False)
def probit_mle(data, covariates, response, intercept, standardize, output, dump_config):
    """Fit the probit MLE and print theta_hat and Sigma_hat as labeled CSV."""
    if not data:
        raise click.UsageError("--data is required")
    if not covariates:
        raise click.UsageError("--covariates needs at least one column")
    with cli_errors():
        key = (data, tuple(covariates), response, intercept, standardize)
        names = get_probit_data(*key).names
        fit = get_probit_fit(*key)
        comment = {"data": data, "covariates": covariates, "response": response,
                   "intercept": intercept, "standardize": standardize} if dump_config else None
        emit(get_reports_service(comment).mle_csv(fit, names), output)

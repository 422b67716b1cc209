import click

from src.api.commands.options import cli_errors, common_options, emit
from src.api.dependencies import build_model, get_engine, get_reports_service
from src.api.schemas.experiments import RunRequestSchema
from src.config.logging_config import logger
from src.services.block_engine import selected_acceptance_rate
from src.services.estimators import estimate_all, get_test_function
from src.services.random_streams import RandomStreams


@click.command("sample")
@click.option("--p", "p", type=int, default=16, show_default=True, help="Block size.")
@click.option("--blocks", type=int, default=1, show_default=True)
@click.option("--scale-c", type=float, default=3.0, show_default=True)
@common_options
def sample(p, blocks, scale_c, output, dump_config, **flags):
    """Run block IMH once and emit the estimator report and the selected chain."""
    with cli_errors():
        request = RunRequestSchema(p=[p], blocks=[blocks], scale_c=[scale_c], **flags)
        cfg = request.to_config()
        model = build_model(cfg)
        streams = RandomStreams(cfg.seed)
        with get_engine(request.workers) as engine:
            run = engine.run(model, model.initial_point(streams.start()), cfg.p, cfg.b, cfg.scheme, streams, r=cfg.r)
            h = get_test_function(cfg.h)
            report = estimate_all(run, h, burn_in_blocks=cfg.burn_in_blocks,
                                  normalized=cfg.normalized_densities,
                                  labels=h.labels(model.coordinate_names))
        acceptance = selected_acceptance_rate(run)
        logger.info(f"Selected chain acceptance rate: {acceptance:.4f}")
        reports = get_reports_service(request.model_dump(exclude={"workers"}) if dump_config else None)
        emit(reports.sample_csv(report, run.selected_chain, model.coordinate_names, acceptance), output)

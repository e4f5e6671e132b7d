from typing import Any, Optional
import click
from api.models.models import BaselineKind, ItemMode, SourceFormat
from api.models.run_config import RunConfig, RunConfigs, SweepSpec
from config.settings import settings
from middleware.error_handler import ConfigError, ErrorHandlingGroup
from services.experiment_service import ITEMSET_METHOD, METHODS, ExperimentService
from services.rouge_service import RougeService
from utils.io_utils import IOUtils


def config_option(fn):
    return click.option(
        "--config", "config_file", type=click.Path(dir_okay=False),
        help="JSON run config; a result.json echo works too. Flags override its values."
    )(fn)


def out_option(fn):
    return click.option("--out", help=f"Output directory (default {settings.OUTPUT_DIR}).")(fn)


def mining_options(fn):
    """Options shared by every command that builds transactions."""
    options = [
        click.option("--mode", type=click.Choice([m.value for m in ItemMode]), help="Item source."),
        click.option("--min-sup", help="Minimum support, e.g. 0.08 or 2/25."),
        click.option("--rate", "compression_rate", help="Compression rate in (0, 1)."),
        click.option("--stopwords", type=click.Path(dir_okay=False), help="Stop-word list for term mode."),
        click.option("--blocked-types", type=click.Path(dir_okay=False), help="Blocked semantic types for concept mode."),
        click.option("--format", "source_format", type=click.Choice([f.value for f in SourceFormat]),
                     help="Input format; inferred from the extension when omitted."),
        click.option("--max-itemset-size", type=int, help="Largest itemset size to mine."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def resolve(config_file: Optional[str] = None, **overrides: Any) -> RunConfig:
    return RunConfigs.resolve(config_file, **overrides)


@click.group(cls=ErrorHandlingGroup)
def cli():
    """Extractive summarization by frequent itemset mining."""


@cli.command()
@click.argument("document", required=False, type=click.Path(dir_okay=False))
@click.option("--annotations", type=click.Path(dir_okay=False), help="Concept annotations (JSON lines).")
@mining_options
@out_option
@config_option
@click.option("--dump-transactions", is_flag=True, help="Also write the per-sentence transactions as JSON.")
def summarize(document, config_file, dump_transactions, **options):
    """Summarize DOCUMENT; writes the summary, the result JSON and the itemset dump."""
    config = resolve(config_file, document=document, **options)
    run = ExperimentService.summarize(config, dump_transactions=dump_transactions)
    click.echo(run.result.rendered_text)


@cli.command()
@click.argument("document", required=False, type=click.Path(dir_okay=False))
@click.option("--kind", type=click.Choice([k.value for k in BaselineKind]), default=BaselineKind.LEAD.value,
              show_default=True)
@click.option("--seed", type=int, help="Required for the random baseline.")
@click.option("--rate", "compression_rate", help="Compression rate in (0, 1).")
@click.option("--format", "source_format", type=click.Choice([f.value for f in SourceFormat]))
@out_option
@config_option
def baseline(document, kind, config_file, **options):
    """Lead or random baseline summary of DOCUMENT."""
    config = resolve(config_file, document=document, **options)
    kind = BaselineKind(kind)
    if kind == BaselineKind.RANDOM and config.seed is None:
        raise ConfigError("the random baseline needs an explicit --seed")
    result = ExperimentService.baseline(config, kind)
    click.echo(result.rendered_text)


@cli.command()
@click.argument("system_dir", type=click.Path(file_okay=False))
@click.argument("models_dir", type=click.Path(file_okay=False))
@click.option("--metrics", help="Comma list of R1, R2, RW12, RSU4 (default all four).")
@click.option("--stem/--no-stem", "stem_rouge", default=None, help="Porter-stem tokens before matching.")
@click.option("--method", type=click.Choice(METHODS), default=ITEMSET_METHOD, show_default=True,
              help="Which summaries of SYSTEM_DIR to score: <id>.summary.txt or <id>.<method>.summary.txt.")
@out_option
@config_option
def evaluate(system_dir, models_dir, metrics, method, config_file, **options):
    """ROUGE recall of the summaries in SYSTEM_DIR against MODELS_DIR, paired by id."""
    config = resolve(config_file, **options)
    table = ExperimentService.evaluate(
        system_dir,
        models_dir,
        RougeService.parse_metrics(metrics),
        stem=config.stem_rouge,
        out_dir=config.out,
        config_echo=config.to_dict(),
        method=method
    )
    click.echo(IOUtils.format_table(table))


@cli.command()
@click.argument("corpus", type=click.Path(file_okay=False))
@click.option("--sweep-range", help=f"start:stop:step or a comma list (default {settings.SWEEP_RANGE}).")
@click.option("--metrics", default="R2,RSU4", show_default=True)
@click.option("--stem/--no-stem", "stem_rouge", default=None)
@mining_options
@out_option
@config_option
def sweep(corpus, sweep_range, metrics, config_file, **options):
    """Mean ROUGE and itemset counts per min_sup threshold over CORPUS."""
    config = resolve(config_file, **options)
    sweep_spec = SweepSpec.from_range(sweep_range or settings.SWEEP_RANGE, RougeService.parse_metrics(metrics))
    table = ExperimentService.sweep(corpus, sweep_spec, config, out_dir=config.out)
    click.echo(IOUtils.format_table(table))


@cli.command()
@click.argument("corpus", type=click.Path(file_okay=False))
@click.option("--format", "source_format", type=click.Choice([f.value for f in SourceFormat]))
@out_option
@config_option
def stats(corpus, config_file, **options):
    """Sentence and word counts of the documents and model summaries in CORPUS."""
    config = resolve(config_file, **options)
    table = ExperimentService.corpus_stats(corpus, config, out_dir=config.out)
    click.echo(IOUtils.format_table(table))


@cli.command()
@click.argument("corpus", type=click.Path(file_okay=False))
@click.option("--methods", help="Comma list of concept, term, lead, random (default all four).")
@click.option("--metrics", help="Comma list of R1, R2, RW12, RSU4 (default all four).")
@click.option("--seed", type=int, help="Required when the random baseline is compared.")
@click.option("--stem/--no-stem", "stem_rouge", default=None)
@mining_options
@out_option
@config_option
def compare(corpus, methods, metrics, config_file, **options):
    """Mean ROUGE of the itemset summarizer in both modes and the baselines over CORPUS."""
    config = resolve(config_file, **options)
    methods = ExperimentService.parse_methods(methods)
    if BaselineKind.RANDOM.value in methods and config.seed is None:
        raise ConfigError("comparing the random baseline needs an explicit --seed")
    table = ExperimentService.compare(corpus, config, methods, RougeService.parse_metrics(metrics), out_dir=config.out)
    click.echo(IOUtils.format_table(table))

from pathlib import Path
from typing import Optional, Tuple

import click
from pydantic import ValidationError

from src.benchmark.builder import BenchmarkPlan
from src.commands import (
    ask_command,
    build_kg_command,
    gen_benchmark_command,
    index_command,
    judge_command,
    kg_stats_command,
    make_fixture_command,
    report_command,
    run_benchmark_command,
)
from src.commands.common import load_settings, parse_sizes, run_options
from src.commands.constants import (
    DEFAULT_BATCH_SIZES,
    DEFAULT_SUMMARIZER,
    EXIT_INPUT,
    EXIT_TRANSPORT,
    EXIT_USAGE,
    METHOD_CHOICES,
    PARSE_CHOICES,
    SUMMARIZER_CHOICES,
)
from src.errors import KeoError, TransportError
from src.logger import get_logger

# Get logger for this module
logger = get_logger()

FilePath = click.Path(dir_okay=False, path_type=Path)
DirPath = click.Path(file_okay=False, path_type=Path)


class KeoGroup(click.Group):
    """Maps engine errors to the documented exit codes."""

    def make_context(self, *args, **kwargs) -> click.Context:
        try:
            return super().make_context(*args, **kwargs)
        except click.UsageError as e:
            e.exit_code = EXIT_USAGE
            raise

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = EXIT_USAGE
            raise
        except TransportError as e:
            logger.error(str(e))
            click.echo(f"Error: {e}", err=True)
            ctx.exit(EXIT_TRANSPORT)
        except (KeoError, ValidationError) as e:
            logger.error(str(e))
            click.echo(f"Error: {e}", err=True)
            ctx.exit(EXIT_INPUT)


@click.group(cls=KeoGroup)
def cli():
    pass


@cli.command("make-fixture")
@click.option("--out", "out_dir", type=DirPath, required=True)
@click.option("--records", type=int, default=100, show_default=True)
@click.option("--pairs", type=int, default=10, show_default=True)
@click.option("--gsm", type=int, default=5, show_default=True, help="Canned GSM items")
@click.option("--k2a", type=int, default=5, show_default=True, help="Templated K2A items")
@click.option("--seed", type=int, default=0, show_default=True)
def make_fixture(out_dir: Path, records: int, pairs: int, gsm: int, k2a: int, seed: int):
    """
    Write a synthetic corpus, gold triplets, problem-action pairs and a small benchmark.
    """
    make_fixture_command(out_dir, records, pairs, gsm, k2a, seed)


@cli.command("build-kg")
@click.option("--corpus", "corpus_path", type=FilePath, required=True)
@click.option("--out", "out_dir", type=DirPath, required=True)
@click.option(
    "--batch-sizes",
    default=DEFAULT_BATCH_SIZES,
    show_default=True,
    help="Cumulative record counts, one KG file each",
)
@click.option("--parse-mode", type=click.Choice(PARSE_CHOICES), default=None)
@click.option(
    "--seed-nodes",
    "seed_nodes_path",
    type=FilePath,
    default=None,
    help="Pre-existing node surfaces, one per line (strict mode)",
)
@run_options
def build_kg(
    corpus_path: Path,
    out_dir: Path,
    batch_sizes: str,
    parse_mode: Optional[str],
    seed_nodes_path: Optional[Path],
    **run,
):
    """
    Build the knowledge graph incrementally, one KG file per cumulative batch.
    """
    settings = load_settings(**run, parse_mode=parse_mode)
    build_kg_command(settings, corpus_path, out_dir, parse_sizes(batch_sizes), seed_nodes_path)


@cli.command("kg-stats")
@click.option("--kg", "kg_path", type=FilePath, required=True)
@click.option("--gold", "gold_path", type=FilePath, default=None, help="Gold triplets (JSONL)")
def kg_stats(kg_path: Path, gold_path: Optional[Path]):
    """
    Print graph statistics and, with --gold, strict and loose extraction quality.
    """
    kg_stats_command(kg_path, gold_path)


@cli.command()
@click.option("--corpus", "corpus_path", type=FilePath, required=True)
@click.option("--kg", "kg_path", type=FilePath, required=True)
@click.option("--out", "out_dir", type=DirPath, required=True, help="Index directory")
@click.option(
    "--summarizer",
    type=click.Choice(SUMMARIZER_CHOICES),
    default=DEFAULT_SUMMARIZER,
    show_default=True,
)
@run_options
def index(corpus_path: Path, kg_path: Path, out_dir: Path, summarizer: str, **run):
    """
    Build the node index, chunk index and community hierarchy for retrieval.
    """
    index_command(load_settings(**run), corpus_path, kg_path, out_dir, summarizer)


@cli.command()
@click.argument("question")
@click.option(
    "--method", type=click.Choice(METHOD_CHOICES, case_sensitive=False), required=True
)
@click.option("--kg", "kg_path", type=FilePath, default=None)
@click.option("--index", "index_dir", type=DirPath, default=None)
@click.option("--out", "out_path", type=FilePath, default=None, help="AnswerRecord JSON")
@click.option("--question-id", default="Q", show_default=True)
@click.option("--few-shots", "few_shots_path", type=FilePath, default=None)
@run_options
def ask(
    question: str,
    method: str,
    kg_path: Optional[Path],
    index_dir: Optional[Path],
    out_path: Optional[Path],
    question_id: str,
    few_shots_path: Optional[Path],
    **run,
):
    """
    Answer one question with the VN, TC or KG method.
    """
    ask_command(
        load_settings(**run),
        question,
        method,
        kg_path,
        index_dir,
        out_path,
        question_id,
        few_shots_path,
    )


@cli.command("gen-benchmark")
@click.option("--corpus", "corpus_path", type=FilePath, required=True)
@click.option("--pairs", "pairs_path", type=FilePath, required=True)
@click.option("--out", "out_path", type=FilePath, required=True)
@click.option("--kg", "kg_path", type=FilePath, default=None, help="Adds relation counts")
@click.option("--n-kg", type=int, default=500, show_default=True)
@click.option("--comprehensive", type=int, default=28, show_default=True)
@click.option("--context", type=int, default=28, show_default=True)
@click.option("--category", type=int, default=27, show_default=True)
@run_options
def gen_benchmark(
    corpus_path: Path,
    pairs_path: Path,
    out_path: Path,
    kg_path: Optional[Path],
    n_kg: int,
    comprehensive: int,
    context: int,
    category: int,
    **run,
):
    """
    Generate the GSM and K2A benchmark from a corpus and problem-action pairs.
    """
    plan = BenchmarkPlan(
        n_kg=n_kg, comprehensive=comprehensive, context=context, category=category
    )
    gen_benchmark_command(
        load_settings(**run), corpus_path, pairs_path, out_path, plan, kg_path
    )


@cli.command("run-benchmark")
@click.option("--benchmark", "benchmark_path", type=FilePath, required=True)
@click.option(
    "--method",
    "methods",
    type=click.Choice(METHOD_CHOICES, case_sensitive=False),
    multiple=True,
    default=tuple(METHOD_CHOICES),
    show_default=True,
)
@click.option("--kg", "kg_path", type=FilePath, default=None)
@click.option("--index", "index_dir", type=DirPath, default=None)
@click.option("--out", "out_path", type=FilePath, required=True)
@click.option("--few-shots", "few_shots_path", type=FilePath, default=None)
@run_options
def run_benchmark(
    benchmark_path: Path,
    methods: Tuple[str, ...],
    kg_path: Optional[Path],
    index_dir: Optional[Path],
    out_path: Path,
    few_shots_path: Optional[Path],
    **run,
):
    """
    Answer every benchmark item with each method.
    """
    run_benchmark_command(
        load_settings(**run),
        benchmark_path,
        methods,
        kg_path,
        index_dir,
        out_path,
        few_shots_path,
    )


@cli.command()
@click.option("--benchmark", "benchmark_path", type=FilePath, required=True)
@click.option("--answers", "answers_path", type=FilePath, required=True)
@click.option("--out", "out_path", type=FilePath, required=True)
@click.option("--pairwise/--no-pairwise", default=True, show_default=True)
@run_options
def judge(
    benchmark_path: Path, answers_path: Path, out_path: Path, pairwise: bool, **run
):
    """
    Score answers with the judge model, absolutely and head-to-head.
    """
    judge_command(load_settings(**run), benchmark_path, answers_path, out_path, pairwise)


@cli.command()
@click.option("--benchmark", "benchmark_path", type=FilePath, required=True)
@click.option("--answers", "answers_path", type=FilePath, required=True)
@click.option("--judgements", "judgements_path", type=FilePath, default=None)
@click.option("--out", "out_dir", type=DirPath, required=True)
@run_options
def report(
    benchmark_path: Path,
    answers_path: Path,
    judgements_path: Optional[Path],
    out_dir: Path,
    **run,
):
    """
    Render score tables, win-rate matrices and ROUGE tables.
    """
    report_command(
        load_settings(**run), benchmark_path, answers_path, judgements_path, out_dir
    )


def main():
    """
    Main entry point for the keo CLI.
    """
    cli()


if __name__ == "__main__":
    main()

from pathlib import Path
from typing import Optional, Tuple

import click

from src.benchmark.builder import BenchmarkPlan, build_benchmark
from src.benchmark.generation import load_problem_actions
from src.benchmark.models import load_benchmark
from src.commands.ask import prepare_artifacts
from src.commands.common import artifact_passages
from src.commands.manifest import timestamp, write_manifest
from src.config.config import Settings
from src.kg.corpus import load_corpus
from src.kg.storage import load_kg
from src.logger import get_logger
from src.rag.chat import ChatClient
from src.rag.leakage import check_retrievable
from src.rag.pipeline import Method
from src.rag.runner import run_benchmark
from src.utils import write_json

logger = get_logger()


def gen_benchmark_command(
    settings: Settings,
    corpus_path: Path,
    pairs_path: Path,
    out_path: Path,
    plan: BenchmarkPlan,
    kg_path: Optional[Path] = None,
):
    started = timestamp(settings)
    records = load_corpus(corpus_path)
    pairs = load_problem_actions(pairs_path)
    kg = load_kg(kg_path) if kg_path is not None else None
    benchmark = build_benchmark(
        records,
        pairs,
        ChatClient.from_settings(settings),
        plan,
        rng_seed=settings.seed,
        kg=kg,
        jobs=settings.jobs,
        out_path=out_path,
    )
    click.echo(
        f"{len(benchmark.items)} items written to {out_path}: "
        + ", ".join(f"{k} {v}" for k, v in benchmark.manifest.counts.items())
    )
    write_manifest(
        out_path.with_name(f"{out_path.stem}.manifest.json"),
        "gen-benchmark",
        settings,
        inputs=[corpus_path, pairs_path, kg_path],
        artifacts=[out_path],
        started_at=started,
        details={"plan": plan.model_dump(), "flagged": len(benchmark.manifest.flagged)},
    )


def run_benchmark_command(
    settings: Settings,
    benchmark_path: Path,
    methods: Tuple[str, ...],
    kg_path: Optional[Path],
    index_dir: Optional[Path],
    out_path: Path,
    few_shots_path: Optional[Path] = None,
):
    """Answer every benchmark item with every requested method."""
    started = timestamp(settings)
    benchmark = load_benchmark(benchmark_path)
    chosen = tuple(Method(m.upper()) for m in methods)
    artifacts, read = prepare_artifacts(settings, chosen, kg_path, index_dir, few_shots_path)
    gold = [(qa.id, qa.gold_answer) for qa in benchmark.items if qa.gold_answer]
    if gold:
        check_retrievable(artifact_passages(artifacts), gold)

    run = run_benchmark(
        benchmark.items,
        chosen,
        ChatClient.from_settings(settings),
        settings.retrieval(),
        artifacts,
        jobs=settings.jobs,
    )
    write_json(out_path, run.model_dump(mode="json"))
    click.echo(
        f"{len(run.answers)} answers written to {out_path} ({len(run.failures)} failure(s))"
    )
    for failure in run.failures:
        click.echo(f"  failed: {failure}", err=True)
    write_manifest(
        out_path.with_name(f"{out_path.stem}.manifest.json"),
        "run-benchmark",
        settings,
        inputs=[benchmark_path, *read],
        artifacts=[out_path],
        started_at=started,
        details={"methods": [m.value for m in chosen], "failures": run.failures},
    )

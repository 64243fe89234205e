from pathlib import Path
from typing import Optional

import click
from pydantic import ValidationError

from src.benchmark.models import load_benchmark
from src.commands.constants import REPORT_JSON_FILE, REPORT_TEXT_FILE
from src.commands.manifest import timestamp, write_manifest
from src.config.config import Settings
from src.errors import InputError, MissingArtifactError
from src.eval.report import build_report, render_text
from src.eval.runner import JudgingRun, run_judging
from src.logger import get_logger
from src.rag.chat import ChatClient
from src.rag.runner import load_run
from src.utils import atomic_write_text, read_json, write_json

logger = get_logger()


def load_judging(path: Path) -> JudgingRun:
    if not path.is_file():
        raise MissingArtifactError(str(path))
    try:
        return JudgingRun.model_validate(read_json(path))
    except (ValidationError, ValueError) as e:
        raise InputError(f"invalid judgements file {path}: {e}")


def judge_command(
    settings: Settings,
    benchmark_path: Path,
    answers_path: Path,
    out_path: Path,
    pairwise: bool = True,
):
    started = timestamp(settings)
    benchmark = load_benchmark(benchmark_path)
    answers = load_run(answers_path).answers
    run = run_judging(
        benchmark,
        answers,
        ChatClient.from_settings(settings, judge=True),
        rng_seed=settings.seed,
        jobs=settings.jobs,
        pairwise=pairwise,
    )
    write_json(out_path, run.model_dump(mode="json"))
    click.echo(
        f"{len(run.reports)} judgements and {len(run.pairwise)} pairwise results "
        f"written to {out_path} ({len(run.failures)} failure(s))"
    )
    write_manifest(
        out_path.with_name(f"{out_path.stem}.manifest.json"),
        "judge",
        settings,
        inputs=[benchmark_path, answers_path],
        artifacts=[out_path],
        started_at=started,
        details={"failures": run.failures, "pairwise": pairwise},
    )


def report_command(
    settings: Settings,
    benchmark_path: Path,
    answers_path: Path,
    judgements_path: Optional[Path],
    out_dir: Path,
):
    """Write report.json and report.txt and print the text rendering."""
    started = timestamp(settings)
    benchmark = load_benchmark(benchmark_path)
    run = load_run(answers_path)
    judging = load_judging(judgements_path) if judgements_path else JudgingRun()

    report = build_report(
        benchmark.items,
        run.answers,
        judging.reports,
        judging.pairwise,
        stem=settings.rouge_stemming,
        failures=run.failures + judging.failures,
    )
    text = render_text(report)
    json_path = write_json(out_dir / REPORT_JSON_FILE, report.model_dump(mode="json"))
    text_path = atomic_write_text(out_dir / REPORT_TEXT_FILE, text)
    click.echo(text, nl=False)
    write_manifest(
        out_dir / "report.manifest.json",
        "report",
        settings,
        inputs=[benchmark_path, answers_path, judgements_path],
        artifacts=[json_path, text_path],
        started_at=started,
    )

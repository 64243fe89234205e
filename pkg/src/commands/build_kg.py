from pathlib import Path
from typing import List, Optional, Tuple

import click

from src.commands.constants import MANIFEST_FILE
from src.commands.manifest import timestamp, write_manifest
from src.config.config import ParseMode, Settings
from src.errors import MissingArtifactError, TransportError
from src.kg.builder import build_incremental
from src.kg.corpus import load_corpus
from src.kg.quality import graph_stats, kg_quality, load_gold_file
from src.kg.storage import load_kg
from src.logger import get_logger
from src.rag.chat import ChatClient

logger = get_logger()


def read_seed_nodes(path: Optional[Path]) -> List[str]:
    """One pre-existing node surface per line."""
    if path is None:
        return []
    if not path.is_file():
        raise MissingArtifactError(str(path))
    return [line.strip() for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]


def build_kg_command(
    settings: Settings,
    corpus_path: Path,
    out_dir: Path,
    batch_sizes: Tuple[int, ...],
    seed_nodes_path: Optional[Path] = None,
):
    started = timestamp(settings)
    records = load_corpus(corpus_path)
    chat = ChatClient.from_settings(settings)
    report = build_incremental(
        records,
        chat,
        batch_sizes,
        out_dir,
        parse_mode=settings.parse_mode,
        node_hint_budget=settings.node_hint_budget,
        seed_nodes=read_seed_nodes(seed_nodes_path),
    )

    for batch in report.batches:
        click.echo(
            f"{batch.path}: {batch.stats.nodes} nodes, {batch.stats.edges} edges, "
            f"weight {batch.stats.total_weight}"
        )
    write_manifest(
        out_dir / MANIFEST_FILE,
        "build-kg",
        settings,
        inputs=[corpus_path, seed_nodes_path],
        artifacts=[batch.path for batch in report.batches],
        started_at=started,
        details={
            "batches": [batch.model_dump(mode="json") for batch in report.batches],
            "failed_batch": report.failed_batch,
            "error": report.error,
        },
    )
    if not report.ok:
        raise TransportError(
            f"KG build stopped at batch {report.failed_batch}; "
            f"{len(report.batches)} earlier batch(es) kept: {report.error}"
        )


def kg_stats_command(kg_path: Path, gold_path: Optional[Path] = None):
    graph = load_kg(kg_path)
    stats = graph_stats(graph)
    click.echo(
        f"records {stats.records}  nodes {stats.nodes}  edges {stats.edges}  "
        f"total weight {stats.total_weight}"
    )
    for label, weight in stats.relations.items():
        click.echo(f"  {label}: {weight}")
    if gold_path is None:
        return
    gold = load_gold_file(gold_path)
    for quality in (kg_quality(graph, gold, mode) for mode in ParseMode):
        click.echo(
            f"{quality.mode.value}: precision {quality.precision:.3f}  "
            f"recall {quality.recall:.3f}  f1 {quality.f1:.3f}"
        )

"""Incremental KG construction over cumulative record batches."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from pydantic import BaseModel

from src.config.config import ParseMode
from src.errors import InputError, TransportError
from src.kg.corpus import CorpusRecord
from src.kg.models import KnowledgeGraph, canonicalize
from src.kg.prompt import DEFAULT_NODE_HINT_BUDGET, render_kg_prompt
from src.kg.quality import GraphStats, graph_stats
from src.kg.storage import save_kg
from src.kg.triplets import ParseResult, merge_triplet, parse_triplets
from src.logger import get_logger
from src.rag.chat import ChatClient

logger = get_logger()


class BatchResult(BaseModel):
    size: int
    path: str
    stats: GraphStats
    accepted: int
    rejected: int


@dataclass
class BuildReport:
    batches: List[BatchResult] = field(default_factory=list)
    failed_batch: Optional[int] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failed_batch is None


def kg_file_name(size: int) -> str:
    return f"kg_{size:04d}.tsv"


def normalize_batch_sizes(batch_sizes: Iterable[int], record_count: int) -> List[int]:
    """Sorted, de-duplicated cumulative sizes, each within the corpus size."""
    sizes = sorted(set(batch_sizes))
    if not sizes:
        raise InputError("at least one batch size is required")
    if sizes[0] < 1:
        raise InputError(f"batch sizes must be positive, got {sizes[0]}")
    if sizes[-1] > record_count:
        raise InputError(
            f"batch size {sizes[-1]} exceeds the corpus size ({record_count} records)"
        )
    return sizes


class KgBuilder:
    """
    Single-writer builder that prompts the LLM once per record.

    Each prompt lists the current nodes (most recently used first) so the model
    can reuse existing entities instead of coining new surfaces.
    """

    def __init__(
        self,
        chat: ChatClient,
        parse_mode: ParseMode = ParseMode.LOOSE,
        node_hint_budget: int = DEFAULT_NODE_HINT_BUDGET,
        seed_nodes: Sequence[str] = (),
        graph: Optional[KnowledgeGraph] = None,
    ):
        self.chat = chat
        self.parse_mode = ParseMode(parse_mode)
        self.node_hint_budget = node_hint_budget
        self.seed_nodes = {canonicalize(s) for s in seed_nodes if s.strip()}
        self.graph = graph if graph is not None else KnowledgeGraph()
        self.accepted = 0
        self.rejected = 0

        if self.parse_mode is ParseMode.STRICT and not self.seed_nodes and not self.graph.nodes:
            logger.warning(
                "Strict parsing with an empty graph and no seed nodes accepts nothing"
            )

    def known_nodes(self) -> set:
        return self.graph.surfaces() | self.seed_nodes

    def extract(self, record: CorpusRecord) -> ParseResult:
        prompt = render_kg_prompt(
            record.text, self.graph.recent_surfaces(), self.node_hint_budget
        )
        response = self.chat.ask(prompt)
        return parse_triplets(response.text, self.parse_mode, self.known_nodes())

    def add_record(self, record: CorpusRecord) -> ParseResult:
        result = self.extract(record)
        for triple in result.triples:
            merge_triplet(self.graph, triple, record_id=record.id)
        for rejected in result.rejected:
            logger.debug(f"{record.id} line {rejected.line_no} rejected: {rejected.reason}")
        self.graph.record_count += 1
        self.accepted += len(result.triples)
        self.rejected += len(result.rejected)
        return result

    def build_batches(
        self,
        records: Sequence[CorpusRecord],
        batch_sizes: Iterable[int],
        out_dir: Path,
    ) -> BuildReport:
        """
        Grow the graph over cumulative prefixes of ``records``.

        One KG file is written after each batch. When the LLM fails mid-batch
        the graph is rolled back to the previous batch and building stops; files
        of completed batches stay in place.
        """
        sizes = normalize_batch_sizes(batch_sizes, len(records))
        out_dir = Path(out_dir)
        report = BuildReport()
        processed = self.graph.record_count

        for size in sizes:
            if size <= processed:
                logger.warning(f"Batch size {size} already covered, skipping")
                continue
            snapshot = self.graph.copy()
            counters = (self.accepted, self.rejected)
            try:
                for record in records[processed:size]:
                    self.add_record(record)
            except TransportError as e:
                self.graph = snapshot
                self.accepted, self.rejected = counters
                report.failed_batch = size
                report.error = str(e)
                logger.error(f"Batch {size} aborted, keeping {processed} records: {e}")
                break

            processed = size
            path = save_kg(self.graph, out_dir / kg_file_name(size))
            stats = graph_stats(self.graph)
            report.batches.append(
                BatchResult(
                    size=size,
                    path=str(path),
                    stats=stats,
                    accepted=self.accepted,
                    rejected=self.rejected,
                )
            )
            logger.info(
                f"Saved KG for {size} records: {stats.nodes} nodes, "
                f"{stats.edges} edges, total weight {stats.total_weight}"
            )
        return report


def build_incremental(
    records: Sequence[CorpusRecord],
    chat: ChatClient,
    batch_sizes: Iterable[int],
    out_dir: Path,
    parse_mode: ParseMode = ParseMode.LOOSE,
    node_hint_budget: int = DEFAULT_NODE_HINT_BUDGET,
    seed_nodes: Sequence[str] = (),
) -> BuildReport:
    builder = KgBuilder(
        chat,
        parse_mode=parse_mode,
        node_hint_budget=node_hint_budget,
        seed_nodes=seed_nodes,
    )
    return builder.build_batches(records, batch_sizes, out_dir)

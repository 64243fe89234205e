from pathlib import Path
from typing import Optional

import click

from src.commands.common import index_paths
from src.commands.constants import MANIFEST_FILE, SUMMARIZER_LLM
from src.commands.manifest import timestamp, write_manifest
from src.community.detection import CommunityHierarchy, detect_communities
from src.community.summaries import ExtractiveSummarizer, LlmSummarizer, summarize_hierarchy
from src.config.config import Settings
from src.embeddings.index import build_chunk_index, build_node_index
from src.embeddings.providers import provider_from_settings
from src.graph import to_undirected, whole_graph
from src.kg.corpus import load_corpus
from src.kg.storage import load_kg
from src.logger import get_logger
from src.rag.chat import ChatClient
from src.rag.chunking import chunk_corpus

logger = get_logger()


def index_command(
    settings: Settings, corpus_path: Path, kg_path: Path, out_dir: Path, summarizer: str
):
    """
    Build the node index, the chunk index and the summarized community hierarchy.

    Everything is computed before the first file is written. A KG without nodes
    still gets both indices but no community file.
    """
    started = timestamp(settings)
    cfg = settings.retrieval()
    records = load_corpus(corpus_path)
    graph = load_kg(kg_path)
    provider = provider_from_settings(settings)
    paths = index_paths(out_dir)

    hierarchy: Optional[CommunityHierarchy] = None
    if graph.nodes:
        hierarchy = detect_communities(
            to_undirected(whole_graph(graph)), cfg.leiden_resolution, cfg.rng_seed
        )
        if summarizer == SUMMARIZER_LLM:
            chosen = LlmSummarizer(ChatClient.from_settings(settings))
        else:
            chosen = ExtractiveSummarizer()
        summarize_hierarchy(
            hierarchy,
            graph,
            chosen,
            leaf_budget=cfg.leaf_budget,
            parent_budget=cfg.parent_budget,
            jobs=settings.jobs,
        )
    else:
        logger.warning(f"{kg_path} has no nodes; skipping community detection")

    node_index = build_node_index(graph, provider)
    chunks = chunk_corpus(records, cfg)
    chunk_index = build_chunk_index(chunks, provider)

    node_index.save(paths["node_index"])
    chunk_index.save(paths["chunk_index"])
    if hierarchy is not None:
        hierarchy.save(paths["hierarchy"])
    else:
        paths["hierarchy"].unlink(missing_ok=True)

    levels = [len(level) for level in hierarchy.levels] if hierarchy else []
    click.echo(
        f"{len(graph.nodes)} nodes, {len(chunks)} chunks, "
        f"{len(levels)} community level(s) written to {out_dir}"
    )
    write_manifest(
        out_dir / MANIFEST_FILE,
        "index",
        settings,
        inputs=[corpus_path, kg_path],
        artifacts=paths.values(),
        started_at=started,
        details={
            "chunks": len(chunks),
            "communities_per_level": levels,
            "modularity": hierarchy.modularity if hierarchy else None,
            "summarizer": summarizer,
        },
    )

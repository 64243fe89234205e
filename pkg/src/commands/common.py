from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple

import click

from src.commands.constants import (
    CHUNK_INDEX_FILE,
    COMMUNITIES_FILE,
    MODE_CHOICES,
    NODE_INDEX_FILE,
)
from src.community.detection import CommunityHierarchy
from src.config.config import Settings, init_settings
from src.embeddings.index import VectorIndex
from src.errors import InputError
from src.kg.models import KnowledgeGraph
from src.kg.storage import load_kg
from src.rag.leakage import retrievable_passages


_RUN_OPTIONS = (
    click.option(
        "--config",
        "config_file",
        type=click.Path(dir_okay=False, path_type=Path),
        default=None,
        help="Flat JSON configuration file",
    ),
    click.option("--seed", type=int, default=None, help="Seed for every random choice"),
    click.option(
        "--mode",
        type=click.Choice(MODE_CHOICES, case_sensitive=False),
        default=None,
        help="Model transport: live calls, record them, or replay recorded ones",
    ),
    click.option(
        "--transcripts",
        type=click.Path(dir_okay=False, path_type=Path),
        default=None,
        help="JSON-lines transcript store used by record and replay modes",
    ),
    click.option("--jobs", type=int, default=None, help="Maximum concurrent model calls"),
)


def run_options(fn: Callable) -> Callable:
    """Options shared by every command that reads settings."""
    for option in reversed(_RUN_OPTIONS):
        fn = option(fn)
    return fn


def load_settings(
    config_file: Optional[Path],
    seed: Optional[int],
    mode: Optional[str],
    transcripts: Optional[Path],
    jobs: Optional[int],
    **overrides: Any,
) -> Settings:
    """Settings from flags over environment over config file over defaults."""
    return init_settings(
        config_file,
        seed=seed,
        mode=mode.lower() if mode else None,
        transcripts=transcripts,
        jobs=jobs,
        **overrides,
    )


def parse_sizes(value: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in value.split(",") if part.strip())
    except ValueError:
        raise InputError(f"batch sizes must be comma-separated integers, got '{value}'")


def index_paths(index_dir: Path) -> Dict[str, Path]:
    return {
        "node_index": index_dir / NODE_INDEX_FILE,
        "chunk_index": index_dir / CHUNK_INDEX_FILE,
        "hierarchy": index_dir / COMMUNITIES_FILE,
    }


def require(value: Optional[Path], flag: str, method: str) -> Path:
    if value is None:
        raise InputError(f"method {method} needs {flag}")
    return value


def load_artifacts(
    methods: Tuple[str, ...], kg_path: Optional[Path], index_dir: Optional[Path]
) -> Tuple[Dict[str, Any], list]:
    """
    Load only what the requested methods need.

    Returns:
        The artifacts mapping for ``answer_with`` and the list of files read
    """
    artifacts: Dict[str, Any] = {}
    read: list = []
    needs_kg = "KG" in methods
    needs_chunks = "TC" in methods

    if needs_kg or needs_chunks:
        paths = index_paths(require(index_dir, "--index", "/".join(methods)))
        if needs_chunks:
            artifacts["chunk_index"] = VectorIndex.load(paths["chunk_index"])
            read.append(paths["chunk_index"])
        if needs_kg:
            kg_file = require(kg_path, "--kg", "KG")
            artifacts["kg"] = load_kg(kg_file)
            artifacts["node_index"] = VectorIndex.load(paths["node_index"])
            read.extend([kg_file, paths["node_index"]])
            if paths["hierarchy"].is_file():
                artifacts["hierarchy"] = CommunityHierarchy.load(paths["hierarchy"])
                read.append(paths["hierarchy"])
    return artifacts, read


def check_kg_index(kg: KnowledgeGraph, node_index: VectorIndex) -> None:
    if set(node_index.ids) != set(kg.nodes):
        raise InputError("node index does not match the KG; rebuild it with 'keo index'")


def artifact_passages(artifacts: Dict[str, Any]) -> list:
    """Chunk texts and node surfaces of the loaded retrieval artifacts."""
    chunk_index: Optional[VectorIndex] = artifacts.get("chunk_index")
    kg: Optional[KnowledgeGraph] = artifacts.get("kg")
    return retrievable_passages(
        [str(i) for i in chunk_index.ids] if chunk_index else [],
        chunk_index.texts if chunk_index else [],
        [(n.id, n.surface) for n in kg.nodes.values()] if kg else None,
    )

from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import click
from pydantic import TypeAdapter, ValidationError

from src.commands.common import check_kg_index, load_artifacts
from src.commands.manifest import timestamp, write_manifest
from src.config.config import Settings
from src.embeddings.providers import provider_from_settings
from src.errors import InputError, MissingArtifactError
from src.logger import get_logger
from src.rag.chat import ChatClient
from src.rag.pipeline import FewShot, Method, answer_with
from src.utils import read_json, write_json

logger = get_logger()


def load_few_shots(path: Optional[Path]) -> List[FewShot]:
    """A JSON list of ``{"question": ..., "answer": ...}`` objects."""
    if path is None:
        return []
    if not path.is_file():
        raise MissingArtifactError(str(path))
    try:
        return TypeAdapter(List[FewShot]).validate_python(read_json(path))
    except ValidationError as e:
        raise InputError(f"invalid few-shot file {path}: {e.errors()[0]['msg']}")


def prepare_artifacts(
    settings: Settings,
    methods: Tuple[Method, ...],
    kg_path: Optional[Path],
    index_dir: Optional[Path],
    few_shots_path: Optional[Path],
) -> Tuple[Dict[str, Any], list]:
    """Artifacts and provider for ``methods``, plus the list of input files read."""
    artifacts, read = load_artifacts(tuple(m.value for m in methods), kg_path, index_dir)
    if "node_index" in artifacts:
        check_kg_index(artifacts["kg"], artifacts["node_index"])
    if Method.TC in methods or Method.KG in methods:
        provider = provider_from_settings(settings)
        for key in ("chunk_index", "node_index"):
            index = artifacts.get(key)
            if index is not None and index.provider != provider.name:
                raise InputError(
                    f"{key} was built with the '{index.provider}' embedder, "
                    f"settings select '{provider.name}'"
                )
        artifacts["provider"] = provider
    artifacts["few_shots"] = load_few_shots(few_shots_path)
    if few_shots_path is not None:
        read.append(few_shots_path)
    return artifacts, read


def ask_command(
    settings: Settings,
    question: str,
    method: str,
    kg_path: Optional[Path],
    index_dir: Optional[Path],
    out_path: Optional[Path],
    question_id: str,
    few_shots_path: Optional[Path] = None,
):
    started = timestamp(settings)
    chosen = Method(method.upper())
    artifacts, read = prepare_artifacts(
        settings, (chosen,), kg_path, index_dir, few_shots_path
    )
    record = answer_with(
        chosen,
        question_id,
        question,
        ChatClient.from_settings(settings),
        settings.retrieval(),
        artifacts,
    )
    click.echo(record.answer)
    if out_path is not None:
        write_json(out_path, record.model_dump(mode="json"))
        write_manifest(
            out_path.with_name(f"{out_path.stem}.manifest.json"),
            "ask",
            settings,
            inputs=read,
            artifacts=[out_path],
            started_at=started,
            details={"method": chosen.value, "question_id": question_id},
        )

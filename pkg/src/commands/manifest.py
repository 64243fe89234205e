from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Union

from pydantic import BaseModel, Field

from src.config.config import ChatMode, Settings
from src.logger import get_logger
from src.utils import sha256_file, write_json
from src.version import __version__

logger = get_logger()

PathLike = Union[str, Path]


class RunManifest(BaseModel):
    """What a command read, what it wrote and under which configuration."""

    command: str
    version: str = __version__
    mode: ChatMode
    config: Dict[str, Any]
    inputs: Dict[str, str] = Field(default_factory=dict, description="path -> sha256")
    artifacts: Dict[str, str] = Field(default_factory=dict, description="path -> sha256")
    transcripts: Optional[str] = None
    started_at: Optional[str] = None
    finished_at: Optional[str] = None
    details: Dict[str, Any] = Field(default_factory=dict)


def timestamp(settings: Settings) -> Optional[str]:
    """Wall-clock UTC time, or ``None`` in replay so replayed manifests stay identical."""
    if settings.mode is ChatMode.REPLAY:
        return None
    return datetime.now(timezone.utc).isoformat()


def checksums(paths: Iterable[Optional[PathLike]]) -> Dict[str, str]:
    return {str(p): sha256_file(p) for p in paths if p is not None and Path(p).is_file()}


def write_manifest(
    path: PathLike,
    command: str,
    settings: Settings,
    inputs: Iterable[Optional[PathLike]] = (),
    artifacts: Iterable[Optional[PathLike]] = (),
    started_at: Optional[str] = None,
    details: Optional[Dict[str, Any]] = None,
) -> Path:
    manifest = RunManifest(
        command=command,
        mode=settings.mode,
        config=settings.snapshot(),
        inputs=checksums(inputs),
        artifacts=checksums(artifacts),
        transcripts=str(settings.transcripts) if settings.transcripts else None,
        started_at=started_at,
        finished_at=timestamp(settings),
        details=details or {},
    )
    written = write_json(path, manifest.model_dump(mode="json"))
    logger.debug(f"Wrote {command} manifest to {written}")
    return written

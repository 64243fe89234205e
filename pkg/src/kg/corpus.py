"""JSON-lines corpus ingestion."""

import json
from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, Field, ValidationError

from src.errors import CorpusFormatError, MissingArtifactError
from src.logger import get_logger

logger = get_logger()


class CorpusRecord(BaseModel):
    id: str = Field(
        ...,
        pattern=r"^[^\s,]+$",
        description="Record id; no whitespace or commas so it can be listed in KG files",
    )
    text: str = Field(..., min_length=1, description="Free-text record body")
    date: Optional[str] = Field(None, description="ISO date (YYYY-MM-DD) if known")


def load_corpus(path: Union[str, Path]) -> List[CorpusRecord]:
    """
    Read one record object per line.

    Raises:
        MissingArtifactError: If the file does not exist
        CorpusFormatError: On invalid JSON, a record failing validation or a
            duplicate id
    """
    corpus_path = Path(path)
    if not corpus_path.is_file():
        raise MissingArtifactError(str(corpus_path))

    records: List[CorpusRecord] = []
    seen = set()
    with corpus_path.open(encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = CorpusRecord.model_validate(json.loads(line))
            except json.JSONDecodeError as e:
                raise CorpusFormatError(str(corpus_path), line_no, f"invalid JSON: {e}")
            except ValidationError as e:
                raise CorpusFormatError(
                    str(corpus_path), line_no, f"invalid record: {e.errors()[0]['msg']}"
                )
            if record.id in seen:
                raise CorpusFormatError(
                    str(corpus_path), line_no, f"duplicate record id '{record.id}'"
                )
            seen.add(record.id)
            records.append(record)

    logger.debug(f"Loaded {len(records)} records from {corpus_path}")
    return records


def write_corpus(records: List[CorpusRecord], path: Union[str, Path]) -> Path:
    corpus_path = Path(path)
    corpus_path.parent.mkdir(parents=True, exist_ok=True)
    with corpus_path.open("w", encoding="utf-8") as handle:
        for record in records:
            handle.write(record.model_dump_json(exclude_none=True) + "\n")
    return corpus_path

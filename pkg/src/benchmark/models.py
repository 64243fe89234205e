import json
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import jsonschema
from pydantic import BaseModel, Field, ValidationError, model_validator

from src.errors import BenchmarkValidationError, InputError, MissingArtifactError
from src.logger import get_logger
from src.utils import read_json, write_json

logger = get_logger()

SCHEMA_PATH = Path(__file__).parent / "benchmark-schema.json"

GSM = "GSM"
K2A = "K2A"


class QuestionType(str, Enum):
    GSM_COMPREHENSIVE = "GSM_COMPREHENSIVE"
    GSM_CONTEXT = "GSM_CONTEXT"
    GSM_CATEGORY = "GSM_CATEGORY"
    K2A = "K2A"

    @property
    def family(self) -> str:
        return K2A if self is QuestionType.K2A else GSM


class QaItem(BaseModel):
    id: str = Field(..., min_length=1)
    qtype: QuestionType
    question: str = Field(..., min_length=1)
    gold_answer: Optional[str] = Field(None, description="Present iff qtype is K2A")
    source: str = Field("", description="Provenance note")

    @model_validator(mode="after")
    def check_gold(self) -> "QaItem":
        if self.qtype is QuestionType.K2A and not (self.gold_answer or "").strip():
            raise ValueError("K2A items need a non-empty gold_answer")
        if self.qtype is not QuestionType.K2A and self.gold_answer is not None:
            raise ValueError("GSM items carry no gold_answer")
        return self

    @property
    def family(self) -> str:
        return self.qtype.family


class BatchFlag(BaseModel):
    qtype: QuestionType
    label: str
    requested: int
    received: int
    status: str = Field(..., description="SHORT or LONG")


class BenchmarkManifest(BaseModel):
    counts: Dict[str, int] = Field(
        ..., description="Declared counts keyed by question type or family (GSM, K2A)"
    )
    total: Optional[int] = None
    seed: Optional[int] = None
    flagged: List[BatchFlag] = Field(default_factory=list)
    insights: Optional[Dict[str, Any]] = None


class Benchmark(BaseModel):
    manifest: BenchmarkManifest
    items: List[QaItem]

    def item(self, item_id: str) -> QaItem:
        for qa in self.items:
            if qa.id == item_id:
                return qa
        raise KeyError(item_id)


def count_items(items: List[QaItem]) -> Dict[str, int]:
    """Counts per question type and per family."""
    counts: Dict[str, int] = {}
    for qa in items:
        counts[qa.qtype.value] = counts.get(qa.qtype.value, 0) + 1
        counts[qa.family] = counts.get(qa.family, 0) + 1
    return counts


def make_manifest(items: List[QaItem], **extra: Any) -> BenchmarkManifest:
    counts = {qtype.value: 0 for qtype in QuestionType}
    counts.update({k: v for k, v in count_items(items).items() if k in counts})
    return BenchmarkManifest(counts=counts, total=len(items), **extra)


def validate_counts(benchmark: Benchmark) -> None:
    """
    Compare declared counts with the items.

    Raises:
        BenchmarkValidationError: With a (declared, actual) diff per mismatched key
    """
    actual = count_items(benchmark.items)
    diff = {}
    for key, declared in benchmark.manifest.counts.items():
        found = actual.get(key, 0)
        if found != declared:
            diff[key] = (declared, found)
    if benchmark.manifest.total is not None and benchmark.manifest.total != len(benchmark.items):
        diff["total"] = (benchmark.manifest.total, len(benchmark.items))
    if diff:
        raise BenchmarkValidationError(diff)


@lru_cache(maxsize=1)
def get_benchmark_schema() -> Dict[str, Any]:
    with SCHEMA_PATH.open(encoding="utf-8") as handle:
        return json.load(handle)


def parse_benchmark(data: Dict[str, Any]) -> Benchmark:
    try:
        jsonschema.validate(data, get_benchmark_schema())
    except jsonschema.ValidationError as e:
        raise InputError(f"benchmark file does not match its schema: {e.message}")
    try:
        benchmark = Benchmark.model_validate(data)
    except ValidationError as e:
        raise InputError(f"invalid benchmark item: {e.errors()[0]['msg']}")

    ids = [qa.id for qa in benchmark.items]
    if len(set(ids)) != len(ids):
        raise InputError("benchmark item ids must be unique")
    validate_counts(benchmark)
    return benchmark


def load_benchmark(path: Union[str, Path]) -> Benchmark:
    benchmark_path = Path(path)
    if not benchmark_path.is_file():
        raise MissingArtifactError(str(benchmark_path))
    try:
        data = read_json(benchmark_path)
    except json.JSONDecodeError as e:
        raise InputError(f"{benchmark_path} is not valid JSON: {e}")
    benchmark = parse_benchmark(data)
    logger.debug(f"Loaded benchmark with {len(benchmark.items)} items from {benchmark_path}")
    return benchmark


def save_benchmark(benchmark: Benchmark, path: Union[str, Path]) -> Path:
    return write_json(path, benchmark.model_dump(mode="json"))

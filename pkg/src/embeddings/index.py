"""Cosine similarity and exhaustive top-k retrieval over nodes and chunks."""

from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from src.embeddings.providers import EmbeddingProvider, embed
from src.errors import EmbeddingError, MissingArtifactError
from src.kg.models import KnowledgeGraph
from src.logger import get_logger
from src.utils import read_json, write_json

logger = get_logger()

# Numerical slack allowed around the [-1, 1] cosine range.
SCORE_SLACK = 1e-9

TargetId = Union[int, str]


class Chunk(BaseModel):
    id: str
    text: str = Field(..., min_length=1)
    source_record_ids: List[str]


class ScoredCandidate(BaseModel):
    target: TargetId
    score: float = Field(..., ge=-1.0 - SCORE_SLACK, le=1.0 + SCORE_SLACK)


class SeedSet(BaseModel):
    """Top-k entity seeds, best first."""

    candidates: List[ScoredCandidate] = Field(default_factory=list)

    @property
    def node_ids(self) -> List[int]:
        return [int(c.target) for c in self.candidates]

    def __len__(self) -> int:
        return len(self.candidates)


def cosine(a: Sequence[float], b: Sequence[float]) -> float:
    """
    dot(a, b) / (|a| |b|), clipped to [-1, 1].

    Raises:
        EmbeddingError: On a dimension mismatch, a zero vector or non-finite values
    """
    va = np.asarray(a, dtype=np.float64)
    vb = np.asarray(b, dtype=np.float64)
    if va.shape != vb.shape or va.ndim != 1:
        raise EmbeddingError(f"dimension mismatch: {va.shape} vs {vb.shape}")
    if not (np.all(np.isfinite(va)) and np.all(np.isfinite(vb))):
        raise EmbeddingError("vectors must be finite")
    norm_a = np.linalg.norm(va)
    norm_b = np.linalg.norm(vb)
    if norm_a == 0.0 or norm_b == 0.0:
        raise EmbeddingError("cosine is undefined for a zero vector")
    return float(np.clip(np.dot(va, vb) / (norm_a * norm_b), -1.0, 1.0))


class VectorIndex:
    """
    Immutable exhaustive-scan index.

    Entries are stored unit-normalized so a query costs one matrix-vector
    product. Ties are broken by ascending target id.
    """

    def __init__(
        self,
        kind: str,
        provider: str,
        ids: Sequence[TargetId],
        texts: Sequence[str],
        vectors: np.ndarray,
    ):
        if len(ids) != len(texts) or len(ids) != len(vectors):
            raise EmbeddingError("ids, texts and vectors must have equal length")
        if len(set(ids)) != len(ids):
            raise EmbeddingError("index ids must be distinct")
        matrix = np.asarray(vectors, dtype=np.float64)
        if len(ids) and matrix.ndim != 2:
            raise EmbeddingError("vectors must form a 2-d matrix")
        if not np.all(np.isfinite(matrix)):
            raise EmbeddingError("index vectors must be finite")
        norms = np.linalg.norm(matrix, axis=1) if len(ids) else np.zeros(0)
        if np.any(norms == 0.0):
            raise EmbeddingError("index contains a zero vector")

        self.kind = kind
        self.provider = provider
        self.ids: Tuple[TargetId, ...] = tuple(ids)
        self.texts: Tuple[str, ...] = tuple(texts)
        self._vectors = matrix
        self._unit = matrix / norms[:, None] if len(ids) else matrix
        self._unit.setflags(write=False)

    @property
    def dim(self) -> int:
        return int(self._vectors.shape[1]) if len(self.ids) else 0

    def __len__(self) -> int:
        return len(self.ids)

    @classmethod
    def build(
        cls,
        kind: str,
        items: Sequence[Tuple[TargetId, str]],
        provider: EmbeddingProvider,
    ) -> "VectorIndex":
        ids = [item_id for item_id, _ in items]
        texts = [text for _, text in items]
        vectors = provider.embed_many(texts) if texts else []
        matrix = np.vstack(vectors) if vectors else np.zeros((0, 0))
        logger.info(f"Built {kind} index with {len(ids)} entries ({provider.name})")
        return cls(kind, provider.name, ids, texts, matrix)

    def scores(self, query: Sequence[float]) -> np.ndarray:
        q = np.asarray(query, dtype=np.float64)
        if q.ndim != 1 or q.size != self.dim:
            raise EmbeddingError(f"query has dim {q.size}, index has dim {self.dim}")
        norm = np.linalg.norm(q)
        if norm == 0.0 or not np.all(np.isfinite(q)):
            raise EmbeddingError("query vector must be finite and non-zero")
        return np.clip(self._unit @ (q / norm), -1.0, 1.0)

    def top_k(self, query: Sequence[float], k: int) -> List[ScoredCandidate]:
        """
        The ``k`` best targets by cosine, or all of them when fewer exist.

        Raises:
            EmbeddingError: If the index is empty or k < 1
        """
        if k < 1:
            raise EmbeddingError(f"k must be >= 1, got {k}")
        if not self.ids:
            raise EmbeddingError(f"{self.kind} index is empty")
        scores = self.scores(query)
        order = sorted(range(len(self.ids)), key=lambda i: (-scores[i], self.ids[i]))
        return [
            ScoredCandidate(target=self.ids[i], score=float(scores[i])) for i in order[:k]
        ]

    def text_of(self, target: TargetId) -> str:
        return self.texts[self.ids.index(target)]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "provider": self.provider,
            "dim": self.dim,
            "entries": [
                {"id": item_id, "text": text, "vector": vector.tolist()}
                for item_id, text, vector in zip(self.ids, self.texts, self._vectors)
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "VectorIndex":
        try:
            entries = data["entries"]
            return cls(
                kind=data["kind"],
                provider=data["provider"],
                ids=[entry["id"] for entry in entries],
                texts=[entry["text"] for entry in entries],
                vectors=np.asarray([entry["vector"] for entry in entries], dtype=np.float64),
            )
        except (KeyError, TypeError) as e:
            raise EmbeddingError(f"malformed index document: {e}")

    def save(self, path: Union[str, Path]) -> Path:
        return write_json(path, self.to_dict())

    @classmethod
    def load(cls, path: Union[str, Path]) -> "VectorIndex":
        index_path = Path(path)
        if not index_path.is_file():
            raise MissingArtifactError(str(index_path))
        return cls.from_dict(read_json(index_path))


def build_node_index(graph: KnowledgeGraph, provider: EmbeddingProvider) -> VectorIndex:
    items = [(node_id, graph.nodes[node_id].surface) for node_id in sorted(graph.nodes)]
    return VectorIndex.build("node", items, provider)


def build_chunk_index(chunks: Sequence[Chunk], provider: EmbeddingProvider) -> VectorIndex:
    return VectorIndex.build("chunk", [(chunk.id, chunk.text) for chunk in chunks], provider)


def top_k_seeds(
    question: str, index: VectorIndex, provider: EmbeddingProvider, k: int
) -> SeedSet:
    return SeedSet(candidates=index.top_k(embed(question, provider), k))


def top_k(
    query: Sequence[float], index: VectorIndex, k: int, provider: Optional[str] = None
) -> List[ScoredCandidate]:
    """Functional form of ``VectorIndex.top_k``."""
    if provider is not None and provider != index.provider:
        raise EmbeddingError(
            f"index was built with provider '{index.provider}', not '{provider}'"
        )
    return index.top_k(query, k)

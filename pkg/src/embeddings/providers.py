"""Embedding providers: a remote JSON endpoint and a deterministic hashing fallback."""

import hashlib
import json
import threading
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from src.config.config import ChatMode, EmbedProvider, Settings
from src.errors import EmbeddingError, MissingArtifactError, ReplayMissError, TransportError
from src.logger import get_logger
from src.utils.http import post_json

logger = get_logger()


def _check_vector(vector: np.ndarray, dim: Optional[int] = None) -> np.ndarray:
    if vector.ndim != 1 or vector.size == 0:
        raise EmbeddingError("embedding must be a non-empty 1-d vector")
    if dim is not None and vector.size != dim:
        raise EmbeddingError(f"embedding has dim {vector.size}, expected {dim}")
    if not np.all(np.isfinite(vector)):
        raise EmbeddingError("embedding contains non-finite components")
    return vector


class EmbeddingProvider(ABC):
    """Maps text to a fixed-dimension vector, deterministically per text."""

    name: str = "base"

    @property
    @abstractmethod
    def dim(self) -> Optional[int]:
        """Vector dimension, or None until the first remote call reveals it."""

    @abstractmethod
    def embed_many(self, texts: Sequence[str]) -> List[np.ndarray]:
        """Embed a batch of non-empty texts."""

    def embed(self, text: str) -> np.ndarray:
        return self.embed_many([text])[0]


class HashingEmbeddingProvider(EmbeddingProvider):
    """
    Signed feature hashing over character n-grams, normalized to unit length.

    Needs no model or network and gives the same vector for the same text on
    every machine, which makes indices and retrieval reproducible in tests.
    """

    name = "hash"

    def __init__(self, dim: int = 256, ngram_sizes: Sequence[int] = (3, 4, 5)):
        if dim < 2:
            raise EmbeddingError(f"hashing dimension must be >= 2, got {dim}")
        self._dim = dim
        self.ngram_sizes = tuple(ngram_sizes)

    @property
    def dim(self) -> int:
        return self._dim

    def _features(self, text: str) -> List[str]:
        normalized = f" {' '.join(text.lower().split())} "
        features = [f"w:{word}" for word in normalized.split()]
        for n in self.ngram_sizes:
            features.extend(
                normalized[i : i + n] for i in range(max(len(normalized) - n + 1, 0))
            )
        return features

    def _embed_one(self, text: str) -> np.ndarray:
        if not text.strip():
            raise EmbeddingError("cannot embed empty text")
        vector = np.zeros(self._dim, dtype=np.float64)
        for feature in self._features(text):
            digest = hashlib.blake2b(feature.encode("utf-8"), digest_size=8).digest()
            bucket = int.from_bytes(digest[:4], "little") % self._dim
            sign = 1.0 if digest[4] & 1 else -1.0
            vector[bucket] += sign
        norm = np.linalg.norm(vector)
        if norm == 0.0:
            # Every feature cancelled out; fall back to a single hashed bucket.
            digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
            vector[int.from_bytes(digest[:4], "little") % self._dim] = 1.0
            norm = 1.0
        return vector / norm

    def embed_many(self, texts: Sequence[str]) -> List[np.ndarray]:
        return [self._embed_one(text) for text in texts]


class EmbeddingCache:
    """JSON-lines cache of remote embeddings so replay runs stay offline."""

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._vectors: Optional[Dict[str, List[float]]] = None

    @staticmethod
    def key(model: str, text: str) -> str:
        return hashlib.sha256(f"{model}\n{text}".encode("utf-8")).hexdigest()

    def _load(self) -> Dict[str, List[float]]:
        if self._vectors is None:
            vectors: Dict[str, List[float]] = {}
            if self.path.is_file():
                with self.path.open(encoding="utf-8") as handle:
                    for line in handle:
                        if line.strip():
                            row = json.loads(line)
                            vectors[row["key"]] = row["embedding"]
            self._vectors = vectors
        return self._vectors

    def get(self, key: str) -> Optional[List[float]]:
        with self._lock:
            return self._load().get(key)

    def put(self, key: str, vector: List[float]) -> None:
        with self._lock:
            self._load()[key] = vector
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as handle:
                handle.write(json.dumps({"key": key, "embedding": vector}) + "\n")


class RemoteEmbeddingProvider(EmbeddingProvider):
    """
    OpenAI-style embedding endpoint.

    Request ``{"input": [...], "model": ...}``, response
    ``{"data": [{"embedding": [...]}, ...]}`` in input order.
    """

    name = "remote"

    def __init__(
        self,
        url: str,
        model: str,
        api_key: Optional[str] = None,
        timeout: float = 120.0,
        max_retries: int = 2,
        batch_size: int = 64,
        mode: ChatMode = ChatMode.LIVE,
        cache: Optional[EmbeddingCache] = None,
    ):
        self.url = url
        self.model = model
        self.api_key = api_key
        self.timeout = timeout
        self.max_retries = max_retries
        self.batch_size = batch_size
        self.mode = ChatMode(mode)
        self.cache = cache
        self._dim: Optional[int] = None
        if self.mode is ChatMode.REPLAY and (cache is None or not cache.path.is_file()):
            raise MissingArtifactError(str(cache.path) if cache else "embedding cache")

    @property
    def dim(self) -> Optional[int]:
        return self._dim

    def _request(self, texts: List[str]) -> List[np.ndarray]:
        data = post_json(
            self.url,
            {"input": texts, "model": self.model},
            api_key=self.api_key,
            timeout=self.timeout,
            max_retries=self.max_retries,
        )
        try:
            rows = [item["embedding"] for item in data["data"]]
        except (KeyError, TypeError):
            raise TransportError(f"Embedding response from {self.url} has no data[].embedding")
        if len(rows) != len(texts):
            raise TransportError(
                f"Embedding endpoint returned {len(rows)} vectors for {len(texts)} inputs"
            )
        return [np.asarray(row, dtype=np.float64) for row in rows]

    def embed_many(self, texts: Sequence[str]) -> List[np.ndarray]:
        if any(not text.strip() for text in texts):
            raise EmbeddingError("cannot embed empty text")

        results: List[Optional[np.ndarray]] = [None] * len(texts)
        pending: List[int] = []
        for i, text in enumerate(texts):
            cached = self.cache.get(EmbeddingCache.key(self.model, text)) if self.cache else None
            if cached is not None:
                results[i] = np.asarray(cached, dtype=np.float64)
            elif self.mode is ChatMode.REPLAY:
                raise ReplayMissError(EmbeddingCache.key(self.model, text))
            else:
                pending.append(i)

        for start in range(0, len(pending), self.batch_size):
            batch = pending[start : start + self.batch_size]
            vectors = self._request([texts[i] for i in batch])
            for i, vector in zip(batch, vectors):
                results[i] = vector
                if self.cache is not None and self.mode is ChatMode.RECORD:
                    self.cache.put(EmbeddingCache.key(self.model, texts[i]), vector.tolist())

        for vector in results:
            _check_vector(vector, self._dim)
            self._dim = vector.size
        return results


def embed(text: str, provider: EmbeddingProvider) -> np.ndarray:
    """Embed one non-empty text with ``provider``."""
    if not text or not text.strip():
        raise EmbeddingError("cannot embed empty text")
    return provider.embed(text)


def provider_from_settings(settings: Settings) -> EmbeddingProvider:
    if settings.embed_provider is EmbedProvider.HASH:
        return HashingEmbeddingProvider(dim=settings.embed_dim)

    cache = None
    if settings.transcripts is not None:
        cache = EmbeddingCache(settings.transcripts.with_suffix(".embeddings.jsonl"))
    return RemoteEmbeddingProvider(
        url=settings.embed_url,
        model=settings.embed_model,
        api_key=settings.api_key.get_secret_value() if settings.api_key else None,
        timeout=settings.request_timeout,
        max_retries=settings.max_retries,
        mode=settings.mode,
        cache=cache,
    )

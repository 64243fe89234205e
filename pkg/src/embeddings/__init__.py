from .index import (
    Chunk,
    ScoredCandidate,
    SeedSet,
    VectorIndex,
    build_chunk_index,
    build_node_index,
    cosine,
    top_k,
    top_k_seeds,
)
from .providers import (
    EmbeddingCache,
    EmbeddingProvider,
    HashingEmbeddingProvider,
    RemoteEmbeddingProvider,
    embed,
    provider_from_settings,
)

__all__ = [
    "Chunk",
    "EmbeddingCache",
    "EmbeddingProvider",
    "HashingEmbeddingProvider",
    "RemoteEmbeddingProvider",
    "ScoredCandidate",
    "SeedSet",
    "VectorIndex",
    "build_chunk_index",
    "build_node_index",
    "cosine",
    "embed",
    "provider_from_settings",
    "top_k",
    "top_k_seeds",
]

from typing import Iterable, List

from src.config.config import RetrievalConfig
from src.embeddings.index import Chunk
from src.kg.corpus import CorpusRecord


def chunk_offsets(length: int, size: int, overlap: int) -> List[int]:
    """Start offsets of a sliding window that covers ``length`` characters."""
    if length <= size:
        return [0]
    step = size - overlap
    # the last window starts one step after the last start below length - size
    offsets = list(range(0, length - size, step))
    offsets.append(offsets[-1] + step)
    return offsets


def chunk_corpus(records: Iterable[CorpusRecord], cfg: RetrievalConfig) -> List[Chunk]:
    """
    Split each record into overlapping character windows.

    Chunks never span two records; chunk ids are ``<record id>#<index>``.
    """
    chunks: List[Chunk] = []
    for record in records:
        text = record.text
        for i, start in enumerate(chunk_offsets(len(text), cfg.chunk_size, cfg.chunk_overlap)):
            chunks.append(
                Chunk(
                    id=f"{record.id}#{i}",
                    text=text[start : start + cfg.chunk_size],
                    source_record_ids=[record.id],
                )
            )
    return chunks

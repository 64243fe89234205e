from typing import Iterable, List, Optional, Sequence, Tuple

from src.errors import LeakageError
from src.kg.corpus import CorpusRecord
from src.logger import get_logger

logger = get_logger()

# (passage id, passage text)
Passage = Tuple[str, str]


def _normalize(text: str) -> str:
    return " ".join(text.casefold().split())


def _find(
    passages: Iterable[Passage], gold_answers: Iterable[Tuple[str, str]]
) -> List[Tuple[str, str]]:
    answers = [(item_id, _normalize(answer)) for item_id, answer in gold_answers if answer.strip()]
    offenders = []
    for passage_id, text in passages:
        body = _normalize(text)
        offenders.extend((passage_id, item_id) for item_id, answer in answers if answer in body)
    return offenders


def _raise_if_leaking(offenders: List[Tuple[str, str]], where: str) -> None:
    if offenders:
        logger.error(f"{len(offenders)} gold answers leak into the {where}")
        raise LeakageError(offenders)


def find_leaks(
    records: Iterable[CorpusRecord], gold_answers: Iterable[Tuple[str, str]]
) -> List[Tuple[str, str]]:
    """
    (record id, item id) pairs where a gold answer occurs inside a record.

    Matching is case-insensitive and whitespace-insensitive.
    """
    return _find(((r.id, r.text) for r in records), gold_answers)


def check_leakage(
    records: Iterable[CorpusRecord], gold_answers: Iterable[Tuple[str, str]]
) -> None:
    """
    Raises:
        LeakageError: If any gold answer is retrievable from the corpus
    """
    _raise_if_leaking(find_leaks(records, gold_answers), "retrievable corpus")


def _stitch(prev: str, following: str) -> str:
    """Join two windows of one record, dropping their shared overlap."""
    for k in range(min(len(prev), len(following)), 0, -1):
        if prev.endswith(following[:k]):
            return prev + following[k:]
    return prev + following


def retrievable_passages(
    chunk_ids: Sequence[str],
    chunk_texts: Sequence[str],
    node_surfaces: Optional[Iterable[Tuple[int, str]]] = None,
) -> List[Passage]:
    """
    Everything a retrieval method can put into a prompt.

    Consecutive chunks of one record are also checked joined, so an answer
    straddling a chunk boundary is still found.
    """
    chunks: List[Passage] = list(zip(chunk_ids, chunk_texts))
    passages = list(chunks)
    for (prev_id, prev_text), (next_id, next_text) in zip(chunks, chunks[1:]):
        if prev_id.split("#")[0] == next_id.split("#")[0]:
            passages.append((f"{prev_id}+{next_id}", _stitch(prev_text, next_text)))
    for node_id, surface in node_surfaces or ():
        passages.append((f"node:{node_id}", surface))
    return passages


def check_retrievable(
    passages: Iterable[Passage], gold_answers: Iterable[Tuple[str, str]]
) -> None:
    """
    Run the gold-answer guard against loaded retrieval artifacts.

    Raises:
        LeakageError: If any gold answer occurs in a chunk or node surface
    """
    _raise_if_leaking(_find(passages, gold_answers), "retrieval artifacts")

import random
from typing import List, Sequence, Tuple

from src.errors import InputError
from src.kg.corpus import CorpusRecord


def split_corpus(
    records: Sequence[CorpusRecord], n_kg: int, rng_seed: int
) -> Tuple[List[CorpusRecord], List[CorpusRecord]]:
    """
    Randomly pick ``n_kg`` records for the KG; the rest feed the insight statistics.

    Both halves keep the corpus order.

    Raises:
        InputError: If n_kg is negative or larger than the corpus
    """
    if not 0 <= n_kg <= len(records):
        raise InputError(f"n_kg must be within 0..{len(records)}, got {n_kg}")
    chosen = set(random.Random(rng_seed).sample(range(len(records)), n_kg))
    kg_records = [r for i, r in enumerate(records) if i in chosen]
    insight_records = [r for i, r in enumerate(records) if i not in chosen]
    return kg_records, insight_records

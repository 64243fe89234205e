import re
from collections import Counter
from enum import Enum
from functools import lru_cache
from typing import Callable, List, Sequence

from src.errors import InputError

_TOKEN = re.compile(r"[a-z0-9]+")


class RougeVariant(str, Enum):
    ROUGE_1 = "ROUGE-1"
    ROUGE_L = "ROUGE-L"


@lru_cache(maxsize=1)
def _porter_stem() -> Callable[[str], str]:
    try:
        from nltk.stem.porter import PorterStemmer
    except ImportError:
        raise InputError("ROUGE stemming needs nltk; install the 'stem' extra")
    return PorterStemmer().stem


def tokenize(text: str, stem: bool = False) -> List[str]:
    """Lowercase alphanumeric runs, optionally Porter-stemmed."""
    tokens = _TOKEN.findall((text or "").lower())
    if stem:
        stemmer = _porter_stem()
        tokens = [stemmer(t) for t in tokens]
    return tokens


def _f1(overlap: int, pred_total: int, ref_total: int) -> float:
    if overlap == 0:
        return 0.0
    precision = overlap / pred_total
    recall = overlap / ref_total
    return 2 * precision * recall / (precision + recall)


def lcs_length(xs: Sequence[str], ys: Sequence[str]) -> int:
    """Longest common subsequence length, one row of DP at a time."""
    if len(ys) > len(xs):
        xs, ys = ys, xs
    row = [0] * (len(ys) + 1)
    for x in xs:
        prev = 0
        for j, y in enumerate(ys, start=1):
            current = row[j]
            row[j] = prev + 1 if x == y else max(row[j], row[j - 1])
            prev = current
    return row[-1]


def rouge_1(pred_tokens: Sequence[str], ref_tokens: Sequence[str]) -> float:
    """Unigram F1 with counts clipped to the reference."""
    ref_counts = Counter(ref_tokens)
    overlap = sum(min(c, ref_counts[t]) for t, c in Counter(pred_tokens).items())
    return _f1(overlap, len(pred_tokens), len(ref_tokens))


def rouge_l(pred_tokens: Sequence[str], ref_tokens: Sequence[str]) -> float:
    return _f1(lcs_length(pred_tokens, ref_tokens), len(pred_tokens), len(ref_tokens))


def rouge_f1(
    prediction: str,
    reference: str,
    variant: RougeVariant = RougeVariant.ROUGE_1,
    stem: bool = False,
) -> float:
    """
    ROUGE-1 or ROUGE-L F1 of a prediction against one reference.

    Args:
        prediction: Model answer; no tokens scores 0.0
        reference: Gold answer
        variant: ROUGE-1 (clipped unigram overlap) or ROUGE-L (LCS)
        stem: Porter-stem tokens first; needs nltk

    Returns:
        F1 in [0, 1]

    Raises:
        InputError: If the reference has no tokens
    """
    ref_tokens = tokenize(reference, stem)
    if not ref_tokens:
        raise InputError("ROUGE reference is empty")
    pred_tokens = tokenize(prediction, stem)
    if not pred_tokens:
        return 0.0
    if RougeVariant(variant) is RougeVariant.ROUGE_1:
        return rouge_1(pred_tokens, ref_tokens)
    return rouge_l(pred_tokens, ref_tokens)

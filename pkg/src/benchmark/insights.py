"""Statistical insights over the records withheld from the KG."""

import re
from collections import Counter
from datetime import date
from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, Field

from src.kg.corpus import CorpusRecord
from src.kg.models import KnowledgeGraph
from src.kg.quality import relation_histogram

TOP_TERMS = 20

_TOKEN = re.compile(r"[A-Za-z0-9]+")

STOPWORDS = frozenset(
    """
    A AN AND ARE AS AT BE BEEN BUT BY FOR FROM HAD HAS HAVE HE HIS IN INTO IS IT ITS
    NOT OF ON OR SHE THAT THE THEIR THEN THERE THEY THIS TO WAS WERE WHICH WHILE WITH
    AFTER BEFORE DURING OVER UNDER UP OUT WHEN ALSO WOULD COULD SHOULD DID DO DUE
    """.split()
)

# Meteorological seasons, keyed by month number.
SEASON_MONTHS = (
    ("winter", (12, 1, 2)),
    ("spring", (3, 4, 5)),
    ("summer", (6, 7, 8)),
    ("autumn", (9, 10, 11)),
)
SEASONS = {month: season for season, months in SEASON_MONTHS for month in months}
SEASON_ORDER = tuple(season for season, _ in SEASON_MONTHS)


class InsightSummary(BaseModel):
    record_count: int = 0
    top_terms: List[Tuple[str, int]] = Field(default_factory=list)
    monthly: Dict[str, int] = Field(default_factory=dict, description="YYYY-MM -> records")
    seasonal: Dict[str, int] = Field(default_factory=dict)
    relations: Dict[str, int] = Field(default_factory=dict)
    digest: str = ""


def tokenize(text: str) -> List[str]:
    """Uppercased alphanumeric runs."""
    return [token.upper() for token in _TOKEN.findall(text)]


def term_counts(records: Iterable[CorpusRecord]) -> Counter:
    counts: Counter = Counter()
    for record in records:
        counts.update(t for t in tokenize(record.text) if t not in STOPWORDS)
    return counts


def parse_date(value: Optional[str]) -> Optional[date]:
    if not value:
        return None
    try:
        return date.fromisoformat(value.strip()[:10])
    except ValueError:
        return None


def _render_digest(summary: InsightSummary) -> str:
    lines = [f"Records analyzed: {summary.record_count}"]
    if summary.top_terms:
        lines.append(
            "Most frequent terms: "
            + ", ".join(f"{term} ({count})" for term, count in summary.top_terms)
        )
    if summary.monthly:
        lines.append(
            "Records per month: "
            + ", ".join(f"{month}: {count}" for month, count in summary.monthly.items())
        )
    if summary.seasonal:
        lines.append(
            "Records per season: "
            + ", ".join(f"{season}: {count}" for season, count in summary.seasonal.items())
        )
    if summary.relations:
        lines.append(
            "Relation frequencies in the knowledge graph: "
            + ", ".join(f"{label}: {count}" for label, count in summary.relations.items())
        )
    return "\n".join(lines)


def extract_insights(
    insight_records: Iterable[CorpusRecord], kg: Optional[KnowledgeGraph] = None
) -> InsightSummary:
    """
    Term counts, monthly and seasonal buckets and an optional relation table.

    Records without a parseable ``date`` only contribute to term counts. An
    empty input gives zero counts and an empty digest.
    """
    records = list(insight_records)
    if not records:
        return InsightSummary()

    counts = term_counts(records)
    top_terms = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:TOP_TERMS]

    monthly: Counter = Counter()
    seasonal: Counter = Counter()
    for record in records:
        when = parse_date(record.date)
        if when is not None:
            monthly[f"{when.year:04d}-{when.month:02d}"] += 1
            seasonal[SEASONS[when.month]] += 1

    summary = InsightSummary(
        record_count=len(records),
        top_terms=top_terms,
        monthly=dict(sorted(monthly.items())),
        seasonal={s: seasonal[s] for s in SEASON_ORDER if seasonal[s]},
        relations=relation_histogram(kg) if kg is not None else {},
    )
    summary.digest = _render_digest(summary)
    return summary

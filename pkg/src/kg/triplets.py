"""Triplet-text parsing and incremental merging into the knowledge graph."""

import re
from dataclasses import dataclass, field
from typing import Iterable, List, NamedTuple, Optional, Set

from src.config.config import ParseMode
from src.kg.models import KnowledgeGraph, RelationType, Triple, canonicalize
from src.logger import get_logger

logger = get_logger()

# Tolerates a leading bullet or number and trailing punctuation around <...>.
_TRIPLET_LINE = re.compile(
    r"^(?:[-*•]\s*|\d+[.)]\s*)?<(?P<body>[^<>]*)>\s*[.,;]?$"
)


class RejectedLine(NamedTuple):
    line_no: int
    text: str
    reason: str


@dataclass
class ParseResult:
    triples: List[Triple] = field(default_factory=list)
    rejected: List[RejectedLine] = field(default_factory=list)


def _split_fields(body: str) -> tuple[Optional[Triple], str]:
    parts = [part.strip() for part in body.split(",")]
    if len(parts) < 3:
        return None, "malformed: expected three comma-separated fields"

    # Entities may contain commas; the relation is the one admissible label.
    positions = [
        i for i in range(1, len(parts) - 1) if RelationType.from_label(parts[i])
    ]
    if not positions:
        if len(parts) == 3:
            return None, f"unknown relation '{parts[1]}'"
        return None, "unknown relation: no admissible label among fields"
    if len(positions) > 1:
        return None, "ambiguous: more than one admissible relation label"

    index = positions[0]
    head = canonicalize(", ".join(parts[:index]))
    tail = canonicalize(", ".join(parts[index + 1 :]))
    if not head or not tail:
        return None, "malformed: empty entity"
    relation = RelationType.from_label(parts[index])
    return Triple(head, relation, tail), ""


def parse_triplets(
    text: str,
    mode: ParseMode = ParseMode.LOOSE,
    known_nodes: Optional[Iterable[str]] = None,
) -> ParseResult:
    """
    Parse LLM output of ``<E1, REL, E2>`` lines.

    Every non-blank line ends up either as a triple or as a rejected line with a
    reason; parsing never raises. In strict mode both entities must already be
    known nodes.
    """
    result = ParseResult()
    known: Set[str] = {canonicalize(s) for s in known_nodes or ()}
    strict = ParseMode(mode) is ParseMode.STRICT

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue

        match = _TRIPLET_LINE.match(line)
        if match is None:
            result.rejected.append(
                RejectedLine(
                    line_no, line, "malformed: expected <entity1, relation, entity2>"
                )
            )
            continue

        triple, reason = _split_fields(match.group("body"))
        if triple is None:
            result.rejected.append(RejectedLine(line_no, line, reason))
            continue

        if strict:
            missing = [s for s in (triple.head, triple.tail) if s not in known]
            if missing:
                result.rejected.append(
                    RejectedLine(
                        line_no,
                        line,
                        f"strict mode: '{missing[0]}' is not an existing node",
                    )
                )
                continue

        result.triples.append(triple)

    if result.rejected:
        logger.debug(
            f"Parsed {len(result.triples)} triplets, rejected {len(result.rejected)}"
        )
    return result


def merge_triplet(
    graph: KnowledgeGraph, triple: Triple, record_id: Optional[str] = None
) -> KnowledgeGraph:
    """
    Add one occurrence of ``triple`` to ``graph``.

    Nodes are created on first mention; an existing (h, r, t) edge gains weight 1.
    """
    head = graph.add_node(triple.head, record_id)
    tail = graph.add_node(triple.tail, record_id)
    graph.add_edge(head.id, RelationType(triple.relation), tail.id)
    return graph

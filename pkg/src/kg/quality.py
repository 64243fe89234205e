"""Graph statistics and triplet-level quality against a gold standard."""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Set, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from src.config.config import ParseMode
from src.errors import CorpusFormatError, MissingArtifactError
from src.kg.models import KnowledgeGraph, RelationType, Triple, canonicalize


class GoldTriple(BaseModel):
    record_id: str
    head: str
    relation: RelationType
    tail: str

    def key(self) -> Tuple[str, RelationType, str]:
        return (canonicalize(self.head), self.relation, canonicalize(self.tail))


class GraphStats(BaseModel):
    records: int
    nodes: int
    edges: int
    total_weight: int
    relations: Dict[str, int] = Field(
        default_factory=dict, description="Total edge weight per relation label"
    )


def relation_histogram(graph: KnowledgeGraph) -> Dict[str, int]:
    """Total edge weight per relation, in schema order, zero entries omitted."""
    totals = {relation.value: 0 for relation in RelationType}
    for edge in graph.edges.values():
        totals[edge.relation.value] += edge.weight
    return {label: count for label, count in totals.items() if count}


def graph_stats(graph: KnowledgeGraph) -> GraphStats:
    return GraphStats(
        records=graph.record_count,
        nodes=len(graph.nodes),
        edges=len(graph.edges),
        total_weight=graph.total_weight(),
        relations=relation_histogram(graph),
    )


@dataclass
class RelationCounts:
    strict: int = 0
    loose: int = 0


def strict_loose_counts(
    gold: Iterable[GoldTriple], known_nodes: Iterable[str]
) -> Dict[str, RelationCounts]:
    """
    Per-relation gold counts under both admission rules.

    A gold triple counts as strict when both of its entities are in
    ``known_nodes``; every gold triple counts as loose.
    """
    known = {canonicalize(s) for s in known_nodes}
    counts: Dict[str, RelationCounts] = {}
    for triple in gold:
        entry = counts.setdefault(triple.relation.value, RelationCounts())
        entry.loose += 1
        head, _, tail = triple.key()
        if head in known and tail in known:
            entry.strict += 1
    return dict(sorted(counts.items()))


class QualityReport(BaseModel):
    mode: ParseMode
    gold: int
    extracted: int
    matched_gold: int
    matched_extracted: int
    precision: float
    recall: float
    f1: float
    per_relation: Dict[str, Tuple[int, int]] = Field(
        default_factory=dict, description="relation -> (gold count, matched gold count)"
    )


@dataclass
class _LooseIndex:
    # relation -> list of (head provenance, tail provenance)
    by_relation: Dict[RelationType, List[Tuple[Set[str], Set[str]]]] = field(
        default_factory=dict
    )

    def matches(self, relation: RelationType, record_id: str) -> bool:
        return any(
            record_id in head and record_id in tail
            for head, tail in self.by_relation.get(relation, ())
        )


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def kg_quality(
    graph: KnowledgeGraph,
    gold: Iterable[GoldTriple],
    mode: ParseMode = ParseMode.STRICT,
) -> QualityReport:
    """
    Compare the graph's distinct triplets with a gold standard.

    Strict matching requires the exact (head, relation, tail) triple. Loose
    matching only requires an extracted edge with the gold relation whose two
    endpoints were both mentioned in the gold triple's record.
    """
    gold_list = list(gold)
    extracted: List[Triple] = list(graph.triples())

    if ParseMode(mode) is ParseMode.STRICT:
        extracted_keys = {(t.head, t.relation, t.tail) for t in extracted}
        gold_keys = {g.key() for g in gold_list}
        gold_hits = [g.key() in extracted_keys for g in gold_list]
        matched_extracted = sum(1 for key in extracted_keys if key in gold_keys)
    else:
        index = _LooseIndex()
        for edge in graph.edges.values():
            index.by_relation.setdefault(edge.relation, []).append(
                (graph.nodes[edge.head].provenance, graph.nodes[edge.tail].provenance)
            )
        gold_hits = [index.matches(g.relation, g.record_id) for g in gold_list]
        gold_records: Dict[RelationType, Set[str]] = {}
        for g in gold_list:
            gold_records.setdefault(g.relation, set()).add(g.record_id)
        matched_extracted = 0
        for edge in graph.edges.values():
            shared = (
                graph.nodes[edge.head].provenance & graph.nodes[edge.tail].provenance
            )
            if shared & gold_records.get(edge.relation, set()):
                matched_extracted += 1

    per_relation: Dict[str, Tuple[int, int]] = {}
    for triple, hit in zip(gold_list, gold_hits):
        total, matched = per_relation.get(triple.relation.value, (0, 0))
        per_relation[triple.relation.value] = (total + 1, matched + int(hit))

    precision = matched_extracted / len(extracted) if extracted else 0.0
    recall = sum(gold_hits) / len(gold_list) if gold_list else 0.0
    return QualityReport(
        mode=ParseMode(mode),
        gold=len(gold_list),
        extracted=len(extracted),
        matched_gold=sum(gold_hits),
        matched_extracted=matched_extracted,
        precision=precision,
        recall=recall,
        f1=_f1(precision, recall),
        per_relation=dict(sorted(per_relation.items())),
    )


def load_gold_triples(rows: Iterable[dict], record_id: Optional[str] = None) -> List[GoldTriple]:
    """Validate raw gold rows (``record_id``, ``head``, ``relation``, ``tail``)."""
    triples = []
    for row in rows:
        data = dict(row)
        if record_id is not None:
            data.setdefault("record_id", record_id)
        triples.append(GoldTriple.model_validate(data))
    return triples


def load_gold_file(path: Union[str, Path]) -> List[GoldTriple]:
    """
    Read gold triples from a JSON-lines file.

    Raises:
        MissingArtifactError: If the file does not exist
        CorpusFormatError: On invalid JSON or an invalid row
    """
    gold_path = Path(path)
    if not gold_path.is_file():
        raise MissingArtifactError(str(gold_path))
    triples: List[GoldTriple] = []
    with gold_path.open(encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                triples.extend(load_gold_triples([json.loads(line)]))
            except json.JSONDecodeError as e:
                raise CorpusFormatError(str(gold_path), line_no, f"invalid JSON: {e}")
            except ValidationError as e:
                raise CorpusFormatError(
                    str(gold_path), line_no, f"invalid gold triple: {e.errors()[0]['msg']}"
                )
    return triples
